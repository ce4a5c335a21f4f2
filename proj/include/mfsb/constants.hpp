#pragma once

#include <cmath>
#include <numbers>

namespace mfsb {

// Shared real constants of the Stern-Brocot / continued-fraction setting.
//   gamma          golden mean (1+sqrt 5)/2
//   two_log_gamma  2 log gamma, the right endpoint of the Farey spectrum
//   chi            pi^2 / (6 log 2), the Levy constant for 2 log q_k / k
//   rho            1 - gamma^-6 (= 4 gamma^-3), contraction rate in the
//                  denominator bound q_k <= gamma^tau rho^(tau-k-1)
struct Constants {
    double gamma;
    double two_log_gamma;
    double chi;
    double rho;
};

inline const Constants& constants() {
    static const Constants c = [] {
        Constants k{};
        k.gamma = (1.0 + std::sqrt(5.0)) / 2.0;
        k.two_log_gamma = 2.0 * std::log(k.gamma);
        k.chi = std::numbers::pi * std::numbers::pi / (6.0 * std::numbers::ln2);
        k.rho = 1.0 - std::pow(k.gamma, -6.0);
        return k;
    }();
    return c;
}

inline double golden_ratio() { return constants().gamma; }
inline double two_log_gamma() { return constants().two_log_gamma; }
inline double levy_chi() { return constants().chi; }
inline double golden_rho() { return constants().rho; }

} // namespace mfsb
