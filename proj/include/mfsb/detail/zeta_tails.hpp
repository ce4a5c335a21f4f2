#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mfsb/errors.hpp"

namespace mfsb::detail {

// Generalized exponential integral E_s(z) = int_1^inf exp(-z u) u^(-s) du,
// z > 0. Evaluated by the ascending series with the pole pair
// Gamma(1-s) z^(s-1) and the k = m-1 series term combined analytically
// (m = nearest integer to s), so the formula stays stable arbitrarily close
// to integer s. Intended for z <= ~3.
inline double exp_integral_es(double s, double z) {
    if (z <= 0.0) throw std::domain_error("exp_integral_es: need z > 0");
    if (s <= 0.6) throw std::domain_error("exp_integral_es: need s > 0.6");
    if (z > 3.5) throw std::domain_error("exp_integral_es: series path needs z <= 3.5");
    const long m = std::lround(s);
    const double d = s - static_cast<double>(m);

    // v = log( prod_{j=1}^{m-1} (1 + d/j) ), harmonic H_{m-1}
    double v = 0.0, harmonic = 0.0, log_p = 0.0;
    for (long j = 1; j < m; ++j) {
        v += std::log1p(d / static_cast<double>(j));
        harmonic += 1.0 / static_cast<double>(j);
        log_p += std::log(static_cast<double>(j) + d);
    }
    // r = (u - v)/d with u = lgamma(1-d) + d log z, extended through d = 0.
    const double logz = std::log(z);
    double r;
    if (d == 0.0) {
        r = logz + 0.57721566490153286060651209008240 - harmonic;
    } else {
        r = logz + std::lgamma(1.0 - d) / d - v / d;
    }
    const double w = d * r;
    const double expm1_over = (std::abs(w) < 1e-14) ? 1.0 + 0.5 * w : std::expm1(w) / w;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    // C = sign * z^{m-1} * e^v * r * expm1_over / P(d), with P(d) = e^{log_p}
    const double c_term = sign * std::exp(static_cast<double>(m - 1) * logz + v - log_p) * r * expm1_over;
    // series sum over k != m-1 of (-z)^k / (k! (1 - s + k))
    double series = 0.0;
    double pow_term = 1.0; // (-z)^k / k!
    for (long k = 0; k < 80; ++k) {
        if (k != m - 1) {
            series += pow_term / (1.0 - s + static_cast<double>(k));
        }
        pow_term *= -z / static_cast<double>(k + 1);
        if (k > 5 && std::abs(pow_term) < 1e-22) break;
    }
    return c_term - series;
}

inline constexpr std::array<double, 6> kBernoulli2j = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};

// Lattice sum S(s, q, a) = sum_{k >= 0} exp(-q (a+k)) (a+k)^(-s).
// q = 0 gives the Hurwitz zeta (s > 1 required); moderate q is summed
// directly; small positive q goes through Euler-Maclaurin with the
// exponential-integral closed form for the integral term.
inline double damped_power_sum(double s, double q, double a) {
    if (a <= 0.0) throw std::domain_error("damped_power_sum: need a > 0");
    if (q < 0.0) throw std::domain_error("damped_power_sum: need q >= 0");
    constexpr double kDirectQ = 1.0 / 64.0;

    // direct when the damping is strong or the lattice already starts deep
    // into the exponential decay (keeps the series argument of the integral
    // representation small)
    if (q >= kDirectQ || q * a >= 2.0) {
        double acc = 0.0;
        double t = a;
        for (std::uint64_t k = 0; k < 2'000'000; ++k, t += 1.0) {
            const double lg = -q * t - s * std::log(t);
            const double term = std::exp(lg);
            acc += term;
            if ((s <= 0.0 ? q * t >= -s : true) && term < 1e-19 * (acc + 1e-300) && k > 4) {
                return acc;
            }
        }
        throw numerical_error("damped_power_sum: direct summation did not converge");
    }

    if (s <= 1.0) {
        if (q == 0.0) throw std::domain_error("damped_power_sum: divergent (q = 0, s <= 1)");
        throw std::domain_error("damped_power_sum: small-q path needs s > 1");
    }

    constexpr int kHead = 64;
    constexpr int kBernTerms = 6;
    double acc = 0.0;
    double t = a;
    for (int k = 0; k < kHead; ++k, t += 1.0) {
        acc += std::exp(-q * t - s * std::log(t));
    }
    const double c = a + kHead;
    // integral: c^{1-s} * E_s(q c), with the q -> 0 limit c^{1-s}/(s-1)
    double integral;
    if (q == 0.0) {
        integral = std::exp((1.0 - s) * std::log(c)) / (s - 1.0);
    } else {
        integral = std::exp((1.0 - s) * std::log(c)) * exp_integral_es(s, q * c);
    }
    // derivatives of g(t) = e^{-qt} t^{-s} at c via g' = -(q + s/t) g
    const double g0 = std::exp(-q * c - s * std::log(c));
    std::array<double, 2 * kBernTerms> h{};
    h[0] = q + s / c;
    double fact = 1.0;
    double cpow = c;
    for (std::size_t i = 1; i < h.size(); ++i) {
        fact *= static_cast<double>(i);
        cpow *= c;
        h[i] = s * ((i % 2) ? -1.0 : 1.0) * fact / cpow;
    }
    std::vector<double> g(2 * kBernTerms, 0.0);
    g[0] = g0;
    for (std::size_t r = 0; r + 1 < g.size(); ++r) {
        double acc_d = 0.0;
        double binom = 1.0;
        for (std::size_t i = 0; i <= r; ++i) {
            acc_d += binom * h[i] * g[r - i];
            binom = binom * static_cast<double>(r - i) / static_cast<double>(i + 1);
        }
        g[r + 1] = -acc_d;
    }
    double bern_sum = 0.0;
    double fct = 1.0; // (2j)!
    for (int j = 1; j <= kBernTerms; ++j) {
        fct *= static_cast<double>(2 * j - 1) * static_cast<double>(2 * j);
        bern_sum += kBernoulli2j[j - 1] / fct * g[2 * j - 1];
    }
    return acc + integral + 0.5 * g0 - bern_sum;
}

// Hurwitz zeta sum_{k>=0} (a+k)^(-s), s > 1, a > 0.
inline double hurwitz_zeta(double s, double a) {
    if (s <= 1.0) throw std::domain_error("hurwitz_zeta: need s > 1");
    return damped_power_sum(s, 0.0, a);
}

// Riemann zeta for s > 1.
inline double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

} // namespace mfsb::detail
