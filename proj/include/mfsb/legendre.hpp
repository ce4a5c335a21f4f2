#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mfsb/pressure.hpp"

namespace mfsb {

// One evaluation of the convex conjugate sup_theta { theta t - P(theta) }.
struct ConjugatePoint {
    double value = 0.0;      // the conjugate value
    double theta_at_max = 0; // maximizer over the sampled curve
    bool clipped_low = false;  // maximizer pinned at the left grid edge
    bool clipped_high = false; // maximizer pinned at the right grid edge
};

namespace detail {

inline double curve_interp(const PressureCurve& c, double th) {
    const auto it = std::upper_bound(c.theta.begin(), c.theta.end(), th);
    if (it == c.theta.begin()) return c.value.front();
    if (it == c.theta.end()) return c.value.back();
    const std::size_t i = static_cast<std::size_t>(it - c.theta.begin());
    const double t0 = c.theta[i - 1], t1 = c.theta[i];
    const double w = (th - t0) / (t1 - t0);
    return (1.0 - w) * c.value[i - 1] + w * c.value[i];
}

} // namespace detail

// Slope range [min, max] of the sampled (convex) curve's secants.
inline std::pair<double, double> slope_range(const PressureCurve& c) {
    if (c.size() < 2) throw std::invalid_argument("slope_range: need at least two nodes");
    double lo = (c.value[1] - c.value[0]) / (c.theta[1] - c.theta[0]);
    double hi = lo;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        const double s = (c.value[i + 1] - c.value[i]) / (c.theta[i + 1] - c.theta[i]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return {lo, hi};
}

// sup over the curve of theta*t - P(theta): exact over the nodes, with a
// golden-section refinement between the bracketing nodes on the piecewise
// linear extension. `clip_ok = false` turns a maximizer pinned at the grid
// edge (t outside the sampled slope range) into a domain error.
inline ConjugatePoint legendre_transform(const PressureCurve& c, double t, bool clip_ok = true) {
    if (c.size() < 2) throw std::invalid_argument("legendre_transform: need at least two nodes");
    std::size_t best = 0;
    double best_v = t * c.theta[0] - c.value[0];
    for (std::size_t i = 1; i < c.size(); ++i) {
        const double v = t * c.theta[i] - c.value[i];
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    ConjugatePoint out;
    out.clipped_low = (best == 0);
    out.clipped_high = (best + 1 == c.size());
    if ((out.clipped_low || out.clipped_high) && !clip_ok) {
        throw std::domain_error("legendre_transform: t outside the sampled slope range");
    }
    // refine on the PL extension between the neighbours of the best node
    double lo = c.theta[best > 0 ? best - 1 : best];
    double hi = c.theta[best + 1 < c.size() ? best + 1 : best];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = t * x1 - detail::curve_interp(c, x1);
    double f2 = t * x2 - detail::curve_interp(c, x2);
    for (int it = 0; it < 90 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = t * x2 - detail::curve_interp(c, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = t * x1 - detail::curve_interp(c, x1);
        }
    }
    const double theta_ref = 0.5 * (lo + hi);
    const double val_ref = t * theta_ref - detail::curve_interp(c, theta_ref);
    if (val_ref > best_v) {
        out.value = val_ref;
        out.theta_at_max = theta_ref;
    } else {
        out.value = best_v;
        out.theta_at_max = c.theta[best];
    }
    return out;
}

// Conjugate of the conjugate, evaluated at the original nodes. For the
// sampled (piecewise-linear) curve the t-grid of segment slopes recovers the
// node values exactly.
inline std::vector<double> double_conjugate_at_nodes(const PressureCurve& c) {
    std::vector<double> slopes;
    slopes.reserve(c.size() - 1);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        slopes.push_back((c.value[i + 1] - c.value[i]) / (c.theta[i + 1] - c.theta[i]));
    }
    std::vector<double> conj(slopes.size());
    for (std::size_t j = 0; j < slopes.size(); ++j) {
        double best = slopes[j] * c.theta[0] - c.value[0];
        for (std::size_t i = 1; i < c.size(); ++i) {
            best = std::max(best, slopes[j] * c.theta[i] - c.value[i]);
        }
        conj[j] = best;
    }
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        double best = c.theta[i] * slopes[0] - conj[0];
        for (std::size_t j = 1; j < slopes.size(); ++j) {
            best = std::max(best, c.theta[i] * slopes[j] - conj[j]);
        }
        out[i] = best;
    }
    return out;
}

} // namespace mfsb
