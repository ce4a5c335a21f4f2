#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfsb/constants.hpp"
#include "mfsb/legendre.hpp"
#include "mfsb/pressure.hpp"

namespace mfsb {

// Real value or an explicit infinity marker (never a floating sentinel).
struct ExtendedReal {
    double value = 0.0;
    bool is_inf = false;

    static ExtendedReal finite(double v) { return {v, false}; }
    static ExtendedReal infinity() { return {0.0, true}; }

    std::string str() const {
        if (is_inf) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        return buf;
    }
};

enum class SpectrumKind { farey_tau, gauss_tau_d };

inline const char* kind_name(SpectrumKind k) {
    return k == SpectrumKind::farey_tau ? "farey-tau" : "gauss-tauD";
}

struct SpectrumPoint {
    double alpha = 0.0;
    double tau = 0.0;
    double t_of_alpha = 0.0;
    ExtendedReal alpha_star;
    ExtendedReal alpha_sharp;
    bool clipped = false;    // maximizer pinned at a grid edge
    bool convention = false; // endpoint fixed by convention, not computed
};

struct SpectrumCurve {
    SpectrumKind kind = SpectrumKind::farey_tau;
    std::vector<SpectrumPoint> points;
    std::string source; // method of the pressure curve behind it
};

namespace detail {

// Node-exact conjugate data: tau-type value inf_theta (theta + P/alpha) and
// the minimizing node. On the piecewise-linear extension the infimum is
// always attained at a node, so this is the full conjugate of the sampled
// curve.
struct NodeConjugate {
    double value = 0.0;
    std::size_t node = 0;
    bool edge_low = false;
    bool edge_high = false;
};

inline NodeConjugate tau_node_conjugate(const PressureCurve& c, double alpha) {
    NodeConjugate out;
    double best = c.theta[0] + c.value[0] / alpha;
    std::size_t arg = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const double v = c.theta[i] + c.value[i] / alpha;
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    out.value = best;
    out.node = arg;
    out.edge_low = (arg == 0);
    out.edge_high = (arg + 1 == c.size());
    return out;
}

// Slope-matching refinement: quadratic through the three nodes around the
// conjugate minimizer, solved for P'(theta) = -alpha, clamped to the bracket.
inline double refine_t(const PressureCurve& c, double alpha, const NodeConjugate& nc) {
    const std::size_t i = nc.node;
    if (nc.edge_low || nc.edge_high || c.size() < 3) return c.theta[i];
    const double t0 = c.theta[i - 1], t1 = c.theta[i], t2 = c.theta[i + 1];
    const double p0 = c.value[i - 1], p1 = c.value[i], p2 = c.value[i + 1];
    const double d01 = (p1 - p0) / (t1 - t0);
    const double d12 = (p2 - p1) / (t2 - t1);
    const double second = (d12 - d01) / (t2 - t0) * 2.0;
    if (second <= 0.0) return t1;
    // P'(t) ~ d01 + second * (t - (t0+t1)/2)
    double t = 0.5 * (t0 + t1) + (-alpha - d01) / second;
    t = std::min(std::max(t, t0), t2);
    return t;
}

} // namespace detail

// theta with curve slope -alpha, from the sampled curve. `clipped` reports a
// maximizer pinned at the grid edge (alpha beyond the sampled slopes).
inline double t_of_alpha(const PressureCurve& curve, double alpha, bool* clipped = nullptr) {
    if (alpha <= 0.0) throw std::domain_error("t_of_alpha: need alpha > 0");
    const auto nc = detail::tau_node_conjugate(curve, alpha);
    if (clipped) *clipped = nc.edge_low || nc.edge_high;
    return detail::refine_t(curve, alpha, nc);
}

// Finite-difference pair (-dP*/dtheta, -dP*/dq) at (t, q).
inline std::pair<double, double> induced_pressure_gradient(double t, double q,
                                                           const PressureParams& p = {}) {
    const double ht = 1e-5 * std::max(1.0, std::abs(t));
    const double hq = std::max(1e-4 * q, std::min(1e-9, 0.5 * q));
    if (hq <= 0.0 || q - hq <= 0.0) throw numerical_error("induced_pressure_gradient: step underflow");
    const double up = detail::induced_log_eig(t + ht, q, p);
    const double dn = detail::induced_log_eig(t - ht, q, p);
    const double qp = detail::induced_log_eig(t, q + hq, p);
    const double qm = detail::induced_log_eig(t, q - hq, p);
    return {-(up - dn) / (2.0 * ht), -(qp - qm) / (2.0 * hq)};
}

namespace detail {

// alpha(theta) = -beta'(theta) through the implicit function: the ratio of
// the P* partials at (theta, beta(theta)).
inline double alpha_of_theta(double theta, const PressureParams& p) {
    const double q = beta(theta, p);
    const auto [astar, asharp] = induced_pressure_gradient(theta, q, p);
    return astar / asharp;
}

} // namespace detail

// alpha* = -dP*/dtheta and alpha# = -dP*/dq at (t(alpha), beta(t(alpha))),
// with t(alpha) found by solving -beta'(theta) = alpha directly. The ratio
// alpha*/alpha# reproduces alpha to finite-difference accuracy.
inline std::pair<ExtendedReal, ExtendedReal> alpha_star_sharp(double alpha,
                                                              const PressureParams& p = {}) {
    const double a_max = constants().two_log_gamma;
    if (alpha <= 0.0 || alpha >= a_max) {
        throw std::domain_error("alpha_star_sharp: need 0 < alpha < 2 log gamma");
    }
    // bracket t: alpha_of_theta is decreasing in theta
    double lo = 0.0, hi = 0.0;
    double a_lo = detail::alpha_of_theta(0.0, p);
    if (a_lo <= alpha) {
        // move left until alpha(lo) > alpha
        lo = -1.0;
        while (detail::alpha_of_theta(lo, p) <= alpha) {
            hi = lo;
            lo *= 2.0;
            if (lo < -60.0) throw numerical_error("alpha_star_sharp: no left bracket");
        }
    } else {
        // move right towards 1
        double gap = 0.5;
        hi = 0.5;
        while (detail::alpha_of_theta(hi, p) >= alpha) {
            gap *= 0.5;
            hi = 1.0 - gap;
            if (gap < 1e-11) throw numerical_error("alpha_star_sharp: alpha too close to 0 to resolve");
        }
        lo = (hi == 0.5) ? 0.0 : 1.0 - 2.0 * gap;
    }
    // bisection + secant polish on g(theta) = alpha_of_theta - alpha
    double glo = detail::alpha_of_theta(lo, p) - alpha;
    double ghi = detail::alpha_of_theta(hi, p) - alpha;
    if (!(glo > 0.0 && ghi < 0.0)) throw numerical_error("alpha_star_sharp: bracket failure");
    double mid = lo;
    for (int it = 0; it < 80; ++it) {
        mid = lo + (hi - lo) * glo / (glo - ghi);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        const double gm = detail::alpha_of_theta(mid, p) - alpha;
        if (std::abs(gm) <= 1e-8 || hi - lo < 1e-12) break;
        if (gm > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    const double q = beta(mid, p);
    const auto [astar, asharp] = induced_pressure_gradient(mid, q, p);
    return {ExtendedReal::finite(astar), ExtendedReal::finite(asharp)};
}

// Farey-side spectrum point: alpha tau(alpha) = -conj_P(-alpha), with the
// endpoint conventions tau(0) = 1, alpha*(0) = chi, alpha#(0) = inf and
// tau(2 log gamma) = 0, alpha* = 2 log gamma, alpha# = 1.
inline SpectrumPoint tau(const PressureCurve& sb_curve, double alpha, const PressureParams& p = {},
                         bool with_derivatives = true) {
    const double a_max = constants().two_log_gamma;
    const double chi = constants().chi;
    if (alpha < -1e-12 || alpha > a_max + 1e-9) {
        throw std::domain_error("tau: alpha outside [0, 2 log gamma]");
    }
    SpectrumPoint pt;
    if (alpha <= 1e-12) {
        pt.alpha = 0.0;
        pt.tau = 1.0;
        pt.t_of_alpha = 1.0;
        pt.alpha_star = ExtendedReal::finite(chi);
        pt.alpha_sharp = ExtendedReal::infinity();
        pt.convention = true;
        return pt;
    }
    if (alpha >= a_max - 1e-12) {
        pt.alpha = a_max;
        pt.tau = 0.0;
        pt.t_of_alpha = sb_curve.theta.front(); // divergent; clipped to grid edge
        pt.alpha_star = ExtendedReal::finite(a_max);
        pt.alpha_sharp = ExtendedReal::finite(1.0);
        pt.clipped = true;
        pt.convention = true;
        return pt;
    }
    const auto nc = detail::tau_node_conjugate(sb_curve, alpha);
    pt.alpha = alpha;
    pt.tau = nc.value;
    pt.clipped = nc.edge_low || nc.edge_high;
    pt.t_of_alpha = detail::refine_t(sb_curve, alpha, nc);
    if (with_derivatives) {
        const double q_at_t = std::max(detail::curve_interp(sb_curve, pt.t_of_alpha), 1e-300);
        try {
            const auto [astar, asharp] = induced_pressure_gradient(pt.t_of_alpha, q_at_t, p);
            pt.alpha_star = ExtendedReal::finite(astar);
            pt.alpha_sharp = ExtendedReal::finite(asharp);
        } catch (const std::exception&) {
            pt.alpha_star = ExtendedReal::finite(alpha); // degenerate edge: keep ratio
            pt.alpha_sharp = ExtendedReal::finite(1.0);
            pt.clipped = true;
        }
    } else {
        pt.alpha_star = ExtendedReal::finite(alpha * 1.0);
        pt.alpha_sharp = ExtendedReal::finite(1.0);
    }
    return pt;
}

// Gauss-side spectrum point tau_D(alpha) = conj_PD(-alpha)/(-alpha) for
// alpha >= 2 log gamma. The constraint functional is identically 1, so the
// pair (alpha*, alpha#) degenerates to (alpha, 1).
inline SpectrumPoint tau_d(const PressureCurve& pd_curve, double alpha) {
    const double a_min = constants().two_log_gamma;
    if (alpha < a_min - 1e-12) throw std::domain_error("tau_d: need alpha >= 2 log gamma");
    SpectrumPoint pt;
    pt.alpha = alpha;
    const auto nc = detail::tau_node_conjugate(pd_curve, alpha);
    pt.tau = nc.value;
    pt.clipped = nc.edge_low || nc.edge_high;
    pt.t_of_alpha = detail::refine_t(pd_curve, alpha, nc);
    pt.alpha_star = ExtendedReal::finite(alpha);
    pt.alpha_sharp = ExtendedReal::finite(1.0);
    return pt;
}

inline SpectrumCurve build_spectrum(SpectrumKind kind, const std::vector<double>& alpha_grid,
                                    const PressureCurve& curve, const PressureParams& p = {},
                                    bool with_derivatives = false) {
    SpectrumCurve out;
    out.kind = kind;
    out.source = method_name(curve.method);
    out.points.resize(alpha_grid.size());
    detail::parallel_for(alpha_grid.size(), p.threads, [&](std::uint64_t i) {
        if (kind == SpectrumKind::farey_tau) {
            out.points[i] = tau(curve, alpha_grid[i], p, with_derivatives);
        } else {
            out.points[i] = tau_d(curve, alpha_grid[i]);
        }
    });
    return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return g;
}

} // namespace mfsb
