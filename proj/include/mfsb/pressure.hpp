#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfsb/constants.hpp"
#include "mfsb/cont_frac.hpp"
#include "mfsb/detail/chebyshev.hpp"
#include "mfsb/detail/parallel.hpp"
#include "mfsb/detail/zeta_tails.hpp"
#include "mfsb/errors.hpp"
#include "mfsb/log_sum_exp.hpp"
#include "mfsb/stern_brocot.hpp"

namespace mfsb {

enum class PressureMethod { direct_level, induced_root, operator_eig, word_sum };

inline const char* method_name(PressureMethod m) {
    switch (m) {
        case PressureMethod::direct_level: return "direct-level";
        case PressureMethod::induced_root: return "induced-root";
        case PressureMethod::operator_eig: return "operator-eig";
        case PressureMethod::word_sum: return "word-sum";
    }
    return "?";
}

struct PressureParams {
    int degree = 32;           // collocation node count
    int taylor_terms = 8;      // tail expansion depth
    std::uint64_t digit_cap = 0; // 0 = untruncated (analytic tails)
    double root_tol = 1e-12;
    double power_tol = 1e-13;
    int power_max_iter = 500;
    unsigned threads = 0;
    unsigned depth_cap = kDefaultDepthCap;
};

// ---------------------------------------------------------------------------
// Finite-level partition sums
// ---------------------------------------------------------------------------

// (1/n) log sum_{T in level-n partition} |T|^theta, several theta at once in
// a single sweep. Lengths are exact 1/(t_k t_{k+1}); only the final log is
// floating point.
inline std::vector<double> direct_pressure_estimates(const std::vector<double>& thetas, unsigned n,
                                                     unsigned threads = 0,
                                                     unsigned cap = kDefaultDepthCap) {
    if (n < 1) throw std::domain_error("direct_pressure_estimate: need n >= 1");
    if (n > cap) throw depth_cap_error("direct_pressure_estimate: depth above cap");
    const std::uint64_t count = std::uint64_t{1} << n;
    struct Acc {
        std::vector<LogSumAccumulator> per_theta;
    };
    const std::size_t nt = thetas.size();
    Acc total = detail::chunked_reduce<Acc>(
        count, std::uint64_t{1} << 16, threads,
        [&](std::uint64_t lo, std::uint64_t hi) {
            Acc acc;
            acc.per_theta.resize(nt);
            detail::DenStream stream(n, lo);
            std::uint64_t dl = 0, dr = 0;
            double log_dl = 0.0, log_dr = 0.0;
            bool have_prev = false;
            std::uint64_t prev_dr = 0;
            for (std::uint64_t k = lo; k < hi; ++k) {
                if (!stream.next(dl, dr)) break;
                log_dl = (have_prev && dl == prev_dr) ? log_dr : std::log(static_cast<double>(dl));
                log_dr = std::log(static_cast<double>(dr));
                prev_dr = dr;
                have_prev = true;
                const double loglen = -(log_dl + log_dr);
                for (std::size_t t = 0; t < nt; ++t) acc.per_theta[t].add(thetas[t] * loglen);
            }
            return acc;
        },
        [](Acc& into, Acc&& part) {
            if (into.per_theta.empty()) {
                into = std::move(part);
                return;
            }
            for (std::size_t t = 0; t < into.per_theta.size(); ++t) {
                into.per_theta[t].merge(part.per_theta[t]);
            }
        },
        Acc{});
    std::vector<double> out(nt);
    for (std::size_t t = 0; t < nt; ++t) out[t] = total.per_theta[t].value() / static_cast<double>(n);
    return out;
}

inline double direct_pressure_estimate(double theta, unsigned n, unsigned threads = 0,
                                       unsigned cap = kDefaultDepthCap) {
    return direct_pressure_estimates({theta}, n, threads, cap)[0];
}

// (1/n) log sum_{k} sum_{A_k^n} q_k^(-2 theta): the same growth rate written
// through approximant denominators.
inline double pressure_via_denominators(double theta, unsigned n, unsigned cap = kDefaultDepthCap) {
    if (n < 2) throw std::domain_error("pressure_via_denominators: need n >= 2");
    if (n > cap) throw depth_cap_error("pressure_via_denominators: depth above cap");
    LogSumAccumulator acc;
    for (std::uint64_t k = 1; k <= n - 1; ++k) {
        for_each_composition(n, k, [&](const std::vector<std::uint64_t>& a) {
            // q via the standard recurrence; fits in 64 bits for n <= cap
            std::uint64_t qm1 = 0, qk = 1;
            for (std::uint64_t d : a) {
                const std::uint64_t next = d * qk + qm1;
                qm1 = qk;
                qk = next;
            }
            acc.add(-2.0 * theta * std::log(static_cast<double>(qk)));
        });
    }
    return acc.value() / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Transfer operator on [0,1]
// ---------------------------------------------------------------------------
//
// (L f)(x) = sum_{n >= 1} e^{-q n} (n + x)^{-2 theta} f(1/(n + x)).
//
// Collocation on a Chebyshev grid. The digit sum is split into an explicit
// head n <= N and an analytic tail: the interpolant's Taylor expansion at 0
// turns the tail into damped power sums Z_j(x) = sum_{n>N} e^{-qn}(n+x)^{-s-j}
// evaluated in closed form, so no digit truncation error is left beyond the
// expansion remainder (which is checked).
class TransferOperator {
public:
    TransferOperator(double theta, double q, const PressureParams& p = {})
        : theta_(theta), q_(q), grid_(static_cast<std::size_t>(p.degree)), params_(p) {
        if (q < 0.0) throw std::domain_error("TransferOperator: need q >= 0");
        build();
    }

    const detail::ChebGrid& grid() const { return grid_; }
    std::size_t head_terms() const { return head_n_; }

    // Apply the collocation matrix to node values.
    std::vector<double> apply(const std::vector<double>& v) const {
        const std::size_t m = grid_.size();
        std::vector<double> out(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            const double* row = matrix_.data() + i * m;
            for (std::size_t j = 0; j < m; ++j) acc += row[j] * v[j];
            out[i] = acc;
        }
        return out;
    }

    std::vector<double> apply_transpose(const std::vector<double>& v) const {
        const std::size_t m = grid_.size();
        std::vector<double> out(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double* row = matrix_.data() + j * m;
            const double vj = v[j];
            for (std::size_t i = 0; i < m; ++i) out[i] += row[i] * vj;
        }
        return out;
    }

    // Diagonally balanced copy (Osborne sweeps): same spectrum, far smaller
    // non-normality, so two-sided quotients stay well conditioned even when
    // the kernel weights span many orders of magnitude.
    std::vector<double> balanced_matrix() const {
        const std::size_t m = grid_.size();
        std::vector<double> a = matrix_;
        std::vector<double> scale(m, 1.0);
        for (int sweep = 0; sweep < 12; ++sweep) {
            bool moved = false;
            for (std::size_t i = 0; i < m; ++i) {
                double r = 0.0, c = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i) continue;
                    r += std::abs(a[i * m + j]);
                    c += std::abs(a[j * m + i]);
                }
                if (r == 0.0 || c == 0.0) continue;
                const double f = std::sqrt(r / c);
                if (f > 1.26 || f < 0.79) {
                    moved = true;
                    for (std::size_t j = 0; j < m; ++j) {
                        a[i * m + j] /= f; // row i down
                        a[j * m + i] *= f; // column i up
                    }
                    scale[i] *= f;
                }
            }
            if (!moved) break;
        }
        return a;
    }

    // Leading eigenvalue by deterministic two-sided power iteration from
    // f = 1. The two-sided quotient w'Mv / w'v cancels the eigenvalue
    // conditioning of the non-normal collocation matrix. When the true
    // leading eigenvalue sits far below the matrix norm, a spurious aliasing
    // mode eventually grows out of roundoff; the iterate with the smallest
    // residual is the answer, so convergence is tracked by residual and
    // iteration stops at its noise floor.
    double leading_eigenvalue() const {
        const std::size_t m = grid_.size();
        const std::vector<double> a = balanced_matrix();
        const auto mul = [&](const std::vector<double>& x, bool transpose) {
            std::vector<double> out(m, 0.0);
            if (!transpose) {
                for (std::size_t i = 0; i < m; ++i) {
                    double acc = 0.0;
                    const double* row = a.data() + i * m;
                    for (std::size_t j = 0; j < m; ++j) acc += row[j] * x[j];
                    out[i] = acc;
                }
            } else {
                for (std::size_t j = 0; j < m; ++j) {
                    const double* row = a.data() + j * m;
                    for (std::size_t i = 0; i < m; ++i) out[i] += row[i] * x[j];
                }
            }
            return out;
        };
        std::vector<double> v(m, 1.0), w(m, 1.0);
        double best_lambda = 0.0;
        double best_res = std::numeric_limits<double>::infinity();
        int stall = 0;
        for (int it = 0; it < params_.power_max_iter; ++it) {
            std::vector<double> u = mul(v, false);
            std::vector<double> uw = mul(w, true);
            double wu = 0.0, wv = 0.0, umax = 0.0, wmax = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                wu += w[i] * u[i];
                wv += w[i] * v[i];
                umax = std::max(umax, std::abs(u[i]));
                wmax = std::max(wmax, std::abs(uw[i]));
            }
            if (umax == 0.0 || wmax == 0.0 || !std::isfinite(umax) || !std::isfinite(wmax)) {
                throw numerical_error("TransferOperator: degenerate iterate");
            }
            const double lambda = wu / wv;
            double res = 0.0;
            for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(u[i] - lambda * v[i]));
            res /= umax;
            if (std::isfinite(lambda) && res < best_res) {
                best_res = res;
                best_lambda = lambda;
                stall = 0;
            } else {
                ++stall;
            }
            for (std::size_t i = 0; i < m; ++i) u[i] /= umax;
            for (std::size_t i = 0; i < m; ++i) uw[i] /= wmax;
            v = std::move(u);
            w = std::move(uw);
            if (best_res <= params_.power_tol && it >= 10) break;
            if (stall >= 10 && it >= 25) break; // residual noise floor
        }
        // the two-sided quotient's error scales like the square of the
        // residual, so a modest floor still yields eigenvalue logs well
        // inside every stated tolerance
        if (!(best_res < 1e-3)) {
            throw numerical_error("TransferOperator: power iteration did not converge");
        }
        return best_lambda;
    }

    // Inverse iteration targeted at a shift known to sit within a few percent
    // of the leading eigenvalue. Used where that eigenvalue lies so far below
    // the matrix norm that plain power iteration drowns in aliasing noise
    // (the Gauss-side operator at large theta, where e^{-2 theta log gamma}
    // pins it).
    double leading_eigenvalue_near(double sigma) const {
        const std::size_t m = grid_.size();
        const auto lu_factor = [m](std::vector<double> a) {
            std::vector<std::size_t> piv(m);
            for (std::size_t i = 0; i < m; ++i) piv[i] = i;
            for (std::size_t col = 0; col < m; ++col) {
                std::size_t imax = col;
                for (std::size_t r = col + 1; r < m; ++r) {
                    if (std::abs(a[r * m + col]) > std::abs(a[imax * m + col])) imax = r;
                }
                if (a[imax * m + col] == 0.0) {
                    a[imax * m + col] = 1e-300; // sigma numerically on an eigenvalue
                }
                if (imax != col) {
                    for (std::size_t j = 0; j < m; ++j) std::swap(a[col * m + j], a[imax * m + j]);
                    std::swap(piv[col], piv[imax]);
                }
                const double d = a[col * m + col];
                for (std::size_t r = col + 1; r < m; ++r) {
                    const double f = a[r * m + col] / d;
                    a[r * m + col] = f;
                    for (std::size_t j = col + 1; j < m; ++j) a[r * m + j] -= f * a[col * m + j];
                }
            }
            return std::pair{std::move(a), std::move(piv)};
        };
        const auto lu_solve = [m](const std::vector<double>& a, const std::vector<std::size_t>& piv,
                                  const std::vector<double>& rhs) {
            std::vector<double> x(m);
            for (std::size_t i = 0; i < m; ++i) x[i] = rhs[piv[i]];
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < i; ++j) x[i] -= a[i * m + j] * x[j];
            }
            for (std::size_t i = m; i-- > 0;) {
                for (std::size_t j = i + 1; j < m; ++j) x[i] -= a[i * m + j] * x[j];
                x[i] /= a[i * m + i];
            }
            return x;
        };
        std::vector<double> balanced = balanced_matrix();
        std::vector<double> shifted = balanced;
        for (std::size_t i = 0; i < m; ++i) shifted[i * m + i] -= sigma;
        std::vector<double> shifted_t(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) shifted_t[j * m + i] = shifted[i * m + j];
        }
        const auto [lu, piv] = lu_factor(std::move(shifted));
        const auto [lu_t, piv_t] = lu_factor(std::move(shifted_t));
        const auto bal_apply = [&](const std::vector<double>& x) {
            std::vector<double> out(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                double acc = 0.0;
                const double* row = balanced.data() + i * m;
                for (std::size_t j = 0; j < m; ++j) acc += row[j] * x[j];
                out[i] = acc;
            }
            return out;
        };

        std::vector<double> v(m, 1.0), w(m, 1.0);
        double best_lambda = sigma;
        double best_res = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 60; ++it) {
            std::vector<double> nv = lu_solve(lu, piv, v);
            std::vector<double> nw = lu_solve(lu_t, piv_t, w);
            double vmax = 0.0, wmax = 0.0;
            for (double t : nv) vmax = std::max(vmax, std::abs(t));
            for (double t : nw) wmax = std::max(wmax, std::abs(t));
            if (vmax == 0.0 || wmax == 0.0 || !std::isfinite(vmax) || !std::isfinite(wmax)) break;
            for (double& t : nv) t /= vmax;
            for (double& t : nw) t /= wmax;
            const std::vector<double> mv = bal_apply(nv);
            double wu = 0.0, wv = 0.0, umax = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                wu += nw[i] * mv[i];
                wv += nw[i] * nv[i];
                umax = std::max(umax, std::abs(mv[i]));
            }
            const double lambda = wu / wv;
            double res = 0.0;
            for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(mv[i] - lambda * nv[i]));
            if (umax > 0.0) res /= umax;
            if (std::isfinite(lambda) && res < best_res) {
                best_res = res;
                best_lambda = lambda;
            }
            if (best_res <= params_.power_tol && it >= 3) break;
            v = std::move(nv);
            w = std::move(nw);
        }
        if (!(best_res < 1e-3)) {
            throw numerical_error("TransferOperator: inverse iteration did not converge");
        }
        return best_lambda;
    }

    double log_leading_eigenvalue() const {
        const double lam = leading_eigenvalue();
        if (!(lam > 0.0)) throw numerical_error("TransferOperator: nonpositive leading eigenvalue");
        return std::log(lam);
    }

    // Value of (L^k f)(x0) for f = 1, interpolated; used by word-sum checks.
    double iterate_at(double x0, unsigned k) const {
        std::vector<double> v(grid_.size(), 1.0);
        double log_scale = 0.0;
        for (unsigned i = 0; i < k; ++i) {
            v = apply(v);
            double mx = 0.0;
            for (double t : v) mx = std::max(mx, std::abs(t));
            if (mx == 0.0) throw numerical_error("TransferOperator: zero iterate");
            for (double& t : v) t /= mx;
            log_scale += std::log(mx);
        }
        const double val = grid_.interpolate(v, x0);
        if (!(val > 0.0)) throw numerical_error("TransferOperator: nonpositive iterate value");
        return std::log(val) + log_scale;
    }

private:
    void build() {
        const double s = 2.0 * theta_;
        const std::size_t m = grid_.size();
        matrix_.assign(m * m, 0.0);

        // head length: everything if q is comfortably positive, else an
        // explicit head plus analytic tails. The head must reach far enough
        // that the moment decay (head^-j) dominates the conditioning of the
        // Taylor extraction, which grows with the collocation degree.
        constexpr double kDirectQ = 1.0 / 64.0;
        const std::uint64_t tail_head = std::max<std::uint64_t>(64, (m * m) / 8);
        bool use_tail = false;
        std::uint64_t head;
        if (q_ >= kDirectQ) {
            const double need = (46.0 + 3.0 * std::max(0.0, -s)) / q_;
            head = std::max<std::uint64_t>(48, static_cast<std::uint64_t>(need) + 1);
            if (params_.digit_cap > 0) head = std::min(head, params_.digit_cap);
        } else if (params_.digit_cap > 0 && params_.digit_cap <= tail_head) {
            head = params_.digit_cap;
        } else {
            head = tail_head;
            use_tail = true;
            if (s <= 1.0) {
                throw std::domain_error("TransferOperator: q too small for divergent digit sum (s <= 1)");
            }
        }
        head_n_ = head;

        std::vector<double> row(m);
        for (std::uint64_t n = 1; n <= head; ++n) {
            for (std::size_t i = 0; i < m; ++i) {
                const double x = grid_.x[i];
                const double w = std::exp(-q_ * static_cast<double>(n) -
                                          s * std::log(static_cast<double>(n) + x));
                if (w == 0.0) continue;
                const double p = 1.0 / (static_cast<double>(n) + x);
                cardinal_into(p, row);
                double* mrow = matrix_.data() + i * m;
                for (std::size_t j = 0; j < m; ++j) mrow[j] += w * row[j];
            }
        }

        const bool capped = params_.digit_cap > 0;
        if (capped && params_.digit_cap <= head) return; // truncation fully explicit
        if (!use_tail) return; // explicit head reached the decay floor

        // analytic tails: M[i][j] += sum_t Z_t(x_i) * A[t][j]
        const std::size_t terms = static_cast<std::size_t>(params_.taylor_terms);
        const auto taylor = grid_.taylor_at_zero_matrix(terms);
        double z_first = 0.0, z_last = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = grid_.x[i];
            double* mrow = matrix_.data() + i * m;
            for (std::size_t t = 0; t < terms; ++t) {
                const double st = s + static_cast<double>(t);
                double z = std::exp(q_ * x) *
                           detail::damped_power_sum(st, q_, static_cast<double>(head) + 1.0 + x);
                if (capped) {
                    z -= std::exp(q_ * x) *
                         detail::damped_power_sum(st, q_, static_cast<double>(params_.digit_cap) + 1.0 + x);
                }
                if (t == 0) z_first = std::max(z_first, std::abs(z));
                if (t + 1 == terms) z_last = std::max(z_last, std::abs(z));
                for (std::size_t j = 0; j < m; ++j) mrow[j] += z * taylor[t][j];
            }
        }
        // the expansion basis must have decayed by many orders across the
        // retained terms, otherwise the head is too short for this weight
        if (z_last > 1e-9 * std::max(z_first, 1e-300)) {
            throw numerical_error("TransferOperator: tail expansion remainder too large; raise head or taylor_terms");
        }
    }

    void cardinal_into(double p, std::vector<double>& row) const {
        const std::size_t m = grid_.size();
        double denom = 0.0;
        bool exact = false;
        for (std::size_t j = 0; j < m; ++j) {
            if (p == grid_.x[j]) {
                std::fill(row.begin(), row.end(), 0.0);
                row[j] = 1.0;
                exact = true;
                break;
            }
            row[j] = grid_.w[j] / (p - grid_.x[j]);
            denom += row[j];
        }
        if (exact) return;
        for (std::size_t j = 0; j < m; ++j) row[j] /= denom;
    }

    double theta_;
    double q_;
    detail::ChebGrid grid_;
    PressureParams params_;
    std::uint64_t head_n_ = 0;
    std::vector<double> matrix_;
};

// log of the leading eigenvalue of the induced operator with weights
// e^{-q n} (n + x)^{-2 theta}. Defined for theta < 1 with q > 0, and for the
// boundary pair (1, 0).
inline double induced_pressure(double theta, double q, const PressureParams& p = {}) {
    if (q < 0.0) throw std::domain_error("induced_pressure: need q >= 0");
    if (q == 0.0 && theta < 1.0) {
        throw std::domain_error("induced_pressure: q = 0 only at theta >= 1 (use the Gauss-side pressure)");
    }
    return TransferOperator(theta, q, p).log_leading_eigenvalue();
}

// ---------------------------------------------------------------------------
// beta(theta): the root of P*(theta, q) = 0 in q
// ---------------------------------------------------------------------------

namespace detail {

inline double induced_log_eig(double theta, double q, const PressureParams& p) {
    return TransferOperator(theta, q, p).log_leading_eigenvalue();
}

} // namespace detail

// Unique q > 0 with P*(theta, q) = 0; equals the Stern-Brocot pressure for
// theta < 1. Bracketed by the golden-mean sandwich for theta <= 0 and by a
// geometric search towards 0 for theta near 1.
inline double beta(double theta, const PressureParams& p = {}) {
    if (theta >= 1.0) throw std::domain_error("beta: need theta < 1");
    const double lg = std::log(constants().gamma);
    double q_lo, q_hi;
    if (theta <= 0.0) {
        // beta is decreasing with beta(0) = log 2, and beta >= -2 theta log gamma
        q_lo = std::max(-2.0 * theta * lg, 0.55);
        q_hi = std::numbers::ln2 - 2.0 * theta * lg;
    } else {
        q_hi = 0.75;
        q_lo = 1.0 / 64.0;
        if (detail::induced_log_eig(theta, q_lo, p) < 0.0) {
            // root below 1/64: geometric descent (theta near 1, s > 1 there)
            double q = q_lo;
            double f = -1.0;
            for (int i = 0; i < 400; ++i) {
                q_hi = q;
                q *= 0.25;
                if (q < 1e-290) throw numerical_error("beta: bracket descent underflow");
                f = detail::induced_log_eig(theta, q, p);
                if (f > 0.0) break;
            }
            if (f <= 0.0) throw numerical_error("beta: no lower bracket found");
            q_lo = q;
        }
    }
    // Illinois false position in u = log q; f(u) = P*(theta, e^u) is
    // decreasing, so fa > 0 > fb once the bracket stands.
    double a = std::log(q_lo), b = std::log(q_hi);
    double fa = detail::induced_log_eig(theta, std::exp(a), p);
    double fb = detail::induced_log_eig(theta, std::exp(b), p);
    if (fa == 0.0) return std::exp(a);
    if (fb == 0.0) return std::exp(b);
    if (fa < 0.0) { // bracket endpoint can sit on the root within noise
        a -= 0.75;
        fa = detail::induced_log_eig(theta, std::exp(a), p);
    }
    if (fb > 0.0) {
        b += 0.75;
        fb = detail::induced_log_eig(theta, std::exp(b), p);
    }
    if (!(fa > 0.0 && fb < 0.0)) throw numerical_error("beta: bracket failure");
    int last_side = 0;
    for (int it = 0; it < 300; ++it) {
        double u = (a * fb - b * fa) / (fb - fa);
        const double width = b - a;
        if (!(u > a && u < b)) u = 0.5 * (a + b);
        const double fu = detail::induced_log_eig(theta, std::exp(u), p);
        if (std::abs(fu) <= 5e-15 || width <= p.root_tol) return std::exp(u);
        if (fu > 0.0) {
            a = u;
            fa = fu;
            if (last_side == +1) fb *= 0.5;
            last_side = +1;
        } else {
            b = u;
            fb = fu;
            if (last_side == -1) fa *= 0.5;
            last_side = -1;
        }
    }
    throw numerical_error("beta: root iteration did not converge");
}

// P(theta): beta below 1, identically zero from 1 on.
inline double stern_brocot_pressure(double theta, const PressureParams& p = {}) {
    if (theta >= 1.0) return 0.0;
    return beta(theta, p);
}

// ---------------------------------------------------------------------------
// Gauss-side pressure
// ---------------------------------------------------------------------------

inline constexpr double kDiophantineMargin = 0.05;
inline constexpr double kDiophantineThetaMax = 24.0;

// log of the leading eigenvalue of (L f)(x) = sum (n+x)^{-2 theta} f(1/(n+x)).
// The domain is cut at 1/2 + margin (the sum degenerates towards 1/2) and at
// a large-theta ceiling where the eigenvalue drops under double noise.
inline double diophantine_pressure(double theta, const PressureParams& p = {},
                                   double margin = kDiophantineMargin) {
    if (theta <= 0.5 + margin) {
        throw std::domain_error("diophantine_pressure: theta must exceed 1/2 + margin");
    }
    if (theta > kDiophantineThetaMax) {
        throw std::domain_error("diophantine_pressure: theta ceiling exceeded");
    }
    const TransferOperator op(theta, 0.0, p);
    if (theta >= 4.0) {
        // the golden asymptote pins the leading eigenvalue within a few
        // percent here; target it directly
        const double sigma = std::exp(-2.0 * theta * std::log(constants().gamma));
        const double lam = op.leading_eigenvalue_near(sigma);
        if (!(lam > 0.0)) throw numerical_error("diophantine_pressure: nonpositive eigenvalue");
        return std::log(lam);
    }
    return op.log_leading_eigenvalue();
}

// (1/k) log sum over digit words of length k with digits <= digit_cap of
// q_k^{-2 theta}; the truncated finite-word cross-check of the same limit.
inline double diophantine_pressure_wordsum(double theta, unsigned k, std::uint64_t digit_cap,
                                           const PressureParams& p = {}) {
    if (theta <= 0.5) throw std::domain_error("diophantine_pressure_wordsum: need theta > 1/2");
    if (k < 1) throw std::domain_error("diophantine_pressure_wordsum: need k >= 1");
    if (digit_cap < 1) throw std::domain_error("diophantine_pressure_wordsum: need digit_cap >= 1");
    PressureParams q = p;
    q.digit_cap = digit_cap;
    TransferOperator op(theta, 0.0, q);
    return op.iterate_at(0.0, k) / static_cast<double>(k);
}

// ---------------------------------------------------------------------------
// Sampled curves
// ---------------------------------------------------------------------------

struct PressureCurve {
    std::vector<double> theta;
    std::vector<double> value;
    std::vector<double> error_bound;
    PressureMethod method = PressureMethod::induced_root;
    PressureParams params;

    std::size_t size() const { return theta.size(); }

    // Convexity and monotonicity on the grid, within slack scaled by value.
    std::optional<std::string> validate(double slack = 1e-9) const {
        for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
            const double tol = slack * std::max({1.0, std::abs(value[i]), std::abs(value[i + 1])});
            if (value[i + 1] > value[i] + tol) {
                return "curve increases at theta = " + std::to_string(theta[i + 1]);
            }
        }
        for (std::size_t i = 1; i + 1 < theta.size(); ++i) {
            const double h1 = theta[i] - theta[i - 1];
            const double h2 = theta[i + 1] - theta[i];
            const double lin = (value[i - 1] * h2 + value[i + 1] * h1) / (h1 + h2);
            const double tol = slack * std::max({1.0, std::abs(value[i]), std::abs(lin)});
            if (value[i] > lin + tol) {
                return "curve breaks convexity at theta = " + std::to_string(theta[i]);
            }
        }
        return std::nullopt;
    }
};

namespace detail {

inline void append_arith(std::vector<double>& g, double start, double step, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) g.push_back(start + step * static_cast<double>(i));
}

} // namespace detail

// Farey-side default grid: coarse far left, geometric refinement towards the
// phase transition at 1.
inline std::vector<double> default_farey_theta_grid() {
    std::vector<double> g;
    detail::append_arith(g, -45.0, 5.0, 8);   // -45 .. -10
    detail::append_arith(g, -9.0, 1.0, 5);    // -9 .. -5
    detail::append_arith(g, -4.75, 0.25, 22); // -4.75 .. 0.5
    detail::append_arith(g, 0.55, 0.05, 8);   // 0.55 .. 0.9
    for (int i = 0; i <= 21; ++i) g.push_back(1.0 - std::pow(10.0, -1.5 - 0.5 * i));
    return g;
}

// Gauss-side default grid: dense near the singularity cut, extra dense
// through the Levy point at theta = 1, geometric out to the ceiling.
inline std::vector<double> default_gauss_theta_grid() {
    std::vector<double> g;
    detail::append_arith(g, 0.551, 0.003, 23); // 0.551 .. 0.617
    detail::append_arith(g, 0.62, 0.02, 14);   // 0.62 .. 0.88
    detail::append_arith(g, 0.9, 0.002, 50);   // 0.9 .. 0.998
    g.push_back(1.0);
    detail::append_arith(g, 1.002, 0.002, 50); // 1.002 .. 1.1
    detail::append_arith(g, 1.12, 0.02, 25);   // 1.12 .. 1.6
    detail::append_arith(g, 1.7, 0.1, 24);     // 1.7 .. 4.0
    for (double t = 4.6; t <= kDiophantineThetaMax; t *= 1.15) g.push_back(t);
    return g;
}

inline PressureCurve build_pressure_curve(PressureMethod method, std::vector<double> theta_grid,
                                          const PressureParams& p = {}, unsigned level_n = 18) {
    std::sort(theta_grid.begin(), theta_grid.end());
    PressureCurve c;
    c.method = method;
    c.params = p;
    c.theta = std::move(theta_grid);
    c.value.resize(c.theta.size());
    c.error_bound.resize(c.theta.size());
    switch (method) {
        case PressureMethod::direct_level: {
            const auto vals = direct_pressure_estimates(c.theta, level_n, p.threads, p.depth_cap);
            c.value = vals;
            for (std::size_t i = 0; i < c.size(); ++i) {
                // finite-size scale: O(log n / n), reported not asserted
                c.error_bound[i] = (std::numbers::ln2 + std::abs(c.theta[i]) *
                                    std::log(static_cast<double>(level_n) + 1.0)) /
                                   static_cast<double>(level_n);
            }
            break;
        }
        case PressureMethod::induced_root: {
            detail::parallel_for(c.size(), p.threads, [&](std::uint64_t i) {
                c.value[i] = stern_brocot_pressure(c.theta[i], p);
                c.error_bound[i] = p.root_tol;
            });
            break;
        }
        case PressureMethod::operator_eig: {
            detail::parallel_for(c.size(), p.threads, [&](std::uint64_t i) {
                c.value[i] = diophantine_pressure(c.theta[i], p);
                c.error_bound[i] = 1e-12;
            });
            break;
        }
        case PressureMethod::word_sum: {
            const unsigned k = std::max(1u, level_n);
            const std::uint64_t cap = p.digit_cap > 0 ? p.digit_cap : 200;
            detail::parallel_for(c.size(), p.threads, [&](std::uint64_t i) {
                c.value[i] = diophantine_pressure_wordsum(c.theta[i], k, cap, p);
                c.error_bound[i] = 1.0 / static_cast<double>(k);
            });
            break;
        }
    }
    return c;
}

} // namespace mfsb
