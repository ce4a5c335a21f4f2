#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mfsb {

// f_0 = 0, f_1 = 1, f_{k+1} = f_k + f_{k-1}.
inline mpz_class fib(std::uint64_t k) {
    if (k == 0) return 0;
    mpz_class a = 0, b = 1;
    for (std::uint64_t i = 1; i < k; ++i) {
        mpz_class t = a + b;
        a = std::move(b);
        b = std::move(t);
    }
    return b;
}

// Lucas numbers: L_0 = 2, L_1 = 1, same recurrence.
inline mpz_class lucas(std::uint64_t k) {
    if (k == 0) return 2;
    mpz_class a = 2, b = 1;
    for (std::uint64_t i = 1; i < k; ++i) {
        mpz_class t = a + b;
        a = std::move(b);
        b = std::move(t);
    }
    return b;
}

// Growable cache for hot loops (exhaustive word scans). Not thread-safe;
// use one instance per worker.
class FibSequence {
public:
    FibSequence() : cache_{0, 1} {}

    const mpz_class& operator()(std::size_t k) {
        while (cache_.size() <= k) {
            cache_.push_back(cache_[cache_.size() - 1] + cache_[cache_.size() - 2]);
        }
        return cache_[k];
    }

    std::size_t size() const { return cache_.size(); }

private:
    std::vector<mpz_class> cache_;
};

class LucasSequence {
public:
    LucasSequence() : cache_{2, 1} {}

    const mpz_class& operator()(std::size_t k) {
        while (cache_.size() <= k) {
            cache_.push_back(cache_[cache_.size() - 1] + cache_[cache_.size() - 2]);
        }
        return cache_[k];
    }

private:
    std::vector<mpz_class> cache_;
};

namespace detail {

// gamma^e = (L_e + F_e sqrt5)/2 for any integer e, with the signed extensions
// F_{-n} = (-1)^{n+1} F_n and L_{-n} = (-1)^n L_n.
inline void golden_power_parts(long e, FibSequence& fibs, LucasSequence& lucs,
                               mpz_class& l_out, mpz_class& f_out) {
    if (e >= 0) {
        l_out = lucs(static_cast<std::size_t>(e));
        f_out = fibs(static_cast<std::size_t>(e));
        return;
    }
    const auto n = static_cast<std::size_t>(-e);
    l_out = lucs(n);
    f_out = fibs(n);
    if (n % 2 == 1) l_out = -l_out;
    else f_out = -f_out;
}

} // namespace detail

// Exact test of  q <= 4^p * gamma^e  over Z[sqrt5], valid for any signs of
// p and e. Used for the denominator bound q_k <= gamma^tau rho^(tau-k-1)
// after rewriting rho = 4 gamma^-3.
inline bool leq_scaled_golden_power(const mpz_class& q, long p, long e,
                                    FibSequence& fibs, LucasSequence& lucs) {
    if (q < 0) throw std::domain_error("leq_scaled_golden_power: q must be >= 0");
    mpz_class l, f;
    detail::golden_power_parts(e, fibs, lucs, l, f);
    // Compare 2*q*4^max(0,-p)  <=  4^max(0,p) * (l + f sqrt5).
    mpz_class lhs = 2 * q;
    if (p < 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 4, static_cast<unsigned long>(-p));
        lhs *= scale;
    } else if (p > 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 4, static_cast<unsigned long>(p));
        l *= scale;
        f *= scale;
    }
    // lhs - l <= f*sqrt5, all integers.
    mpz_class a = lhs - l;
    if (f >= 0) {
        if (a <= 0) return true;
        return a * a <= 5 * f * f;
    }
    if (a >= 0) return false;
    return a * a >= 5 * f * f;
}

// Convenience: exact check of q <= gamma^tau * rho^(tau - k - 1).
// rho^m = 4^m gamma^{-3m}, so the bound is 4^(tau-k-1) gamma^(3k+3-2tau).
inline bool denominator_golden_bound_holds(const mpz_class& q, std::uint64_t tau, std::uint64_t k,
                                           FibSequence& fibs, LucasSequence& lucs) {
    const long p = static_cast<long>(tau) - static_cast<long>(k) - 1;
    const long e = 3 * static_cast<long>(k) + 3 - 2 * static_cast<long>(tau);
    return leq_scaled_golden_power(q, p, e, fibs, lucs);
}

} // namespace mfsb
