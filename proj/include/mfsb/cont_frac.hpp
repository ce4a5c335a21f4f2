#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfsb/binary_word.hpp"
#include "mfsb/fraction.hpp"

namespace mfsb {

// Finite continued-fraction word [a_1, ..., a_k], digits a_i >= 1.
// The canonical representative of a rational has last digit >= 2 (single
// digits excepted, where x = 1/a_1); [..., a, 1] is the other representative
// of [..., a+1] and is kept only as a marked non-canonical word.
class CFWord {
public:
    CFWord() = default;
    explicit CFWord(std::vector<std::uint64_t> digits) : digits_(std::move(digits)) {
        for (auto a : digits_) {
            if (a < 1) throw std::invalid_argument("CFWord: digits must be >= 1");
        }
    }

    static CFWord parse(const std::string& csv) {
        std::vector<std::uint64_t> d;
        std::size_t pos = 0;
        while (pos < csv.size()) {
            std::size_t next = csv.find(',', pos);
            if (next == std::string::npos) next = csv.size();
            d.push_back(std::stoull(csv.substr(pos, next - pos)));
            pos = next + 1;
        }
        return CFWord(std::move(d));
    }

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    std::uint64_t operator[](std::size_t i) const { return digits_[i]; }
    std::uint64_t back() const { return digits_.back(); }
    const std::vector<std::uint64_t>& digits() const { return digits_; }

    std::uint64_t digit_sum() const {
        return std::accumulate(digits_.begin(), digits_.end(), std::uint64_t{0});
    }

    // Partial sum tau_k = a_1 + ... + a_k.
    std::uint64_t digit_sum(std::size_t k) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < k && i < digits_.size(); ++i) s += digits_[i];
        return s;
    }

    bool canonical() const {
        if (digits_.empty()) return false;
        if (digits_.size() == 1) return true;
        return digits_.back() >= 2;
    }

    CFWord prefix(std::size_t k) const {
        return CFWord(std::vector<std::uint64_t>(digits_.begin(), digits_.begin() + std::min(k, digits_.size())));
    }

    void push_back(std::uint64_t a) {
        if (a < 1) throw std::invalid_argument("CFWord: digits must be >= 1");
        digits_.push_back(a);
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(digits_[i]);
        }
        return s + "]";
    }

    friend bool operator==(const CFWord& a, const CFWord& b) { return a.digits_ == b.digits_; }
    friend bool operator<(const CFWord& a, const CFWord& b) { return a.digits_ < b.digits_; }

private:
    std::vector<std::uint64_t> digits_;
};

// Run-length view of an {A,B}-word: leading letter X and block lengths
// (n_1, n_2, ...) for X^{n_1} Y^{n_2} X^{n_3} ...
struct RunLengthWord {
    Letter lead = Letter::A;
    std::vector<std::uint64_t> blocks;

    RunLengthWord() = default;
    RunLengthWord(Letter l, std::vector<std::uint64_t> b) : lead(l), blocks(std::move(b)) {
        for (auto n : blocks) {
            if (n < 1) throw std::invalid_argument("RunLengthWord: blocks must be >= 1");
        }
    }

    std::uint64_t block_sum(std::size_t k) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < k && i < blocks.size(); ++i) s += blocks[i];
        return s;
    }

    BinaryWord flatten() const {
        BinaryWord w;
        Letter x = lead;
        for (auto n : blocks) {
            for (std::uint64_t i = 0; i < n; ++i) w.push_back(x);
            x = other(x);
        }
        return w;
    }

    friend bool operator==(const RunLengthWord& a, const RunLengthWord& b) {
        return a.lead == b.lead && a.blocks == b.blocks;
    }
};

// Exact value of [a_1, ..., a_k] in (0, 1), evaluated bottom-up.
inline Fraction cf_value(const CFWord& w) {
    if (w.empty()) throw std::invalid_argument("cf_value: empty word");
    Fraction x(0);
    for (std::size_t i = w.size(); i-- > 0;) {
        x = (Fraction(mpz_class(static_cast<unsigned long>(w[i])), mpz_class(1)) + x).reciprocal();
    }
    return x;
}

// Convergents p_k/q_k of a digit word, exact, with the usual seeds
// p_0/q_0 = 0/1.
class ConvergentTable {
public:
    explicit ConvergentTable(const CFWord& w) {
        p_.reserve(w.size() + 1);
        q_.reserve(w.size() + 1);
        p_.emplace_back(0);
        q_.emplace_back(1);
        mpz_class pm1 = 1, qm1 = 0; // virtual index -1
        for (std::size_t i = 0; i < w.size(); ++i) {
            mpz_class a(static_cast<unsigned long>(w[i]));
            mpz_class pk = a * p_.back() + pm1;
            mpz_class qk = a * q_.back() + qm1;
            pm1 = p_.back();
            qm1 = q_.back();
            p_.push_back(std::move(pk));
            q_.push_back(std::move(qk));
        }
    }

    std::size_t depth() const { return q_.size() - 1; }
    const mpz_class& p(std::size_t k) const { return p_.at(k); }
    const mpz_class& q(std::size_t k) const { return q_.at(k); }

    Fraction approximant(std::size_t k) const { return Fraction(p_.at(k), q_.at(k)); }

private:
    std::vector<mpz_class> p_, q_;
};

// Euclid's algorithm on an exact rational in (0, 1); terminates with last
// digit >= 2 (or the single-digit word [a]).
inline CFWord cf_expand(const Fraction& x) {
    if (x <= 0 || x >= 1) throw std::domain_error("cf_expand: need 0 < x < 1");
    std::vector<std::uint64_t> digits;
    mpz_class num = x.num(), den = x.den();
    // x_i = num/den; digit = floor(den/num), next = (den mod num)/num reversed.
    while (num != 0) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
        if (!a.fits_ulong_p()) throw std::overflow_error("cf_expand: digit exceeds 64 bits");
        digits.push_back(mpz_get_ui(a.get_mpz_t()));
        den = std::move(num);
        num = std::move(r);
    }
    return CFWord(std::move(digits));
}

// Certified expansion of an interval [lo, hi]: digits are emitted only while
// every point of the interval shares them. `truncated` is set when the
// interval stopped certifying before max_digits (or before termination).
struct CertifiedCF {
    CFWord word;
    bool truncated = false;  // ran out of certified digits
    bool exact = false;      // lo == hi and the expansion terminated
};

// Unreduced numerator/denominator pairs: the Euclid steps never need
// canonical form, which saves a gcd per digit on large operands.
inline CertifiedCF cf_expand_interval(const Fraction& lo_in, const Fraction& hi_in,
                                      std::size_t max_digits) {
    Fraction lo = lo_in, hi = hi_in;
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 || hi >= 1) throw std::domain_error("cf_expand_interval: need [lo,hi] within (0,1)");
    CertifiedCF out;
    std::vector<std::uint64_t> digits;
    mpz_class ln = lo.num(), ld = lo.den(); // lower endpoint ln/ld
    mpz_class hn = hi.num(), hd = hi.den(); // upper endpoint hn/hd
    mpz_class a_hi, r_hi, a_lo, r_lo;
    while (digits.size() < max_digits) {
        if (ln == 0) {
            out.truncated = true; // interval reaches 0: next digit unbounded
            break;
        }
        // digit at the upper endpoint: floor(hd/hn); at the lower: floor(ld/ln)
        mpz_fdiv_qr(a_hi.get_mpz_t(), r_hi.get_mpz_t(), hd.get_mpz_t(), hn.get_mpz_t());
        mpz_fdiv_qr(a_lo.get_mpz_t(), r_lo.get_mpz_t(), ld.get_mpz_t(), ln.get_mpz_t());
        if (a_hi != a_lo || !a_hi.fits_ulong_p()) {
            out.truncated = true;
            break;
        }
        digits.push_back(mpz_get_ui(a_hi.get_mpz_t()));
        // x -> 1/x - a reverses the order: new lower from the old upper
        mpz_class new_ln = r_hi, new_ld = hn;
        mpz_class new_hn = r_lo, new_hd = ln;
        ln = std::move(new_ln);
        ld = std::move(new_ld);
        hn = std::move(new_hn);
        hd = std::move(new_hd);
        if (ln == 0 && hn == 0) {
            out.exact = true; // both endpoints terminated: the point was rational
            break;
        }
    }
    if (!out.exact && !out.truncated) {
        out.truncated = true; // digit budget exhausted mid-stream
    }
    out.word = CFWord(std::move(digits));
    return out;
}

// --- composition enumeration -----------------------------------------------

// All k-tuples (a_1,...,a_k), a_i >= 1, sum = n, a_k >= 2, in lexicographic
// order. Empty when k is out of range. The free coordinates are a_1..a_{k-1};
// the last digit absorbs the remainder and must stay >= 2, so the free sum is
// capped at n-2.
inline void for_each_composition(std::uint64_t n, std::uint64_t k,
                                 const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
    if (n < 2 || k < 1 || k > n - 1) return;
    std::vector<std::uint64_t> a(k, 1);
    a[k - 1] = n - (k - 1);
    while (true) {
        fn(a);
        if (k == 1) return;
        bool advanced = false;
        std::uint64_t prefix = 0;
        for (std::size_t i = 0; i + 1 < k; ++i) prefix += a[i];
        for (std::size_t j = k - 1; j-- > 0;) {
            prefix -= a[j]; // sum of free digits before position j
            const std::uint64_t new_free_sum = prefix + a[j] + 1 + (k - 2 - j);
            if (new_free_sum <= n - 2) {
                a[j] += 1;
                for (std::size_t i = j + 1; i + 1 < k; ++i) a[i] = 1;
                a[k - 1] = n - new_free_sum;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

inline std::vector<CFWord> enumerate_Akn(std::uint64_t n, std::uint64_t k) {
    std::vector<CFWord> out;
    for_each_composition(n, k, [&](const std::vector<std::uint64_t>& a) {
        out.emplace_back(a);
    });
    return out;
}

inline mpz_class binomial(std::uint64_t n, std::uint64_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// --- Gauss and Farey maps ---------------------------------------------------

inline Fraction gauss_map(const Fraction& x) {
    if (x <= 0 || x >= 1) throw std::domain_error("gauss_map: need 0 < x < 1");
    const Fraction r = x.reciprocal();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return r - Fraction(std::move(fl), mpz_class(1));
}

inline double gauss_map(double x) {
    if (x <= 0.0 || x >= 1.0) throw std::domain_error("gauss_map: need 0 < x < 1");
    const double r = 1.0 / x;
    return r - std::floor(r);
}

// Digit shift on words.
inline CFWord gauss_shift(const CFWord& w) {
    if (w.empty()) throw std::invalid_argument("gauss_shift: empty word");
    return CFWord(std::vector<std::uint64_t>(w.digits().begin() + 1, w.digits().end()));
}

// Farey map x/(1-x) on [0,1/2], (1-x)/x on [1/2,1]; its inverse branches are
// x/(x+1) and 1/(x+1).
inline Fraction farey_map(const Fraction& x) {
    if (x < 0 || x > 1) throw std::domain_error("farey_map: need 0 <= x <= 1");
    const Fraction half(1, 2);
    if (x <= half) return x / (Fraction(1) - x);
    return (Fraction(1) - x) / x;
}

inline double farey_map(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("farey_map: need 0 <= x <= 1");
    return x <= 0.5 ? x / (1.0 - x) : (1.0 - x) / x;
}

// 1 on [0,1/2] (inverse branch x/(x+1)), 2 on (1/2,1].
inline int farey_branch(const Fraction& x) {
    if (x < 0 || x > 1) throw std::domain_error("farey_branch: need 0 <= x <= 1");
    return x <= Fraction(1, 2) ? 1 : 2;
}

// One Farey step on digit words: [1, a2, ...] -> [a2, ...] and
// [a1, ...] -> [a1 - 1, ...] for a1 >= 2.
inline CFWord farey_step(const CFWord& w) {
    if (w.empty()) throw std::invalid_argument("farey_step: empty word");
    if (w[0] == 1) return gauss_shift(w);
    std::vector<std::uint64_t> d = w.digits();
    d[0] -= 1;
    return CFWord(std::move(d));
}

// --- run-length <-> digit translations --------------------------------------

// A-leading (n_1, n_2, ...) -> [n_1 + 1, n_2, ...];
// B-leading (n_1, n_2, ...) -> [1, n_1, n_2, ...].
inline CFWord runlength_to_cf(const RunLengthWord& w) {
    if (w.blocks.empty()) throw std::invalid_argument("runlength_to_cf: empty word");
    std::vector<std::uint64_t> d;
    if (w.lead == Letter::A) {
        d = w.blocks;
        d[0] += 1;
    } else {
        d.reserve(w.blocks.size() + 1);
        d.push_back(1);
        d.insert(d.end(), w.blocks.begin(), w.blocks.end());
    }
    return CFWord(std::move(d));
}

inline RunLengthWord cf_to_runlength(const CFWord& w) {
    if (w.empty()) throw std::invalid_argument("cf_to_runlength: empty word");
    if (w[0] >= 2) {
        std::vector<std::uint64_t> b = w.digits();
        b[0] -= 1;
        return RunLengthWord(Letter::A, std::move(b));
    }
    if (w.size() < 2) throw std::domain_error("cf_to_runlength: [1] has no run-length form in (0,1)");
    return RunLengthWord(Letter::B,
                         std::vector<std::uint64_t>(w.digits().begin() + 1, w.digits().end()));
}

// Letter-swap involution on run-length words; on values it realizes
// x -> 1 - x.
inline RunLengthWord mirror(const RunLengthWord& w) {
    RunLengthWord m = w;
    m.lead = other(m.lead);
    return m;
}

inline CFWord mirror(const CFWord& w) {
    return runlength_to_cf(mirror(cf_to_runlength(w)));
}

// Run-length factorization of an {A,B}-word.
inline RunLengthWord runlength_of(const BinaryWord& w) {
    if (w.empty()) throw std::invalid_argument("runlength_of: empty word");
    RunLengthWord r;
    r.lead = w[0];
    std::uint64_t n = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] == w[i - 1]) {
            ++n;
        } else {
            r.blocks.push_back(n);
            n = 1;
        }
    }
    r.blocks.push_back(n);
    return r;
}

} // namespace mfsb
