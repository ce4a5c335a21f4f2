#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mfsb/binary_word.hpp"
#include "mfsb/cont_frac.hpp"
#include "mfsb/errors.hpp"
#include "mfsb/fraction.hpp"

namespace mfsb {

inline constexpr unsigned kDefaultDepthCap = 26;

// Half-open interval [left, right) of order n; index is 1-based within the
// 2^n-interval partition of [0,1).
struct Interval {
    Fraction left;
    Fraction right;
    unsigned order = 0;
    std::uint64_t index = 1;

    Fraction length() const { return right - left; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.left == b.left && a.right == b.right && a.order == b.order;
    }
};

// Level n of the mediant refinement: the 2^n + 1 ordered fractions from 0/1
// to 1/1. Materialized; use IntervalStream for large n.
class SternBrocotLevel {
public:
    static SternBrocotLevel build(unsigned n, unsigned cap = kDefaultDepthCap) {
        if (n > cap) throw depth_cap_error("SternBrocotLevel: depth " + std::to_string(n) +
                                           " above cap " + std::to_string(cap));
        SternBrocotLevel lvl;
        lvl.order_ = n;
        lvl.fracs_ = {Fraction(0), Fraction(1)};
        for (unsigned d = 0; d < n; ++d) {
            std::vector<Fraction> next;
            next.reserve(2 * lvl.fracs_.size() - 1);
            for (std::size_t k = 0; k + 1 < lvl.fracs_.size(); ++k) {
                next.push_back(lvl.fracs_[k]);
                next.push_back(mediant(lvl.fracs_[k], lvl.fracs_[k + 1]));
            }
            next.push_back(lvl.fracs_.back());
            lvl.fracs_ = std::move(next);
        }
        return lvl;
    }

    unsigned order() const { return order_; }
    std::size_t size() const { return fracs_.size(); }
    const Fraction& operator[](std::size_t k) const { return fracs_[k]; }
    const std::vector<Fraction>& fractions() const { return fracs_; }

    Interval interval(std::uint64_t k) const { // 1-based
        return Interval{fracs_[k - 1], fracs_[k], order_, k};
    }

private:
    unsigned order_ = 0;
    std::vector<Fraction> fracs_;
};

inline SternBrocotLevel level(unsigned n, unsigned cap = kDefaultDepthCap) {
    return SternBrocotLevel::build(n, cap);
}

inline std::vector<Interval> intervals(unsigned n, unsigned cap = kDefaultDepthCap) {
    const SternBrocotLevel lvl = level(n, cap);
    std::vector<Interval> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t k = 1; k < lvl.size(); ++k) out.push_back(lvl.interval(k));
    return out;
}

// Depth-first generator over the order-n partition, emitting intervals in
// increasing left-endpoint order in O(n) memory. Can be started at any index
// for range-splitting; results are independent of the split.
class IntervalStream {
public:
    IntervalStream(unsigned n, std::uint64_t start_index = 0, unsigned cap = kDefaultDepthCap)
        : n_(n), next_index_(start_index) {
        if (n > cap) throw depth_cap_error("IntervalStream: depth above cap");
        if (start_index >> n_) return; // already exhausted
        // Descend to the start interval, stacking right siblings.
        Fraction l(0), r(1);
        for (unsigned d = 0; d < n_; ++d) {
            Fraction m = mediant(l, r);
            const bool right = (start_index >> (n_ - 1 - d)) & 1u;
            if (right) {
                l = std::move(m);
            } else {
                stack_.push_back(Frame{m, r, d + 1});
                r = std::move(m);
            }
        }
        current_ = Frame{std::move(l), std::move(r), n_};
        has_current_ = true;
    }

    bool next(Interval& out) {
        if (!has_current_) return false;
        out = Interval{current_.l, current_.r, n_, next_index_ + 1};
        ++next_index_;
        if (stack_.empty()) {
            has_current_ = false;
            return true;
        }
        Frame f = std::move(stack_.back());
        stack_.pop_back();
        while (f.depth < n_) {
            Fraction m = mediant(f.l, f.r);
            stack_.push_back(Frame{m, f.r, f.depth + 1});
            f.r = std::move(m);
            ++f.depth;
        }
        current_ = std::move(f);
        return true;
    }

private:
    struct Frame {
        Fraction l, r;
        unsigned depth = 0;
    };

    unsigned n_;
    std::uint64_t next_index_;
    Frame current_;
    bool has_current_ = false;
    std::vector<Frame> stack_;
};

namespace detail {

// Denominator-only stream for partition-sum work; left/right denominators fit
// 64 bits comfortably for every depth under the cap.
class DenStream {
public:
    DenStream(unsigned n, std::uint64_t start_index = 0) : n_(n) {
        if (start_index >> n_) return;
        std::uint64_t dl = 1, dr = 1;
        for (unsigned d = 0; d < n_; ++d) {
            const std::uint64_t dm = dl + dr;
            const bool right = (start_index >> (n_ - 1 - d)) & 1u;
            if (right) {
                dl = dm;
            } else {
                stack_.push_back(Frame{dm, dr, d + 1});
                dr = dm;
            }
        }
        current_ = Frame{dl, dr, n_};
        has_current_ = true;
    }

    // Emits the denominator pair (t_k, t_{k+1}) of the next interval.
    bool next(std::uint64_t& dl, std::uint64_t& dr) {
        if (!has_current_) return false;
        dl = current_.dl;
        dr = current_.dr;
        if (stack_.empty()) {
            has_current_ = false;
            return true;
        }
        Frame f = stack_.back();
        stack_.pop_back();
        while (f.depth < n_) {
            const std::uint64_t dm = f.dl + f.dr;
            stack_.push_back(Frame{dm, f.dr, f.depth + 1});
            f.dr = dm;
            ++f.depth;
        }
        current_ = f;
        return true;
    }

private:
    struct Frame {
        std::uint64_t dl = 1, dr = 1;
        unsigned depth = 0;
    };

    unsigned n_;
    Frame current_{};
    bool has_current_ = false;
    std::vector<Frame> stack_;
};

} // namespace detail

// The unique order-n interval containing x together with the descent word;
// letter i is A when step i goes to the left child. At a rational endpoint the
// interval whose left endpoint it is gets returned (the A-leading choice).
inline std::pair<Interval, BinaryWord> locate(const Fraction& x, unsigned n) {
    if (x < 0 || x >= 1) throw std::domain_error("locate: need 0 <= x < 1");
    Fraction l(0), r(1);
    BinaryWord word;
    for (unsigned d = 0; d < n; ++d) {
        Fraction m = mediant(l, r);
        if (x < m) {
            word.push_back(Letter::A);
            r = std::move(m);
        } else {
            word.push_back(Letter::B);
            l = std::move(m);
        }
    }
    std::uint64_t index = 1;
    if (n > 0 && n <= 63) {
        index = 0;
        for (unsigned d = 0; d < n; ++d) index = (index << 1) | (word[d] == Letter::B ? 1u : 0u);
        index += 1;
    }
    return {Interval{std::move(l), std::move(r), n, index}, std::move(word)};
}

inline std::pair<Interval, BinaryWord> locate(double x, unsigned n) {
    return locate(Fraction::from_double(x), n);
}

namespace detail {

struct Mobius {
    // z -> (a z + b) / (c z + d)
    mpz_class a, b, c, d;

    static Mobius identity() { return {1, 0, 0, 1}; }
    static Mobius letter_a() { return {1, 0, 1, 1}; }  // z/(z+1)
    static Mobius letter_b() { return {0, 1, -1, 2}; } // 1/(2-z)

    Mobius compose(const Mobius& rhs) const {
        return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }

    Fraction at_zero() const { return Fraction(b, d); }
    Fraction at_one() const { return Fraction(a + b, c + d); }
};

} // namespace detail

// Image of [0,1) under the word's Mobius maps; inverse of locate on intervals.
inline Interval word_to_interval(const BinaryWord& w) {
    detail::Mobius m = detail::Mobius::identity();
    for (Letter x : w.letters()) {
        m = m.compose(x == Letter::A ? detail::Mobius::letter_a() : detail::Mobius::letter_b());
    }
    Fraction left = m.at_zero();
    Fraction right = m.at_one();
    std::uint64_t index = 1;
    if (!w.empty() && w.size() <= 63) {
        index = 0;
        for (std::size_t i = 0; i < w.size(); ++i) index = (index << 1) | (w[i] == Letter::B ? 1u : 0u);
        index += 1;
    }
    return Interval{std::move(left), std::move(right), static_cast<unsigned>(w.size()), index};
}

// For a canonical word with digit sum n, the two vertices adjacent to it
// among the new vertices one level deeper: [.., a_m + 1] and [.., a_m - 1, 2].
inline std::pair<CFWord, CFWord> siblings(const CFWord& parent) {
    if (!parent.canonical() || parent.back() < 2) {
        throw std::invalid_argument("siblings: word must be canonical (last digit >= 2)");
    }
    std::vector<std::uint64_t> up = parent.digits();
    up.back() += 1;
    std::vector<std::uint64_t> down = parent.digits();
    down.back() -= 1;
    down.push_back(2);
    return {CFWord(std::move(up)), CFWord(std::move(down))};
}

} // namespace mfsb
