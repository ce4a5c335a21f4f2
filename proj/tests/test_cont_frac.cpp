#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mfsb/constants.hpp"
#include "mfsb/cont_frac.hpp"
#include "mfsb/fibonacci.hpp"
#include "mfsb/rng.hpp"
#include "mfsb/stern_brocot.hpp"

using namespace mfsb;

TEST_CASE("cf_expand examples") {
    CHECK(cf_expand(Fraction(2, 5)) == CFWord::parse("2,2"));
    CHECK(cf_expand(Fraction(1, 3)) == CFWord::parse("3"));
    CHECK(cf_expand(Fraction(3, 5)) == CFWord::parse("1,1,2"));
    CHECK_THROWS_AS(cf_expand(Fraction(0, 1)), std::domain_error);
    CHECK_THROWS_AS(cf_expand(Fraction(1, 1)), std::domain_error);
}

TEST_CASE("cf_expand round trips and stays canonical") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const long den = 2 + static_cast<long>(rng.below(100000));
        const long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den) - 1));
        const Fraction x(num, den);
        const CFWord w = cf_expand(x);
        CHECK(w.canonical());
        CHECK(cf_value(w) == x);
    }
}

TEST_CASE("convergents") {
    const ConvergentTable fib_conv(CFWord::parse("1,1,1,1,1"));
    const long expect_q[] = {1, 1, 2, 3, 5, 8};
    for (std::size_t k = 0; k <= 5; ++k) CHECK(fib_conv.q(k) == expect_q[k]);
    const ConvergentTable c22(CFWord::parse("2,2"));
    CHECK(c22.p(2) == 2);
    CHECK(c22.q(2) == 5);
    CHECK(ConvergentTable(CFWord::parse("7")).q(1) == 7);
    // evaluation route equals the recurrence route
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::uint64_t> d(1 + rng.below(12));
        for (auto& a : d) a = 1 + rng.below(9);
        if (d.back() < 2) d.back() = 2;
        const CFWord w(d);
        const ConvergentTable conv(w);
        CHECK(conv.approximant(w.size()) == cf_value(w));
        // q_k >= f_{k+1} and strictly increasing from k = 1
        FibSequence fibs;
        for (std::size_t k = 1; k <= w.size(); ++k) {
            CHECK(conv.q(k) >= fibs(k + 1));
            if (k >= 2) CHECK(conv.q(k) > conv.q(k - 1));
        }
    }
}

TEST_CASE("composition enumeration") {
    const auto a42 = enumerate_Akn(4, 2);
    REQUIRE(a42.size() == 2);
    CHECK(a42[0] == CFWord::parse("1,3"));
    CHECK(a42[1] == CFWord::parse("2,2"));
    const auto an1 = enumerate_Akn(9, 1);
    REQUIRE(an1.size() == 1);
    CHECK(an1[0] == CFWord::parse("9"));
    const auto a43 = enumerate_Akn(4, 3);
    REQUIRE(a43.size() == 1);
    CHECK(a43[0] == CFWord::parse("1,1,2"));
    CHECK(enumerate_Akn(4, 4).empty()); // k must stay below n
    CHECK(enumerate_Akn(4, 0).empty());

    // lexicographic order and binomial counts
    for (std::uint64_t n = 2; n <= 12; ++n) {
        std::uint64_t total = 0;
        for (std::uint64_t k = 1; k < n; ++k) {
            const auto words = enumerate_Akn(n, k);
            CHECK(mpz_class(static_cast<unsigned long>(words.size())) == binomial(n - 2, k - 1));
            CHECK(std::is_sorted(words.begin(), words.end()));
            for (const auto& w : words) {
                CHECK(w.digit_sum() == n);
                CHECK(w.back() >= 2);
            }
            total += words.size();
        }
        CHECK(total == (std::uint64_t{1} << (n - 2)));
    }
}

TEST_CASE("composition values fill the new vertices") {
    for (unsigned n = 2; n <= 10; ++n) {
        std::vector<Fraction> vals;
        for (std::uint64_t k = 1; k < n; ++k) {
            for (const auto& w : enumerate_Akn(n, k)) vals.push_back(cf_value(w));
        }
        std::sort(vals.begin(), vals.end());
        const auto lvl = level(n - 1);
        std::vector<Fraction> fresh;
        for (std::size_t i = 1; i < lvl.size(); i += 2) fresh.push_back(lvl[i]);
        CHECK(vals == fresh);
    }
}

TEST_CASE("gauss map") {
    CHECK(gauss_map(Fraction(2, 5)) == Fraction(1, 2));
    CHECK(gauss_map(Fraction(1, 3)) == Fraction(0, 1));
    CHECK(gauss_shift(CFWord::parse("2,2")) == CFWord::parse("2"));
    const double fix = golden_ratio() - 1.0;
    CHECK(std::abs(gauss_map(fix) - fix) < 1e-12);
}

TEST_CASE("farey map and branches") {
    CHECK(farey_map(Fraction(1, 3)) == Fraction(1, 2));
    CHECK(farey_map(Fraction(1, 2)) == Fraction(1, 1));
    CHECK(farey_branch(Fraction(1, 3)) == 1);
    CHECK(farey_branch(Fraction(2, 3)) == 2);
    // digit-word action: strip a leading 1 or decrement
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint64_t> d(2 + rng.below(10));
        for (auto& a : d) a = 1 + rng.below(7);
        if (d.back() < 2) d.back() = 2;
        const CFWord w(d);
        CHECK(cf_value(farey_step(w)) == farey_map(cf_value(w)));
    }
}

TEST_CASE("run-length translations") {
    const RunLengthWord a12(Letter::A, {1, 2});
    CHECK(runlength_to_cf(a12) == CFWord::parse("2,2"));
    CHECK(cf_value(runlength_to_cf(a12)) == Fraction(2, 5));
    const RunLengthWord b11(Letter::B, {1, 1});
    const CFWord nc = runlength_to_cf(b11);
    CHECK(nc == CFWord::parse("1,1,1"));
    CHECK_FALSE(nc.canonical()); // trailing 1 marks the non-canonical twin
    CHECK(a12.flatten().str() == "ABB");
    // the flattened word's interval carries the value as an endpoint
    const Interval iv = word_to_interval(a12.flatten());
    CHECK(iv.left == Fraction(2, 5));
}

TEST_CASE("mirror symmetry") {
    const RunLengthWord w(Letter::A, {1, 2});
    const RunLengthWord m = mirror(w);
    CHECK(m.lead == Letter::B);
    CHECK(m.blocks == w.blocks);
    CHECK(cf_value(runlength_to_cf(m)) == Fraction(3, 5));
    CHECK(mirror(m) == w);
    // value-level involution on random words
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint64_t> bl(1 + rng.below(9));
        for (auto& v : bl) v = 1 + rng.below(6);
        const RunLengthWord r(rng.below(2) ? Letter::B : Letter::A, bl);
        CHECK(cf_value(runlength_to_cf(r)) + cf_value(runlength_to_cf(mirror(r))) == Fraction(1));
    }
}

TEST_CASE("flattened run-length words land on the value's interval boundary") {
    Rng rng(88);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::uint64_t> bl(1 + rng.below(6));
        for (auto& v : bl) v = 1 + rng.below(4);
        const RunLengthWord r(rng.below(2) ? Letter::B : Letter::A, bl);
        const Fraction x = cf_value(runlength_to_cf(r));
        const Interval iv = word_to_interval(r.flatten());
        CHECK((iv.left == x || iv.right == x));
    }
}

TEST_CASE("factor map diagram is exact") {
    // value(blocks as digits) = farey(value(run-length word))
    Rng rng(41);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::uint64_t> bl(2 + rng.below(8));
        for (auto& v : bl) v = 1 + rng.below(6);
        if (bl.back() < 2) bl.back() = 2;
        const RunLengthWord r(rng.below(2) ? Letter::B : Letter::A, bl);
        CHECK(cf_value(CFWord(r.blocks)) == farey_map(cf_value(runlength_to_cf(r))));
    }
}

TEST_CASE("certified interval expansion") {
    // exact rational input terminates exactly
    const auto exact = cf_expand_interval(Fraction(2, 5), Fraction(2, 5), 10);
    CHECK(exact.exact);
    CHECK_FALSE(exact.truncated);
    CHECK(exact.word == CFWord::parse("2,2"));

    // a genuine interval certifies only the shared digits
    const auto part = cf_expand_interval(Fraction(415, 1000), Fraction(416, 1000), 50);
    CHECK(part.truncated);
    CHECK(part.word.size() >= 2);
    // certified digits agree with both endpoint expansions
    const CFWord wl = cf_expand(Fraction(415, 1000));
    const CFWord wh = cf_expand(Fraction(416, 1000));
    for (std::size_t k = 0; k < part.word.size(); ++k) {
        CHECK(part.word[k] == wl[k]);
        CHECK(part.word[k] == wh[k]);
    }

    // budget exhaustion flags truncation
    const auto budget = cf_expand_interval(Fraction(415, 1000), Fraction(416, 1000), 1);
    CHECK(budget.truncated);
    CHECK(budget.word.size() == 1);
}

TEST_CASE("certified expansion digits match the point expansions") {
    Rng rng(314);
    for (int i = 0; i < 100; ++i) {
        const long den = 10000 + static_cast<long>(rng.below(100000));
        const long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den) - 2));
        const Fraction lo(num, den);
        const Fraction hi = lo + Fraction(1, den * 10);
        if (hi >= Fraction(1)) continue;
        const auto cert = cf_expand_interval(lo, hi, 64);
        const CFWord wl = cf_expand(lo);
        // certified digits are a common prefix of both endpoint expansions
        for (std::size_t k = 0; k < cert.word.size() && k < wl.size(); ++k) {
            CHECK(cert.word[k] == wl[k]);
        }
    }
}

TEST_CASE("digit product bound, exact") {
    Rng rng(59);
    for (int i = 0; i < 500; ++i) {
        std::vector<std::uint64_t> d(1 + rng.below(20));
        for (auto& a : d) a = 1 + rng.below(10);
        if (d.back() < 2) d.back() = 2;
        const CFWord w(d);
        const ConvergentTable conv(w);
        mpz_class prod = 1;
        for (std::size_t j = 0; j < w.size(); ++j) prod *= static_cast<unsigned long>(w[j]);
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, w.size());
        CHECK(prod <= conv.q(w.size()));
        CHECK(conv.q(w.size()) <= pow2 * prod);
    }
}

TEST_CASE("golden denominator bound, exhaustive small sums") {
    FibSequence fibs;
    LucasSequence lucs;
    for (std::uint64_t n = 2; n <= 14; ++n) {
        for (std::uint64_t k = 1; k < n; ++k) {
            for (const auto& w : enumerate_Akn(n, k)) {
                const ConvergentTable conv(w);
                CHECK(denominator_golden_bound_holds(conv.q(k), n, k, fibs, lucs));
            }
        }
    }
}
