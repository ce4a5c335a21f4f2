#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfsb/constants.hpp"
#include "mfsb/fibonacci.hpp"
#include "mfsb/fraction.hpp"
#include "mfsb/log_sum_exp.hpp"
#include "mfsb/rng.hpp"

using namespace mfsb;

TEST_CASE("fraction basics") {
    CHECK(Fraction(2, 4) == Fraction(1, 2));
    CHECK(Fraction(1, 3) < Fraction(1, 2));
    CHECK((Fraction(1, 3) + Fraction(1, 6)) == Fraction(1, 2));
    CHECK(Fraction(3, 7).reciprocal() == Fraction(7, 3));
    CHECK(Fraction::parse("2/5") == Fraction(2, 5));
    CHECK(Fraction::parse("0.25") == Fraction(1, 4));
    CHECK(Fraction::from_double(0.5) == Fraction(1, 2));
    CHECK_THROWS_AS(Fraction(1, 0), std::domain_error);
    CHECK(Fraction(-2, -4) == Fraction(1, 2)); // sign normalized to the numerator
    CHECK(Fraction(2, -4) == Fraction(-1, 2));
}

TEST_CASE("fraction log is big-integer aware") {
    mpz_class big = 1;
    for (int i = 0; i < 3000; ++i) big *= 3; // far beyond double range
    const double lg = log_mpz(big);
    CHECK(lg == doctest::Approx(3000.0 * std::log(3.0)).epsilon(1e-14));
    const Fraction tiny(mpz_class(1), big);
    CHECK(tiny.log() == doctest::Approx(-3000.0 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("mediant examples and neighbour property") {
    CHECK(mediant(Fraction(0, 1), Fraction(1, 1)) == Fraction(1, 2));
    CHECK(mediant(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5));
    const Fraction x(3, 7);
    CHECK(mediant(x, x) == x);
    // strictly between, and denominators add before reduction
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Fraction a(static_cast<long>(rng.below(50)), static_cast<long>(1 + rng.below(50)));
        Fraction b(static_cast<long>(rng.below(50)), static_cast<long>(1 + rng.below(50)));
        if (a == b) continue;
        const Fraction lo = a < b ? a : b, hi = a < b ? b : a;
        const Fraction m = mediant(lo, hi);
        CHECK(lo < m);
        CHECK(m < hi);
    }
    // unimodular neighbours: the mediant is already reduced
    CHECK(mediant(Fraction(2, 5), Fraction(1, 2)).den() == 7);
}

TEST_CASE("fibonacci values and Binet cross-check") {
    CHECK(fib(0) == 0);
    CHECK(fib(1) == 1);
    CHECK(fib(3) == 2);
    CHECK(fib(20) == 6765);
    const double root5 = std::sqrt(5.0);
    const double g = golden_ratio();
    FibSequence fibs;
    for (unsigned k = 0; k <= 70; ++k) {
        const double binet = std::pow(g, k) / root5;
        CHECK(std::abs(fibs(k).get_d() - binet) < 1.0);
    }
    // exact recurrence beyond floating range
    for (unsigned k = 300; k < 310; ++k) {
        CHECK(fibs(k + 1) == fibs(k) + fibs(k - 1));
    }
}

TEST_CASE("lucas and golden powers") {
    LucasSequence lucs;
    CHECK(lucs(0) == 2);
    CHECK(lucs(1) == 1);
    CHECK(lucs(10) == 123);
    // gamma^k = (L_k + F_k sqrt5)/2 numerically
    FibSequence fibs;
    const double g = golden_ratio();
    for (int k = -8; k <= 12; ++k) {
        mpz_class l, f;
        detail::golden_power_parts(k, fibs, lucs, l, f);
        const double lhs = std::pow(g, k);
        const double rhs = (l.get_d() + f.get_d() * std::sqrt(5.0)) / 2.0;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("exact golden power comparison") {
    FibSequence fibs;
    LucasSequence lucs;
    // q <= 4^p gamma^e exact versus floating evaluation on safe cases
    Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        const long p = static_cast<long>(rng.below(12)) - 4;
        const long e = static_cast<long>(rng.below(60)) - 20;
        const std::uint64_t q = 1 + rng.below(1000000);
        const double rhs = std::pow(4.0, static_cast<double>(p)) *
                           std::pow(golden_ratio(), static_cast<double>(e));
        const double ratio = static_cast<double>(q) / rhs;
        if (ratio > 1.0 + 1e-9) {
            CHECK_FALSE(leq_scaled_golden_power(mpz_class(static_cast<unsigned long>(q)), p, e, fibs, lucs));
        } else if (ratio < 1.0 - 1e-9) {
            CHECK(leq_scaled_golden_power(mpz_class(static_cast<unsigned long>(q)), p, e, fibs, lucs));
        }
    }
}

TEST_CASE("constants") {
    const auto& c = constants();
    CHECK(c.gamma * c.gamma == doctest::Approx(c.gamma + 1.0).epsilon(1e-15));
    CHECK(c.chi == doctest::Approx(2.37313822).epsilon(1e-8));
    CHECK(c.rho > 0.0);
    CHECK(c.rho < 1.0);
    // rho = 4 / gamma^3, the identity behind the exact bound checks
    CHECK(c.rho == doctest::Approx(4.0 / std::pow(c.gamma, 3.0)).epsilon(1e-15));
    CHECK(c.two_log_gamma == doctest::Approx(2.0 * std::log(c.gamma)));
}

TEST_CASE("log_sum_exp examples") {
    const double v1[] = {0.0, 0.0};
    CHECK(log_sum_exp(v1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    const double v2[] = {-1000.0, -1000.0};
    CHECK(log_sum_exp(v2) == doctest::Approx(std::log(2.0) - 1000.0).epsilon(1e-15));
    // reciprocal lengths of the order-3 partition: exact sum 82
    const double v3[] = {std::log(4.0), std::log(12.0), std::log(15.0), std::log(10.0),
                         std::log(10.0), std::log(15.0), std::log(12.0), std::log(4.0)};
    CHECK(log_sum_exp(v3) == doctest::Approx(std::log(82.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_sum_exp(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("log_sum_exp shift invariance and merges") {
    Rng rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(1 + rng.below(40));
        for (auto& x : v) x = static_cast<double>(rng.below(2000)) / 7.0 - 150.0;
        const double base = log_sum_exp(v);
        const double shift = static_cast<double>(rng.below(500)) - 250.0;
        std::vector<double> w = v;
        for (auto& x : w) x += shift;
        CHECK(log_sum_exp(w) - base == doctest::Approx(shift).epsilon(1e-12));
        // chunked accumulate + ordered merge equals the one-pass accumulator
        LogSumAccumulator whole;
        for (double x : v) whole.add(x);
        LogSumAccumulator left, right;
        const std::size_t half = v.size() / 2;
        for (std::size_t i = 0; i < half; ++i) left.add(v[i]);
        for (std::size_t i = half; i < v.size(); ++i) right.add(v[i]);
        left.merge(right);
        CHECK(left.value() == doctest::Approx(whole.value()).epsilon(1e-13));
    }
}

TEST_CASE("decimal interval parse") {
    auto [lo, hi] = Fraction::parse_decimal_interval("0.25");
    CHECK(lo == Fraction(1, 4));
    CHECK(hi == Fraction(26, 100));
}
