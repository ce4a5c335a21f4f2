#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mfsb/constants.hpp"
#include "mfsb/fibonacci.hpp"
#include "mfsb/rng.hpp"
#include "mfsb/stern_brocot.hpp"

using namespace mfsb;

namespace {

// Independent oracle: materialize level n by naive mediant interleaving of
// plain integer pairs, no shared code with SternBrocotLevel's builder.
std::vector<std::pair<long, long>> naive_level(unsigned n) {
    std::vector<std::pair<long, long>> v{{0, 1}, {1, 1}};
    for (unsigned d = 0; d < n; ++d) {
        std::vector<std::pair<long, long>> next;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            next.push_back(v[i]);
            next.emplace_back(v[i].first + v[i + 1].first, v[i].second + v[i + 1].second);
        }
        next.push_back(v.back());
        v = std::move(next);
    }
    return v;
}

} // namespace

TEST_CASE("level endpoints and counts") {
    const auto l0 = level(0);
    REQUIRE(l0.size() == 2);
    CHECK(l0[0] == Fraction(0, 1));
    CHECK(l0[1] == Fraction(1, 1));

    const auto l2 = level(2);
    REQUIRE(l2.size() == 5);
    CHECK(l2[0] == Fraction(0, 1));
    CHECK(l2[1] == Fraction(1, 3));
    CHECK(l2[2] == Fraction(1, 2));
    CHECK(l2[3] == Fraction(2, 3));
    CHECK(l2[4] == Fraction(1, 1));

    for (unsigned n = 0; n <= 10; ++n) {
        CHECK(level(n).size() == (std::size_t{1} << n) + 1);
    }
}

TEST_CASE("level matches the naive oracle") {
    for (unsigned n = 0; n <= 12; ++n) {
        const auto lvl = level(n);
        const auto oracle = naive_level(n);
        REQUIRE(lvl.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(lvl[i] == Fraction(oracle[i].first, oracle[i].second));
        }
    }
}

TEST_CASE("interval partition of order 3") {
    const auto ivs = intervals(3);
    REQUIRE(ivs.size() == 8);
    const long nums[] = {0, 1, 1, 2, 1, 3, 2, 3, 1};
    const long dens[] = {1, 4, 3, 5, 2, 5, 3, 4, 1};
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(ivs[k].left == Fraction(nums[k], dens[k]));
        CHECK(ivs[k].right == Fraction(nums[k + 1], dens[k + 1]));
    }
    const auto iv1 = intervals(1);
    CHECK(iv1[0].left == Fraction(0, 1));
    CHECK(iv1[0].right == Fraction(1, 2));
    CHECK(iv1[1].right == Fraction(1, 1));
}

TEST_CASE("minimal interval length is the Fibonacci product") {
    FibSequence fibs;
    const auto ivs = intervals(10);
    Fraction shortest = ivs[0].length();
    for (const auto& iv : ivs) {
        if (iv.length() < shortest) shortest = iv.length();
    }
    CHECK(shortest == Fraction(mpz_class(1), mpz_class(fibs(11) * fibs(12))));
    CHECK(shortest == Fraction(mpz_class(1), mpz_class(89 * 144)));
}

TEST_CASE("streaming iterator equals the materialized level") {
    for (unsigned n : {0u, 1u, 5u, 11u}) {
        const auto ivs = intervals(n);
        IntervalStream stream(n);
        Interval iv;
        std::size_t k = 0;
        while (stream.next(iv)) {
            REQUIRE(k < ivs.size());
            CHECK(iv == ivs[k]);
            CHECK(iv.index == k + 1);
            ++k;
        }
        CHECK(k == ivs.size());
    }
}

TEST_CASE("streaming iterator split by index is seamless") {
    const unsigned n = 9;
    const auto ivs = intervals(n);
    for (std::uint64_t start : {1ULL, 7ULL, 255ULL, 256ULL, 511ULL}) {
        IntervalStream stream(n, start);
        Interval iv;
        std::size_t k = start;
        while (stream.next(iv)) {
            REQUIRE(k < ivs.size());
            CHECK(iv == ivs[k]);
            ++k;
        }
        CHECK(k == ivs.size());
    }
}

TEST_CASE("depth cap") {
    CHECK_THROWS_AS(level(27), depth_cap_error);
    CHECK_THROWS_AS(IntervalStream(30), depth_cap_error);
    CHECK_NOTHROW(IntervalStream(27, 0, 30));
}

TEST_CASE("locate examples") {
    const auto [iv, w] = locate(Fraction(2, 5), 3);
    CHECK(iv.left == Fraction(2, 5));
    CHECK(iv.right == Fraction(1, 2));
    CHECK(w.str() == "ABB");

    // leftmost branch: [0, 1/(n+1)) with the all-A word
    for (unsigned n : {1u, 4u, 9u}) {
        const auto [i0, w0] = locate(Fraction(0, 1), n);
        CHECK(i0.left == Fraction(0, 1));
        CHECK(i0.right == Fraction(1, static_cast<long>(n) + 1));
        CHECK(w0.str() == std::string(n, 'A'));
    }
}

TEST_CASE("locate at the golden point") {
    // [1,1,1,...]: alternating letters, interval lengths 1/(f_{n+1} f_{n+2})
    FibSequence fibs;
    const double x = golden_ratio() - 1.0;
    for (unsigned n : {2u, 7u, 16u, 25u}) {
        const auto [iv, w] = locate(x, n);
        CHECK(iv.length() == Fraction(mpz_class(1), mpz_class(fibs(n + 1) * fibs(n + 2))));
        for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] != w[i - 1]);
        CHECK(w[0] == Letter::B);
    }
}

TEST_CASE("locate against brute-force membership") {
    Rng rng(2024);
    const unsigned n = 9;
    const auto ivs = intervals(n);
    for (int trial = 0; trial < 100; ++trial) {
        const Fraction x(static_cast<long>(rng.below(512)), 512 + static_cast<long>(rng.below(512)));
        if (x >= Fraction(1)) continue;
        const auto [iv, w] = locate(x, n);
        // brute membership scan
        const auto it = std::find_if(ivs.begin(), ivs.end(), [&](const Interval& cand) {
            return cand.left <= x && x < cand.right;
        });
        REQUIRE(it != ivs.end());
        CHECK(*it == iv);
    }
    CHECK_THROWS_AS(locate(Fraction(1, 1), 3), std::domain_error);
    CHECK_THROWS_AS(locate(Fraction(-1, 2), 3), std::domain_error);
}

TEST_CASE("word_to_interval examples") {
    CHECK(word_to_interval(BinaryWord::parse("A")).left == Fraction(0, 1));
    CHECK(word_to_interval(BinaryWord::parse("A")).right == Fraction(1, 2));
    CHECK(word_to_interval(BinaryWord::parse("B")).left == Fraction(1, 2));
    CHECK(word_to_interval(BinaryWord::parse("B")).right == Fraction(1, 1));
    const Interval iv = word_to_interval(BinaryWord::parse("ABB"));
    CHECK(iv.left == Fraction(2, 5));
    CHECK(iv.right == Fraction(1, 2));
    // must agree with locate
    const auto [liv, lw] = locate(Fraction(2, 5), 3);
    CHECK(liv == iv);
}

TEST_CASE("word round trip at moderate depth") {
    const unsigned n = 10;
    IntervalStream stream(n);
    Interval iv;
    std::uint64_t index = 0;
    while (stream.next(iv)) {
        BinaryWord w;
        for (unsigned d = 0; d < n; ++d) {
            w.push_back(((index >> (n - 1 - d)) & 1u) ? Letter::B : Letter::A);
        }
        CHECK(word_to_interval(w) == iv);
        const auto [liv, lw] = locate(iv.left, n);
        CHECK(liv == iv);
        CHECK(lw == w);
        ++index;
    }
}

TEST_CASE("sibling examples") {
    const auto [s1u, s1d] = siblings(CFWord::parse("2"));
    CHECK(s1u == CFWord::parse("3"));
    CHECK(s1d == CFWord::parse("1,2"));
    const auto [s2u, s2d] = siblings(CFWord::parse("3"));
    CHECK(s2u == CFWord::parse("4"));
    CHECK(s2d == CFWord::parse("2,2"));
    const auto [s3u, s3d] = siblings(CFWord::parse("1,2"));
    CHECK(s3u == CFWord::parse("1,3"));
    CHECK(s3d == CFWord::parse("1,1,2"));
    CHECK(cf_value(s3u) == Fraction(3, 4));
    CHECK(cf_value(s3d) == Fraction(3, 5));
    CHECK_THROWS_AS(siblings(CFWord::parse("2,1")), std::invalid_argument);
}

TEST_CASE("level symmetry under x -> 1-x") {
    for (unsigned n : {3u, 8u, 12u}) {
        const auto lvl = level(n);
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            CHECK(Fraction(1) - lvl[i] == lvl[lvl.size() - 1 - i]);
        }
    }
}
