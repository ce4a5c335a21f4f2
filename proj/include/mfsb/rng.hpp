#pragma once

#include <cstdint>
#include <string>

namespace mfsb {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace detail

/** Xoshiro256++ with deterministic splitmix64 seeding. */
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        s0_ = detail::splitmix64(sm);
        s1_ = detail::splitmix64(sm);
        s2_ = detail::splitmix64(sm);
        s3_ = detail::splitmix64(sm);
    }

    // Independent deterministic substream i of a master seed.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed ^ (0x5851f42d4c957f2dULL * (index + 1));
        const std::uint64_t mixed = detail::splitmix64(sm);
        return Rng(mixed ^ (index << 1));
    }

    std::uint64_t operator()() {
        const std::uint64_t result = detail::rotl64(s0_ + s3_, 23) + s0_;
        const std::uint64_t t = s1_ << 17;
        s2_ ^= s0_;
        s3_ ^= s1_;
        s1_ ^= s2_;
        s0_ ^= s3_;
        s2_ ^= t;
        s3_ = detail::rotl64(s3_, 45);
        return result;
    }

    // Unbiased value in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t r;
        do {
            r = (*this)();
        } while (r >= limit);
        return r % bound;
    }

    // Uniform decimal digit string of the given length (leading digits may be
    // zero; interpreted as the fractional part 0.d1d2...).
    std::string decimal_digits(std::size_t count) {
        std::string s;
        s.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            s.push_back(static_cast<char>('0' + below(10)));
        }
        return s;
    }

private:
    std::uint64_t s0_, s1_, s2_, s3_;
};

} // namespace mfsb
