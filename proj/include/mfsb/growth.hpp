#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfsb/cont_frac.hpp"
#include "mfsb/constants.hpp"
#include "mfsb/detail/parallel.hpp"
#include "mfsb/fraction.hpp"
#include "mfsb/rng.hpp"
#include "mfsb/stern_brocot.hpp"

namespace mfsb {

// Finite-truncation approximants of the six growth rates, all rooted in
// exact rational data; the truncation parameters ride along. l5/l6 are empty
// at a terminal (rational) truncation where x equals its own approximant.
struct RateReport {
    std::string input;
    std::uint64_t requested_depth = 0;
    std::uint64_t k = 0;      // digit count used
    std::uint64_t tau_k = 0;  // digit sum at k
    std::uint64_t n = 0;      // matched interval depth (= tau_k)
    double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;
    std::optional<double> l5, l6;
    double minus_log_Tn = 0.0;
    double two_log_qk = 0.0;
    bool truncated = false;
    bool terminal = false;
};

namespace detail {

inline mpz_class denominator_at(const CFWord& w, std::size_t k) {
    mpz_class qm1 = 0, qk = 1;
    for (std::size_t i = 0; i < k; ++i) {
        mpz_class next = mpz_class(static_cast<unsigned long>(w[i])) * qk + qm1;
        qm1 = std::move(qk);
        qk = std::move(next);
    }
    return qk;
}

} // namespace detail

// Rates of a word truncated at the deepest k with tau_k <= depth.
inline RateReport rate_report(const CFWord& w, std::uint64_t depth, bool input_truncated = false) {
    if (w.empty()) throw std::invalid_argument("rate_report: empty word");
    RateReport r;
    r.input = w.str();
    r.requested_depth = depth;
    std::uint64_t tau = 0, k = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (tau + w[i] > depth) break;
        tau += w[i];
        k = i + 1;
    }
    if (k == 0) throw std::domain_error("rate_report: depth below the first digit");
    r.k = k;
    r.tau_k = tau;
    r.n = tau;
    r.truncated = input_truncated || (tau < depth && w.size() > k);

    const Fraction x = cf_value(w);
    const ConvergentTable conv(w.prefix(k));
    r.two_log_qk = 2.0 * log_mpz(conv.q(k));
    r.l1 = r.two_log_qk / static_cast<double>(tau);
    r.l2 = static_cast<double>(tau) / static_cast<double>(k);
    r.l3 = r.two_log_qk / static_cast<double>(k);

    const auto [interval, word] = locate(x, static_cast<unsigned>(r.n));
    r.minus_log_Tn = -interval.length().log();
    r.l4 = r.minus_log_Tn / static_cast<double>(r.n);

    if (k == w.size()) {
        r.terminal = true; // x equals its own approximant; l5/l6 degenerate
    } else {
        const Fraction diff = x - conv.approximant(k);
        const Fraction ad = diff.sign() < 0 ? -diff : diff;
        const double log_ad = ad.log();
        r.l5 = 2.0 * log_ad / -static_cast<double>(tau);
        r.l6 = 2.0 * log_ad / -static_cast<double>(k);
    }
    return r;
}

// Decimal-string input: digits are certified against the closed interval the
// string denotes; an uncertifiable next digit flags truncation.
inline RateReport rate_report_decimal(const std::string& decimal, std::uint64_t depth,
                                      std::size_t max_digits = 1u << 20) {
    auto [lo, hi] = Fraction::parse_decimal_interval(decimal);
    const CertifiedCF cert = cf_expand_interval(lo, hi, max_digits);
    if (cert.word.empty()) throw std::domain_error("rate_report_decimal: no certified digits");
    RateReport r = rate_report(cert.word, std::min<std::uint64_t>(depth, cert.word.digit_sum()),
                               cert.truncated);
    r.input = decimal;
    r.requested_depth = depth;
    r.truncated = r.truncated || cert.word.digit_sum() < depth;
    return r;
}

// ---------------------------------------------------------------------------
// Monte Carlo over Lebesgue-uniform points
// ---------------------------------------------------------------------------

struct MonteCarloResult {
    std::uint64_t samples = 0;
    std::uint64_t depth = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

namespace detail {

// Uniform sample with k certified digits: an exact decimal interval refined
// (from the sample's own digit stream) until the expansion certifies depth k.
// The initial budget covers the slowest (golden-like) growth; typical points
// need about twice that, so the stream extends on demand.
inline CFWord sample_uniform_word(Rng& rng, std::uint64_t k_depth) {
    const double log10_gamma = std::log10(constants().gamma);
    std::size_t budget =
        static_cast<std::size_t>(2.0 * static_cast<double>(k_depth) * log10_gamma) + 64;
    std::string digits = rng.decimal_digits(budget);
    for (int round = 0; round < 64; ++round) {
        const auto [lo, hi] = Fraction::parse_decimal_interval("0." + digits);
        if (!lo.is_zero() && hi < Fraction(1)) {
            const CertifiedCF cert = cf_expand_interval(lo, hi, k_depth);
            if (cert.word.size() >= k_depth) return cert.word;
            const std::uint64_t missing = k_depth - cert.word.size();
            budget = static_cast<std::size_t>(1.06 * static_cast<double>(missing)) + 32;
        }
        digits += rng.decimal_digits(budget);
    }
    throw numerical_error("sample_uniform_word: certification did not reach the requested depth");
}

} // namespace detail

// Sample mean of 2 log q_k / k over uniform x; reproducible bit for bit from
// the seed (per-sample substreams, fixed-order compensated accumulation).
inline MonteCarloResult monte_carlo_levy(std::uint64_t samples, std::uint64_t k_depth,
                                         std::uint64_t seed, unsigned threads = 0) {
    if (samples < 1) throw std::domain_error("monte_carlo_levy: need samples >= 1");
    std::vector<double> xs(samples);
    detail::parallel_for(samples, threads, [&](std::uint64_t i) {
        Rng rng = Rng::substream(seed, i);
        const CFWord w = detail::sample_uniform_word(rng, k_depth);
        const mpz_class q = detail::denominator_at(w, k_depth);
        xs[i] = 2.0 * log_mpz(q) / static_cast<double>(k_depth);
    });
    // Neumaier sum in index order
    double sum = 0.0, comp = 0.0;
    for (double v : xs) {
        const double t = sum + v;
        comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    const double mean = (sum + comp) / static_cast<double>(samples);
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    MonteCarloResult r;
    r.samples = samples;
    r.depth = k_depth;
    r.seed = seed;
    r.mean = mean;
    r.stderr_of_mean = samples > 1
        ? std::sqrt(ss / (static_cast<double>(samples) * (static_cast<double>(samples) - 1.0)))
        : 0.0;
    return r;
}

// Empirical distribution of tau_k / k across depths: medians and upper
// quantiles only ever documented, never asserted as limits (divergence is
// not finitely falsifiable).
struct KhintchinProbe {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> depths;
    std::vector<double> median;
    std::vector<double> q90;
    std::uint64_t max_digit = 0;
};

inline KhintchinProbe khintchin_divergence_probe(std::uint64_t samples,
                                                 std::vector<std::uint64_t> depths,
                                                 std::uint64_t seed, unsigned threads = 0) {
    std::sort(depths.begin(), depths.end());
    const std::uint64_t k_max = depths.back();
    std::vector<std::vector<double>> ratios(depths.size(), std::vector<double>(samples));
    std::vector<std::uint64_t> max_digit_per(samples, 0);
    detail::parallel_for(samples, threads, [&](std::uint64_t i) {
        Rng rng = Rng::substream(seed ^ 0x9e1ef3a7ULL, i);
        const CFWord w = detail::sample_uniform_word(rng, k_max);
        std::uint64_t tau = 0;
        std::size_t d = 0;
        for (std::size_t j = 0; j < w.size() && d < depths.size(); ++j) {
            tau += w[j];
            max_digit_per[i] = std::max(max_digit_per[i], w[j]);
            if (j + 1 == depths[d]) {
                ratios[d][i] = static_cast<double>(tau) / static_cast<double>(j + 1);
                ++d;
            }
        }
    });
    KhintchinProbe out;
    out.samples = samples;
    out.seed = seed;
    out.depths = depths;
    for (auto& row : ratios) {
        std::vector<double> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        out.median.push_back(sorted[sorted.size() / 2]);
        out.q90.push_back(sorted[(sorted.size() * 9) / 10]);
    }
    for (auto m : max_digit_per) out.max_digit = std::max(out.max_digit, m);
    return out;
}

// ---------------------------------------------------------------------------
// Cocycle proxies at block boundaries
// ---------------------------------------------------------------------------

// Gap |2 log q_k - (-log |T_{n_k + 1}(x)|)| at the run-length block
// boundaries n_k; the two exact proxies for the same hyperbolic excursion.
struct CocycleGapReport {
    std::vector<double> gaps;
    double max_gap = 0.0;
};

inline CocycleGapReport cocycle_proxy_gap(const CFWord& w, std::size_t max_blocks = SIZE_MAX) {
    const Fraction x = cf_value(w);
    const RunLengthWord rl = cf_to_runlength(w);
    const std::size_t offset = rl.lead == Letter::B ? 1 : 0;
    const ConvergentTable conv(w);
    CocycleGapReport out;
    std::uint64_t n_k = 0;
    for (std::size_t j = 0; j + 1 <= rl.blocks.size() && j < max_blocks; ++j) {
        n_k += rl.blocks[j];
        const std::size_t cf_index = j + 1 + offset;
        if (cf_index > conv.depth()) break;
        const auto [interval, word] = locate(x, static_cast<unsigned>(n_k + 1));
        const double two_log_q = 2.0 * log_mpz(conv.q(cf_index));
        const double minus_log_t = -interval.length().log();
        const double gap = std::abs(two_log_q - minus_log_t);
        out.gaps.push_back(gap);
        out.max_gap = std::max(out.max_gap, gap);
    }
    return out;
}

} // namespace mfsb
