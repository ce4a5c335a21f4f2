#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace mfsb {

// Streaming log(sum exp(v_i)) with max-shift rescaling. Terms may span any
// magnitude; the running sum is kept relative to the current maximum.
// merge() is max-shift-consistent, so partial accumulators combined in a
// fixed order reproduce the sequential result bit for bit per that order.
class LogSumAccumulator {
public:
    void add(double v) {
        if (std::isnan(v)) throw std::domain_error("LogSumAccumulator: NaN term");
        if (v == -std::numeric_limits<double>::infinity()) return;
        if (count_ == 0 || v > max_) {
            sum_ = sum_ * std::exp(max_ - v) + 1.0;
            max_ = v;
        } else {
            sum_ += std::exp(v - max_);
        }
        ++count_;
    }

    void merge(const LogSumAccumulator& other) {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        if (other.max_ > max_) {
            sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
            max_ = other.max_;
        } else {
            sum_ += other.sum_ * std::exp(other.max_ - max_);
        }
        count_ += other.count_;
    }

    std::size_t count() const { return count_; }

    double value() const {
        if (count_ == 0) throw std::invalid_argument("LogSumAccumulator: empty");
        return max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    std::size_t count_ = 0;
};

// log(sum_i exp(values[i])), overflow-free for any magnitudes.
inline double log_sum_exp(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("log_sum_exp: empty input");
    double mx = values[0];
    for (double v : values) {
        if (std::isnan(v)) throw std::domain_error("log_sum_exp: NaN term");
        if (v > mx) mx = v;
    }
    if (mx == -std::numeric_limits<double>::infinity()) return mx;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - mx);
    return mx + std::log(sum);
}

} // namespace mfsb
