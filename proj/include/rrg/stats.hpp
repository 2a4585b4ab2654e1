#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rrg {

// two-sided 95% normal quantile, pinned so intervals are reproducible
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval for a binomial proportion; stays inside [0,1] and
// behaves at p-hat = 0 or 1, which happens routinely in tail experiments.
inline Interval wilson_interval(long long successes, long long trials, double z = kZ95) {
    if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be positive");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - spread, center + spread};
}

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;
};

inline double sample_mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("sample_mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// unbiased (n-1) sample variance
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
    const double m = sample_mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    const double m = sample_mean(xs);
    if (xs.size() == 1) return {m, 0.0};
    return {m, std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()))};
}

}  // namespace rrg
