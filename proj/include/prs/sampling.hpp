// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

// Chernoff-bound calculator linking workshare count, estimation accuracy,
// error probability and storage overhead.

namespace prs::sampling {

inline void check_domain(double epsilon, double delta, double p) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw std::domain_error("epsilon must be in (0,1)");
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::domain_error("delta must be in (0,1)");
    if (!(p > 0.0) || p > 1.0) throw std::domain_error("p must be in (0,1]");
}

// Minimum number of workshares for the estimate to deviate by more than
// delta*p with probability at most epsilon: n = ceil(-2 ln(eps) / (delta^2 p)).
inline std::int64_t required_samples(double epsilon, double delta, double p) {
    check_domain(epsilon, delta, p);
    return static_cast<std::int64_t>(std::ceil(-2.0 * std::log(epsilon) / (delta * delta * p)));
}

inline double required_samples_exact(double epsilon, double delta, double p) {
    check_domain(epsilon, delta, p);
    return -2.0 * std::log(epsilon) / (delta * delta * p);
}

// Inversion for delta given a sample budget.
inline double achievable_inaccuracy(std::int64_t n, double epsilon, double p) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw std::domain_error("epsilon must be in (0,1)");
    if (!(p > 0.0) || p > 1.0) throw std::domain_error("p must be in (0,1]");
    return std::sqrt(-2.0 * std::log(epsilon) / (static_cast<double>(n) * p));
}

// Inversion for the error bound: eps = exp(-delta^2 n p / 2).
inline double error_bound(std::int64_t n, double delta, double p) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    if (!(p > 0.0) || p > 1.0) throw std::domain_error("p must be in (0,1]");
    return std::exp(-delta * delta * static_cast<double>(n) * p / 2.0);
}

constexpr int kDefaultBytesPerShare = 80;  // one share is a bare block header

inline std::int64_t storage_overhead_bytes(std::int64_t n, int bytesPerShare = kDefaultBytesPerShare) {
    if (n < 0 || bytesPerShare < 0) throw std::domain_error("negative storage inputs");
    return n * bytesPerShare;
}

// 1 KB = 1024 B.
inline double storage_overhead_kb(std::int64_t n, int bytesPerShare = kDefaultBytesPerShare) {
    return static_cast<double>(storage_overhead_bytes(n, bytesPerShare)) / 1024.0;
}

// Headline sample counts round to the nearest thousand (nearest hundred below
// one thousand).
inline std::int64_t rounded_samples(std::int64_t n) {
    const std::int64_t unit = n >= 1000 ? 1000 : 100;
    return (n + unit / 2) / unit * unit;
}

struct ValidationRates {
    double twoSided = 0.0;  // fraction of trials with |X/n - p| > delta*p
    double upper = 0.0;     // fraction with X/n - p > delta*p
    double lower = 0.0;     // fraction with p - X/n > delta*p
};

// Monte-Carlo check of the bound: n Bernoulli(p) draws per trial.
inline ValidationRates empirical_validation(std::int64_t n, double p, double delta,
                                            std::int64_t trials, std::uint64_t rngSeed) {
    if (trials < 1) throw std::domain_error("trials must be >= 1");
    if (!(p > 0.0) || p > 1.0) throw std::domain_error("p must be in (0,1]");
    std::mt19937_64 rng(rngSeed);
    std::binomial_distribution<std::int64_t> binom(n, p);
    std::int64_t up = 0, down = 0;
    const double bound = delta * p;
    for (std::int64_t t = 0; t < trials; ++t) {
        const double mean = static_cast<double>(binom(rng)) / static_cast<double>(n);
        if (mean - p > bound) ++up;
        if (p - mean > bound) ++down;
    }
    ValidationRates r;
    r.upper = static_cast<double>(up) / static_cast<double>(trials);
    r.lower = static_cast<double>(down) / static_cast<double>(trials);
    r.twoSided = static_cast<double>(up + down) / static_cast<double>(trials);
    return r;
}

// One row of the accuracy/storage table.
struct TableRow {
    double p, delta, epsilon;
    std::int64_t n;         // exact ceiling
    std::int64_t nRounded;  // headline value
    std::int64_t bytes;     // storage for the headline value
    double kb;
};

inline TableRow table_row(double epsilon, double delta, double p,
                          int bytesPerShare = kDefaultBytesPerShare) {
    TableRow row{};
    row.p = p;
    row.delta = delta;
    row.epsilon = epsilon;
    row.n = required_samples(epsilon, delta, p);
    row.nRounded = rounded_samples(row.n);
    row.bytes = storage_overhead_bytes(row.nRounded, bytesPerShare);
    row.kb = storage_overhead_kb(row.nRounded, bytesPerShare);
    return row;
}

}  // namespace prs::sampling
