#ifndef ASSASSIN_STATS_HPP_
#define ASSASSIN_STATS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "assassin/core.hpp"
#include "assassin/rumor_engine.hpp"

namespace assassin {

struct SampleSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double stderr_ = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint64_t censored_count = 0;
};

SampleSummary summarize(std::span<const double> samples, std::uint64_t censored_count = 0);

struct TailEstimate {
    std::size_t k = 0;          // order statistics actually used
    double gamma_hat = 0.0;
    bool k_reduced = false;     // ties forced a smaller k
    std::vector<std::pair<std::size_t, double>> curve;  // optional Hill plot
};

// Hill estimator over the top k order statistics:
//   gamma_hat = k / sum_{i=1..k} log(X_(n-i+1) / X_(n-k)).
// Ties that zero out every log-spacing reduce k (flagged in the result).
TailEstimate hill(std::span<const double> samples, std::size_t k);

// Hill estimates for k = k_min, k_min+k_step, ..., <= k_max over one sort.
std::vector<std::pair<std::size_t, double>> hill_curve(std::span<const double> samples,
                                                       std::size_t k_min, std::size_t k_max,
                                                       std::size_t k_step);

// Integer-valued samples tie heavily; adding U(0,1) jitter keeps Hill's
// log-spacings well defined without moving the tail index.
std::vector<double> jitter_integer_samples(std::span<const std::uint64_t> samples,
                                           std::uint64_t seed);

struct KsResult {
    double distance = 0.0;       // sup |F_a - F_b|
    double critical_1pct = 0.0;  // 1.628 sqrt((m+n)/(mn))
};

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct SurvivalEstimate {
    double survived_fraction = 0.0;  // censored runs / total (explosion proxy)
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t count = 0;
};

// Caps below (1e6 particles, 1e4 time) are refused: there censoring would
// measure the budget, not explosion.
SurvivalEstimate extinction_frequency(std::span<const BAOutcome> outcomes,
                                      const CensorPolicy& policy_used);
SurvivalEstimate extinction_frequency(std::span<const RumorOutcome> outcomes,
                                      const CensorPolicy& policy_used);

}  // namespace assassin

#endif  // ASSASSIN_STATS_HPP_
