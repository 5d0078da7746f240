#include "assassin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace assassin {

namespace {
constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile
constexpr double kKs1pct = 1.628;           // two-sample KS coefficient at 1%
}  // namespace

SampleSummary summarize(std::span<const double> samples, std::uint64_t censored_count) {
    if (samples.size() < 2) throw std::domain_error("summarize requires at least 2 samples");
    SampleSummary s;
    s.count = samples.size();
    s.censored_count = censored_count;
    const double n = static_cast<double>(samples.size());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss / (n - 1.0);
    s.stderr_ = std::sqrt(s.variance / n);
    s.ci95_low = s.mean - kZ95 * s.stderr_;
    s.ci95_high = s.mean + kZ95 * s.stderr_;
    return s;
}

namespace {

// Hill statistic from descending-sorted samples and log prefix sums.
double hill_at(const std::vector<double>& desc, const std::vector<double>& log_prefix,
               std::size_t k) {
    const double denom = log_prefix[k] - static_cast<double>(k) * std::log(desc[k]);
    if (!(denom > 0.0)) return 0.0;
    return static_cast<double>(k) / denom;
}

struct SortedTail {
    std::vector<double> desc;
    std::vector<double> log_prefix;  // log_prefix[k] = sum of log of top k
};

SortedTail sort_tail(std::span<const double> samples) {
    for (double x : samples) {
        if (!(x > 0.0)) throw std::domain_error("hill requires strictly positive samples");
    }
    SortedTail t;
    t.desc.assign(samples.begin(), samples.end());
    std::sort(t.desc.begin(), t.desc.end(), std::greater<>());
    t.log_prefix.resize(t.desc.size() + 1);
    t.log_prefix[0] = 0.0;
    for (std::size_t i = 0; i < t.desc.size(); ++i) {
        t.log_prefix[i + 1] = t.log_prefix[i] + std::log(t.desc[i]);
    }
    return t;
}

}  // namespace

TailEstimate hill(std::span<const double> samples, std::size_t k) {
    if (samples.size() < 2) throw std::domain_error("hill requires at least 2 samples");
    if (k < 1 || k >= samples.size()) {
        throw std::domain_error("hill requires 1 <= k < sample count");
    }
    const SortedTail t = sort_tail(samples);

    TailEstimate est;
    std::size_t kk = k;
    double gamma = hill_at(t.desc, t.log_prefix, kk);
    while (gamma == 0.0 && kk > 1) {  // ties zeroed every log-spacing
        --kk;
        gamma = hill_at(t.desc, t.log_prefix, kk);
    }
    if (gamma == 0.0) throw std::domain_error("hill: all order statistics tied");
    est.k = kk;
    est.k_reduced = kk != k;
    est.gamma_hat = gamma;
    return est;
}

std::vector<std::pair<std::size_t, double>> hill_curve(std::span<const double> samples,
                                                       std::size_t k_min, std::size_t k_max,
                                                       std::size_t k_step) {
    if (k_step == 0 || k_min < 1 || k_min > k_max || k_max >= samples.size()) {
        throw std::domain_error("hill_curve requires 1 <= k_min <= k_max < count, step > 0");
    }
    const SortedTail t = sort_tail(samples);
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t k = k_min; k <= k_max; k += k_step) {
        out.emplace_back(k, hill_at(t.desc, t.log_prefix, k));
    }
    return out;
}

std::vector<double> jitter_integer_samples(std::span<const std::uint64_t> samples,
                                           std::uint64_t seed) {
    Rng rng(SeedSpec{seed, 0});
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = static_cast<double>(samples[i]) + rng.uniform01();
    }
    return out;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample requires non-empty samples");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double distance = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < sa.size() || j < sb.size()) {
        const double v = (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j])) ? sa[i] : sb[j];
        while (i < sa.size() && sa[i] <= v) ++i;  // step past ties on both sides
        while (j < sb.size() && sb[j] <= v) ++j;
        distance = std::max(distance,
                            std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult r;
    r.distance = distance;
    r.critical_1pct = kKs1pct * std::sqrt((na + nb) / (na * nb));
    return r;
}

namespace {

SurvivalEstimate survival_from_flags(std::uint64_t censored, std::uint64_t total,
                                     const CensorPolicy& policy_used) {
    if (total == 0) throw std::domain_error("extinction_frequency requires outcomes");
    if (policy_used.max_particles < 1000000 || policy_used.max_time < 10000.0) {
        throw std::domain_error(
            "extinction_frequency needs caps >= (1e6 particles, 1e4 time); smaller caps "
            "measure the budget, not explosion");
    }
    SurvivalEstimate e;
    e.count = total;
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(censored) / n;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n);
    e.survived_fraction = p;
    e.ci_low = std::max(0.0, p - half);
    e.ci_high = std::min(1.0, p + half);
    return e;
}

}  // namespace

SurvivalEstimate extinction_frequency(std::span<const BAOutcome> outcomes,
                                      const CensorPolicy& policy_used) {
    std::uint64_t censored = 0;
    for (const auto& o : outcomes) censored += o.censored ? 1 : 0;
    return survival_from_flags(censored, outcomes.size(), policy_used);
}

SurvivalEstimate extinction_frequency(std::span<const RumorOutcome> outcomes,
                                      const CensorPolicy& policy_used) {
    std::uint64_t censored = 0;
    for (const auto& o : outcomes) censored += o.censored ? 1 : 0;
    return survival_from_flags(censored, outcomes.size(), policy_used);
}

}  // namespace assassin
