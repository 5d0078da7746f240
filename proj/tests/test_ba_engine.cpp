#include "assassin/ba_engine.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "assassin/stats.hpp"
#include "doctest.h"

using namespace assassin;

namespace {

const CensorPolicy kGenerous{1000000, 10000.0};

ModelParams params(double lambda) { return {lambda, KillingDist::exponential(1.0)}; }

std::vector<double> born_counts(const std::vector<BAOutcome>& outcomes) {
    std::vector<double> v(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        v[i] = static_cast<double>(outcomes[i].n_born);
    }
    return v;
}

}  // namespace

TEST_CASE("a root dying at 0 never reproduces") {
    for (std::uint64_t r = 0; r < 50; ++r) {
        const auto out = sample_ba(params(5.0), RootCondition::dies_at(0.0), kGenerous,
                                   SeedSpec{11, r});
        CHECK(out.n_born == 1);
        CHECK(!out.censored);
        CHECK(out.extinction_time == 0.0);
        CHECK(out.max_alive == 1);
    }
}

TEST_CASE("same seed reproduces the outcome bit for bit") {
    const auto a = sample_ba(params(0.22), RootCondition::free_root(), kGenerous, SeedSpec{3, 9});
    const auto b = sample_ba(params(0.22), RootCondition::free_root(), kGenerous, SeedSpec{3, 9});
    CHECK(a == b);
    const auto c = sample_ba(params(0.22), RootCondition::free_root(), kGenerous, SeedSpec{3, 10});
    CHECK(a != c);
}

TEST_CASE("P(N = 1) = 1/(1+lambda) at lambda = 0.2") {
    const std::uint64_t n = 100000;
    const auto outcomes = sample_ba_batch(params(0.2), RootCondition::free_root(), kGenerous,
                                          20240101, n);
    std::uint64_t singletons = 0;
    for (const auto& o : outcomes) {
        CHECK(o.n_born >= 1);
        singletons += o.n_born == 1 ? 1 : 0;
    }
    const double p = static_cast<double>(singletons) / static_cast<double>(n);
    const double target = 1.0 / 1.2;
    const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(n));
    CHECK(std::abs(p - target) < 3.0 * se);
}

TEST_CASE("mean progeny matches 2/(1+sqrt(1-4 lambda)) at lambda = 0.2") {
    const std::uint64_t n = 100000;
    const auto outcomes = sample_ba_batch(params(0.2), RootCondition::free_root(), kGenerous,
                                          915234, n);
    const auto values = born_counts(outcomes);
    const auto s = summarize(values);
    CHECK(std::abs(s.mean - 1.3819660112501053) < 3.0 * s.stderr_);
    CHECK(s.censored_count == 0);
}

TEST_CASE("sample_Y_mean anchors") {
    SUBCASE("t = 0 is exactly 1") {
        const auto est = sample_Y_mean(params(0.2), 0.0, 5000, kGenerous, 7);
        CHECK(est.mean == 1.0);
        CHECK(est.stderr_ == 0.0);
    }
    SUBCASE("E Y(1) = e^alpha at lambda = 0.2") {
        const auto est = sample_Y_mean(params(0.2), 1.0, 100000, kGenerous, 99185);
        CHECK(std::abs(est.mean - 1.3183661466608956) < 3.0 * est.stderr_);
    }
    SUBCASE("E Y(2) = e at the critical intensity") {
        const auto est = sample_Y_mean(params(0.25), 2.0, 100000, kGenerous, 5150);
        CHECK(std::abs(est.mean - 2.718281828459045) < 3.0 * est.stderr_);
    }
}

TEST_CASE("trajectory of a root dying at 0 is a single death event") {
    const auto traj = sample_trajectory(params(1.0), RootCondition::dies_at(0.0), kGenerous,
                                        SeedSpec{1, 1});
    REQUIRE(traj.events.size() == 1);
    CHECK(traj.events[0].time == 0.0);
    CHECK(traj.events[0].kind == EventKind::Death);
    CHECK(traj.events[0].alive_after == 0);
}

TEST_CASE("trajectories are time-sorted, consistent with the outcome, and end extinct") {
    for (std::uint64_t r = 0; r < 200; ++r) {
        BAOutcome out;
        const auto traj = sample_trajectory(params(0.24), RootCondition::free_root(), kGenerous,
                                            SeedSpec{88, r}, &out);
        REQUIRE(!traj.events.empty());
        std::uint64_t births = 0;
        std::uint64_t peak = 1;
        double last_time = 0.0;
        std::int64_t alive = 1;
        for (const auto& e : traj.events) {
            CHECK(e.time >= last_time);
            last_time = e.time;
            alive += e.kind == EventKind::Birth ? 1 : -1;
            CHECK(alive >= 0);
            CHECK(e.alive_after == static_cast<std::uint64_t>(alive));
            births += e.kind == EventKind::Birth ? 1 : 0;
            peak = std::max(peak, e.alive_after);
        }
        CHECK(births + 1 == out.n_born);
        CHECK(peak == out.max_alive);
        REQUIRE(!out.censored);
        CHECK(traj.events.back().alive_after == 0);
        CHECK(out.extinction_time == traj.events.back().time);
    }
}

TEST_CASE("mean peak population is stable across independent seeds") {
    const std::uint64_t n = 10000;
    double mean[2];
    double se[2];
    const std::uint64_t seeds[2] = {424, 31337};
    for (int s = 0; s < 2; ++s) {
        const auto outcomes = sample_ba_batch(params(0.2), RootCondition::free_root(), kGenerous,
                                              seeds[s], n);
        std::vector<double> peaks(outcomes.size());
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            peaks[i] = static_cast<double>(outcomes[i].max_alive);
        }
        const auto summary = summarize(peaks);
        mean[s] = summary.mean;
        se[s] = summary.stderr_;
    }
    CHECK(std::abs(mean[0] - mean[1]) < 3.0 * std::hypot(se[0], se[1]));
}

TEST_CASE("X(t) has the law of Y(t + D) with D ~ Exp(1)") {
    const std::uint64_t n = 100000;
    const double t = 0.7;
    const auto x_side = sample_ba_batch(params(0.2), RootCondition::at_risk_at(t), kGenerous,
                                        111, n);
    std::vector<BAOutcome> y_side(n);
    Rng delay_stream(SeedSpec{222, 0});
    for (std::uint64_t i = 0; i < n; ++i) {
        const double d = delay_stream.exponential(1.0);
        y_side[i] = sample_ba(params(0.2), RootCondition::dies_at(t + d), kGenerous,
                              SeedSpec{333, i});
    }
    const auto ks = ks_two_sample(born_counts(x_side), born_counts(y_side));
    CHECK(ks.distance < ks.critical_1pct);
}

TEST_CASE("Y(t) grows stochastically with the protection horizon") {
    const std::uint64_t n = 50000;
    const auto lo = sample_ba_batch(params(0.2), RootCondition::dies_at(0.5), kGenerous, 51, n);
    const auto hi = sample_ba_batch(params(0.2), RootCondition::dies_at(2.0), kGenerous, 52, n);
    const auto lo_values = born_counts(lo);
    const auto hi_values = born_counts(hi);
    const auto slo = summarize(lo_values);
    const auto shi = summarize(hi_values);
    CHECK(shi.mean - slo.mean > 3.0 * std::hypot(slo.stderr_, shi.stderr_));

    // One-sided ECDF dominance: F_hi must not exceed F_lo beyond noise.
    auto sorted_lo = lo_values;
    auto sorted_hi = hi_values;
    std::sort(sorted_lo.begin(), sorted_lo.end());
    std::sort(sorted_hi.begin(), sorted_hi.end());
    double worst = 0.0;
    for (std::uint64_t v = 1; v <= 50; ++v) {
        const double x = static_cast<double>(v) + 0.5;
        const double flo =
            static_cast<double>(std::upper_bound(sorted_lo.begin(), sorted_lo.end(), x) -
                                sorted_lo.begin()) /
            static_cast<double>(n);
        const double fhi =
            static_cast<double>(std::upper_bound(sorted_hi.begin(), sorted_hi.end(), x) -
                                sorted_hi.begin()) /
            static_cast<double>(n);
        worst = std::max(worst, fhi - flo);
    }
    CHECK(worst < 1.628 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("particle cap censors deterministically and bounds n_born from below") {
    const CensorPolicy capped{10, 10000.0};
    int censored_runs = 0;
    for (std::uint64_t r = 0; r < 500; ++r) {
        const auto full = sample_ba(params(0.24), RootCondition::free_root(), kGenerous,
                                    SeedSpec{940, r});
        const auto cut = sample_ba(params(0.24), RootCondition::free_root(), capped,
                                   SeedSpec{940, r});
        CHECK(cut.n_born <= full.n_born);
        CHECK(cut.n_born <= 10);
        CHECK(cut.censored == (full.n_born > 10));
        if (cut.censored) {
            ++censored_runs;
            CHECK(!cut.extinction_time.has_value());
        } else {
            CHECK(cut == full);
        }
    }
    CHECK(censored_runs > 0);
}

TEST_CASE("time cap halts exploration and censors") {
    const CensorPolicy tight{1000000, 1.0};
    int censored_runs = 0;
    for (std::uint64_t r = 0; r < 300; ++r) {
        const auto out = sample_ba(params(0.5), RootCondition::free_root(), tight,
                                   SeedSpec{123, r});
        if (out.censored) {
            ++censored_runs;
            CHECK(!out.extinction_time.has_value());
        } else {
            CHECK(out.extinction_time.has_value());
        }
    }
    CHECK(censored_runs > 0);
}

TEST_CASE("censoring vanishes under generous caps in the stable regime") {
    const auto outcomes = sample_ba_batch(params(0.15), RootCondition::free_root(), kGenerous,
                                          5005, 20000);
    std::uint64_t censored = 0;
    for (const auto& o : outcomes) censored += o.censored ? 1 : 0;
    CHECK(censored == 0);
}

TEST_CASE("supercritical runs censor at a positive stable rate") {
    const CensorPolicy policy{100000, 10000.0};
    const auto outcomes = sample_ba_batch(params(0.4), RootCondition::free_root(), policy,
                                          606, 3000);
    std::uint64_t censored = 0;
    for (const auto& o : outcomes) censored += o.censored ? 1 : 0;
    const double fraction = static_cast<double>(censored) / 3000.0;
    CHECK(fraction > 0.01);
    CHECK(fraction < 0.06);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(sample_ba({-1.0, KillingDist::exponential(1.0)}, RootCondition::free_root(),
                              kGenerous, SeedSpec{}),
                    std::domain_error);
    CHECK_THROWS_AS(sample_ba(params(0.2), RootCondition::dies_at(-1.0), kGenerous, SeedSpec{}),
                    std::domain_error);
    CHECK_THROWS_AS(sample_ba(params(0.2), RootCondition::free_root(), CensorPolicy{0, 1.0},
                              SeedSpec{}),
                    std::domain_error);
}
