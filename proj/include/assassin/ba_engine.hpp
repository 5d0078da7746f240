#ifndef ASSASSIN_BA_ENGINE_HPP_
#define ASSASSIN_BA_ENGINE_HPP_

#include <cstdint>
#include <vector>

#include "assassin/core.hpp"

namespace assassin {

// Conditioning of the ancestor particle.
//   Free        -- at risk at time 0, killing clock sampled (the process B).
//   AtRiskAt(t) -- cannot die before t; clock starts at t (the X(t) variant).
//   DiesAt(t)   -- death time pinned to t (the Y(t) variant).
struct RootCondition {
    enum class Kind { Free, AtRiskAt, DiesAt };

    Kind kind = Kind::Free;
    double t = 0.0;

    static RootCondition free_root() { return {Kind::Free, 0.0}; }
    static RootCondition at_risk_at(double t);
    static RootCondition dies_at(double t);
};

enum class EventKind : std::uint8_t { Birth, Death };

struct TrajectoryEvent {
    double time;
    EventKind kind;
    std::uint64_t alive_after;
};

// Time-ordered event log of one realization; ties break Birth before Death
// so the running living count never dips negative. The ancestor's birth is
// the initial state (alive count starts at 1), not an event.
struct Trajectory {
    std::vector<TrajectoryEvent> events;
};

// Exact event-driven sample of the process law. Exploration is breadth-first
// by at-risk time, so the particle cap truncates the latest subtrees and a
// censored n_born is a deterministic lower bound of the uncapped count for
// the same stream.
BAOutcome sample_ba(const ModelParams& params, RootCondition root,
                    const CensorPolicy& policy, SeedSpec seed);

Trajectory sample_trajectory(const ModelParams& params, RootCondition root,
                             const CensorPolicy& policy, SeedSpec seed,
                             BAOutcome* outcome = nullptr);

// Replicas 0..count-1 under master_seed, fanned across workers; the result
// vector is indexed by replica so aggregation ignores scheduling.
std::vector<BAOutcome> sample_ba_batch(const ModelParams& params, RootCondition root,
                                       const CensorPolicy& policy,
                                       std::uint64_t master_seed, std::uint64_t count);

struct MeanEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t count = 0;
    std::uint64_t censored_count = 0;
};

// Monte Carlo estimate of E Y(t) (root dies at t).
MeanEstimate sample_Y_mean(const ModelParams& params, double t, std::uint64_t replicas,
                           const CensorPolicy& policy, std::uint64_t master_seed);

}  // namespace assassin

#endif  // ASSASSIN_BA_ENGINE_HPP_
