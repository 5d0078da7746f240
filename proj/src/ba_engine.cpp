#include "assassin/ba_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "assassin/parallel.hpp"
#include "assassin/stats.hpp"

namespace assassin {

RootCondition RootCondition::at_risk_at(double t) {
    if (t < 0.0 || !std::isfinite(t)) throw std::domain_error("at-risk time must be >= 0");
    return {Kind::AtRiskAt, t};
}

RootCondition RootCondition::dies_at(double t) {
    if (t < 0.0 || !std::isfinite(t)) throw std::domain_error("death time must be >= 0");
    return {Kind::DiesAt, t};
}

namespace {

// Born-but-unexplored particle; ordered by when its killing clock starts.
struct Pending {
    double at_risk;      // parent's death time
    std::uint64_t seq;   // birth order, breaks at-risk ties
    double birth;
};

struct PendingLater {
    bool operator()(const Pending& a, const Pending& b) const {
        if (a.at_risk != b.at_risk) return a.at_risk > b.at_risk;
        return a.seq > b.seq;
    }
};

struct RawEvent {
    double time;
    std::int8_t delta;  // +1 birth, -1 death
};

// Reusable per-worker buffers; cleared at the start of every realization.
struct Workspace {
    std::vector<Pending> heap;
    std::vector<RawEvent> events;
};

Workspace& workspace() {
    static thread_local Workspace ws;
    return ws;
}

BAOutcome run_realization(const ModelParams& params, RootCondition root,
                          const CensorPolicy& policy, SeedSpec seed, Workspace& ws) {
    params.validate();
    policy.validate();

    ws.heap.clear();
    ws.events.clear();
    Rng rng(seed);

    std::uint64_t n_born = 1;
    std::uint64_t seq = 0;
    bool censored = false;
    double last_death = 0.0;

    // Draws the offspring of a particle alive on [birth, death]; children are
    // at risk from the parent's death. Returns false when the particle cap
    // truncates a birth.
    auto spawn_children = [&](double birth, double death) {
        double arrival = birth;
        for (;;) {
            arrival += rng.exponential(params.lambda);
            if (arrival > death) return true;
            if (n_born >= policy.max_particles) {
                censored = true;
                return false;
            }
            ++n_born;
            ws.heap.push_back({death, seq++, arrival});
            std::push_heap(ws.heap.begin(), ws.heap.end(), PendingLater{});
            ws.events.push_back({arrival, +1});
        }
    };

    double root_death = 0.0;
    switch (root.kind) {
        case RootCondition::Kind::Free: root_death = params.killing.sample(rng); break;
        case RootCondition::Kind::AtRiskAt: root_death = root.t + params.killing.sample(rng); break;
        case RootCondition::Kind::DiesAt: root_death = root.t; break;
    }
    last_death = root_death;
    ws.events.push_back({root_death, -1});

    if (spawn_children(0.0, root_death)) {
        while (!ws.heap.empty()) {
            std::pop_heap(ws.heap.begin(), ws.heap.end(), PendingLater{});
            const Pending p = ws.heap.back();
            ws.heap.pop_back();
            if (p.at_risk > policy.max_time) {
                censored = true;
                break;
            }
            const double death = p.at_risk + params.killing.sample(rng);
            last_death = std::max(last_death, death);
            ws.events.push_back({death, -1});
            if (!spawn_children(p.birth, death)) break;
        }
    }

    // Peak living count: time sweep with births before deaths at ties.
    std::sort(ws.events.begin(), ws.events.end(), [](const RawEvent& a, const RawEvent& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.delta > b.delta;
    });
    std::int64_t alive = 1;
    std::int64_t peak = 1;
    for (const RawEvent& e : ws.events) {
        alive += e.delta;
        peak = std::max(peak, alive);
    }

    BAOutcome out;
    out.n_born = n_born;
    out.censored = censored;
    out.max_alive = static_cast<std::uint64_t>(peak);
    if (!censored) out.extinction_time = last_death;
    return out;
}

}  // namespace

BAOutcome sample_ba(const ModelParams& params, RootCondition root, const CensorPolicy& policy,
                    SeedSpec seed) {
    return run_realization(params, root, policy, seed, workspace());
}

Trajectory sample_trajectory(const ModelParams& params, RootCondition root,
                             const CensorPolicy& policy, SeedSpec seed, BAOutcome* outcome) {
    Workspace& ws = workspace();
    const BAOutcome out = run_realization(params, root, policy, seed, ws);
    if (outcome != nullptr) *outcome = out;

    Trajectory traj;
    traj.events.reserve(ws.events.size());
    std::uint64_t alive = 1;  // run_realization left events sorted
    for (const auto& e : ws.events) {
        alive = static_cast<std::uint64_t>(static_cast<std::int64_t>(alive) + e.delta);
        traj.events.push_back(
            {e.time, e.delta > 0 ? EventKind::Birth : EventKind::Death, alive});
    }
    return traj;
}

std::vector<BAOutcome> sample_ba_batch(const ModelParams& params, RootCondition root,
                                       const CensorPolicy& policy, std::uint64_t master_seed,
                                       std::uint64_t count) {
    std::vector<BAOutcome> out(count);
    for_each_replica(count, [&](std::uint64_t i) {
        out[i] = run_realization(params, root, policy, SeedSpec{master_seed, i}, workspace());
    });
    return out;
}

MeanEstimate sample_Y_mean(const ModelParams& params, double t, std::uint64_t replicas,
                           const CensorPolicy& policy, std::uint64_t master_seed) {
    if (replicas == 0) throw std::domain_error("sample_Y_mean requires replicas >= 1");
    const auto outcomes = sample_ba_batch(params, RootCondition::dies_at(t), policy,
                                          master_seed, replicas);
    std::vector<double> values(outcomes.size());
    std::uint64_t censored = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        values[i] = static_cast<double>(outcomes[i].n_born);
        censored += outcomes[i].censored ? 1 : 0;
    }
    MeanEstimate est;
    est.count = replicas;
    est.censored_count = censored;
    if (replicas == 1) {
        est.mean = values[0];
        est.stderr_ = 0.0;
    } else {
        const SampleSummary s = summarize(values, censored);
        est.mean = s.mean;
        est.stderr_ = s.stderr_;
    }
    return est;
}

}  // namespace assassin
