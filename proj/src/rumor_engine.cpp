#include "assassin/rumor_engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "assassin/parallel.hpp"

namespace assassin {

Topology Topology::complete_pendant(int n) {
    if (n < 1) throw std::domain_error("complete-pendant topology requires n >= 1");
    Topology t;
    t.kind = Kind::CompletePendant;
    t.n = n;
    return t;
}

Topology Topology::from_edges(int max_vertex, const std::vector<std::pair<int, int>>& edges) {
    if (max_vertex < 1) throw std::domain_error("explicit topology requires vertices beyond 0");
    Topology t;
    t.kind = Kind::Explicit;
    t.n = max_vertex;
    t.adjacency.assign(static_cast<std::size_t>(max_vertex) + 1, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u > max_vertex || v > max_vertex || u == v) {
            throw std::domain_error("edge endpoints must be distinct ids in [0, n]");
        }
        t.adjacency[static_cast<std::size_t>(u)].push_back(v);
        t.adjacency[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : t.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    if (!t.connected()) throw std::domain_error("explicit topology must be connected");
    return t;
}

Topology Topology::from_edge_list_stream(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int max_vertex = 0;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u = 0;
        long long v = 0;
        if (!(ls >> u)) continue;  // blank line
        if (!(ls >> v)) throw std::domain_error("edge line needs two vertex ids: " + line);
        long long extra = 0;
        if (ls >> extra) throw std::domain_error("edge line has trailing tokens: " + line);
        if (u < 0 || v < 0) throw std::domain_error("vertex ids must be >= 0");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_vertex = std::max<int>(max_vertex, static_cast<int>(std::max(u, v)));
    }
    if (edges.empty()) throw std::domain_error("edge list is empty");
    return from_edges(max_vertex, edges);
}

Topology Topology::from_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open edge list file: " + path);
    return from_edge_list_stream(in);
}

bool Topology::connected() const {
    if (kind == Kind::CompletePendant) return true;
    std::vector<char> seen(adjacency.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adjacency[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == adjacency.size();
}

double RumorConfig::effective_scale() const {
    if (infection_scale > 0.0) return infection_scale;
    return topology.kind == Topology::Kind::CompletePendant ? static_cast<double>(n) : 1.0;
}

void RumorConfig::validate() const {
    if (n < 1) throw std::domain_error("rumor config requires n >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("lambda must be > 0");
    if (infection_scale < 0.0) throw std::domain_error("infection_scale must be >= 0");
    if (topology.kind == Topology::Kind::Explicit) {
        if (topology.n != n) throw std::domain_error("explicit topology size mismatch");
        if (!topology.connected()) throw std::domain_error("explicit topology must be connected");
    }
}

namespace {

std::vector<int> neighbors_of(const RumorConfig& config, int v) {
    if (config.topology.kind == Topology::Kind::Explicit) {
        return config.topology.adjacency[static_cast<std::size_t>(v)];
    }
    std::vector<int> out;
    if (v == 0) {
        out.push_back(1);
        return out;
    }
    out.reserve(static_cast<std::size_t>(config.n));
    if (v == 1) out.push_back(0);
    for (int u = 1; u <= config.n; ++u) {
        if (u != v) out.push_back(u);
    }
    return out;
}

}  // namespace

RumorState init_state(const RumorConfig& config) {
    config.validate();
    const auto size = static_cast<std::size_t>(config.n) + 1;
    RumorState st;
    st.status.assign(size, Status::S);
    st.blamers.assign(size, {});
    st.recovered_blamers.assign(size, 0);
    st.status[0] = Status::R;
    st.status[1] = Status::I;
    st.infected = {1};
    st.non_recovered = config.n;
    st.recovered = 0;

    if (config.init_mode == RumorInit::PaperInit) {
        st.blamers[1] = {0};
    } else {
        for (int v = 0; v <= config.n; ++v) {
            st.blamers[static_cast<std::size_t>(v)] = neighbors_of(config, v);
        }
    }
    for (std::size_t v = 0; v < size; ++v) {
        int r = 0;
        for (int u : st.blamers[v]) {
            if (st.status[static_cast<std::size_t>(u)] == Status::R) ++r;
        }
        st.recovered_blamers[v] = r;
    }
    return st;
}

namespace {

// Incremental bookkeeping for one Gillespie run.
struct Engine {
    const RumorConfig& config;
    RumorState st;
    // Complete topology: non-R vertices in {1..n} as a swap-removal list.
    std::vector<int> non_recovered_list;
    std::vector<int> non_recovered_pos;
    // Explicit topology: per-infected-vertex count of non-R neighbors.
    std::vector<int> eligible;
    double total_eligible = 0.0;  // sum over I of eligible targets
    double total_recovery = 0.0;  // sum over I of r_v, root excluded when forced
    bool root_forced = false;

    explicit Engine(const RumorConfig& cfg, bool forced) : config(cfg), root_forced(forced) {
        st = init_state(cfg);
        const auto size = static_cast<std::size_t>(cfg.n) + 1;
        if (cfg.topology.kind == Topology::Kind::CompletePendant) {
            non_recovered_list.resize(static_cast<std::size_t>(cfg.n));
            non_recovered_pos.assign(size, -1);
            for (int v = 1; v <= cfg.n; ++v) {
                non_recovered_list[static_cast<std::size_t>(v - 1)] = v;
                non_recovered_pos[static_cast<std::size_t>(v)] = v - 1;
            }
            total_eligible = static_cast<double>(st.non_recovered - 1);
        } else {
            eligible.assign(size, 0);
            eligible[1] = count_eligible(1);
            total_eligible = eligible[1];
        }
        total_recovery = root_forced ? 0.0 : st.recovered_blamers[1];
    }

    int count_eligible(int v) const {
        int c = 0;
        for (int u : config.topology.adjacency[static_cast<std::size_t>(v)]) {
            if (st.status[static_cast<std::size_t>(u)] != Status::R) ++c;
        }
        return c;
    }

    double infection_rate() const {
        return config.lambda / config.effective_scale() * total_eligible;
    }

    bool counts_recovery(int v) const { return !(root_forced && v == 1); }

    // Uniform choice among the i-th infected vertex's eligible targets.
    int pick_target_complete(int infector, double u) const {
        const int count = st.non_recovered - 1;
        auto idx = static_cast<int>(u * count);
        idx = std::min(idx, count - 1);
        if (idx == non_recovered_pos[static_cast<std::size_t>(infector)]) idx = count;
        return non_recovered_list[static_cast<std::size_t>(idx)];
    }

    void infect(int from, int to) {
        auto& blame = st.blamers[static_cast<std::size_t>(to)];
        if (st.status[static_cast<std::size_t>(to)] == Status::S) {
            st.status[static_cast<std::size_t>(to)] = Status::I;
            st.infected.push_back(to);
            if (config.topology.kind == Topology::Kind::CompletePendant) {
                total_eligible = static_cast<double>(st.infected.size()) *
                                 static_cast<double>(st.non_recovered - 1);
            } else {
                eligible[static_cast<std::size_t>(to)] = count_eligible(to);
                total_eligible += eligible[static_cast<std::size_t>(to)];
            }
            if (counts_recovery(to)) {
                total_recovery += st.recovered_blamers[static_cast<std::size_t>(to)];
            }
        }
        if (std::find(blame.begin(), blame.end(), from) == blame.end()) {
            blame.push_back(from);
            // from is infected, never recovered, so r_to is unchanged.
        }
    }

    void recover(int v) {
        st.status[static_cast<std::size_t>(v)] = Status::R;
        if (counts_recovery(v)) {
            total_recovery -= st.recovered_blamers[static_cast<std::size_t>(v)];
        }
        const auto it = std::find(st.infected.begin(), st.infected.end(), v);
        *it = st.infected.back();
        st.infected.pop_back();
        st.blamers[static_cast<std::size_t>(v)].clear();
        st.recovered_blamers[static_cast<std::size_t>(v)] = 0;
        st.non_recovered -= 1;
        st.recovered += 1;

        if (config.topology.kind == Topology::Kind::CompletePendant) {
            const int pos = non_recovered_pos[static_cast<std::size_t>(v)];
            const int last = non_recovered_list.back();
            non_recovered_list[static_cast<std::size_t>(pos)] = last;
            non_recovered_pos[static_cast<std::size_t>(last)] = pos;
            non_recovered_list.pop_back();
            non_recovered_pos[static_cast<std::size_t>(v)] = -1;
            total_eligible = static_cast<double>(st.infected.size()) *
                             static_cast<double>(st.non_recovered - 1);
        } else {
            total_eligible -= eligible[static_cast<std::size_t>(v)];
            eligible[static_cast<std::size_t>(v)] = 0;
            for (int u : config.topology.adjacency[static_cast<std::size_t>(v)]) {
                if (st.status[static_cast<std::size_t>(u)] == Status::I) {
                    eligible[static_cast<std::size_t>(u)] -= 1;
                    total_eligible -= 1.0;
                }
            }
        }
        // A freshly recovered blamer arms every infected vertex that blames v.
        for (int u : st.infected) {
            auto& blame = st.blamers[static_cast<std::size_t>(u)];
            if (std::find(blame.begin(), blame.end(), v) != blame.end()) {
                st.recovered_blamers[static_cast<std::size_t>(u)] += 1;
                if (counts_recovery(u)) total_recovery += 1.0;
            }
        }
    }
};

}  // namespace

RumorOutcome run_rumor(const RumorConfig& config, const CensorPolicy& policy, SeedSpec seed,
                       std::optional<double> forced_root_recovery, bool record_trajectory) {
    config.validate();
    policy.validate();
    if (forced_root_recovery && (*forced_root_recovery < 0.0 || !std::isfinite(*forced_root_recovery))) {
        throw std::domain_error("forced root recovery time must be >= 0");
    }

    Engine eng(config, forced_root_recovery.has_value());
    Rng rng(seed);
    RumorOutcome out;

    double now = 0.0;
    bool root_pending = forced_root_recovery.has_value();
    std::uint64_t events = 0;

    while (!eng.st.absorbed()) {
        if (events >= policy.max_particles || now > policy.max_time) {
            out.censored = true;
            break;
        }
        const double rate = eng.infection_rate() + eng.total_recovery;
        double step = std::numeric_limits<double>::infinity();
        if (rate > 0.0) step = rng.exponential(rate);

        if (root_pending && now + step >= *forced_root_recovery) {
            now = *forced_root_recovery;
            root_pending = false;
            if (record_trajectory) {
                out.trajectory.push_back({now, RumorEvent::Kind::Recovery, -1, 1});
            }
            eng.recover(1);
            ++events;
            continue;
        }
        if (!std::isfinite(step)) {
            throw std::logic_error("rumor CTMC stalled with infected vertices present");
        }
        now += step;
        ++events;

        const double pick = rng.uniform01() * rate;
        if (pick < eng.infection_rate()) {
            int from = 0;
            int to = 0;
            if (config.topology.kind == Topology::Kind::CompletePendant) {
                // All infected vertices expose the same target count.
                const auto i = std::min<std::size_t>(
                    static_cast<std::size_t>(rng.uniform01() * eng.st.infected.size()),
                    eng.st.infected.size() - 1);
                from = eng.st.infected[i];
                to = eng.pick_target_complete(from, rng.uniform01());
            } else {
                double mark = rng.uniform01() * eng.total_eligible;
                from = eng.st.infected.back();
                for (int v : eng.st.infected) {
                    mark -= eng.eligible[static_cast<std::size_t>(v)];
                    if (mark < 0.0) {
                        from = v;
                        break;
                    }
                }
                auto k = static_cast<int>(rng.uniform01() *
                                          eng.eligible[static_cast<std::size_t>(from)]);
                k = std::min(k, eng.eligible[static_cast<std::size_t>(from)] - 1);
                to = -1;
                for (int u : config.topology.adjacency[static_cast<std::size_t>(from)]) {
                    if (eng.st.status[static_cast<std::size_t>(u)] != Status::R && k-- == 0) {
                        to = u;
                        break;
                    }
                }
            }
            if (record_trajectory) {
                out.trajectory.push_back({now, RumorEvent::Kind::Infection, from, to});
            }
            eng.infect(from, to);
        } else {
            double mark = pick - eng.infection_rate();
            int who = -1;
            for (int v : eng.st.infected) {
                if (!eng.counts_recovery(v)) continue;
                mark -= eng.st.recovered_blamers[static_cast<std::size_t>(v)];
                if (mark < 0.0) {
                    who = v;
                    break;
                }
            }
            if (who < 0) {  // numerical edge of the categorical draw
                for (auto it = eng.st.infected.rbegin(); it != eng.st.infected.rend(); ++it) {
                    if (eng.counts_recovery(*it) &&
                        eng.st.recovered_blamers[static_cast<std::size_t>(*it)] > 0) {
                        who = *it;
                        break;
                    }
                }
            }
            if (record_trajectory) {
                out.trajectory.push_back({now, RumorEvent::Kind::Recovery, -1, who});
            }
            eng.recover(who);
        }
    }

    out.n_recovered = eng.st.recovered;
    out.absorption_time = now;
    return out;
}

RumorDistribution sample_N_n_distribution(const RumorConfig& config, std::uint64_t replicas,
                                          const CensorPolicy& policy, std::uint64_t master_seed,
                                          std::optional<double> forced_root_recovery) {
    RumorDistribution dist;
    dist.n_recovered.resize(replicas);
    dist.absorption_times.resize(replicas);
    std::vector<char> censored(replicas, 0);
    for_each_replica(replicas, [&](std::uint64_t i) {
        const RumorOutcome out =
            run_rumor(config, policy, SeedSpec{master_seed, i}, forced_root_recovery);
        dist.n_recovered[i] = static_cast<std::uint64_t>(out.n_recovered);
        dist.absorption_times[i] = out.absorption_time;
        censored[i] = out.censored ? 1 : 0;
    });
    for (char c : censored) dist.censored_count += static_cast<std::uint64_t>(c);
    return dist;
}

}  // namespace assassin
