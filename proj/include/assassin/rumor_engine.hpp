#ifndef ASSASSIN_RUMOR_ENGINE_HPP_
#define ASSASSIN_RUMOR_ENGINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "assassin/core.hpp"

namespace assassin {

// Graph the rumor runs on. CompletePendant is the complete graph on {1..n}
// plus the pendant edge (0,1); vertex 0 is the auxiliary recovered seed.
struct Topology {
    enum class Kind { CompletePendant, Explicit };

    Kind kind = Kind::CompletePendant;
    int n = 0;                                    // vertices 1..n (0 is auxiliary)
    std::vector<std::vector<int>> adjacency;      // Explicit only, ids 0..n

    static Topology complete_pendant(int n);
    static Topology from_edges(int max_vertex, const std::vector<std::pair<int, int>>& edges);
    // Edge-list text: one "u v" pair per line, 0-based ids, undirected;
    // blank lines and '#' comments ignored.
    static Topology from_edge_list_file(const std::string& path);
    static Topology from_edge_list_stream(std::istream& in);

    bool connected() const;
};

enum class RumorInit { PaperInit, FullBlame };

struct RumorConfig {
    int n = 0;
    double lambda = 0.0;
    Topology topology;
    RumorInit init_mode = RumorInit::PaperInit;
    // Divisor of the infection rate: n on the complete-pendant graph (the
    // lambda/n generator), 1 per edge on explicit graphs. 0 = that default.
    double infection_scale = 0.0;

    double effective_scale() const;
    void validate() const;
};

enum class Status : std::uint8_t { S, I, R };

// Full CTMC state plus the derived bookkeeping the generator needs.
struct RumorState {
    std::vector<Status> status;                 // index 0..n
    std::vector<std::vector<int>> blamers;      // A_v
    std::vector<int> recovered_blamers;         // r_v = |{u in A_v : s_u = R}|
    std::vector<int> infected;                  // vertices with status I
    int non_recovered = 0;                      // non-R count among 1..n
    int recovered = 0;                          // R count among 1..n

    bool absorbed() const { return infected.empty(); }
};

RumorState init_state(const RumorConfig& config);

struct RumorEvent {
    double time;
    enum class Kind : std::uint8_t { Infection, Recovery } kind;
    int from;  // infecting vertex, or -1 for recoveries
    int to;
};

struct RumorOutcome {
    int n_recovered = 0;        // R vertices among {1..n} at absorption
    double absorption_time = 0.0;
    bool censored = false;
    std::vector<RumorEvent> trajectory;  // filled only when requested
};

// Exact Gillespie simulation of the scotching CTMC. Recovery of an infected
// vertex fires at rate equal to its count of recovered blamers; infection
// (i -> j) at rate lambda/scale per eligible pair, where a hit on an already
// infected j still consumes a clock tick and only grows A_j. When
// forced_root_recovery is set, vertex 1 has no stochastic recovery clock and
// recovers at exactly that time (the Y_n(t) conditioning).
RumorOutcome run_rumor(const RumorConfig& config, const CensorPolicy& policy, SeedSpec seed,
                       std::optional<double> forced_root_recovery = std::nullopt,
                       bool record_trajectory = false);

struct RumorDistribution {
    std::vector<std::uint64_t> n_recovered;  // indexed by replica
    std::vector<double> absorption_times;
    std::uint64_t censored_count = 0;
};

RumorDistribution sample_N_n_distribution(const RumorConfig& config, std::uint64_t replicas,
                                          const CensorPolicy& policy, std::uint64_t master_seed,
                                          std::optional<double> forced_root_recovery = std::nullopt);

}  // namespace assassin

#endif  // ASSASSIN_RUMOR_ENGINE_HPP_
