#ifndef ASSASSIN_CORE_HPP_
#define ASSASSIN_CORE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "assassin/rng.hpp"

namespace assassin {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class KillingKind { Exponential, Deterministic, Gamma };

// Killing-time distribution of a particle once it is at risk. Each supported
// family carries its moment generating function in closed form, so the
// stability criterion needs no numeric integration.
class KillingDist {
public:
    static KillingDist exponential(double rate);
    static KillingDist deterministic(double value);
    static KillingDist gamma(double shape, double rate);

    KillingKind kind() const { return kind_; }
    double param_a() const { return a_; }  // rate / value / shape
    double param_b() const { return b_; }  // gamma rate

    // E e^{uK}; +infinity where the MGF diverges. Requires u >= 0.
    double mgf(double u) const;
    // Supremum of the interval on which the MGF is finite.
    double mgf_domain() const;
    double mean() const;
    double sample(Rng& rng) const;

    // Scale K -> factor*K (the joint rescaling that preserves the process law
    // together with lambda -> lambda/factor).
    KillingDist scaled_by(double factor) const;

    std::string describe() const;

    friend bool operator==(const KillingDist&, const KillingDist&) = default;

private:
    KillingDist(KillingKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    KillingKind kind_;
    double a_;
    double b_;
};

struct ModelParams {
    double lambda = 0.0;
    KillingDist killing = KillingDist::exponential(1.0);

    void validate() const;  // throws std::domain_error
};

// Dual truncation: neither cap alone guarantees termination of every
// statistic once lambda exceeds 1/4.
struct CensorPolicy {
    std::uint64_t max_particles = 1000000;
    double max_time = 10000.0;

    void validate() const;
};

// One realization of the birth-and-assassination process.
struct BAOutcome {
    std::uint64_t n_born = 1;                    // born particles incl. ancestor
    std::optional<double> extinction_time;       // absent when censored
    bool censored = false;
    std::uint64_t max_alive = 0;                 // peak simultaneous living particles

    friend bool operator==(const BAOutcome&, const BAOutcome&) = default;
};

struct ScaledModel {
    double lambda_unit;
    double time_factor;
};

// (lambda, mu) and (lambda/mu, 1) describe the same progeny law with times
// rescaled by 1/mu.
ScaledModel scale_to_unit(double lambda, double mu);

}  // namespace assassin

#endif  // ASSASSIN_CORE_HPP_
