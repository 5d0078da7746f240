#include "assassin/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace assassin {

namespace {
void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(name) + " must be a positive finite real");
    }
}
}  // namespace

KillingDist KillingDist::exponential(double rate) {
    require_positive(rate, "exponential rate");
    return KillingDist(KillingKind::Exponential, rate, 0.0);
}

KillingDist KillingDist::deterministic(double value) {
    require_positive(value, "deterministic killing time");
    return KillingDist(KillingKind::Deterministic, value, 0.0);
}

KillingDist KillingDist::gamma(double shape, double rate) {
    require_positive(shape, "gamma shape");
    require_positive(rate, "gamma rate");
    return KillingDist(KillingKind::Gamma, shape, rate);
}

double KillingDist::mgf(double u) const {
    if (u < 0.0 || !std::isfinite(u)) throw std::domain_error("mgf requires u >= 0");
    switch (kind_) {
        case KillingKind::Exponential:
            return u < a_ ? a_ / (a_ - u) : std::numeric_limits<double>::infinity();
        case KillingKind::Deterministic:
            return std::exp(u * a_);
        case KillingKind::Gamma:
            return u < b_ ? std::pow(b_ / (b_ - u), a_)
                          : std::numeric_limits<double>::infinity();
    }
    throw std::logic_error("unreachable killing kind");
}

double KillingDist::mgf_domain() const {
    switch (kind_) {
        case KillingKind::Exponential: return a_;
        case KillingKind::Deterministic: return std::numeric_limits<double>::infinity();
        case KillingKind::Gamma: return b_;
    }
    throw std::logic_error("unreachable killing kind");
}

double KillingDist::mean() const {
    switch (kind_) {
        case KillingKind::Exponential: return 1.0 / a_;
        case KillingKind::Deterministic: return a_;
        case KillingKind::Gamma: return a_ / b_;
    }
    throw std::logic_error("unreachable killing kind");
}

double KillingDist::sample(Rng& rng) const {
    switch (kind_) {
        case KillingKind::Exponential: return rng.exponential(a_);
        case KillingKind::Deterministic: return a_;
        case KillingKind::Gamma: return rng.gamma(a_, b_);
    }
    throw std::logic_error("unreachable killing kind");
}

KillingDist KillingDist::scaled_by(double factor) const {
    require_positive(factor, "scale factor");
    switch (kind_) {
        case KillingKind::Exponential: return exponential(a_ / factor);
        case KillingKind::Deterministic: return deterministic(a_ * factor);
        case KillingKind::Gamma: return gamma(a_, b_ / factor);
    }
    throw std::logic_error("unreachable killing kind");
}

std::string KillingDist::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case KillingKind::Exponential: os << "exp:" << a_; break;
        case KillingKind::Deterministic: os << "det:" << a_; break;
        case KillingKind::Gamma: os << "gamma:" << a_ << "," << b_; break;
    }
    return os.str();
}

void ModelParams::validate() const {
    require_positive(lambda, "lambda");
}

void CensorPolicy::validate() const {
    if (max_particles == 0) throw std::domain_error("max_particles must be positive");
    require_positive(max_time, "max_time");
}

ScaledModel scale_to_unit(double lambda, double mu) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    return {lambda / mu, mu};
}

}  // namespace assassin
