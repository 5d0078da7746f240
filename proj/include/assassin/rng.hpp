#ifndef ASSASSIN_RNG_HPP_
#define ASSASSIN_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace assassin {

// Identifies one replica's random stream. The stream is a pure function of
// (master_seed, replica_index), so replicas can run on any worker in any
// order and still reproduce bit-identical results.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replica_index = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// xoshiro256++ with splitmix64 seeding. Explicit inverse-CDF samplers keep
// stream consumption sequential and replayable across platforms.
class Rng {
public:
    explicit Rng(SeedSpec seed) {
        std::uint64_t sm = seed.master_seed;
        sm ^= detail::splitmix64(sm) + 0x9e3779b97f4a7c15ULL * (seed.replica_index + 1);
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Strictly positive exponential variate.
    double exponential(double rate) { return -std::log(uniform01()) / rate; }

    double standard_normal() {
        // Marsaglia polar method, no cached spare.
        for (;;) {
            const double u = 2.0 * uniform01() - 1.0;
            const double v = 2.0 * uniform01() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // Marsaglia-Tsang; shape < 1 handled by the boost G(s) = G(s+1) U^{1/s}.
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = 0.0;
            double v = 0.0;
            do {
                x = standard_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace assassin

#endif  // ASSASSIN_RNG_HPP_
