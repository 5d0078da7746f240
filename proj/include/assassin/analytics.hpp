#ifndef ASSASSIN_ANALYTICS_HPP_
#define ASSASSIN_ANALYTICS_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "assassin/core.hpp"

namespace assassin {

// Thrown when a fixed-point iteration fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Roots of X^2 - X + lambda: the algebraic backbone of every closed form.
struct SpectralPair {
    double delta;  // sqrt(1 - 4 lambda)
    double alpha;  // (1 - delta) / 2
    double beta;   // (1 + delta) / 2
};

SpectralPair spectral(double lambda);  // domain (0, 1/4]

// Power tail exponent beta/alpha; domain (0, 1/4) open (the limit at 1/4 is 1).
double gamma_exponent(double lambda);

// E N^p is finite iff lambda < p (p+1)^{-2} (p >= 2; p = 1 is finite up to
// and including 1/4).
double moment_threshold(int p);

// Closed forms. Out-of-domain lambda above the finiteness threshold returns
// +infinity (an infinite-moment signal, distinct from a domain error).
double mean_N(double lambda);
double second_moment_N(double lambda);
double third_moment_N(double lambda);

// Polynomial in x = e^{alpha t}; coeffs[k] multiplies x^k.
struct MomentPoly {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double eval(double x) const;
    double coeff(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : 0.0; }
};

// Moment polynomials Q_k (E Y(t)^k = Q_k(e^{alpha t})) and cumulant
// polynomials R_k, k = 1..p, built by the moment-cumulant recursion.
// Q_k(1) = 1, R_k(1) = 0 for k >= 2, R_1(x) = x.
struct MomentRecursion {
    std::vector<MomentPoly> q;  // q[k-1] is Q_k
    std::vector<MomentPoly> r;
    int first_infinite_k = 0;   // smallest k with E Y(t)^k = inf; 0 when none
};

MomentRecursion moment_polys(double lambda, int p);

// E N^p via E N^p = sum_k q_k / (1 - k alpha); +infinity above the threshold.
double moment_N(double lambda, int p);

enum class Stability { Stable, Unstable, Critical, Inconclusive };

struct StabilityVerdict {
    Stability verdict;
    double criterion_value;  // minimized lambda phi(u)/u
    double argmin_u;
};

// min_{u>0} lambda phi(u)/u against 1. Exponential killing resolves the
// boundary exactly (lambda/mu = 1/4 is stable); other families fall back to
// golden-section search and report Inconclusive inside a 1e-9 band.
StabilityVerdict classify_stability(double lambda, const KillingDist& killing);

// Uniform grid t_0 = 0 .. horizon; tail_value continues beyond the horizon.
struct GridFunction {
    double step = 0.0;
    std::vector<double> values;
    double tail_value = 0.0;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return step * static_cast<double>(i); }
    double horizon() const { return values.empty() ? 0.0 : time_at(values.size() - 1); }
    // Linear interpolation on the grid, tail_value beyond the horizon.
    double at_time(double t) const;
};

// Extinction probability profile pi(t) = P(extinction | root protected to t),
// the least fixed point of
//   pi(t) = e^t int_t^inf exp(-(lambda+1)s + lambda int_0^s pi(x) dx) ds.
// Iteration starts from 0; inner integral is trapezoidal on the grid; the
// outer tail beyond the horizon closes in closed form under the linear
// continuation of int_0^s pi.
GridFunction extinction_profile(double lambda, double horizon = 40.0, double step = 0.01);

// Laplace transform profile L_theta(t) = E exp(-theta Y(t)), fixed point of
//   L(t) = e^{-theta} exp(lambda int_0^t e^x int_x^inf (L(s)-1) e^{-s} ds dx)
// iterated from the constant e^{-theta} with L(s) = L(horizon) past the end.
GridFunction laplace_profile(double lambda, double theta, double horizon = 40.0,
                             double step = 0.01);

}  // namespace assassin

#endif  // ASSASSIN_ANALYTICS_HPP_
