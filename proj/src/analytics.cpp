#include "assassin/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace assassin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda(double lambda, double hi, bool closed_hi, const char* what) {
    const bool ok = lambda > 0.0 && std::isfinite(lambda) &&
                    (closed_hi ? lambda <= hi : lambda < hi);
    if (!ok) throw std::domain_error(what);
}

}  // namespace

SpectralPair spectral(double lambda) {
    require_lambda(lambda, 0.25, true, "spectral requires lambda in (0, 1/4]");
    const double delta = std::sqrt(1.0 - 4.0 * lambda);
    return {delta, (1.0 - delta) / 2.0, (1.0 + delta) / 2.0};
}

double gamma_exponent(double lambda) {
    require_lambda(lambda, 0.25, false, "gamma_exponent requires lambda in (0, 1/4)");
    const SpectralPair s = spectral(lambda);
    return (1.0 + s.delta) / (1.0 - s.delta);
}

double moment_threshold(int p) {
    if (p < 1) throw std::domain_error("moment order must be >= 1");
    const double q = static_cast<double>(p);
    return q / ((q + 1.0) * (q + 1.0));
}

double mean_N(double lambda) {
    require_lambda(lambda, kInf, false, "mean_N requires lambda > 0");
    if (lambda > 0.25) return kInf;
    return 2.0 / (1.0 + std::sqrt(1.0 - 4.0 * lambda));
}

double second_moment_N(double lambda) {
    require_lambda(lambda, kInf, false, "second_moment_N requires lambda > 0");
    if (lambda >= moment_threshold(2)) return kInf;
    return 2.0 / (3.0 * std::sqrt(1.0 - 4.0 * lambda) - 1.0);
}

double third_moment_N(double lambda) {
    require_lambda(lambda, kInf, false, "third_moment_N requires lambda > 0");
    if (lambda >= moment_threshold(3)) return kInf;
    const double a = spectral(lambda).alpha;
    return 6.0 * (3.0 * lambda - a) * a / ((4.0 * lambda - 3.0 * a) * (1.0 - a - 3.0 * lambda)) -
           6.0 * lambda * (2.0 * lambda - a) * a /
               ((3.0 * lambda - 2.0 * a) * (3.0 * lambda - 2.0 * a) * (1.0 - a - 2.0 * lambda)) +
           1.0 / (1.0 - a);
}

double MomentPoly::eval(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

namespace {

MomentPoly poly_product(const MomentPoly& a, const MomentPoly& b) {
    MomentPoly c;
    c.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            c.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return c;
}

double binomial(int n, int k) {
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * static_cast<double>(n - k + i) / i;
    return acc;
}

}  // namespace

MomentRecursion moment_polys(double lambda, int p) {
    if (p < 1) throw std::domain_error("moment_polys requires p >= 1");
    require_lambda(lambda, kInf, false, "moment_polys requires lambda > 0");

    MomentRecursion rec;
    if (lambda > 0.25) {  // even the first moment diverges
        rec.first_infinite_k = 1;
        return rec;
    }
    const double alpha = spectral(lambda).alpha;

    rec.q.push_back({{0.0, 1.0}});  // Q_1 = x
    rec.r.push_back({{0.0, 1.0}});  // R_1 = x

    for (int k = 2; k <= p; ++k) {
        if (lambda >= moment_threshold(k)) {
            rec.first_infinite_k = k;
            break;
        }
        // Forcing polynomial from the moment-cumulant convolution, the
        // kappa_k term excluded: sum_{j<k} C(k-1, j-1) R_j Q_{k-j}.
        MomentPoly forcing;
        forcing.coeffs.assign(static_cast<std::size_t>(k) + 1, 0.0);
        for (int j = 1; j < k; ++j) {
            const MomentPoly prod = poly_product(rec.r[j - 1], rec.q[k - j - 1]);
            const double c = binomial(k - 1, j - 1);
            for (std::size_t i = 0; i < prod.coeffs.size(); ++i) {
                forcing.coeffs[i] += c * prod.coeffs[i];
            }
        }
        // Every partition product carries >= 2 constant-free factors, so the
        // forcing has no resonance with the e^{alpha t} homogeneous solution.
        if (std::abs(forcing.coeffs[0]) > 1e-9 || std::abs(forcing.coeffs[1]) > 1e-9) {
            throw std::logic_error("moment recursion: unexpected low-order forcing term");
        }

        // Particular solution coefficient per monomial r_i x^i, then the
        // e^{alpha t} coefficient pinned by R_k(1) = 0.
        MomentPoly rk;
        rk.coeffs.assign(static_cast<std::size_t>(k) + 1, 0.0);
        double sum_ci = 0.0;
        for (int i = 2; i <= k; ++i) {
            const double ri = forcing.coeffs[static_cast<std::size_t>(i)];
            const double ci = lambda * ri /
                              ((i - 1) * ((i + 1) * lambda - i * alpha));
            rk.coeffs[static_cast<std::size_t>(i)] = ci;
            sum_ci += ci;
        }
        rk.coeffs[1] = -sum_ci;

        MomentPoly qk;
        qk.coeffs.assign(static_cast<std::size_t>(k) + 1, 0.0);
        for (std::size_t i = 0; i < qk.coeffs.size(); ++i) {
            qk.coeffs[i] = forcing.coeffs[i] + rk.coeffs[i];
        }
        rec.r.push_back(std::move(rk));
        rec.q.push_back(std::move(qk));
    }
    return rec;
}

double moment_N(double lambda, int p) {
    if (p < 1) throw std::domain_error("moment_N requires p >= 1");
    require_lambda(lambda, kInf, false, "moment_N requires lambda > 0");
    if (p == 1 ? lambda > 0.25 : lambda >= moment_threshold(p)) return kInf;

    const MomentRecursion rec = moment_polys(lambda, p);
    const double alpha = spectral(lambda).alpha;
    const MomentPoly& qp = rec.q.back();
    double acc = 0.0;
    for (std::size_t k = 1; k < qp.coeffs.size(); ++k) {
        acc += qp.coeffs[k] / (1.0 - static_cast<double>(k) * alpha);
    }
    return acc;
}

namespace {

// Golden-section minimum of f on [lo, hi] in log-u coordinates.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lo);
    double b = std::log(hi);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));
    for (int it = 0; it < 400 && (b - a) > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(std::exp(d));
        }
    }
    const double u = std::exp((a + b) / 2.0);
    return {u, f(u)};
}

}  // namespace

StabilityVerdict classify_stability(double lambda, const KillingDist& killing) {
    require_lambda(lambda, kInf, false, "classify_stability requires lambda > 0");
    const double domain = killing.mgf_domain();
    if (!(domain > 0.0)) throw std::domain_error("killing MGF degenerate at 0");

    if (killing.kind() == KillingKind::Exponential) {
        // Exact: min lambda phi(u)/u = 4 lambda / mu at u = mu/2, and the
        // boundary lambda/mu = 1/4 is stable.
        const double mu = killing.param_a();
        const Stability verdict = lambda <= 0.25 * mu ? Stability::Stable : Stability::Unstable;
        return {verdict, 4.0 * lambda / mu, mu / 2.0};
    }

    const auto h = [&](double u) { return lambda * killing.mgf(u) / u; };

    // Bracket the minimum on a log grid, expanding outward when the MGF has
    // unbounded domain; h is unimodal for every supported family.
    double lo = 0.0;
    double hi = 0.0;
    if (std::isfinite(domain)) {
        lo = domain * 1e-9;
        hi = domain * (1.0 - 1e-9);
    } else {
        lo = 1e-9;
        hi = 1.0;
        while (h(hi * 2.0) < h(hi)) hi *= 2.0;
        hi *= 2.0;
    }
    const int grid = 256;
    double best_u = lo;
    double best_h = h(lo);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (grid - 1);
    for (int i = 1; i < grid; ++i) {
        const double u = std::exp(log_lo + i * step);
        const double hu = h(u);
        if (hu < best_h) {
            best_h = hu;
            best_u = u;
        }
    }
    const double bracket_lo = std::max(lo, best_u * std::exp(-2.0 * step));
    const double bracket_hi = std::min(hi, best_u * std::exp(2.0 * step));
    const auto [u_star, min_value] = golden_min(h, bracket_lo, bracket_hi);

    Stability verdict = Stability::Inconclusive;
    if (min_value < 1.0 - 1e-9) {
        verdict = Stability::Stable;
    } else if (min_value > 1.0 + 1e-9) {
        verdict = Stability::Unstable;
    }
    return {verdict, min_value, u_star};
}

double GridFunction::at_time(double t) const {
    if (values.empty()) return tail_value;
    if (t <= 0.0) return values.front();
    const double pos = t / step;
    const auto idx = static_cast<std::size_t>(pos);
    if (idx + 1 >= values.size()) {
        return t > horizon() ? tail_value : values.back();
    }
    const double frac = pos - static_cast<double>(idx);
    return values[idx] * (1.0 - frac) + values[idx + 1] * frac;
}

namespace {

void require_grid(double horizon, double step) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::domain_error("horizon must be > 0");
    if (!(step > 0.0) || step > horizon) throw std::domain_error("step must be in (0, horizon]");
}

}  // namespace

GridFunction extinction_profile(double lambda, double horizon, double step) {
    require_lambda(lambda, kInf, false, "extinction_profile requires lambda > 0");
    require_grid(horizon, step);

    const std::size_t n = static_cast<std::size_t>(std::llround(horizon / step)) + 1;
    const double h = horizon / static_cast<double>(n - 1);

    std::vector<double> pi(n, 0.0);
    std::vector<double> cum(n, 0.0);      // int_0^t pi
    std::vector<double> exponent(n, 0.0); // -(lambda+1)t + lambda cum
    std::vector<double> next(n, 0.0);

    constexpr double kTol = 1e-10;
    constexpr int kMaxIter = 200000;
    double delta = kInf;

    for (int it = 0; it < kMaxIter; ++it) {
        cum[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            cum[i] = cum[i - 1] + 0.5 * h * (pi[i] + pi[i - 1]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            exponent[i] = -(lambda + 1.0) * (h * static_cast<double>(i)) + lambda * cum[i];
        }
        // Tail: pi constant past the horizon makes the integrand a pure
        // exponential with rate lambda + 1 - lambda pi(T) >= 1.
        const double tail = std::exp(exponent[n - 1]) / (lambda + 1.0 - lambda * pi[n - 1]);
        // Suffix integral of e^{exponent} with the exponent linear per panel;
        // this rule reproduces a constant fixed point exactly.
        double suffix = tail;
        next[n - 1] = std::exp(h * static_cast<double>(n - 1)) * suffix;
        for (std::size_t i = n - 1; i-- > 0;) {
            const double dg = exponent[i + 1] - exponent[i];
            double panel = 0.0;
            if (std::abs(dg) < 1e-12) {
                panel = h * std::exp(0.5 * (exponent[i] + exponent[i + 1]));
            } else {
                panel = h * (std::exp(exponent[i + 1]) - std::exp(exponent[i])) / dg;
            }
            suffix += panel;
            next[i] = std::exp(h * static_cast<double>(i)) * suffix;
        }
        delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            delta = std::max(delta, std::abs(next[i] - pi[i]));
        }
        pi.swap(next);
        if (delta < kTol) {
            GridFunction out;
            out.step = h;
            out.values = std::move(pi);
            out.tail_value = out.values.back();
            return out;
        }
    }
    throw ConvergenceError("extinction_profile did not converge", delta);
}

GridFunction laplace_profile(double lambda, double theta, double horizon, double step) {
    require_lambda(lambda, 0.25, true, "laplace_profile requires lambda in (0, 1/4]");
    if (theta < 0.0 || !std::isfinite(theta)) throw std::domain_error("theta must be >= 0");
    require_grid(horizon, step);

    const std::size_t n = static_cast<std::size_t>(std::llround(horizon / step)) + 1;
    const double h = horizon / static_cast<double>(n - 1);
    const double base = std::exp(-theta);

    std::vector<double> L(n, base);
    std::vector<double> inner(n, 0.0);  // int_t^inf (L-1) e^{-s} ds
    std::vector<double> outer(n, 0.0);  // int_0^t e^x inner(x) dx
    std::vector<double> next(n, 0.0);

    constexpr double kTol = 1e-10;
    constexpr int kMaxIter = 100000;
    double delta = kInf;

    for (int it = 0; it < kMaxIter; ++it) {
        // Trapezoid from the right plus the constant-tail closed form.
        const double T = h * static_cast<double>(n - 1);
        inner[n - 1] = (L[n - 1] - 1.0) * std::exp(-T);
        for (std::size_t i = n - 1; i-- > 0;) {
            const double fi = (L[i] - 1.0) * std::exp(-h * static_cast<double>(i));
            const double fj = (L[i + 1] - 1.0) * std::exp(-h * static_cast<double>(i + 1));
            inner[i] = inner[i + 1] + 0.5 * h * (fi + fj);
        }
        outer[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            const double gi = std::exp(h * static_cast<double>(i - 1)) * inner[i - 1];
            const double gj = std::exp(h * static_cast<double>(i)) * inner[i];
            outer[i] = outer[i - 1] + 0.5 * h * (gi + gj);
        }
        delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = base * std::exp(lambda * outer[i]);
            delta = std::max(delta, std::abs(next[i] - L[i]));
        }
        L.swap(next);
        if (delta < kTol) {
            GridFunction out;
            out.step = h;
            out.values = std::move(L);
            out.tail_value = out.values.back();
            return out;
        }
    }
    throw ConvergenceError("laplace_profile did not converge", delta);
}

}  // namespace assassin
