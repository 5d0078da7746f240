#include "assassin/core.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace assassin;

TEST_CASE("scale_to_unit reduces to intensity lambda/mu") {
    const auto s = scale_to_unit(0.5, 2.0);
    CHECK(s.lambda_unit == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s.time_factor == doctest::Approx(2.0));

    const auto id = scale_to_unit(0.2, 1.0);
    CHECK(id.lambda_unit == doctest::Approx(0.2));
    CHECK(id.time_factor == doctest::Approx(1.0));

    CHECK_THROWS_AS(scale_to_unit(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(scale_to_unit(0.5, -1.0), std::domain_error);
}

TEST_CASE("mgf closed forms") {
    const auto exp1 = KillingDist::exponential(1.0);
    CHECK(exp1.mgf(0.0) == doctest::Approx(1.0));
    CHECK(exp1.mgf(0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isinf(exp1.mgf(1.0)));
    CHECK(std::isinf(exp1.mgf(2.0)));
    CHECK(exp1.mgf_domain() == doctest::Approx(1.0));

    const auto det1 = KillingDist::deterministic(1.0);
    CHECK(det1.mgf(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(std::isinf(det1.mgf_domain()));

    const auto gam = KillingDist::gamma(2.0, 3.0);
    CHECK(gam.mgf(0.0) == doctest::Approx(1.0));
    CHECK(gam.mgf(1.0) == doctest::Approx(std::pow(3.0 / 2.0, 2.0)).epsilon(1e-12));
    CHECK(std::isinf(gam.mgf(3.0)));

    CHECK_THROWS_AS(exp1.mgf(-0.1), std::domain_error);
}

TEST_CASE("mgf is >= 1, non-decreasing and convex on a grid") {
    const KillingDist dists[] = {
        KillingDist::exponential(1.0),
        KillingDist::exponential(2.5),
        KillingDist::deterministic(0.7),
        KillingDist::gamma(0.5, 1.0),
        KillingDist::gamma(3.0, 2.0),
    };
    for (const auto& d : dists) {
        const double hi = std::isfinite(d.mgf_domain()) ? d.mgf_domain() * 0.95 : 3.0;
        const int n = 64;
        double prev = 0.0;
        double prev_diff = -1.0;
        for (int i = 0; i <= n; ++i) {
            const double u = hi * i / n;
            const double value = d.mgf(u);
            CHECK(value >= 1.0 - 1e-12);
            if (i > 0) {
                const double diff = value - prev;
                CHECK(diff >= -1e-12);            // non-decreasing
                if (i > 1) CHECK(diff >= prev_diff - 1e-9);  // convex increments
                prev_diff = diff;
            }
            prev = value;
        }
    }
}

TEST_CASE("killing samples match the family mean") {
    const KillingDist dists[] = {
        KillingDist::exponential(2.0),
        KillingDist::deterministic(1.5),
        KillingDist::gamma(0.6, 1.2),
        KillingDist::gamma(4.0, 2.0),
    };
    int stream = 0;
    for (const auto& d : dists) {
        Rng rng(SeedSpec{424242, static_cast<std::uint64_t>(stream++)});
        const int n = 200000;
        double sum = 0.0;
        double sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = d.sample(rng);
            CHECK(x > 0.0);
            sum += x;
            sumsq += x * x;
        }
        const double mean = sum / n;
        const double var = sumsq / n - mean * mean;
        const double se = std::sqrt(var / n) + 1e-12;
        CHECK(std::abs(mean - d.mean()) < 4.0 * se);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(KillingDist::exponential(0.0), std::domain_error);
    CHECK_THROWS_AS(KillingDist::deterministic(-1.0), std::domain_error);
    CHECK_THROWS_AS(KillingDist::gamma(1.0, 0.0), std::domain_error);
    ModelParams bad{-0.1, KillingDist::exponential(1.0)};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    CensorPolicy pol{0, 1.0};
    CHECK_THROWS_AS(pol.validate(), std::domain_error);
}
