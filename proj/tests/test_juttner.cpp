#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "relgas/juttner.hpp"

using namespace relgas;

TEST_CASE("pdf_gamma basics") {
    const JuttnerDist d{1.0};
    CHECK(pdf_gamma(d, 1.0) == 0.0);
    CHECK_THROWS_AS(pdf_gamma(d, 0.999), std::domain_error);
    CHECK_THROWS_AS(pdf_gamma(JuttnerDist{-1.0}, 2.0), std::domain_error);

    for (double alpha : {0.01, 1.0, 10.0}) {
        const JuttnerDist dd{alpha};
        const double norm =
            integrate([&](double g) { return pdf_gamma(dd, g); }, 1.0, gamma_truncation(dd))
                .value;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("mean of gamma under the pdf matches the closed form") {
    const JuttnerDist d{1.0};
    const double by_quadrature =
        integrate([&](double g) { return g * pdf_gamma(d, g); }, 1.0, gamma_truncation(d))
            .value;
    CHECK(by_quadrature == doctest::Approx(mean_gamma(d)).epsilon(1e-9));
    // 3 + K1(1)/K2(1)
    CHECK(mean_gamma(d) == doctest::Approx(3.3704412).epsilon(1e-6));
}

TEST_CASE("mass_moments closed forms vs quadrature") {
    for (double alpha : {0.01, 0.1, 1.0, 10.0}) {
        const JuttnerDist d{alpha};
        const MassMoments mm = mass_moments(d);
        const double q1 =
            integrate([&](double g) { return g * pdf_gamma(d, g); }, 1.0, gamma_truncation(d))
                .value;
        const double q2 =
            integrate([&](double g) { return g * g * pdf_gamma(d, g); }, 1.0,
                      gamma_truncation(d))
                .value;
        CHECK(mm.mean_mass == doctest::Approx(q1).epsilon(1e-8));
        CHECK(mm.mean_mass_sq == doctest::Approx(q2).epsilon(1e-8));
    }
}

TEST_CASE("mass_moments examples and invariants") {
    const MassMoments mm = mass_moments(JuttnerDist{0.01});
    CHECK(mm.mean_mass == doctest::Approx(300.005).epsilon(1e-5));
    CHECK(std::fabs(mm.ratio - 4.0 / 3.0) <= 1e-3);

    for (double alpha : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const MassMoments m = mass_moments(JuttnerDist{alpha});
        CHECK(m.mean_mass_sq >= m.mean_mass * m.mean_mass);
        CHECK(m.ratio >= 1.0);
    }
    CHECK_THROWS_AS(mass_moments(JuttnerDist{1e-9}), std::domain_error);
    CHECK_THROWS_AS(mass_moments(JuttnerDist{1e5}), std::domain_error);
}

TEST_CASE("small-alpha scalings of the moments") {
    const JuttnerDist d{1e-3};
    const MassMoments mm = mass_moments(d);
    CHECK(d.alpha * mm.mean_mass == doctest::Approx(3.0).epsilon(0.01));
    CHECK(d.alpha * d.alpha * mm.mean_mass_sq == doctest::Approx(12.0).epsilon(0.01));
}

TEST_CASE("moment_ratio_deviation stays bounded as alpha -> 0") {
    double prev = 0.0;
    for (double alpha : {0.1, 0.01, 0.001}) {
        const double dev = moment_ratio_deviation(JuttnerDist{alpha});
        CHECK(std::fabs(dev) <= 1.0);
        if (prev != 0.0) CHECK(std::fabs(dev - prev) < 0.05);
        prev = dev;

        // Algebraic round-trip.
        const MassMoments mm = mass_moments(JuttnerDist{alpha});
        CHECK(dev * alpha * alpha + 4.0 / 3.0 ==
              doctest::Approx(mm.ratio).epsilon(1e-12));
    }
    CHECK(std::isfinite(moment_ratio_deviation(JuttnerDist{1.0})));
}

TEST_CASE("sampler determinism") {
    const JuttnerDist d{1.0};
    const RandomStream rs{0x5EED, 3};
    const auto a = sample_gamma(d, rs, 1000);
    const auto b = sample_gamma(d, rs, 1000);
    CHECK(a == b);
    CHECK(a.size() == 1000);
    for (double g : a) CHECK(g >= 1.0);
}

TEST_CASE("sampler mean gate at 5 sigma") {
    const JuttnerDist d{1.0};
    const auto xs = sample_gamma(d, RandomStream{0x5EED, 4}, 1000000);
    double sum = 0.0, sum_sq = 0.0;
    for (double x : xs) {
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = sum / n;
    const double sd = std::sqrt(sum_sq / n - mean * mean);
    CHECK(std::fabs(mean - mean_gamma(d)) <= 5.0 * sd / std::sqrt(n));
}

TEST_CASE("sampler KS gate against the numeric CDF") {
    for (double alpha : {0.1, 1.0, 10.0}) {
        const JuttnerDist d{alpha};
        auto xs = sample_gamma(d, RandomStream{0x5EED, 5}, 100000);
        std::sort(xs.begin(), xs.end());
        const double norm_c = alpha / (bessel_k(2, alpha) * std::exp(alpha));
        const auto pdf = [=](double g) {
            return norm_c * g * std::sqrt((g - 1.0) * (g + 1.0)) *
                   std::exp(-alpha * (g - 1.0));
        };
        const double n = static_cast<double>(xs.size());
        double ks = 0.0, cum = 0.0, prev = 1.0;
        QuadratureSpec spec;
        spec.max_subdivisions = 200;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] > prev) cum += integrate(pdf, prev, xs[i], spec).value;
            prev = xs[i];
            ks = std::max({ks, std::fabs(cum - (i + 1) / n), std::fabs(cum - i / n)});
        }
        CHECK(ks < 1.95 / std::sqrt(n));
    }
}

TEST_CASE("inverse table round-trips the CDF to 1e-8") {
    for (double alpha : {1e-4, 0.1, 1.0, 10.0, 100.0}) {
        const JuttnerDist d{alpha};
        const JuttnerSampler sampler(d);
        const double norm_c = alpha / (bessel_k(2, alpha) * std::exp(alpha));
        const auto pdf = [=](double g) {
            return norm_c * g * std::sqrt((g - 1.0) * (g + 1.0)) *
                   std::exp(-alpha * (g - 1.0));
        };
        for (double u : {1e-6, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999999}) {
            const double g = sampler.invert(u);
            QuadratureSpec spec;
            spec.rel_tol = 1e-12;
            spec.max_subdivisions = 4000;
            const double cdf = integrate(pdf, 1.0, g, spec).value;
            CHECK(std::fabs(cdf - u) <= 1e-8 * std::max(u, 1e-3));
        }
    }
}
