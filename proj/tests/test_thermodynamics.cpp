#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "relgas/thermodynamics.hpp"

using namespace relgas;

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

}  // namespace

TEST_CASE("kappa_tilde") {
    CHECK(kappa_tilde(1.0 / 3.0) == doctest::Approx(37.0 / 18.0).epsilon(1e-14));
    CHECK(kappa_tilde(0.0) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
    CHECK(kappa_tilde(1.0) == doctest::Approx(23.0 / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(kappa_tilde(-0.5), std::domain_error);
}

TEST_CASE("family_constants") {
    // Canonical N = 3 family: chi-squared-like sqrt(x) e^{-x}.
    const OneParamFamily chi3 =
        family_constants([](double x) { return std::sqrt(x) * std::exp(-x); });
    CHECK(chi3.a == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(chi3.b == doctest::Approx(15.0 / 4.0).epsilon(1e-9));
    CHECK(chi3.d == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    // Equipartition mean theta / d at theta = 1.
    CHECK(1.0 / chi3.d == doctest::Approx(1.5).epsilon(1e-9));

    const OneParamFamily expo = family_constants([](double x) { return std::exp(-x); });
    CHECK(expo.a == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(expo.b == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(expo.d == doctest::Approx(1.0).epsilon(1e-9));

    // Narrow peak at x = 1: relative variance collapses, equipartition
    // denominator blows up.
    const double sigma = 1e-3;
    const OneParamFamily narrow = family_constants([sigma](double x) {
        const double z = (x - 1.0) / sigma;
        return std::exp(-0.5 * z * z);
    });
    CHECK(narrow.d < 1e-5);
    CHECK(narrow.d >= 0.0);

    // Divergent moments are rejected.
    CHECK_THROWS_AS(family_constants([](double x) { return 1.0 / (1.0 + x * x); }),
                    std::domain_error);
}

TEST_CASE("family_constants on a tabulated grid") {
    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i <= 4000; ++i) {
        const double x = 40.0 * i / 4000.0;
        grid.emplace_back(x, std::exp(-x));
    }
    const OneParamFamily fam = family_constants(grid);
    CHECK(fam.a == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(fam.d == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mean_energy") {
    const ThermoModel tm = make_model(1.0, 1.0 / 3.0);
    // Frozen from an independent high-precision evaluation.
    CHECK(mean_energy(tm, 1.0) == doctest::Approx(0.513315408556081).epsilon(1e-13));
    CHECK(mean_energy(tm, 1.0 / 30.0) < 1e-8);
    CHECK(mean_energy(tm, 100.0) ==
          doctest::Approx(1.5 * 100.0 / tm.kappa_tilde).epsilon(0.01));
    CHECK_THROWS_AS(mean_energy(tm, 0.0), std::domain_error);
    CHECK_THROWS_AS(mean_energy(tm, -1.0), std::domain_error);

    // Strictly increasing and unbounded.
    double prev = 0.0;
    for (double theta : log_grid(0.05, 1e4, 100)) {
        const double e = mean_energy(tm, theta);
        CHECK(e > prev);
        prev = e;
    }
    CHECK(prev > 1e3);
}

TEST_CASE("heat_capacity") {
    const ThermoModel tm = make_model(1.0, 1.0 / 3.0);
    CHECK(heat_capacity(tm, 1.0 / 30.0) < 1e-6);
    CHECK(heat_capacity(tm, 100.0) == doctest::Approx(27.0 / 37.0).epsilon(0.01));
    CHECK_THROWS_AS(heat_capacity(tm, 0.0), std::domain_error);

    // Equals the derivative of mean_energy everywhere on the grid.
    for (double theta : log_grid(0.05, 50.0, 200)) {
        const double h = 1e-5 * theta;
        const double fd =
            (mean_energy(tm, theta + h) - mean_energy(tm, theta - h)) / (2.0 * h);
        CHECK(heat_capacity(tm, theta) == doctest::Approx(fd).epsilon(1e-6));
    }

    // Third law: positive, decreasing to zero at low temperature.
    double prev = heat_capacity(tm, 0.05);
    for (double theta = 0.048; theta > 0.008; theta -= 0.002) {
        const double cv = heat_capacity(tm, theta);
        CHECK(cv > 0.0);
        CHECK(cv < prev);
        prev = cv;
    }

    // Frozen degrees of freedom: high-T plateau below the equipartition 3/2.
    CHECK(27.0 / 37.0 < 1.5);
    CHECK(27.0 / 37.0 / 1.5 > 0.45);
    CHECK(27.0 / 37.0 / 1.5 < 0.55);
}

TEST_CASE("fluctuation_residual") {
    const auto grid = log_grid(0.05, 50.0, 200);

    // Equipartition: E = theta / d with variance d E^2 solves the relation.
    const double d = 2.0 / 3.0;
    CHECK(fluctuation_residual([d](double theta) { return theta / d; },
                               [d](double e) { return d * e * e; }, grid) <= 1e-8);

    // The mean-energy law with the zeroth-order variance (B = (2/3) eps0).
    const ThermoModel tm = make_model(2.5, 1.0 / 3.0);
    const auto curve = [&](double theta) { return mean_energy(tm, theta); };
    const auto var_fn = [&](double e) {
        return (2.0 * tm.kappa_tilde / 3.0) * e * e + (2.0 * tm.epsilon0 / 3.0) * e;
    };
    std::vector<double> scaled(grid);
    for (double& t : scaled) t *= tm.epsilon0;
    CHECK(fluctuation_residual(curve, var_fn, scaled) <= 1e-8);

    // A flat curve is loudly inconsistent.
    CHECK(fluctuation_residual([](double) { return 1.0; }, var_fn, scaled) > 0.1);

    CHECK_THROWS_AS(fluctuation_residual(curve, var_fn, std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("build_model") {
    const auto built = build_model(JuttnerDist{0.01}, ThermalDist::juttner(1e-3));
    CHECK_FALSE(built.warning.has_value());
    CHECK(built.model.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    CHECK(built.model.epsilon0 == doctest::Approx(400.007).epsilon(1e-5));

    const auto pm = build_model(JuttnerDist{0.01}, ThermalDist::point_mass(2.0));
    CHECK(pm.model.kappa == 0.0);
    CHECK(pm.model.kappa_tilde == doctest::Approx(7.0 / 6.0).epsilon(1e-15));

    CHECK(build_model(JuttnerDist{0.5}, ThermalDist::juttner(1e-3)).warning.has_value());
    CHECK_THROWS_AS(build_model(JuttnerDist{0.01}, ThermalDist::point_mass(1.0)),
                    std::domain_error);
}
