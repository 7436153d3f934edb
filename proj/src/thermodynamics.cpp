#include "relgas/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relgas {

namespace {

void require_theta(double theta_T) {
    detail::require_finite(theta_T, "thermodynamics");
    if (!(theta_T > 0.0)) throw std::domain_error("thermodynamics: theta_T must be positive");
}

OneParamFamily constants_from_moments(double norm, double m1, double m2) {
    if (!(norm > 0.0) || !std::isfinite(m1) || !std::isfinite(m2))
        throw std::domain_error("family_constants: density has no finite first two moments");
    OneParamFamily fam;
    fam.a = m1 / norm;
    fam.b = m2 / norm;
    fam.d = fam.b / (fam.a * fam.a) - 1.0;
    return fam;
}

}  // namespace

OneParamFamily family_constants(const std::function<double(double)>& density,
                                const QuadratureSpec& spec) {
    const double inf = std::numeric_limits<double>::infinity();
    // Densities can be sharply peaked anywhere on [0, inf); seed enough
    // panels that a narrow feature registers in the error estimates.
    QuadratureSpec seeded = spec;
    seeded.initial_subdivisions = std::max(seeded.initial_subdivisions, 64);
    double norm, m1, m2;
    try {
        norm = integrate(density, 0.0, inf, seeded).value;
        m1 = integrate([&](double x) { return x * density(x); }, 0.0, inf, seeded).value;
        m2 = integrate([&](double x) { return x * x * density(x); }, 0.0, inf, seeded).value;
    } catch (const ConvergenceError&) {
        throw std::domain_error("family_constants: moment integrals do not converge");
    }
    return constants_from_moments(norm, m1, m2);
}

OneParamFamily family_constants(std::span<const std::pair<double, double>> grid) {
    if (grid.size() < 2) throw std::domain_error("family_constants: grid needs >= 2 points");
    double norm = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const auto [x0, f0] = grid[i - 1];
        const auto [x1, f1] = grid[i];
        if (!(x1 > x0)) throw std::domain_error("family_constants: grid must be increasing");
        const double h = x1 - x0;
        norm += 0.5 * h * (f0 + f1);
        m1 += 0.5 * h * (x0 * f0 + x1 * f1);
        m2 += 0.5 * h * (x0 * x0 * f0 + x1 * x1 * f1);
    }
    return constants_from_moments(norm, m1, m2);
}

double kappa_tilde(double kappa) {
    detail::require_finite(kappa, "kappa_tilde");
    if (kappa < 0.0) throw std::domain_error("kappa_tilde: kappa must be >= 0");
    return 1.5 * ((16.0 / 9.0) * (1.0 + kappa) - 1.0);
}

ThermoModel make_model(double epsilon0, double kappa) {
    if (!(epsilon0 > 0.0)) throw std::domain_error("make_model: epsilon0 must be positive");
    return {epsilon0, kappa, kappa_tilde(kappa)};
}

double mean_energy(const ThermoModel& tm, double theta_T) {
    require_theta(theta_T);
    const double x = tm.epsilon0 / (1.5 * theta_T);
    return tm.epsilon0 / (tm.kappa_tilde * std::expm1(x));
}

double heat_capacity(const ThermoModel& tm, double theta_T) {
    require_theta(theta_T);
    const double x = tm.epsilon0 / (1.5 * theta_T);
    // e^x / (e^x - 1)^2 = 1 / (4 sinh^2(x/2)), stable at both ends.
    const double sh = std::sinh(0.5 * x);
    return (2.0 / (3.0 * tm.kappa_tilde)) * (tm.epsilon0 * tm.epsilon0) /
           (theta_T * theta_T) / (4.0 * sh * sh);
}

double fluctuation_residual(const std::function<double(double)>& mean_energy_curve,
                            const std::function<double(double)>& variance_of_mean,
                            std::span<const double> theta_grid) {
    if (theta_grid.size() < 5)
        throw std::invalid_argument("fluctuation_residual: grid too coarse for the stencil");
    for (double theta : theta_grid) require_theta(theta);

    double worst = 0.0;
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const double s = 1.0 / theta_grid[i];
        const double s_next =
            1.0 / theta_grid[i + 1 < theta_grid.size() ? i + 1 : i - 1];
        const double h = 1e-3 * std::fabs(s_next - s);
        if (!(h > 0.0))
            throw std::invalid_argument("fluctuation_residual: duplicate grid points");

        const auto curve_s = [&](double sv) { return mean_energy_curve(1.0 / sv); };
        const double deriv = (-curve_s(s + 2 * h) + 8.0 * curve_s(s + h) -
                              8.0 * curve_s(s - h) + curve_s(s - 2 * h)) /
                             (12.0 * h);
        const double variance = variance_of_mean(mean_energy_curve(theta_grid[i]));
        if (!(variance > 0.0))
            return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::fabs(-deriv - variance) / variance);
    }
    return worst;
}

ModelBuild build_model(const JuttnerDist& hidden, const ThermalDist& td) {
    ModelBuild out;
    const double m = mean_gamma(hidden);
    const KappaStats ks = kappa_stats(td);
    out.model = make_model((4.0 / 3.0) * m, ks.kappa);
    if (hidden.alpha > 0.1)
        out.warning = "build_model: alpha = " + std::to_string(hidden.alpha) +
                      " exceeds 0.1; the zeroth-order variance law degrades";
    return out;
}

}  // namespace relgas
