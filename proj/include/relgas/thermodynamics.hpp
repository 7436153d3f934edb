#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relgas/fluctuations.hpp"
#include "relgas/juttner.hpp"
#include "relgas/numerics.hpp"

// The fluctuation-temperature relation, its equipartition solution for
// one-parameter energy families, and the non-equipartition mean-energy and
// heat-capacity laws of the hidden-velocity gas.  Temperatures and energies
// are in units of m0 c^2 with k_B = 1.

namespace relgas {

struct OneParamFamily {
    double a;   // first reduced moment  integral(x F) / integral(F)
    double b;   // second reduced moment integral(x^2 F) / integral(F)
    double d;   // relative variance b/a^2 - 1; equipartition mean is theta/d
};

OneParamFamily family_constants(const std::function<double(double)>& density,
                                const QuadratureSpec& spec = {});
// Tabulated variant; the grid is interpolated linearly and integrated.
OneParamFamily family_constants(std::span<const std::pair<double, double>> grid);

struct ThermoModel {
    double epsilon0;      // (4/3) <m c^2>, the freeze-out energy scale
    double kappa;         // relative dispersion of the observable motion
    double kappa_tilde;   // (3/2) [ (4/3)^2 (1 + kappa) - 1 ]
};

double kappa_tilde(double kappa);

ThermoModel make_model(double epsilon0, double kappa);

// Mean kinetic energy (1/kappa_tilde) eps0 / (exp(eps0 / (3 theta/2)) - 1).
double mean_energy(const ThermoModel& tm, double theta_T);

// d(mean_energy)/d(theta_T) in closed form; vanishes exponentially at low
// temperature and saturates at 3/(2 kappa_tilde).
double heat_capacity(const ThermoModel& tm, double theta_T);

// Max relative residual of -dE/d(1/theta) = variance(E(theta)) over the
// grid, with a 5-point stencil in 1/theta stepped at 1e-3 of the local grid
// spacing.  A small residual certifies that the curve solves the
// fluctuation-temperature relation for the given variance law.
double fluctuation_residual(const std::function<double(double)>& mean_energy_curve,
                            const std::function<double(double)>& variance_of_mean,
                            std::span<const double> theta_grid);

struct ModelBuild {
    ThermoModel model;
    std::optional<std::string> warning;   // set when hidden.alpha exceeds 0.1
};

ModelBuild build_model(const JuttnerDist& hidden, const ThermalDist& td);

}  // namespace relgas
