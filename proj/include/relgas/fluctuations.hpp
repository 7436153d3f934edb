#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "relgas/juttner.hpp"
#include "relgas/numerics.hpp"

// Conditional and thermal second moments of the kinetic energy of the
// combined motion, plus the Monte Carlo oracle for both.  Units are
// m0 = c = 1 throughout.

namespace relgas {

// Distribution of the observable Lorentz factor gamma_T.
class ThermalDist {
public:
    struct PointMass {
        double gamma_T;
    };
    struct Tabulated {
        std::vector<std::pair<double, double>> nodes;   // (gamma, weight)
    };

    static ThermalDist juttner(double alpha_T);
    static ThermalDist point_mass(double gamma_T);
    static ThermalDist tabulated(std::vector<std::pair<double, double>> nodes);

    // First and second moments of (gamma_T - 1).
    double x1() const;
    double x2() const;

    const std::variant<JuttnerDist, PointMass, Tabulated>& value() const { return value_; }

private:
    explicit ThermalDist(std::variant<JuttnerDist, PointMass, Tabulated> v)
        : value_(std::move(v)) {}
    std::variant<JuttnerDist, PointMass, Tabulated> value_;
};

struct KappaStats {
    double x1;
    double x2;
    double kappa;                 // x2 / x1^2 - 1
    bool kappa_in_paper_range;    // kappa in [0, 1]; recorded, not enforced
};

KappaStats kappa_stats(const ThermalDist& td);

// <E_k^2 | gamma_T> over the hidden velocity (isotropic direction, Juttner
// magnitude):  (4<m^2> - 1)/3 (gT-1)^2 + 2(<m^2> - 1)/3 (gT-1).
double conditional_second_moment(const JuttnerDist& hidden, double gamma_T);

// Thermal variance of E_k:
//   (4<m^2> - 1)/3 x2 - m^2 x1^2 + 2(<m^2> - 1)/3 x1.
double thermal_variance_exact(const JuttnerDist& hidden, const ThermalDist& td);

// Zeroth order in alpha: [ (4/3)^2 (1+kappa) - 1 ] Ek^2 + (2/3)(4/3) mc2 Ek.
double thermal_variance_zeroth(double kappa, double mean_Ek, double mc2);

struct FluctuationEstimate {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo moments of the HiddenRest kinetic energy with batch-mean
// standard errors (100 batches).  Every sample draws from its own child
// stream, and batch partial sums are combined in fixed order, so the result
// is bitwise independent of the thread count.  The OpenMP path and the
// serial reference must agree exactly.
FluctuationEstimate monte_carlo_moments(const JuttnerDist& hidden, const ThermalDist& td,
                                        const RandomStream& rs, std::size_t n);
FluctuationEstimate monte_carlo_moments_serial(const JuttnerDist& hidden, const ThermalDist& td,
                                               const RandomStream& rs, std::size_t n);

}  // namespace relgas
