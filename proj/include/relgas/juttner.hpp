#pragma once

#include <cstddef>
#include <vector>

#include "relgas/numerics.hpp"

// The relativistic Maxwell (Juttner) distribution of the hidden Lorentz
// factor, f(g) = (alpha / K2(alpha)) g sqrt(g^2 - 1) exp(-alpha g) on
// [1, inf), with alpha = m0 c^2 / theta0.  Masses are in units of m0.

namespace relgas {

struct JuttnerDist {
    double alpha;
};

struct MassMoments {
    double mean_mass;      // <g>   = 3/alpha + K1/K2
    double mean_mass_sq;   // <g^2> = 12/alpha^2 + 1 + 3 K1 / (alpha K2)
    double ratio;          // mean_mass_sq / mean_mass^2
};

double pdf_gamma(const JuttnerDist& d, double g);

// First moment of gamma (the apparent mass in units of m0).
double mean_gamma(const JuttnerDist& d);

MassMoments mass_moments(const JuttnerDist& d);

// (ratio - 4/3) / alpha^2; stays bounded as alpha -> 0.
double moment_ratio_deviation(const JuttnerDist& d);

// Upper truncation point of the numerically negligible tail
// (exp(-alpha (g - 1)) below 1e-300 past it).
double gamma_truncation(const JuttnerDist& d);

// Inverse-CDF sampler backed by a monotone cumulative table with Hermite
// interpolation between nodes (node-level CDF from per-segment
// Gauss-Kronrod sums, relative accuracy well below 1e-8).
class JuttnerSampler {
public:
    explicit JuttnerSampler(const JuttnerDist& d, std::size_t table_nodes = 4096);

    // Maps a uniform u in [0, 1) through the inverse CDF.
    double invert(double u) const;

    double sample(RandomEngine& eng) const { return invert(eng.uniform()); }

    double alpha() const { return alpha_; }

private:
    double alpha_;
    std::vector<double> gamma_;
    std::vector<double> cdf_;
    std::vector<double> pdf_;   // normalized density at the nodes
};

// n i.i.d. draws, deterministic in (d, rs, n).
std::vector<double> sample_gamma(const JuttnerDist& d, const RandomStream& rs, std::size_t n);

}  // namespace relgas
