#include "relgas/kinematics.hpp"

#include <stdexcept>

#include "relgas/numerics.hpp"

namespace relgas {

namespace {

void require_subluminal(const Beta3& b, const char* what) {
    detail::require_finite(b.x, what);
    detail::require_finite(b.y, what);
    detail::require_finite(b.z, what);
    if (b.norm2() >= 1.0) throw std::domain_error(std::string(what) + ": |beta| must be < 1");
}

}  // namespace

Beta3 mean_velocity(const Trajectory2Point& t) {
    if (!(t.tau > 0.0)) throw std::domain_error("mean_velocity: tau must be positive");
    if (!(t.c > 0.0)) throw std::domain_error("mean_velocity: c must be positive");
    const double inv = 1.0 / (t.c * t.tau);
    Beta3 b{(t.r_now[0] - t.r_then[0]) * inv, (t.r_now[1] - t.r_then[1]) * inv,
            (t.r_now[2] - t.r_then[2]) * inv};
    if (b.norm2() >= 1.0)
        throw std::domain_error("mean_velocity: superluminal displacement over the window");
    return b;
}

double gamma(const Beta3& b) {
    require_subluminal(b, "gamma");
    return 1.0 / std::sqrt(1.0 - b.norm2());
}

Beta3 compose_velocity(const Beta3& beta_T, const Beta3& beta_0) {
    require_subluminal(beta_T, "compose_velocity");
    require_subluminal(beta_0, "compose_velocity");

    const double bt2 = beta_T.norm2();
    if (bt2 == 0.0) return beta_0;   // limit of the parallel/perpendicular split

    const double dot = beta_0.dot(beta_T);
    const double denom = 1.0 + dot;
    const double root = std::sqrt(1.0 - bt2);

    // beta_0 parallel projection along beta_T
    const double proj = dot / bt2;
    const Beta3 b0_par{proj * beta_T.x, proj * beta_T.y, proj * beta_T.z};
    const Beta3 b0_perp{beta_0.x - b0_par.x, beta_0.y - b0_par.y, beta_0.z - b0_par.z};

    return {(beta_T.x + b0_par.x + root * b0_perp.x) / denom,
            (beta_T.y + b0_par.y + root * b0_perp.y) / denom,
            (beta_T.z + b0_par.z + root * b0_perp.z) / denom};
}

std::array<double, 3> momentum(double m0, const Beta3& beta_T, const Beta3& beta_0, double c) {
    if (!(m0 > 0.0)) throw std::domain_error("momentum: m0 must be positive");
    const Beta3 b = compose_velocity(beta_T, beta_0);
    const double scale = m0 * c * gamma(b);
    return {scale * b.x, scale * b.y, scale * b.z};
}

MomentumSplit momentum_split(double m0, const Beta3& beta_T, const Beta3& beta_0, double c) {
    if (!(m0 > 0.0)) throw std::domain_error("momentum_split: m0 must be positive");
    require_subluminal(beta_T, "momentum_split");
    require_subluminal(beta_0, "momentum_split");

    const double g0 = gamma(beta_0);
    const double gT = gamma(beta_T);

    MomentumSplit out;
    const double drift = m0 * c * g0 * gT;
    out.drift_term = {drift * beta_T.x, drift * beta_T.y, drift * beta_T.z};

    const double bt2 = beta_T.norm2();
    Beta3 b0_par{}, b0_perp = beta_0;
    if (bt2 > 0.0) {
        const double proj = beta_0.dot(beta_T) / bt2;
        b0_par = {proj * beta_T.x, proj * beta_T.y, proj * beta_T.z};
        b0_perp = {beta_0.x - b0_par.x, beta_0.y - b0_par.y, beta_0.z - b0_par.z};
    }
    // Hidden term m0 c gT (b0_par + b0_perp sqrt(1 - bT^2)) g0; note
    // gT sqrt(1 - bT^2) = 1, so the perpendicular part carries no gT.
    const double hx = m0 * c * g0 * (gT * b0_par.x + b0_perp.x);
    const double hy = m0 * c * g0 * (gT * b0_par.y + b0_perp.y);
    const double hz = m0 * c * g0 * (gT * b0_par.z + b0_perp.z);
    out.hidden_term = {hx, hy, hz};
    return out;
}

double kinetic_energy(double m0, const Beta3& beta_T, const Beta3& beta_0,
                      EnergyConvention conv, double c) {
    if (!(m0 > 0.0)) throw std::domain_error("kinetic_energy: m0 must be positive");
    require_subluminal(beta_T, "kinetic_energy");
    require_subluminal(beta_0, "kinetic_energy");

    const double g0 = gamma(beta_0);
    const double gT = gamma(beta_T);
    const double mc2 = m0 * c * c;
    const double boost = (1.0 + beta_0.dot(beta_T)) * gT;

    if (conv == EnergyConvention::BareRest) return mc2 * (boost * g0 - 1.0);
    return mc2 * g0 * (boost - 1.0);
}

}  // namespace relgas
