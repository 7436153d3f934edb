#include "relgas/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "relgas/fluctuations.hpp"
#include "relgas/juttner.hpp"
#include "relgas/kinematics.hpp"
#include "relgas/numerics.hpp"
#include "relgas/thermodynamics.hpp"

namespace relgas::verify {

namespace {

void check(std::vector<ReportRow>& rows, const std::string& name, double measured,
           double expected, double tolerance) {
    const Status st =
        std::fabs(measured - expected) <= tolerance ? Status::Pass : Status::Fail;
    rows.push_back({name, st, measured, expected, tolerance});
}

// |measured/expected - 1| against a relative tolerance, reported as-is.
void check_rel(std::vector<ReportRow>& rows, const std::string& name, double measured,
               double expected, double rel_tol) {
    check(rows, name, measured, expected, rel_tol * std::fabs(expected));
}

double rel_err(double value, double reference) {
    return std::fabs(value - reference) / std::fabs(reference);
}

// ---------------------------------------------------------------- bessel --

std::vector<ReportRow> suite_bessel(std::uint64_t seed) {
    std::vector<ReportRow> rows;

    check(rows, "bessel.k1_at_1", bessel_k(1, 1.0), 0.6019072301972346, 1e-13);

    double worst_recurrence = 0.0;
    double worst_monotone = 0.0;
    double prev0 = std::numeric_limits<double>::infinity();
    double prev1 = prev0, prev2 = prev0;
    const int n_grid = 10000;
    for (int i = 0; i < n_grid; ++i) {
        const double x =
            1e-6 * std::pow(700.0 / 1e-6, static_cast<double>(i) / (n_grid - 1));
        const double k0 = bessel_k(0, x);
        const double k1 = bessel_k(1, x);
        const double k2 = bessel_k(2, x);
        if (k2 > 0.0)
            worst_recurrence =
                std::max(worst_recurrence, std::fabs(k2 - k0 - 2.0 * k1 / x) / k2);
        if (!(k0 < prev0 && k1 < prev1 && k2 < prev2)) worst_monotone = 1.0;
        prev0 = k0;
        prev1 = k1;
        prev2 = k2;
    }
    check(rows, "bessel.recurrence_residual", worst_recurrence, 0.0, 1e-11);
    check(rows, "bessel.monotone_decreasing", worst_monotone, 0.0, 0.5);

    // Small-argument limit K2(a) a^2 / 2 -> 1.
    const double a = 1e-5;
    check(rows, "bessel.small_arg_limit", bessel_k(2, a) * a * a / 2.0, 1.0, 1e-4);

    // Quadrature cross-checks.
    const double e1 = integrate([](double x) { return std::exp(-x); }, 0.0,
                                std::numeric_limits<double>::infinity())
                          .value;
    check(rows, "quadrature.exp_decay", e1, 1.0, 1e-10);
    const double p =
        integrate([](double x) { return x * x; }, 0.0, 1.0).value;
    check(rows, "quadrature.cubic_exact", p, 1.0 / 3.0, 1e-12);

    // Juttner normalization identity: int_1^inf g sqrt(g^2-1) e^{-zg} = K2(z)/z.
    for (double z : {0.01, 0.1, 1.0, 10.0}) {
        const double val =
            integrate([z](double g) { return g * std::sqrt(g * g - 1.0) * std::exp(-z * g); },
                      1.0, 1.0 + 750.0 / z)
                .value;
        check_rel(rows, "quadrature.k2_identity_z=" + std::to_string(z), val,
                  bessel_k(2, z) / z, 1e-9);
    }

    // Random stream determinism and child independence.
    RandomStream rs{seed, 0};
    RandomEngine a1(rs), a2(rs);
    double same = 1.0;
    for (int i = 0; i < 1000; ++i)
        if (a1.next_u64() != a2.next_u64()) same = 0.0;
    check(rows, "random.deterministic", same, 1.0, 0.5);

    const auto kids = split_stream(rs, 2);
    RandomEngine c0(kids[0]), c1(kids[1]);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double x = c0.uniform(), y = c1.uniform();
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double corr = (sxy / n - sx / n * sy / n) /
                        std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
    check(rows, "random.child_correlation", corr, 0.0, 0.05);

    RandomEngine parent(rs), only_child(split_stream(rs, 1)[0]);
    check(rows, "random.child_disjoint",
          parent.next_u64() == only_child.next_u64() ? 1.0 : 0.0, 0.0, 0.5);
    return rows;
}

// ------------------------------------------------------------ kinematics --

Beta3 random_subluminal(RandomEngine& eng, double max_norm) {
    const double r = max_norm * std::cbrt(eng.uniform());
    const double u = 2.0 * eng.uniform() - 1.0;
    const double phi = 2.0 * M_PI * eng.uniform();
    const double s = std::sqrt(1.0 - u * u);
    return {r * s * std::cos(phi), r * s * std::sin(phi), r * u};
}

Beta3 boost_compose(const Beta3& beta_T, const Beta3& beta_0) {
    // Transform the 4-velocity of beta_0 with a boost of velocity beta_T.
    const double g0 = gamma(beta_0);
    const double gT = gamma(beta_T);
    const double bt2 = beta_T.norm2();
    const std::array<double, 3> u{g0 * beta_0.x, g0 * beta_0.y, g0 * beta_0.z};
    const double u_dot_b = u[0] * beta_T.x + u[1] * beta_T.y + u[2] * beta_T.z;
    const double t_new = gT * (g0 + u_dot_b);
    std::array<double, 3> u_new{};
    const double coef = bt2 > 0.0 ? (gT - 1.0) * u_dot_b / bt2 + gT * g0 : gT * g0;
    u_new[0] = u[0] + coef * beta_T.x;
    u_new[1] = u[1] + coef * beta_T.y;
    u_new[2] = u[2] + coef * beta_T.z;
    return {u_new[0] / t_new, u_new[1] / t_new, u_new[2] / t_new};
}

std::vector<ReportRow> suite_kinematics(std::uint64_t seed) {
    std::vector<ReportRow> rows;
    RandomEngine eng(RandomStream{seed, 1});

    double worst_norm = 0.0, worst_boost = 0.0, worst_emp = 0.0, worst_split = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const Beta3 bT = random_subluminal(eng, 0.999);
        const Beta3 b0 = random_subluminal(eng, 0.999);
        const Beta3 b = compose_velocity(bT, b0);
        worst_norm = std::max(worst_norm, b.norm());

        if (i < 2000) {
            // Precision identities need moderate speeds: near-luminal
            // composition makes gamma-from-beta ill-conditioned and would
            // measure representation error, not formula error.
            const Beta3 bTm = random_subluminal(eng, 0.9);
            const Beta3 b0m = random_subluminal(eng, 0.9);
            const Beta3 ref = boost_compose(bTm, b0m);
            const Beta3 bm = compose_velocity(bTm, b0m);
            worst_boost = std::max({worst_boost, rel_err(bm.x, ref.x), rel_err(bm.y, ref.y),
                                    rel_err(bm.z, ref.z)});

            const auto p = momentum(1.0, bTm, b0m);
            const auto split = momentum_split(1.0, bTm, b0m);
            for (int k = 0; k < 3; ++k) {
                const double direct = p[k];
                const double via_split = split.drift_term[k] + split.hidden_term[k];
                worst_split =
                    std::max(worst_split, std::fabs(direct - via_split) /
                                              std::max(1.0, std::fabs(direct)));
            }

            const double e_tot =
                (1.0 + b0m.dot(bTm)) * gamma(b0m) * gamma(bTm);
            const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            worst_emp =
                std::max(worst_emp, std::fabs(e_tot * e_tot - p2 - 1.0) / (e_tot * e_tot));
        }
    }
    check(rows, "kinematics.subluminal", worst_norm < 1.0 ? 0.0 : 1.0, 0.0, 0.5);
    check(rows, "kinematics.boost_consistency", worst_boost, 0.0, 1e-10);
    check(rows, "kinematics.momentum_decomposition", worst_split, 0.0, 1e-12);
    check(rows, "kinematics.energy_momentum_relation", worst_emp, 0.0, 1e-10);

    check(rows, "kinematics.gamma_at_0.6",
          gamma(Beta3{0.6, 0.0, 0.0}), 1.25, 1e-15);
    const Beta3 sum = compose_velocity(Beta3{0.5, 0, 0}, Beta3{0.5, 0, 0});
    check(rows, "kinematics.collinear_addition", sum.x, 0.8, 1e-15);

    // Isotropic + Juttner average of the HiddenRest energy reproduces the
    // averaged-energy law m (gamma_T - 1).
    const JuttnerDist hidden{1.0};
    const double gT = 2.0;
    const Beta3 bT{std::sqrt(1.0 - 1.0 / (gT * gT)), 0.0, 0.0};
    const auto inner = [&](double g0) {
        const double b0mag = std::sqrt(1.0 - 1.0 / (g0 * g0));
        return integrate(
                   [&](double u) {
                       const Beta3 b0{b0mag * u, b0mag * std::sqrt(1.0 - u * u), 0.0};
                       return 0.5 *
                              kinetic_energy(1.0, bT, b0, EnergyConvention::HiddenRest);
                   },
                   -1.0, 1.0)
            .value;
    };
    const double avg =
        integrate([&](double g0) { return pdf_gamma(hidden, g0) * inner(g0); }, 1.0,
                  gamma_truncation(hidden))
            .value;
    check_rel(rows, "kinematics.isotropic_energy_average", avg,
              mean_gamma(hidden) * (gT - 1.0), 1e-8);
    return rows;
}

// --------------------------------------------------------------- moments --

std::vector<ReportRow> suite_moments(std::uint64_t seed) {
    std::vector<ReportRow> rows;

    for (double alpha : {0.01, 1.0, 10.0}) {
        const JuttnerDist d{alpha};
        const double norm =
            integrate([&](double g) { return pdf_gamma(d, g); }, 1.0, gamma_truncation(d))
                .value;
        check(rows, "juttner.normalization_alpha=" + std::to_string(alpha), norm, 1.0, 1e-9);
    }

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
        check_rel(rows, "juttner.mean_mass_alpha=" + std::to_string(alpha), mm.mean_mass, q1,
                  1e-8);
        check_rel(rows, "juttner.mean_mass_sq_alpha=" + std::to_string(alpha), mm.mean_mass_sq,
                  q2, 1e-8);
        check(rows, "juttner.jensen_alpha=" + std::to_string(alpha),
              mm.mean_mass_sq >= mm.mean_mass * mm.mean_mass ? 0.0 : 1.0, 0.0, 0.5);
    }

    check(rows, "juttner.ratio_limit",
          mass_moments(JuttnerDist{0.01}).ratio, 4.0 / 3.0, 1e-3);

    // Small-alpha scalings of the closed forms.
    const JuttnerDist small{1e-3};
    const MassMoments mm = mass_moments(small);
    check_rel(rows, "juttner.small_alpha_mean", small.alpha * mm.mean_mass, 3.0, 1e-2);
    check_rel(rows, "juttner.small_alpha_mean_sq",
              small.alpha * small.alpha * mm.mean_mass_sq, 12.0, 1e-2);

    // mean_gamma strictly decreasing in alpha.
    double prev = std::numeric_limits<double>::infinity();
    double monotone = 0.0;
    for (double alpha : {0.01, 0.1, 0.5, 1.0, 5.0, 10.0, 100.0}) {
        const double m = mean_gamma(JuttnerDist{alpha});
        if (!(m < prev)) monotone = 1.0;
        prev = m;
    }
    check(rows, "juttner.mean_gamma_decreasing", monotone, 0.0, 0.5);

    // Sampler gates at a CI-friendly sample count.
    for (double alpha : {0.1, 1.0, 10.0}) {
        const JuttnerDist d{alpha};
        const auto xs = sample_gamma(d, RandomStream{seed, 7}, 100000);
        double sum = 0.0, sum_sq = 0.0;
        for (double x : xs) {
            sum += x;
            sum_sq += x * x;
        }
        const double n = static_cast<double>(xs.size());
        const double mean = sum / n;
        const double sd = std::sqrt(sum_sq / n - mean * mean);
        check(rows, "sampler.mean_gate_alpha=" + std::to_string(alpha), mean,
              mean_gamma(d), 5.0 * sd / std::sqrt(n));

        auto sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        // Normalization pulled out of the loop; 1e5 incremental integrals.
        const double norm_c = alpha / (bessel_k(2, alpha) * std::exp(alpha));
        const auto pdf = [=](double g) {
            return norm_c * g * std::sqrt((g - 1.0) * (g + 1.0)) *
                   std::exp(-alpha * (g - 1.0));
        };
        double ks = 0.0, cum = 0.0, prev_g = 1.0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            QuadratureSpec piece_spec;
            piece_spec.max_subdivisions = 200;
            if (sorted[i] > prev_g)
                cum += integrate(pdf, prev_g, sorted[i], piece_spec).value;
            prev_g = sorted[i];
            const double hi = static_cast<double>(i + 1) / n;
            const double lo = static_cast<double>(i) / n;
            ks = std::max({ks, std::fabs(cum - hi), std::fabs(cum - lo)});
        }
        check(rows, "sampler.ks_gate_alpha=" + std::to_string(alpha), ks, 0.0,
              1.95 / std::sqrt(n));
    }
    return rows;
}

// ---------------------------------------------------------- fluctuations --

std::vector<ReportRow> suite_fluctuations(std::uint64_t seed) {
    std::vector<ReportRow> rows;

    check(rows, "fluct.kappa_point_mass",
          kappa_stats(ThermalDist::point_mass(2.0)).kappa, 0.0, 1e-15);
    check(rows, "fluct.kappa_ultrarelativistic",
          kappa_stats(ThermalDist::juttner(1e-3)).kappa, 1.0 / 3.0, 1e-3);
    check(rows, "fluct.kappa_tabulated",
          kappa_stats(ThermalDist::tabulated({{2.0, 0.5}, {4.0, 0.5}})).kappa, 0.25, 1e-15);

    check(rows, "fluct.csm_at_rest",
          conditional_second_moment(JuttnerDist{1.0}, 1.0), 0.0, 1e-300);

    // Algebraic identity of the thermal variance: average of the conditional
    // second moment minus the squared mean.
    double worst_identity = 0.0;
    for (double alpha : {0.01, 0.1, 1.0}) {
        const JuttnerDist hidden{alpha};
        const double m = mean_gamma(hidden);
        for (int which = 0; which < 3; ++which) {
            const ThermalDist td = which == 0   ? ThermalDist::point_mass(2.0)
                                   : which == 1 ? ThermalDist::juttner(0.01)
                                                : ThermalDist::juttner(1.0);
            const double exact = thermal_variance_exact(hidden, td);
            // PointMass / Juttner averages of the quadratic reduce to x1, x2.
            const MassMoments mm = mass_moments(hidden);
            const double avg_csm = (4.0 * mm.mean_mass_sq - 1.0) / 3.0 * td.x2() +
                                   2.0 * (mm.mean_mass_sq - 1.0) / 3.0 * td.x1();
            const double direct = avg_csm - m * m * td.x1() * td.x1();
            worst_identity = std::max(worst_identity, rel_err(exact, direct));
            if (exact < 0.0) worst_identity = 1.0;
        }
    }
    check(rows, "fluct.variance_identity", worst_identity, 0.0, 1e-10);

    // Zeroth order approaches the exact law linearly in alpha.
    const ThermalDist td = ThermalDist::juttner(0.01);
    double prev_rel = std::numeric_limits<double>::infinity();
    double shrinks = 0.0;
    for (double alpha : {1e-1, 1e-2, 1e-3}) {
        const JuttnerDist hidden{alpha};
        const double m = mean_gamma(hidden);
        const double kappa = kappa_stats(td).kappa;
        const double exact = thermal_variance_exact(hidden, td);
        const double zeroth = thermal_variance_zeroth(kappa, m * td.x1(), m);
        const double rel = rel_err(zeroth, exact);
        if (alpha == 1e-3) check(rows, "fluct.zeroth_order_gap", rel, 0.0, 5.0 * alpha);
        if (!(rel < prev_rel)) shrinks = 1.0;
        prev_rel = rel;
    }
    check(rows, "fluct.zeroth_order_convergence", shrinks, 0.0, 0.5);

    // Monte Carlo against the closed form, and bitwise chunk independence.
    const JuttnerDist hidden{0.1};
    const std::size_t n = 200000;
    const RandomStream rs{seed, 3};
    const auto est = monte_carlo_moments(hidden, td, rs, n);
    const auto est_serial = monte_carlo_moments_serial(hidden, td, rs, n);
    check(rows, "fluct.mc_variance_gate", est.variance, thermal_variance_exact(hidden, td),
          5.0 * est.se_variance);
    check(rows, "fluct.mc_mean_gate", est.mean, mean_gamma(hidden) * td.x1(),
          5.0 * est.se_mean);
    const bool bitwise = est.mean == est_serial.mean &&
                         est.second_moment == est_serial.second_moment &&
                         est.se_variance == est_serial.se_variance;
    check(rows, "fluct.mc_parallel_serial_bitwise", bitwise ? 0.0 : 1.0, 0.0, 0.5);

    const auto pm = monte_carlo_moments(hidden, ThermalDist::point_mass(1.0), rs, 1000);
    check(rows, "fluct.mc_point_mass_rest", std::fabs(pm.mean) + std::fabs(pm.variance), 0.0,
          0.0);
    return rows;
}

// ---------------------------------------------------------------- thermo --

std::vector<ReportRow> suite_thermo(std::uint64_t seed) {
    std::vector<ReportRow> rows;

    check(rows, "thermo.kappa_tilde_third", kappa_tilde(1.0 / 3.0), 37.0 / 18.0, 1e-12);
    check(rows, "thermo.kappa_tilde_zero", kappa_tilde(0.0), 7.0 / 6.0, 1e-15);
    check(rows, "thermo.kappa_tilde_one", kappa_tilde(1.0), 23.0 / 6.0, 1e-15);

    const ThermoModel tm = make_model(1.0, 1.0 / 3.0);

    std::vector<double> grid(200);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 0.05 * std::pow(50.0 / 0.05, static_cast<double>(i) / (grid.size() - 1));
    const auto curve = [&](double theta) { return mean_energy(tm, theta); };
    const auto var_fn = [&](double e) {
        return (2.0 * tm.kappa_tilde / 3.0) * e * e + (2.0 * tm.epsilon0 / 3.0) * e;
    };
    check(rows, "thermo.fluctuation_residual", fluctuation_residual(curve, var_fn, grid), 0.0,
          1e-8);

    // Non-solution detection: a flat curve cannot satisfy the relation.
    const double flat_residual =
        fluctuation_residual([](double) { return 1.0; }, var_fn, grid);
    check(rows, "thermo.residual_flags_non_solution", flat_residual > 0.1 ? 0.0 : 1.0, 0.0,
          0.5);

    double worst_cv = 0.0, monotone = 0.0;
    double prev_e = 0.0;
    for (double theta : grid) {
        const double h = 1e-5 * theta;
        const double fd = (mean_energy(tm, theta + h) - mean_energy(tm, theta - h)) / (2 * h);
        worst_cv = std::max(worst_cv, rel_err(heat_capacity(tm, theta), fd));
        const double e = mean_energy(tm, theta);
        if (!(e > prev_e)) monotone = 1.0;
        prev_e = e;
    }
    check(rows, "thermo.heat_capacity_derivative", worst_cv, 0.0, 1e-6);
    check(rows, "thermo.mean_energy_increasing", monotone, 0.0, 0.5);

    check(rows, "thermo.third_law_scale", heat_capacity(tm, 1.0 / 30.0), 0.0, 1e-6);
    double prev_cv = heat_capacity(tm, 0.05);
    double decreasing = 0.0;
    for (double theta = 0.045; theta > 0.01; theta -= 0.005) {
        const double cv = heat_capacity(tm, theta);
        if (!(cv < prev_cv) || !(cv > 0.0)) decreasing = 1.0;
        prev_cv = cv;
    }
    check(rows, "thermo.third_law_monotone", decreasing, 0.0, 0.5);

    check_rel(rows, "thermo.high_t_heat_capacity", heat_capacity(tm, 100.0),
              1.5 / tm.kappa_tilde, 0.01);
    check_rel(rows, "thermo.high_t_mean_energy", mean_energy(tm, 100.0),
              1.5 * 100.0 / tm.kappa_tilde, 0.01);

    const OneParamFamily expo =
        family_constants([](double x) { return std::exp(-x); });
    check(rows, "thermo.family_exponential_d", expo.d, 1.0, 1e-9);
    const OneParamFamily chi3 =
        family_constants([](double x) { return std::sqrt(x) * std::exp(-x); });
    check_rel(rows, "thermo.family_chi2_n3_d", chi3.d, 2.0 / 3.0, 1e-9);
    check_rel(rows, "thermo.family_chi2_n3_mean", 1.0 / chi3.d, 1.5, 1e-9);

    // Frozen degrees of freedom: the high-T slope sits below equipartition.
    check(rows, "thermo.frozen_dof_slope",
          1.5 / tm.kappa_tilde < 1.5 ? 0.0 : 1.0, 0.0, 0.5);

    const auto built = build_model(JuttnerDist{0.01}, ThermalDist::juttner(1e-3));
    check_rel(rows, "thermo.build_model_epsilon0", built.model.epsilon0,
              (4.0 / 3.0) * mean_gamma(JuttnerDist{0.01}), 1e-12);
    check(rows, "thermo.build_model_warning",
          build_model(JuttnerDist{0.5}, ThermalDist::juttner(1e-3)).warning.has_value() ? 0.0
                                                                                        : 1.0,
          0.0, 0.5);
    (void)seed;
    return rows;
}

}  // namespace

std::vector<ReportRow> run_suite(const std::string& suite, std::uint64_t seed) {
    if (suite == "bessel") return suite_bessel(seed);
    if (suite == "kinematics") return suite_kinematics(seed);
    if (suite == "moments") return suite_moments(seed);
    if (suite == "fluctuations") return suite_fluctuations(seed);
    if (suite == "thermo") return suite_thermo(seed);
    if (suite == "all") {
        std::vector<ReportRow> rows;
        for (const char* s : {"bessel", "kinematics", "moments", "fluctuations", "thermo"}) {
            auto part = run_suite(s, seed);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        return rows;
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

bool all_passed(const std::vector<ReportRow>& rows) {
    for (const auto& r : rows)
        if (r.status == Status::Fail) return false;
    return true;
}

std::string format_report(const std::vector<ReportRow>& rows) {
    std::string out = "check,status,measured,expected,tolerance\n";
    char buf[256];
    for (const auto& r : rows) {
        const char* st = r.status == Status::Pass ? "Pass"
                         : r.status == Status::Fail ? "Fail"
                                                    : "Warn";
        std::snprintf(buf, sizeof(buf), "%s,%s,%.12g,%.12g,%.12g\n", r.check_name.c_str(), st,
                      r.measured, r.expected, r.tolerance);
        out += buf;
    }
    return out;
}

}  // namespace relgas::verify
