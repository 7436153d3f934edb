#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relgas/fluctuations.hpp"
#include "relgas/juttner.hpp"
#include "relgas/numerics.hpp"
#include "relgas/thermodynamics.hpp"
#include "relgas/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5EED;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<relgas::verify::ReportRow> rows;
    try {
        rows = relgas::verify::run_suite(suite, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what()
                  << " (expected one of: all, bessel, kinematics, moments, fluctuations, thermo)\n";
        return 2;
    }
    std::cout << "# suite=" << suite << " seed=" << seed << "\n"
              << relgas::verify::format_report(rows);
    const bool ok = relgas::verify::all_passed(rows);
    std::cout << (ok ? "# result: all passed\n" : "# result: FAILURES\n");
    return ok ? 0 : 1;
}

struct SweepOptions {
    double alpha0 = 0.01;
    double alpha_t = 0.0;   // kappa_source Auto when set
    double kappa = -1.0;    // kappa_source Fixed when set
    double theta_min = 0.05;
    double theta_max = 50.0;
    int points = 200;
    std::string scale = "log";
    std::string out_path;
};

int cmd_sweep(const SweepOptions& opt) {
    if (!(opt.theta_min > 0.0) || !(opt.theta_max > opt.theta_min) || opt.points < 2) {
        std::cerr << "error: need 0 < theta-min < theta-max and points >= 2\n";
        return 2;
    }
    if (opt.alpha_t > 0.0 && opt.kappa >= 0.0) {
        std::cerr << "error: --alpha-t and --kappa are mutually exclusive\n";
        return 2;
    }

    double kappa;
    try {
        kappa = opt.alpha_t > 0.0
                    ? relgas::kappa_stats(relgas::ThermalDist::juttner(opt.alpha_t)).kappa
                    : (opt.kappa >= 0.0 ? opt.kappa : 1.0 / 3.0);
        const auto build = relgas::build_model(relgas::JuttnerDist{opt.alpha0},
                                               relgas::ThermalDist::point_mass(2.0));
        if (build.warning) std::cerr << "warning: " << *build.warning << "\n";
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    // The curve depends only on theta/eps0 and kappa_tilde, so the sweep is
    // emitted in eps0 units with a unit-scale model.
    const relgas::ThermoModel tm = relgas::make_model(1.0, kappa);

    std::ofstream out(opt.out_path);
    if (!out) {
        std::cerr << "error: cannot open " << opt.out_path << " for writing\n";
        return 1;
    }
    out << "theta_over_eps0,mean_Ek_over_eps0,c_V\n";
    for (int i = 0; i < opt.points; ++i) {
        const double frac = static_cast<double>(i) / (opt.points - 1);
        const double theta =
            opt.scale == "log"
                ? opt.theta_min * std::pow(opt.theta_max / opt.theta_min, frac)
                : opt.theta_min + (opt.theta_max - opt.theta_min) * frac;
        out << fmt(theta) << ',' << fmt(relgas::mean_energy(tm, theta)) << ','
            << fmt(relgas::heat_capacity(tm, theta)) << '\n';
    }
    if (!out.good()) {
        std::cerr << "error: write failure on " << opt.out_path << "\n";
        return 1;
    }
    return 0;
}

int cmd_moments(double alpha0) {
    relgas::MassMoments mm;
    double q1, q2;
    try {
        const relgas::JuttnerDist d{alpha0};
        mm = relgas::mass_moments(d);
        const double top = relgas::gamma_truncation(d);
        q1 = relgas::integrate([&](double g) { return g * relgas::pdf_gamma(d, g); }, 1.0, top)
                 .value;
        q2 = relgas::integrate(
                 [&](double g) { return g * g * relgas::pdf_gamma(d, g); }, 1.0, top)
                 .value;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << "alpha0," << fmt(alpha0) << "\n"
              << "mean_mass," << fmt(mm.mean_mass) << "\n"
              << "mean_mass_sq," << fmt(mm.mean_mass_sq) << "\n"
              << "ratio," << fmt(mm.ratio) << "\n"
              << "ratio_minus_4_3," << fmt(mm.ratio - 4.0 / 3.0) << "\n"
              << "quadrature_delta_mean," << fmt(std::fabs(mm.mean_mass - q1) / q1) << "\n"
              << "quadrature_delta_mean_sq," << fmt(std::fabs(mm.mean_mass_sq - q2) / q2)
              << "\n";
    return 0;
}

int cmd_sample(double alpha0, std::uint64_t n, std::uint64_t seed,
               const std::string& out_path) {
    std::vector<double> xs;
    try {
        xs = relgas::sample_gamma(relgas::JuttnerDist{alpha0}, relgas::RandomStream{seed, 0},
                                  n);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return 1;
    }
    out << "gamma\n";
    for (double x : xs) out << fmt(x) << '\n';
    if (!out.good()) {
        std::cerr << "error: write failure on " << out_path << "\n";
        return 1;
    }
    std::cerr << "# seed=" << seed << " n=" << n << "\n";
    return 0;
}

bool parse_td_spec(const std::string& spec, relgas::ThermalDist& out) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return false;
    const std::string kind = spec.substr(0, colon);
    double value;
    try {
        std::size_t used = 0;
        value = std::stod(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) return false;
    } catch (const std::exception&) {
        return false;
    }
    try {
        if (kind == "juttner") {
            out = relgas::ThermalDist::juttner(value);
            return true;
        }
        if (kind == "delta") {
            out = relgas::ThermalDist::point_mass(value);
            return true;
        }
    } catch (const std::domain_error&) {
        return false;
    }
    return false;
}

int cmd_fluct(double alpha0, const std::string& td_spec, std::uint64_t n,
              std::uint64_t seed) {
    relgas::ThermalDist td = relgas::ThermalDist::point_mass(1.0);
    if (!parse_td_spec(td_spec, td)) {
        std::cerr << "error: malformed td spec '" << td_spec
                  << "' (expected juttner:<alpha_T> or delta:<gamma_T>)\n";
        return 2;
    }
    try {
        const relgas::JuttnerDist hidden{alpha0};
        const double exact = relgas::thermal_variance_exact(hidden, td);
        const double x1 = td.x1();
        const double m = relgas::mean_gamma(hidden);
        const double zeroth =
            x1 > 0.0 ? relgas::thermal_variance_zeroth(
                           relgas::kappa_stats(td).kappa, m * x1, m)
                     : 0.0;
        const auto mc =
            relgas::monte_carlo_moments(hidden, td, relgas::RandomStream{seed, 0}, n);
        const double gate = 5.0 * mc.se_variance;
        const bool pass = std::fabs(mc.variance - exact) <= gate;
        std::cout << "seed," << seed << "\n"
                  << "n," << n << "\n"
                  << "variance_exact," << fmt(exact) << "\n"
                  << "variance_zeroth," << fmt(zeroth) << "\n"
                  << "variance_mc," << fmt(mc.variance) << "\n"
                  << "se_variance," << fmt(mc.se_variance) << "\n"
                  << "mean_mc," << fmt(mc.mean) << "\n"
                  << "se_mean," << fmt(mc.se_mean) << "\n"
                  << "gate_5sigma," << (pass ? "Pass" : "Fail") << "\n";
        return pass ? 0 : 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hidden-velocity relativistic gas: verification and sweep tool"};
    app.require_subcommand(1);

    std::uint64_t seed = kDefaultSeed;

    auto* verify = app.add_subcommand("verify", "Run a named invariant suite");
    std::string suite = "all";
    verify->add_option("--suite", suite, "all|bessel|kinematics|moments|fluctuations|thermo");
    verify->add_option("--seed", seed, "random seed");

    auto* sweep = app.add_subcommand("sweep", "Mean-energy / heat-capacity curve as CSV");
    SweepOptions sopt;
    sweep->add_option("--alpha0", sopt.alpha0, "hidden-sector alpha = m0 c^2 / theta0");
    sweep->add_option("--alpha-t", sopt.alpha_t, "derive kappa from a Juttner beta_T bath");
    sweep->add_option("--kappa", sopt.kappa, "fixed kappa (default 1/3)");
    sweep->add_option("--theta-min", sopt.theta_min, "lowest theta_T in eps0 units");
    sweep->add_option("--theta-max", sopt.theta_max, "highest theta_T in eps0 units");
    sweep->add_option("--points", sopt.points, "grid size (>= 2)");
    sweep->add_option("--scale", sopt.scale)->check(CLI::IsMember({"log", "linear"}));
    sweep->add_option("--out", sopt.out_path, "output CSV path")->required();

    auto* moments = app.add_subcommand("moments", "Closed-form mass moments and cross-checks");
    double alpha0 = 0.0;
    moments->add_option("--alpha0", alpha0)->required();

    auto* sample = app.add_subcommand("sample", "Draw Juttner Lorentz factors to CSV");
    double sample_alpha = 0.0;
    std::uint64_t sample_n = 0;
    std::string sample_out;
    sample->add_option("--alpha0", sample_alpha)->required();
    sample->add_option("--n", sample_n)->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed);
    sample->add_option("--out", sample_out)->required();

    auto* fluct = app.add_subcommand("fluct", "Thermal variance: exact vs zeroth vs Monte Carlo");
    double fluct_alpha = 0.0;
    std::uint64_t fluct_n = 1000000;
    std::string td_spec;
    fluct->add_option("--alpha0", fluct_alpha)->required();
    fluct->add_option("td_spec", td_spec, "juttner:<alpha_T> or delta:<gamma_T>")->required();
    fluct->add_option("--n", fluct_n)->check(CLI::PositiveNumber);
    fluct->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(suite, seed);
        if (*sweep) return cmd_sweep(sopt);
        if (*moments) return cmd_moments(alpha0);
        if (*sample) return cmd_sample(sample_alpha, sample_n, seed, sample_out);
        if (*fluct) return cmd_fluct(fluct_alpha, td_spec, fluct_n, seed);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
