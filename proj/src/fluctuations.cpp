#include "relgas/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace relgas {

namespace {

constexpr std::size_t kBatches = 100;

double weighted_moment(const ThermalDist::Tabulated& tab, int power) {
    double wsum = 0.0, msum = 0.0;
    for (const auto& [g, w] : tab.nodes) {
        wsum += w;
        msum += w * std::pow(g - 1.0, power);
    }
    return msum / wsum;
}

}  // namespace

ThermalDist ThermalDist::juttner(double alpha_T) {
    if (!(alpha_T > 0.0)) throw std::domain_error("ThermalDist: alpha_T must be positive");
    return ThermalDist(JuttnerDist{alpha_T});
}

ThermalDist ThermalDist::point_mass(double gamma_T) {
    if (!(gamma_T >= 1.0)) throw std::domain_error("ThermalDist: gamma_T must be >= 1");
    return ThermalDist(PointMass{gamma_T});
}

ThermalDist ThermalDist::tabulated(std::vector<std::pair<double, double>> nodes) {
    if (nodes.empty()) throw std::domain_error("ThermalDist: empty table");
    for (const auto& [g, w] : nodes) {
        if (!(g >= 1.0)) throw std::domain_error("ThermalDist: tabulated gamma must be >= 1");
        if (!(w > 0.0)) throw std::domain_error("ThermalDist: tabulated weights must be positive");
    }
    return ThermalDist(Tabulated{std::move(nodes)});
}

double ThermalDist::x1() const {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, JuttnerDist>) return mean_gamma(v) - 1.0;
            else if constexpr (std::is_same_v<T, PointMass>) return v.gamma_T - 1.0;
            else return weighted_moment(v, 1);
        },
        value_);
}

double ThermalDist::x2() const {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, JuttnerDist>) {
                // <(g-1)^2> = <g^2> - 2<g> + 1 from the closed gamma moments.
                const MassMoments mm = mass_moments(v);
                return mm.mean_mass_sq - 2.0 * mm.mean_mass + 1.0;
            } else if constexpr (std::is_same_v<T, PointMass>) {
                return (v.gamma_T - 1.0) * (v.gamma_T - 1.0);
            } else {
                return weighted_moment(v, 2);
            }
        },
        value_);
}

KappaStats kappa_stats(const ThermalDist& td) {
    KappaStats ks;
    ks.x1 = td.x1();
    ks.x2 = td.x2();
    if (!(ks.x1 > 0.0))
        throw std::domain_error("kappa_stats: degenerate distribution (x1 = 0)");
    ks.kappa = ks.x2 / (ks.x1 * ks.x1) - 1.0;
    ks.kappa_in_paper_range = ks.kappa >= 0.0 && ks.kappa <= 1.0;
    return ks;
}

double conditional_second_moment(const JuttnerDist& hidden, double gamma_T) {
    detail::require_finite(gamma_T, "conditional_second_moment");
    if (gamma_T < 1.0)
        throw std::domain_error("conditional_second_moment: gamma_T must be >= 1");
    const MassMoments mm = mass_moments(hidden);
    const double x = gamma_T - 1.0;
    return (4.0 * mm.mean_mass_sq - 1.0) / 3.0 * x * x +
           2.0 * (mm.mean_mass_sq - 1.0) / 3.0 * x;
}

double thermal_variance_exact(const JuttnerDist& hidden, const ThermalDist& td) {
    const MassMoments mm = mass_moments(hidden);
    const double x1 = td.x1();
    const double x2 = td.x2();
    return (4.0 * mm.mean_mass_sq - 1.0) / 3.0 * x2 -
           mm.mean_mass * mm.mean_mass * x1 * x1 +
           2.0 * (mm.mean_mass_sq - 1.0) / 3.0 * x1;
}

double thermal_variance_zeroth(double kappa, double mean_Ek, double mc2) {
    detail::require_finite(kappa, "thermal_variance_zeroth");
    detail::require_finite(mean_Ek, "thermal_variance_zeroth");
    detail::require_finite(mc2, "thermal_variance_zeroth");
    if (kappa < 0.0) throw std::domain_error("thermal_variance_zeroth: kappa must be >= 0");
    const double coeff = (16.0 / 9.0) * (1.0 + kappa) - 1.0;
    return coeff * mean_Ek * mean_Ek + (2.0 / 3.0) * (4.0 / 3.0) * mc2 * mean_Ek;
}

namespace {

// Per-sample state shared by the serial and OpenMP paths.  Every sample
// owns a child stream, making the draw sequence a pure function of the
// sample index; chunking and scheduling cannot change it.
struct McSetup {
    const JuttnerSampler* hidden_sampler;
    const ThermalDist* td;
    const JuttnerSampler* thermal_sampler;   // only for the Juttner variant
    RandomStream rs;

    double draw_energy(std::size_t index) const {
        RandomEngine eng(child_stream(rs, index));
        const double g0 = hidden_sampler->sample(eng);
        const double u = 2.0 * eng.uniform() - 1.0;   // cos(theta), isotropic
        double gT;
        if (const auto* pm = std::get_if<ThermalDist::PointMass>(&td->value())) {
            gT = pm->gamma_T;
        } else if (thermal_sampler != nullptr) {
            gT = thermal_sampler->sample(eng);
        } else {
            const auto& tab = std::get<ThermalDist::Tabulated>(td->value());
            double total = 0.0;
            for (const auto& [g, w] : tab.nodes) total += w;
            double target = eng.uniform() * total;
            gT = tab.nodes.back().first;
            for (const auto& [g, w] : tab.nodes) {
                if (target < w) {
                    gT = g;
                    break;
                }
                target -= w;
            }
        }
        // HiddenRest kinetic energy g0 [ (1 + b0 bT u) gT - 1 ] in m0 c^2.
        const double b0 = std::sqrt((g0 - 1.0) * (g0 + 1.0)) / g0;
        const double bT = std::sqrt((gT - 1.0) * (gT + 1.0)) / gT;
        return g0 * ((1.0 + b0 * bT * u) * gT - 1.0);
    }
};

struct BatchSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
};

void accumulate_batch(const McSetup& setup, std::size_t begin, std::size_t end, BatchSums& out) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double e = setup.draw_energy(i);
        sum += e;
        sum_sq += e * e;
    }
    out.sum = sum;
    out.sum_sq = sum_sq;
    out.count = end - begin;
}

FluctuationEstimate reduce_batches(const std::vector<BatchSums>& batches, std::size_t n,
                                   std::uint64_t seed) {
    double sum = 0.0, sum_sq = 0.0;
    for (const BatchSums& b : batches) {   // fixed-order reduction
        sum += b.sum;
        sum_sq += b.sum_sq;
    }
    FluctuationEstimate est;
    est.n = n;
    est.seed = seed;
    est.mean = sum / static_cast<double>(n);
    est.second_moment = sum_sq / static_cast<double>(n);
    est.variance = est.second_moment - est.mean * est.mean;

    // Batch-mean standard errors.
    double mvar = 0.0, vvar = 0.0;
    std::size_t used = 0;
    for (const BatchSums& b : batches) {
        if (b.count == 0) continue;
        const double bm = b.sum / static_cast<double>(b.count);
        const double bv = b.sum_sq / static_cast<double>(b.count) - bm * bm;
        mvar += (bm - est.mean) * (bm - est.mean);
        vvar += (bv - est.variance) * (bv - est.variance);
        ++used;
    }
    if (used > 1) {
        est.se_mean = std::sqrt(mvar / (used - 1) / used);
        est.se_variance = std::sqrt(vvar / (used - 1) / used);
    }
    return est;
}

std::vector<BatchSums> run_batches(const JuttnerDist& hidden, const ThermalDist& td,
                                   const RandomStream& rs, std::size_t n, bool parallel) {
    if (n < 1000) throw std::domain_error("monte_carlo_moments: n must be >= 1000");

    const JuttnerSampler hidden_sampler(hidden);
    std::unique_ptr<JuttnerSampler> thermal_sampler;
    if (const auto* jd = std::get_if<JuttnerDist>(&td.value()))
        thermal_sampler = std::make_unique<JuttnerSampler>(*jd);

    McSetup setup{&hidden_sampler, &td, thermal_sampler.get(), rs};

    std::vector<BatchSums> batches(kBatches);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < static_cast<long>(kBatches); ++b) {
            const std::size_t begin = n * static_cast<std::size_t>(b) / kBatches;
            const std::size_t end = n * (static_cast<std::size_t>(b) + 1) / kBatches;
            accumulate_batch(setup, begin, end, batches[static_cast<std::size_t>(b)]);
        }
    } else {
        for (std::size_t b = 0; b < kBatches; ++b) {
            const std::size_t begin = n * b / kBatches;
            const std::size_t end = n * (b + 1) / kBatches;
            accumulate_batch(setup, begin, end, batches[b]);
        }
    }
    return batches;
}

}  // namespace

FluctuationEstimate monte_carlo_moments(const JuttnerDist& hidden, const ThermalDist& td,
                                        const RandomStream& rs, std::size_t n) {
    return reduce_batches(run_batches(hidden, td, rs, n, true), n, rs.seed);
}

FluctuationEstimate monte_carlo_moments_serial(const JuttnerDist& hidden, const ThermalDist& td,
                                               const RandomStream& rs, std::size_t n) {
    return reduce_batches(run_batches(hidden, td, rs, n, false), n, rs.seed);
}

}  // namespace relgas
