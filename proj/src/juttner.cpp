#include "relgas/juttner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relgas {

namespace {

void require_alpha(double alpha) {
    detail::require_finite(alpha, "juttner");
    if (!(alpha > 0.0)) throw std::domain_error("juttner: alpha must be positive");
}

void require_bessel_domain(double alpha) {
    if (alpha < 1e-6 || alpha > 700.0)
        throw std::domain_error("juttner: alpha outside the Bessel accuracy domain [1e-6, 700]");
}

// Unnormalized density g sqrt(g^2-1) exp(-alpha g), with the overall
// exp(-alpha) pulled out so it stays representable for small temperatures.
double shape(double alpha, double g) {
    // Quadrature nodes can land an ulp below 1; clamp instead of producing NaN.
    const double q = std::max(0.0, (g - 1.0) * (g + 1.0));
    return g * std::sqrt(q) * std::exp(-alpha * (g - 1.0));
}

}  // namespace

double pdf_gamma(const JuttnerDist& d, double g) {
    require_alpha(d.alpha);
    detail::require_finite(g, "pdf_gamma");
    if (g < 1.0) {
        // Tolerate quadrature-node roundoff just below the support edge.
        if (g < 1.0 - 1e-12) throw std::domain_error("pdf_gamma: gamma must be >= 1");
        g = 1.0;
    }
    // alpha e^{-alpha} / K2(alpha) stays finite: K2(a) ~ e^{-a} sqrt(pi/2a) at
    // large a, so the exp(-alpha) split above cancels the Bessel decay.
    const double k2_scaled = bessel_k(2, d.alpha) * std::exp(d.alpha);
    return d.alpha / k2_scaled * shape(d.alpha, g);
}

double mean_gamma(const JuttnerDist& d) {
    require_alpha(d.alpha);
    require_bessel_domain(d.alpha);
    return 3.0 / d.alpha + bessel_k(1, d.alpha) / bessel_k(2, d.alpha);
}

MassMoments mass_moments(const JuttnerDist& d) {
    require_alpha(d.alpha);
    require_bessel_domain(d.alpha);
    const double k1_over_k2 = bessel_k(1, d.alpha) / bessel_k(2, d.alpha);
    MassMoments mm;
    mm.mean_mass = 3.0 / d.alpha + k1_over_k2;
    mm.mean_mass_sq = 12.0 / (d.alpha * d.alpha) + 1.0 + 3.0 * k1_over_k2 / d.alpha;
    mm.ratio = mm.mean_mass_sq / (mm.mean_mass * mm.mean_mass);
    return mm;
}

double moment_ratio_deviation(const JuttnerDist& d) {
    const MassMoments mm = mass_moments(d);
    return (mm.ratio - 4.0 / 3.0) / (d.alpha * d.alpha);
}

double gamma_truncation(const JuttnerDist& d) {
    require_alpha(d.alpha);
    return 1.0 + 750.0 / d.alpha;
}

JuttnerSampler::JuttnerSampler(const JuttnerDist& d, std::size_t table_nodes) : alpha_(d.alpha) {
    require_alpha(alpha_);
    if (table_nodes < 16) throw std::domain_error("JuttnerSampler: table too small");

    const double width = gamma_truncation(d) - 1.0;
    gamma_.resize(table_nodes);
    gamma_[0] = 1.0;
    // Log-spaced offsets from gamma = 1 across ~14 decades; the density
    // vanishes like sqrt(g - 1) at the left edge, so the fine left spacing
    // keeps the Hermite segments accurate there.
    const double y_min = 1e-14;
    const double ratio = std::log(1.0 / y_min) / static_cast<double>(table_nodes - 2);
    for (std::size_t i = 1; i < table_nodes; ++i)
        gamma_[i] = 1.0 + width * y_min * std::exp(ratio * static_cast<double>(i - 1));
    gamma_.back() = 1.0 + width;

    // Per-segment plain GK15 sums; segments are narrow enough that the
    // local rule is far below the table's 1e-8 accuracy target.
    std::vector<double> raw(table_nodes, 0.0);
    const auto f = [this](double g) { return shape(alpha_, g); };
    for (std::size_t i = 1; i < table_nodes; ++i) {
        QuadratureSpec seg_spec;
        seg_spec.rel_tol = 1e-13;
        seg_spec.abs_tol = 1e-320;
        seg_spec.max_subdivisions = 50;
        double piece;
        try {
            piece = integrate(f, gamma_[i - 1], gamma_[i], seg_spec).value;
        } catch (const ConvergenceError& e) {
            piece = e.best_value;
        }
        raw[i] = raw[i - 1] + piece;
    }
    // Far-tail segments underflow to zero mass; keep only the strictly
    // increasing prefix of the cumulative table (the dropped mass is below
    // one ulp of the total, ~1e-16).
    std::size_t last = 1;
    while (last + 1 < table_nodes && raw[last + 1] > raw[last]) ++last;
    const double total = raw[last];
    if (!(total > 0.0)) throw std::runtime_error("JuttnerSampler: degenerate CDF table");

    cdf_.resize(last + 1);
    pdf_.resize(last + 1);
    for (std::size_t i = 0; i <= last; ++i) {
        cdf_[i] = raw[i] / total;
        pdf_[i] = shape(alpha_, gamma_[i]) / total;
    }
    // Division rounding can still flatten an increment near the ulp scale.
    std::size_t keep = 1;
    while (keep + 1 < cdf_.size() && cdf_[keep + 1] > cdf_[keep]) ++keep;
    gamma_.resize(keep + 1);
    cdf_.resize(keep + 1);
    pdf_.resize(keep + 1);
    if (gamma_.size() < 16) throw std::runtime_error("JuttnerSampler: degenerate CDF table");
}

double JuttnerSampler::invert(double u) const {
    if (!(u >= 0.0) || u >= 1.0) throw std::domain_error("JuttnerSampler: u must be in [0, 1)");
    u = std::min(u, std::nextafter(cdf_.back(), 0.0));

    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    if (i == 0) return gamma_.front();
    if (i >= cdf_.size()) i = cdf_.size() - 1;

    const double g0 = gamma_[i - 1], g1 = gamma_[i];
    const double f0 = cdf_[i - 1], f1 = cdf_[i];
    const double h = g1 - g0;
    const double d0 = pdf_[i - 1] * h, d1 = pdf_[i] * h;

    // Cubic Hermite model of the CDF on the segment, solved by safeguarded
    // Newton in the normalized coordinate s.
    const auto value = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * f1 +
               (s3 - s2) * d1;
    };
    const auto slope = [&](double s) {
        const double s2 = s * s;
        return (6 * s2 - 6 * s) * f0 + (3 * s2 - 4 * s + 1) * d0 + (-6 * s2 + 6 * s) * f1 +
               (3 * s2 - 2 * s) * d1;
    };

    double lo = 0.0, hi = 1.0;
    double s = (u - f0) / (f1 - f0);
    for (int iter = 0; iter < 64; ++iter) {
        const double v = value(s) - u;
        if (std::fabs(v) <= 1e-16 * (f1 - f0)) break;
        if (v > 0.0)
            hi = s;
        else
            lo = s;
        const double ds = slope(s);
        double next = ds > 0.0 ? s - v / ds : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == s) break;
        s = next;
    }
    return g0 + s * h;
}

std::vector<double> sample_gamma(const JuttnerDist& d, const RandomStream& rs, std::size_t n) {
    if (n == 0) throw std::domain_error("sample_gamma: n must be positive");
    const JuttnerSampler sampler(d);
    RandomEngine eng(rs);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.sample(eng));
    return out;
}

}  // namespace relgas
