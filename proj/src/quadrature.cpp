#include "relgas/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace relgas {

namespace detail {
void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
}
}  // namespace detail

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    detail::require_finite(fc, "integrate: integrand");
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        detail::require_finite(f1, "integrate: integrand");
        detail::require_finite(f2, "integrate: integrand");
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = result_kronrod * half;
    s.error = std::fabs((result_kronrod - result_gauss) * half);
    return s;
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec) {
    detail::require_finite(a, "integrate: lower limit");
    if (std::isnan(b)) throw std::domain_error("integrate: upper limit is NaN");
    if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0) || !(spec.abs_tol > 0.0) ||
        spec.max_subdivisions < 1 || spec.initial_subdivisions < 1)
        throw std::domain_error("integrate: invalid QuadratureSpec");
    if (b <= a && std::isfinite(b)) {
        if (b == a) return {0.0, 0.0};
        throw std::domain_error("integrate: reversed limits");
    }

    // Map [a, inf) onto t in [0, 1); Gauss-Kronrod nodes are interior so the
    // t = 1 endpoint is never touched.
    std::function<double(double)> g;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        g = [&f, a](double t) {
            const double om = 1.0 - t;
            return f(a + t / om) / (om * om);
        };
        lo = 0.0;
        hi = 1.0;
    } else {
        g = f;
    }

    std::priority_queue<Segment> segments;
    double total_value = 0.0;
    double total_error = 0.0;
    const int seeds = spec.initial_subdivisions;
    for (int i = 0; i < seeds; ++i) {
        const double sa = lo + (hi - lo) * static_cast<double>(i) / seeds;
        const double sb = i + 1 == seeds ? hi : lo + (hi - lo) * static_cast<double>(i + 1) / seeds;
        if (!(sb > sa)) continue;
        const Segment s = gk15(g, sa, sb);
        total_value += s.value;
        total_error += s.error;
        segments.push(s);
    }

    int subdivisions = seeds;
    while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_value))) {
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("integrate: subdivision budget exhausted", total_value,
                                   total_error);
        }
        Segment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision; accept it.
            total_error -= worst.error;
            worst.error = 0.0;
            segments.push(worst);
            if (segments.top().error == 0.0) break;
            continue;
        }
        const Segment left = gk15(g, worst.a, mid);
        const Segment right = gk15(g, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
        ++subdivisions;
    }
    return {total_value, total_error};
}

}  // namespace relgas
