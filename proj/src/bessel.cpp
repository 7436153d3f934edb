#include "relgas/numerics.hpp"

#include <cmath>
#include <limits>

namespace relgas {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Series for K0 and K1 on 0 < x <= 2 (DLMF 10.31.1-2 rearranged in
// t = x^2/4).  Cancellation against the log term costs at most one digit
// at the crossover.
void bessel_k01_series(double x, double& k0, double& k1) {
    const double t = 0.25 * x * x;
    const double lg = std::log(0.5 * x);

    double i0_term = 1.0;        // t^k / (k!)^2
    double i1_term = 0.5;        // (1/2) t^k / (k! (k+1)!); the x/2 of I1 folded in below
    double i0 = i0_term;
    double i1 = i1_term;
    double sum0 = 0.0;           // sum_{k>=1} H_k t^k / (k!)^2
    double sum1 = 0.5 * i1_term; // sum_k (H_k + H_{k+1})/2 * t^k / (2 k! (k+1)!)
    double harmonic = 0.0;

    for (int k = 1; k < 64; ++k) {
        i0_term *= t / (static_cast<double>(k) * k);
        i1_term *= t / (static_cast<double>(k) * (k + 1));
        harmonic += 1.0 / k;
        i0 += i0_term;
        i1 += i1_term;
        sum0 += harmonic * i0_term;
        sum1 += 0.5 * (2.0 * harmonic + 1.0 / (k + 1)) * i1_term;
        if (i0_term < 1e-19 * i0 && i1_term < 1e-19 * i1) break;
    }
    i1 *= x;      // I1(x) = (x/2) sum t^k / (k! (k+1)!)
    sum1 *= x;    // (x/4) sum (H_k + H_{k+1}) t^k / (k! (k+1)!)

    k0 = -(lg + kEulerGamma) * i0 + sum0;
    k1 = 1.0 / x + (lg + kEulerGamma) * i1 - sum1;
}

// Temme's continued fraction (CF2) for x >= 2, as in the standard
// bessik scheme with nu = 0.
void bessel_k01_cf(double x, double& k0, double& k1) {
    constexpr double eps = 1e-17;
    constexpr int max_iter = 10000;

    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;   // 1/4 - nu^2 at nu = 0
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;

    for (int i = 2; i <= max_iter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < eps) break;
    }
    h = a1 * h;
    k0 = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k(int order, double x) {
    if (order < 0 || order > 2) throw std::domain_error("bessel_k: order must be 0, 1 or 2");
    detail::require_finite(x, "bessel_k");
    if (x <= 0.0) throw std::domain_error("bessel_k: argument must be positive");

    double k0, k1;
    if (x <= 2.0) {
        bessel_k01_series(x, k0, k1);
    } else {
        bessel_k01_cf(x, k0, k1);
    }
    switch (order) {
        case 0: return k0;
        case 1: return k1;
        default: return k0 + 2.0 * k1 / x;   // K2 = K0 + 2 K1 / x
    }
}

}  // namespace relgas
