#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

// Special functions, adaptive quadrature and splittable random streams.
// Everything here is a pure function of its inputs; all entry points
// reject non-finite arguments instead of propagating NaN.

namespace relgas {

// ---------------------------------------------------------------------------
// Modified Bessel function of the second kind, orders 0..2.
//
// Power series below x = 2, Temme's continued fraction above.  Relative
// accuracy is ~1e-14 on x in [1e-6, 700]; past x ~ 705 the e^{-x} scale
// underflows and the result collapses to zero.
double bessel_k(int order, double x);

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod integration.

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int max_subdivisions = 2000;
    // Seeding with several panels guards against narrow features the first
    // 15-point rule would miss entirely (zero value, zero error estimate).
    int initial_subdivisions = 1;
};

struct IntegralResult {
    double value = 0.0;
    double err_estimate = 0.0;
};

// Thrown when the subdivision budget runs out; carries the best estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double value, double err)
        : std::runtime_error(what), best_value(value), err_estimate(err) {}
    double best_value;
    double err_estimate;
};

// Integrates f over [a, b]; b may be +infinity (mapped to a finite interval
// by x = a + t/(1-t)).  The error estimate is the accumulated Kronrod-Gauss
// difference over the final partition.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Reproducible splittable random streams.
//
// A RandomStream is an immutable descriptor; drawing happens through a
// RandomEngine constructed from it.  Streams with distinct stream_index are
// independent for this artifact's purposes.

struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
};

// Deterministic child stream; disjoint from the parent's own draws.
RandomStream child_stream(const RandomStream& rs, std::uint64_t rank);

std::vector<RandomStream> split_stream(const RandomStream& rs, std::size_t k);

// xoshiro256** seeded from (seed, stream_index) via splitmix64.
class RandomEngine {
public:
    explicit RandomEngine(const RandomStream& rs);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform();

private:
    std::uint64_t state_[4];
};

namespace detail {
void require_finite(double x, const char* what);
}

}  // namespace relgas
