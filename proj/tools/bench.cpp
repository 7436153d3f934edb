// Timing comparison of the serial reference and the OpenMP Monte Carlo
// kernel.  The two must agree bitwise; this target reports the speedup.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relgas/fluctuations.hpp"

int main() {
    using clock = std::chrono::steady_clock;

    const relgas::JuttnerDist hidden{0.1};
    const relgas::ThermalDist td = relgas::ThermalDist::juttner(0.01);
    const relgas::RandomStream rs{0x5EED, 0};

#ifdef _OPENMP
    std::printf("omp_max_threads,%d\n", omp_get_max_threads());
#else
    std::printf("omp_max_threads,1 (OpenMP disabled)\n");
#endif
    std::printf("n,serial_s,parallel_s,speedup,bitwise_equal\n");

    for (std::size_t n : {100000ull, 1000000ull, 4000000ull}) {
        const auto t0 = clock::now();
        const auto serial = relgas::monte_carlo_moments_serial(hidden, td, rs, n);
        const auto t1 = clock::now();
        const auto parallel = relgas::monte_carlo_moments(hidden, td, rs, n);
        const auto t2 = clock::now();

        const double ts = std::chrono::duration<double>(t1 - t0).count();
        const double tp = std::chrono::duration<double>(t2 - t1).count();
        const bool equal = serial.mean == parallel.mean &&
                           serial.second_moment == parallel.second_moment &&
                           serial.se_variance == parallel.se_variance;
        std::printf("%zu,%.4f,%.4f,%.2fx,%s\n", n, ts, tp, ts / tp,
                    equal ? "yes" : "NO");
        if (!equal) return 1;
    }
    return 0;
}
