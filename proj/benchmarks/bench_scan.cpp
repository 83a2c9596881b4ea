// Timing comparison of the serial and OpenMP energy-grid scans.
// Usage: anharm_bench [points] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "anharm/solver.hpp"
#include "anharm/wronskian.hpp"

using namespace anharm;

namespace {

double run_once(const WronskianEvaluator& w, const std::vector<double>& grid, bool parallel,
                double* checksum) {
    auto t0 = std::chrono::steady_clock::now();
    auto values = scan_grid(w, grid, parallel);
    auto t1 = std::chrono::steady_clock::now();
    double sum = 0.0;
    for (const auto& v : values)
        if (v.scale > 0.0) sum += v.value / v.scale;
    *checksum = sum;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int points = argc > 1 ? std::atoi(argv[1]) : 2000;
    int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

    QuarticPotential pot(1.0, -5.0);
    DirectConfig dc;
    dc.with_spread = false;
    WronskianEvaluator direct = [&](double e) { return quartic_wronskian_direct(pot, 0.0, e, dc); };
    WronskianConfig wc;
    WronskianEvaluator closed = [&](double e) { return quartic_wronskian(pot, 0.0, e, 12, wc); };

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = -7.0 + 14.0 * i / (points - 1);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel path falls back to serial\n");
#endif
    std::printf("grid points: %d, repeats: %d\n\n", points, repeats);
    std::printf("%-22s %12s %12s %10s\n", "evaluator", "serial[ms]", "parallel[ms]", "speedup");

    struct Case { const char* name; const WronskianEvaluator* w; };
    for (const Case& c : {Case{"direct (double)", &direct}, Case{"closed form (double)", &closed}}) {
        double ts = 1e300, tp = 1e300, sum_s = 0.0, sum_p = 0.0;
        for (int r = 0; r < repeats; ++r) {
            ts = std::min(ts, run_once(*c.w, grid, false, &sum_s));
            tp = std::min(tp, run_once(*c.w, grid, true, &sum_p));
        }
        if (sum_s != sum_p) {
            std::printf("checksum mismatch between serial and parallel scans\n");
            return 1;
        }
        std::printf("%-22s %12.1f %12.1f %9.2fx\n", c.name, ts, tp, ts / tp);
    }
    return 0;
}
