// Compares the serial reference replication driver against the OpenMP
// kernel on the hitting-time workload and checks they agree bit-for-bit.

#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "relsim/recurrence.hpp"

using namespace relsim;

int main(int argc, char** argv) {
    const long reps = argc > 1 ? std::atol(argv[1]) : 20'000;
    const IntensityModel model(reciprocal_family(0.0, 6.0), reciprocal_family(0.0, 6.0),
                               6.0, 6.0);
    const State z0{0, 20.0, 0, 20.0};

    auto workload = [&](long, RngStream& rng) {
        return hitting_time(model, z0, 5.0, 1.0, rng, 1e6).tau;
    };

    const double t0 = omp_get_wtime();
    auto serial = run_replications(reps, 42, Execution::serial, workload);
    const double t1 = omp_get_wtime();
    auto parallel = run_replications(reps, 42, Execution::parallel, workload);
    const double t2 = omp_get_wtime();

    bool identical = serial == parallel;
    const double ts = t1 - t0;
    const double tp = t2 - t1;
    std::printf("reps:            %ld\n", reps);
    std::printf("threads:         %d\n", omp_get_max_threads());
    std::printf("serial:          %.3f s  (%.0f reps/s)\n", ts, reps / ts);
    std::printf("openmp:          %.3f s  (%.0f reps/s)\n", tp, reps / tp);
    std::printf("speedup:         %.2fx\n", ts / tp);
    std::printf("bit-identical:   %s\n", identical ? "yes" : "NO");
    std::printf("mean tau:        %.6f\n", summarize(serial).mean);
    return identical ? 0 : 1;
}
