// Benchmark of the parallel kernel assembly and stacked solves against the
// serial reference path. Reports timings and verifies the two assemblies
// agree bit for bit.

#include <chrono>
#include <cstdio>

#include "owg/oracle.hpp"
#include "owg/parallel.hpp"

using namespace owg;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    ModelParams p{0.2, 1.0, 1.0, 3, {1.0, 0.0, -1.0}};
    std::printf("threads: %d\n", thread_count());

    for (int m : {500, 1000, 2000}) {
        const TimeGrid grid = make_grid(p.horizon, m);
        double t_serial = 1e300, t_parallel = 1e300;
        Eigen::MatrixXd ks, kp;
        for (int r = 0; r < reps; ++r) {
            auto t0 = clock_type::now();
            ks = assemble_kernel_serial(p, grid);
            t_serial = std::min(t_serial, seconds_since(t0));
            t0 = clock_type::now();
            kp = assemble_kernel(p, grid);
            t_parallel = std::min(t_parallel, seconds_since(t0));
        }
        const bool same = (ks - kp).cwiseAbs().maxCoeff() == 0.0;
        std::printf("kernel M=%-5d serial %8.4f s  parallel %8.4f s  speedup %5.2fx  identical: %s\n",
                    m, t_serial, t_parallel, t_serial / t_parallel, same ? "yes" : "NO");
    }

    for (int m : {250, 500, 1000}) {
        const TimeGrid grid = make_grid(p.horizon, m);
        const DiscreteGame game = build_discrete_game(p, CostSpec::make_APrime(0.05), grid);
        double t_solve = 1e300;
        double br_gap = 0.0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = clock_type::now();
            const DiscreteEquilibrium eq = solve_discrete_equilibrium(game);
            t_solve = std::min(t_solve, seconds_since(t0));
            br_gap = eq.br_gap;
        }
        std::printf("stacked A' M=%-5d solve %8.3f s  br_gap %.2e\n", m, t_solve, br_gap);
    }
    return 0;
}
