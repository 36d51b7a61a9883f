// Timing harness comparing each production kernel against its reference
// twin. For the Laplacian-complement apply, edge betweenness, and the SIR
// ensemble the twin is the serial implementation of the OpenMP path; for
// plan execution it is the per-batch BFS reference that the union-find
// replay is checked against. One line per kernel: both timings, the
// speedup, and whether the outputs agree.

#include "netdis/epidemics.hpp"
#include "netdis/evaluation.hpp"
#include "netdis/generators.hpp"
#include "netdis/rng.hpp"
#include "netdis/spectral.hpp"
#include "netdis/strategies.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace netdis;

namespace {

using Clock = std::chrono::steady_clock;

template <class F> double time_ms(F&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0)
                            .count());
    }
    return best;
}

void report(const char* name, double reference_ms, double kernel_ms,
            bool identical) {
    std::printf("%-22s reference %9.2f ms   kernel %9.2f ms   x%7.2f   %s\n",
                name, reference_ms, kernel_ms,
                kernel_ms > 0 ? reference_ms / kernel_ms : 0.0,
                identical ? "outputs identical" : "OUTPUTS DIFFER");
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 20000;
    if (argc > 1) n = std::stoul(argv[1]);
#ifdef _OPENMP
    std::printf("threads: %d, n: %zu\n", omp_get_max_threads(), n);
#else
    std::printf("threads: 1 (no OpenMP), n: %zu\n", n);
#endif

    GenSpec spec;
    spec.kind = GenKind::ER;
    spec.n = n;
    spec.mean_degree = 10.0;
    spec.seed = 42;
    const Graph g = gen_er(spec.n, spec.mean_degree, spec.seed);

    // Laplacian-complement apply.
    {
        std::mt19937_64 rng(7);
        const std::vector<double> v = random_unit_vector(g.num_nodes(), rng);
        std::vector<double> out_s, out_p;
        const double ser = time_ms(
            [&] { out_s = laplacian_complement_apply_serial(g, v); }, 5);
        const double par =
            time_ms([&] { out_p = laplacian_complement_apply(g, v); }, 5);
        report("laplacian apply", ser, par, out_s == out_p);
    }

    // Edge betweenness (on a smaller graph; Brandes is O(nm)). The
    // chunked reduction associates sums differently from the serial loop,
    // so agreement is checked to a tolerance rather than bitwise.
    {
        const Graph h = gen_er(2000, 10.0, 43);
        std::vector<double> betw_s, betw_p;
        const double ser =
            time_ms([&] { betw_s = edge_betweenness_serial(h); }, 3);
        const double par = time_ms([&] { betw_p = edge_betweenness(h); }, 3);
        bool close = betw_s.size() == betw_p.size();
        for (std::size_t k = 0; close && k < betw_s.size(); ++k)
            close = std::abs(betw_s[k] - betw_p[k]) <=
                    1e-9 * (1.0 + std::abs(betw_s[k]));
        report("edge betweenness", ser, par, close);
    }

    // Plan execution: union-find replay vs. forward BFS reference.
    {
        const RemovalPlan plan = bond_percolation_plan(g, 99);
        GccCurve fast, ref;
        const double par = time_ms([&] { fast = execute_plan(g, plan); }, 3);
        const double ser =
            time_ms([&] { ref = execute_plan_reference(g, plan); }, 1);
        report("plan execution", ser, par, fast.points == ref.points);
    }

    // SIR ensemble (parallel over runs, serially reduced).
    {
        SirParams params;
        params.beta = 0.05;
        params.gamma = 0.05;
        params.seed = 5;
        SirMeanTrace one, many;
        const double par =
            time_ms([&] { many = sir_ensemble(g, params, 50); }, 1);
#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const double ser =
            time_ms([&] { one = sir_ensemble(g, params, 50); }, 1);
        omp_set_num_threads(saved);
#else
        const double ser =
            time_ms([&] { one = sir_ensemble(g, params, 50); }, 1);
#endif
        report("sir ensemble", ser, par,
               one.i == many.i && one.r == many.r);
    }
    return 0;
}
