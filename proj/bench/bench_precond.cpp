// Compares the serial reference and the OpenMP row-parallel preconditioner
// pipelines on a synthetic corpus and verifies they agree bit-for-bit.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcspai/mc_engine.hpp"
#include "mcspai/synthetic.hpp"

using namespace mcspai;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

void run_case(const char* name, const CsrMatrix& b, const McConfig& cfg) {
    ApproxInverse serial, parallel;
    const double t_serial =
        time_ms([&] { serial = compute_preconditioner_serial(b, cfg); });
    const double t_parallel =
        time_ms([&] { parallel = compute_preconditioner(b, cfg); });
    const bool identical = serial.m == parallel.m;
    std::printf("%-16s n=%6lld nnz=%8lld serial=%9.1f ms  omp=%9.1f ms  "
                "speedup=%5.2fx  identical=%s\n",
                name, static_cast<long long>(b.n),
                static_cast<long long>(b.nnz()), t_serial, t_parallel,
                t_serial / t_parallel, identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#endif
    McConfig cfg;
    cfg.epsilon = 0.02;
    cfg.delta = 0.01;
    cfg.alpha = 1.5;
    cfg.retain_k = 32;
    cfg.master_seed = 42;

    run_case("brusselator", make_brusselator(32), cfg);
    run_case("convdiff", make_convection_diffusion(48), cfg);
    run_case("tridiag", make_tridiagonal(4096), cfg);
    run_case("broad", make_broad_spectrum(1024, 24, 1e-4, 1.0, 7), cfg);
    return 0;
}
