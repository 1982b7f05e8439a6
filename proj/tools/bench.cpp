// Times the certification sweeps on the serial reference path and the
// OpenMP path, and checks that both reductions return identical maxima.

#include "gkms/flow.hpp"
#include "gkms/scan.hpp"
#include "gkms/scenario.hpp"
#include "gkms/suite.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = Clock::now();
        fn();
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        if (ms < best) best = ms;
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the serial path\n");
#endif

    gkms::ScenarioConfig config;
    config.seed = 42;
    config.n_plus = 6;
    config.n_minus = 6;
    config.rho.beta = 1.0;
    config.rho.spectral_bound = 2.0;
    const gkms::ScenarioBundle bundle = gkms::generate_scenario(config);

    const gkms::GradedAlgebra alg = bundle.algebra();
    const gkms::Functional omega{alg.g() * bundle.rho};
    const gkms::ModularFlow flow = gkms::ModularFlow::from_density(bundle.rho);

    std::vector<gkms::Matrix> units;
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j) units.push_back(alg.unit(i, j));

    const std::size_t n_units = units.size();
    const std::size_t pairs = n_units * n_units;
    auto keystone = [&](std::size_t idx) {
        return gkms::graded_kms_residual(omega, flow, alg, units[idx / n_units],
                                         units[idx % n_units]);
    };

    std::printf("%-34s %10s %10s %8s\n", "sweep", "serial ms", "openmp ms", "speedup");

    double serial_result = 0.0, parallel_result = 0.0;
    const double t_serial = time_ms([&] {
        serial_result = gkms::max_over_serial(pairs, keystone);
    });
    const double t_parallel = time_ms([&] {
        parallel_result = gkms::max_over(pairs, keystone, gkms::Exec::parallel);
    });
    std::printf("%-34s %10.1f %10.1f %7.2fx\n", "graded-KMS unit pairs (n=12)", t_serial,
                t_parallel, t_serial / t_parallel);
    if (serial_result != parallel_result) {
        std::printf("MISMATCH: serial %.17g vs parallel %.17g\n", serial_result, parallel_result);
        return 1;
    }

    const double t_flow_serial =
        time_ms([&] { gkms::check_flow(bundle, gkms::Exec::serial); }, 2);
    const double t_flow_parallel =
        time_ms([&] { gkms::check_flow(bundle, gkms::Exec::parallel); }, 2);
    std::printf("%-34s %10.1f %10.1f %7.2fx\n", "flow certification suite", t_flow_serial,
                t_flow_parallel, t_flow_serial / t_flow_parallel);

    const double t_gns_serial = time_ms([&] { gkms::check_gns(bundle, gkms::Exec::serial); }, 2);
    const double t_gns_parallel =
        time_ms([&] { gkms::check_gns(bundle, gkms::Exec::parallel); }, 2);
    std::printf("%-34s %10.1f %10.1f %7.2fx\n", "gns certification suite", t_gns_serial,
                t_gns_parallel, t_gns_serial / t_gns_parallel);

    const double residual_check = gkms::check_flow(bundle, gkms::Exec::serial).max_residual;
    const double residual_par = gkms::check_flow(bundle, gkms::Exec::parallel).max_residual;
    if (residual_check != residual_par) {
        std::printf("MISMATCH in flow suite: %.17g vs %.17g\n", residual_check, residual_par);
        return 1;
    }
    std::printf("serial and parallel reductions agree bit-for-bit\n");
    return 0;
}
