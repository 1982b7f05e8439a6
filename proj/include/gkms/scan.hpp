#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gkms {

/// How the per-sample certification sweeps are evaluated. Every sweep is a
/// max-reduction over independent pure evaluations, so the parallel result
/// is bit-identical to the serial reference.
enum class Exec { serial, parallel };

inline Exec& default_exec() {
    static Exec mode = Exec::parallel;
    return mode;
}

/// Serial reference sweep: max of eval(i) for i in [0, count).
template <typename F>
double max_over_serial(std::size_t count, F&& eval) {
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = eval(i);
        if (r > worst) worst = r;
    }
    return worst;
}

/// OpenMP sweep with a max reduction; falls back to the serial reference
/// when OpenMP is unavailable or Exec::serial is requested.
template <typename F>
double max_over(std::size_t count, F&& eval, Exec mode = default_exec()) {
#ifdef _OPENMP
    if (mode == Exec::parallel && count > 1) {
        double worst = 0.0;
        const long long n = static_cast<long long>(count);
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 8)
        for (long long i = 0; i < n; ++i) {
            const double r = eval(static_cast<std::size_t>(i));
            if (r > worst) worst = r;
        }
        return worst;
    }
#else
    (void)mode;
#endif
    return max_over_serial(count, eval);
}

/// Min-reduction counterpart, used by positivity sweeps.
template <typename F>
double min_over_serial(std::size_t count, F&& eval) {
    double best = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = eval(i);
        if (first || r < best) {
            best = r;
            first = false;
        }
    }
    return best;
}

template <typename F>
double min_over(std::size_t count, F&& eval, Exec mode = default_exec()) {
#ifdef _OPENMP
    if (mode == Exec::parallel && count > 1) {
        double best = 1e300;
        const long long n = static_cast<long long>(count);
#pragma omp parallel for reduction(min : best) schedule(dynamic, 8)
        for (long long i = 0; i < n; ++i) {
            const double r = eval(static_cast<std::size_t>(i));
            if (r < best) best = r;
        }
        return best;
    }
#else
    (void)mode;
#endif
    return min_over_serial(count, eval);
}

}  // namespace gkms
