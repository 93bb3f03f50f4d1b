// kernels.hpp — Data-parallel reductions over independent samples
//
// Each kernel has an OpenMP version and a plain serial reference. Both visit
// the same index set and break ties on the lowest index, so their results are
// identical for any thread count.

#pragma once

#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qmaps {

enum class Exec { Serial, Parallel };

struct SampleMin {
    double value{std::numeric_limits<double>::infinity()};
    std::size_t index{0};
};

inline void merge_min(SampleMin& acc, const SampleMin& other) {
    if (other.value < acc.value || (other.value == acc.value && other.index < acc.index)) {
        acc = other;
    }
}

namespace serial {

template <class Fn>
SampleMin argmin_samples(std::size_t count, Fn&& fn) {
    SampleMin best;
    for (std::size_t k = 0; k < count; ++k) {
        merge_min(best, {fn(k), k});
    }
    return best;
}

} // namespace serial

// fn(k) -> double must be pure in k.
template <class Fn>
SampleMin argmin_samples(std::size_t count, Fn&& fn, Exec exec = Exec::Parallel) {
    if (exec == Exec::Serial || count < 2) {
        return serial::argmin_samples(count, fn);
    }
    SampleMin best;
    const auto n = static_cast<long long>(count);
#pragma omp parallel
    {
        SampleMin local;
#pragma omp for schedule(static) nowait
        for (long long k = 0; k < n; ++k) {
            merge_min(local, {fn(static_cast<std::size_t>(k)), static_cast<std::size_t>(k)});
        }
#pragma omp critical(qmaps_argmin_merge)
        merge_min(best, local);
    }
    return best;
}

// out[k] = fn(k) for k < count; out must already hold count elements.
template <class Out, class Fn>
void map_indices(std::size_t count, Out& out, Fn&& fn, Exec exec = Exec::Parallel) {
    if (exec == Exec::Serial) {
        for (std::size_t k = 0; k < count; ++k) {
            out[k] = fn(k);
        }
        return;
    }
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = fn(static_cast<std::size_t>(k));
    }
}

} // namespace qmaps
