#include <doctest.h>

#include <cmath>
#include <vector>

#include "qmaps/kernels.hpp"

using namespace qmaps;

TEST_CASE("argmin over samples") {
    auto fn = [](std::size_t k) { return std::cos(0.37 * static_cast<double>(k)); };
    const SampleMin s = argmin_samples(5000, fn, Exec::Serial);
    const SampleMin p = argmin_samples(5000, fn, Exec::Parallel);
    CHECK(s.value == p.value);
    CHECK(s.index == p.index);
    double best = fn(0);
    std::size_t at = 0;
    for (std::size_t k = 1; k < 5000; ++k) {
        if (fn(k) < best) {
            best = fn(k);
            at = k;
        }
    }
    CHECK(s.index == at);

    // ties resolve to the lowest index
    auto flat = [](std::size_t k) { return k % 7 == 3 ? -1.0 : 0.0; };
    CHECK(argmin_samples(1000, flat, Exec::Parallel).index == 3u);
    CHECK(argmin_samples(1000, flat, Exec::Serial).index == 3u);

    CHECK(std::isinf(argmin_samples(0, fn).value));
}

TEST_CASE("map over indices") {
    std::vector<double> a(777);
    std::vector<double> b(777);
    auto fn = [](std::size_t k) { return std::sqrt(static_cast<double>(k)); };
    map_indices(a.size(), a, fn, Exec::Serial);
    map_indices(b.size(), b, fn, Exec::Parallel);
    CHECK(a == b);
    CHECK(a[16] == 4.0);
}
