// random.cpp

#include "qmaps/random.hpp"

#include <cmath>

namespace qmaps {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::mt19937_64 sample_engine(std::uint64_t seed, Stream stream, std::uint64_t index) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ static_cast<std::uint64_t>(stream));
    s = splitmix64(s ^ index);
    return std::mt19937_64(s);
}

ComplexVector gaussian_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

ComplexMatrix ginibre(int d, std::mt19937_64& rng) {
    const ComplexVector v = gaussian_vector(d * d, rng);
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexVector haar_state(int d, std::mt19937_64& rng) {
    ComplexVector v = gaussian_vector(d, rng);
    return v / v.norm();
}

std::pair<ComplexVector, ComplexVector> orthonormal_pair(int d, std::mt19937_64& rng) {
    ComplexVector x = haar_state(d, rng);
    ComplexVector y = gaussian_vector(d, rng);
    y -= x * x.dot(y);
    y /= y.norm();
    return {x, y};
}

std::pair<ComplexVector, ComplexVector> two_level_pair(int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, d - 1);
    const int r = pick(rng);
    int s = pick(rng);
    while (s == r) {
        s = pick(rng);
    }
    const auto [u, v] = orthonormal_pair(2, rng);
    ComplexVector x = ComplexVector::Zero(d);
    ComplexVector y = ComplexVector::Zero(d);
    x(r) = u(0);
    x(s) = u(1);
    y(r) = v(0);
    y(s) = v(1);
    return {x, y};
}

ComplexMatrix random_traceless(int d, std::mt19937_64& rng) {
    ComplexMatrix x = ginibre(d, rng);
    x -= (x.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
    return x / x.norm();
}

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(d, rng);
    return 0.5 * (g + g.adjoint());
}

} // namespace qmaps
