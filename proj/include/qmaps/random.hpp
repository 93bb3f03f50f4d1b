// random.hpp — Reproducible per-sample random objects (states, pairs, Ginibre matrices)
//
// Every sample k of a stream draws from its own engine seeded by
// (seed, stream, k), so results do not depend on how samples are spread
// across threads.

#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "qmaps/linalg.hpp"

namespace qmaps {

enum class Stream : std::uint64_t {
    OrthonormalPairs = 1,
    TracelessX = 2,
    PureStates = 3,
    Ginibre = 4,
    Lemma1 = 5,
    Generic = 6,
};

std::mt19937_64 sample_engine(std::uint64_t seed, Stream stream, std::uint64_t index);

ComplexVector gaussian_vector(int n, std::mt19937_64& rng);
ComplexMatrix ginibre(int d, std::mt19937_64& rng);

// Haar-random unit vector.
ComplexVector haar_state(int d, std::mt19937_64& rng);

// Haar-random orthonormal pair (Gram-Schmidt on two Gaussian vectors).
std::pair<ComplexVector, ComplexVector> orthonormal_pair(int d, std::mt19937_64& rng);

// Orthonormal pair supported on two random coordinates, Haar within that plane.
std::pair<ComplexVector, ComplexVector> two_level_pair(int d, std::mt19937_64& rng);

// Ginibre matrix with its trace removed, scaled to unit Frobenius norm.
ComplexMatrix random_traceless(int d, std::mt19937_64& rng);

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng);

} // namespace qmaps
