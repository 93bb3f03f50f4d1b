// linalg.hpp — Dense complex linear algebra used by every other module
//
// Conventions fixed project-wide:
//   * vec() stacks columns: vec(A)[i + j*rows] = A(i, j).
//   * the transfer matrix of X -> A X B is kron(B^T, A).
//   * bipartite d^2 x d^2 matrices index |i k> as i*d + k (first factor major).

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qmaps/error.hpp"

namespace qmaps {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr int kMaxDim = 16;
inline constexpr double kPsdTolerance = 1e-9;

// Throws BadDimension unless 2 <= d <= kMaxDim.
void check_dimension(int d);

ComplexMatrix identity(int n);
// E_ij = |i><j| in dimension d, zero-based indices.
ComplexMatrix basis_unit(int d, int i, int j);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double hermiticity_defect(const ComplexMatrix& a);
// max |A_ij - conj(A_ji)| <= 1e-12 (1 + ||A||_F)
bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);

struct HermitianEigen {
    RealVector values;        // ascending
    ComplexMatrix vectors;    // columns are eigenvectors
};

// Throws NonHermitianInput when `a` fails is_hermitian(a, rel_tol).
HermitianEigen eig_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);
double min_eig(const ComplexMatrix& a, double rel_tol = 1e-12);
// min_eig(a) >= -tol
bool is_psd(const ComplexMatrix& a, double tol = kPsdTolerance);

// Eigenvalues of a general square matrix, unordered.
ComplexVector eig_general(const ComplexMatrix& a);

// Transposes factor 1 or 2 of a d^2 x d^2 matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int d, int subsystem);

ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, int d);

// |Omega><Omega| with |Omega> = sum_i |ii> / sqrt(d)
ComplexMatrix maximally_entangled_projector(int d);

// Orthonormal basis of the orthogonal complement of |Omega>, as d^2 x (d^2 - 1) columns.
ComplexMatrix entangled_complement_basis(int d);

} // namespace qmaps
