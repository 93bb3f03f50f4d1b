// linalg.cpp — Eigen-backed primitives with the project's index conventions

#include "qmaps/linalg.hpp"

#include <cmath>
#include <string>

namespace qmaps {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::NotTraceless: return "NotTraceless";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::NoLimit: return "NoLimit";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

void check_dimension(int d) {
    if (d < 2 || d > kMaxDim) {
        throw Error(ErrorCode::BadDimension,
                    "dimension " + std::to_string(d) + " outside [2, " + std::to_string(kMaxDim) + "]");
    }
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix basis_unit(int d, int i, int j) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    ComplexMatrix out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i) {
        for (Eigen::Index j = 0; j < ac; ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "hermiticity of a non-square matrix");
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
    if (a.size() == 0) {
        return true;
    }
    return hermiticity_defect(a) <= rel_tol * (1.0 + a.norm());
}

HermitianEigen eig_hermitian(const ComplexMatrix& a, double rel_tol) {
    if (!is_hermitian(a, rel_tol)) {
        throw Error(ErrorCode::NonHermitianInput,
                    "defect " + std::to_string(hermiticity_defect(a)));
    }
    // Symmetrize so the solver sees exactly Hermitian input.
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eig(const ComplexMatrix& a, double rel_tol) {
    if (!is_hermitian(a, rel_tol)) {
        throw Error(ErrorCode::NonHermitianInput,
                    "defect " + std::to_string(hermiticity_defect(a)));
    }
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

bool is_psd(const ComplexMatrix& a, double tol) { return min_eig(a) >= -tol; }

ComplexVector eig_general(const ComplexMatrix& a) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
    return solver.eigenvalues();
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int d, int subsystem) {
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    if (m.rows() != n || m.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "partial_transpose expects a d^2 x d^2 matrix");
    }
    if (subsystem != 1 && subsystem != 2) {
        throw Error(ErrorCode::DimensionMismatch, "subsystem must be 1 or 2");
    }
    ComplexMatrix out(n, n);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    const cplx v = m(i * d + k, j * d + l);
                    if (subsystem == 1) {
                        out(j * d + k, i * d + l) = v;
                    } else {
                        out(i * d + l, j * d + k) = v;
                    }
                }
            }
        }
    }
    return out;
}

ComplexVector vec(const ComplexMatrix& a) {
    return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, int d) {
    if (v.size() != static_cast<Eigen::Index>(d) * d) {
        throw Error(ErrorCode::DimensionMismatch,
                    "unvec of length " + std::to_string(v.size()) + " into " + std::to_string(d) + "x" +
                        std::to_string(d));
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix maximally_entangled_projector(int d) {
    ComplexVector omega = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i) {
        omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return omega * omega.adjoint();
}

ComplexMatrix entangled_complement_basis(int d) {
    // The kernel of P+ is exactly its complement; eigenvalue 1 sorts last.
    const auto eig = eig_hermitian(maximally_entangled_projector(d));
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    return eig.vectors.leftCols(n - 1);
}

} // namespace qmaps
