// channels.cpp — SuperMap plumbing and the named maps of the (alpha, beta) family

#include "qmaps/channels.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace qmaps {

namespace {

using MatrixFn = std::function<ComplexMatrix(const ComplexMatrix&)>;

// Transfer matrix by evaluating fn on every E_ij.
ComplexMatrix tabulate(int d, const MatrixFn& fn) {
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    ComplexMatrix t(n, n);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            t.col(i + j * d) = vec(fn(basis_unit(d, i, j)));
        }
    }
    return t;
}

ComplexMatrix trace_times_identity(const ComplexMatrix& x) {
    return x.trace() * ComplexMatrix::Identity(x.rows(), x.cols());
}

} // namespace

ComplexMatrix choi_from_transfer(const ComplexMatrix& transfer, int d) {
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    if (transfer.rows() != n || transfer.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "transfer matrix must be d^2 x d^2");
    }
    ComplexMatrix c(n, n);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    c(i * d + k, j * d + l) = transfer(k + l * d, i + j * d);
                }
            }
        }
    }
    return c;
}

ComplexMatrix transfer_from_choi(const ComplexMatrix& choi, int d) {
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    if (choi.rows() != n || choi.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "Choi matrix must be d^2 x d^2");
    }
    ComplexMatrix t(n, n);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    t(k + l * d, i + j * d) = choi(i * d + k, j * d + l);
                }
            }
        }
    }
    return t;
}

SuperMap SuperMap::from_transfer(int d, ComplexMatrix transfer) {
    check_dimension(d);
    SuperMap m;
    m.d_ = d;
    m.choi_ = choi_from_transfer(transfer, d);
    m.transfer_ = std::move(transfer);
    return m;
}

SuperMap SuperMap::from_choi(int d, const ComplexMatrix& choi) {
    return from_transfer(d, transfer_from_choi(choi, d));
}

ComplexMatrix SuperMap::operator()(const ComplexMatrix& x) const {
    if (x.rows() != d_ || x.cols() != d_) {
        throw Error(ErrorCode::DimensionMismatch, "input does not match map dimension");
    }
    return unvec(transfer_ * vec(x), d_);
}

bool SuperMap::is_trace_preserving(double tol) const {
    // Tr_out C = sum_ij E_ij Tr m(E_ij)
    ComplexMatrix reduced = ComplexMatrix::Zero(d_, d_);
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) {
            for (int k = 0; k < d_; ++k) {
                reduced(i, j) += choi_(i * d_ + k, j * d_ + k);
            }
        }
    }
    return (reduced - identity(d_)).cwiseAbs().maxCoeff() <= tol;
}

bool SuperMap::is_unital(double tol) const {
    const ComplexVector one = vec(identity(d_));
    return (transfer_ * one - one).cwiseAbs().maxCoeff() <= tol;
}

std::optional<std::string> validate_state(const QuantumState& s, double tol) {
    if (s.rho.rows() != s.d || s.rho.cols() != s.d) {
        return "rho is not d x d";
    }
    if (!is_hermitian(s.rho, tol)) {
        return "rho is not Hermitian";
    }
    if (std::abs(s.rho.trace() - cplx(1.0, 0.0)) > tol) {
        return "trace differs from 1";
    }
    if (min_eig(s.rho, tol) < -tol) {
        return "rho has a negative eigenvalue";
    }
    return std::nullopt;
}

ComplexMatrix dephase(const ComplexMatrix& x) {
    if (x.rows() != x.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "dephase expects a square matrix");
    }
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    out.diagonal() = x.diagonal();
    return out;
}

SuperMap identity_map(int d) {
    check_dimension(d);
    return SuperMap::from_transfer(d, identity(d * d));
}

SuperMap depolarizing_map(int d) {
    check_dimension(d);
    const ComplexVector one = vec(identity(d));
    return SuperMap::from_transfer(d, one * one.transpose() / static_cast<double>(d));
}

SuperMap dephasing_map(int d) {
    check_dimension(d);
    ComplexMatrix t = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        t(i + i * d, i + i * d) = 1.0;
    }
    return SuperMap::from_transfer(d, std::move(t));
}

SuperMap transposition_map(int d) {
    check_dimension(d);
    return SuperMap::from_transfer(d, tabulate(d, [](const ComplexMatrix& x) -> ComplexMatrix {
        return x.transpose();
    }));
}

SuperMap sandwich_map(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "sandwich_map expects square factors of equal size");
    }
    return SuperMap::from_transfer(static_cast<int>(a.rows()), kron(b.transpose(), a));
}

SuperMap conjugation_map(const ComplexMatrix& u) { return sandwich_map(u, u.adjoint()); }

SuperMap build_phi_family(const MapParams& p) {
    check_dimension(p.d);
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
        throw Error(ErrorCode::BadInput, "alpha and beta must be finite");
    }
    ComplexMatrix t = p.identity_weight() * identity(p.d * p.d);
    t += p.alpha * depolarizing_map(p.d).transfer();
    t += p.beta * dephasing_map(p.d).transfer();
    return SuperMap::from_transfer(p.d, std::move(t));
}

MapName parse_map_name(std::string_view name) {
    if (name == "Reduction" || name == "R") return MapName::Reduction;
    if (name == "Pinch2" || name == "P") return MapName::Pinch2;
    if (name == "PhiCP" || name == "Phi") return MapName::PhiCP;
    if (name == "E1") return MapName::E1;
    if (name == "E2") return MapName::E2;
    if (name == "E3") return MapName::E3;
    if (name == "E4") return MapName::E4;
    throw Error(ErrorCode::UnknownName, std::string(name));
}

std::string_view to_string(MapName name) {
    switch (name) {
    case MapName::Reduction: return "Reduction";
    case MapName::Pinch2: return "Pinch2";
    case MapName::PhiCP: return "PhiCP";
    case MapName::E1: return "E1";
    case MapName::E2: return "E2";
    case MapName::E3: return "E3";
    case MapName::E4: return "E4";
    }
    return "?";
}

NamedMap named_map(MapName name, int d) {
    check_dimension(d);
    const double dd = d;
    const double inv = 1.0 / (dd - 1.0);
    MatrixFn fn;
    MapParams params{d, 0.0, 0.0};
    switch (name) {
    case MapName::Reduction:
        fn = [inv](const ComplexMatrix& x) -> ComplexMatrix { return inv * (trace_times_identity(x) - x); };
        params = {d, dd * inv, 0.0};
        break;
    case MapName::Pinch2:
        fn = [inv](const ComplexMatrix& x) -> ComplexMatrix {
            return inv * (trace_times_identity(x) + x - 2.0 * dephase(x));
        };
        params = {d, dd * inv, -2.0 * inv};
        break;
    case MapName::PhiCP:
        fn = [inv, dd](const ComplexMatrix& x) -> ComplexMatrix { return inv * (dd * dephase(x) - x); };
        params = {d, 0.0, dd * inv};
        break;
    case MapName::E1:
        fn = [](const ComplexMatrix& x) -> ComplexMatrix { return dephase(x); };
        params = {d, 0.0, 1.0};
        break;
    case MapName::E2:
        fn = [inv](const ComplexMatrix& x) -> ComplexMatrix {
            return 0.5 * (inv * trace_times_identity(x) + dephase(x) - inv * x);
        };
        params = {d, 0.5 * dd * inv, 0.5};
        break;
    case MapName::E3:
        fn = [inv](const ComplexMatrix& x) -> ComplexMatrix { return inv * (trace_times_identity(x) - dephase(x)); };
        params = {d, dd * inv, -inv};
        break;
    case MapName::E4:
        fn = [dd](const ComplexMatrix& x) -> ComplexMatrix {
            return (x + trace_times_identity(x) - dephase(x)) / dd;
        };
        params = {d, 1.0, -1.0 / dd};
        break;
    }
    return {SuperMap::from_transfer(d, tabulate(d, fn)), params};
}

const ComplexMatrix& choi_of(const SuperMap& m) { return m.choi(); }

SuperMap hs_adjoint(const SuperMap& m) { return SuperMap::from_transfer(m.dim(), m.transfer().adjoint()); }

QuantumState apply(const SuperMap& m, const QuantumState& s) {
    if (s.d != m.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state and map dimensions differ");
    }
    return {s.d, m(s.rho)};
}

SuperMap compose(const SuperMap& outer, const SuperMap& inner) {
    if (outer.dim() != inner.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "compose of maps with different dimensions");
    }
    return SuperMap::from_transfer(outer.dim(), outer.transfer() * inner.transfer());
}

SuperMap mix(std::span<const double> weights, std::span<const SuperMap> maps) {
    if (weights.size() != maps.size() || maps.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "weights and maps must have equal, nonzero length");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorCode::BadWeights, "negative weight");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorCode::BadWeights, "weights sum to " + std::to_string(total));
    }
    const int d = maps.front().dim();
    ComplexMatrix t = ComplexMatrix::Zero(d * d, d * d);
    for (std::size_t k = 0; k < maps.size(); ++k) {
        if (maps[k].dim() != d) {
            throw Error(ErrorCode::DimensionMismatch, "mix of maps with different dimensions");
        }
        t += weights[k] * maps[k].transfer();
    }
    return SuperMap::from_transfer(d, std::move(t));
}

FamilyFit family_coordinates(const SuperMap& m) {
    const int d = m.dim();
    const ComplexMatrix id = identity(d * d);
    const ComplexMatrix u = depolarizing_map(d).transfer() - id;
    const ComplexMatrix v = dephasing_map(d).transfer() - id;
    const ComplexMatrix r = m.transfer() - id;

    // Real normal equations for r ~ alpha u + beta v.
    auto dot = [](const ComplexMatrix& a, const ComplexMatrix& b) { return (a.array().conjugate() * b.array()).sum().real(); };
    Eigen::Matrix2d g;
    g << dot(u, u), dot(u, v), dot(v, u), dot(v, v);
    const Eigen::Vector2d rhs(dot(u, r), dot(v, r));
    const Eigen::Vector2d coef = g.ldlt().solve(rhs);

    FamilyFit fit;
    fit.alpha = coef(0);
    fit.beta = coef(1);
    fit.residual = (r - fit.alpha * u - fit.beta * v).norm();
    return fit;
}

} // namespace qmaps
