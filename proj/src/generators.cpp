// generators.cpp

#include "qmaps/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmaps/random.hpp"

namespace qmaps {

namespace {

void require_positive_kappa(const GenParams& p) {
    if (!(p.kappa > 0.0)) {
        throw Error(ErrorCode::NegativeRate, "kappa must be positive, got " + std::to_string(p.kappa));
    }
}

ComplexMatrix hamiltonian(const GenParams& p) {
    ComplexMatrix h = ComplexMatrix::Zero(p.d, p.d);
    if (p.h.empty()) {
        return h;
    }
    if (static_cast<int>(p.h.size()) != p.d) {
        throw Error(ErrorCode::DimensionMismatch, "h must have d entries");
    }
    for (int k = 0; k < p.d; ++k) {
        h(k, k) = p.h[static_cast<std::size_t>(k)];
    }
    return h;
}

} // namespace

ComplexMatrix clock_matrix(int d) {
    check_dimension(d);
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (int l = 1; l <= d; ++l) {
        z(l - 1, l - 1) = std::polar(1.0, 2.0 * std::numbers::pi * l / d);
    }
    return z;
}

DissipatorBasis dissipator_basis(int d) {
    check_dimension(d);
    const int n = d * d;
    const ComplexMatrix id = identity(n);
    DissipatorBasis basis;

    basis.hopping = -static_cast<double>(d - 1) * id;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i != j) {
                // X -> E_ij X E_ji has transfer kron(E_ji^T, E_ij) = kron(E_ij, E_ij)
                const ComplexMatrix e = basis_unit(d, i, j);
                basis.hopping += kron(e, e);
            }
        }
    }

    const ComplexMatrix z = clock_matrix(d);
    ComplexMatrix zk = identity(d);
    basis.dephasing = -static_cast<double>(d - 1) * id;
    for (int k = 1; k < d; ++k) {
        zk = zk * z;
        // X -> Z^k X Z^{*k}: B = conj(Z^k), B^T = conj(Z^k) for diagonal Z
        basis.dephasing += kron(zk.conjugate(), zk);
    }
    basis.dephasing /= static_cast<double>(d);
    return basis;
}

SuperMap build_generator(const GenParams& p) {
    check_dimension(p.d);
    const ComplexMatrix h = hamiltonian(p);
    const ComplexMatrix id = identity(p.d);
    const cplx i_unit(0.0, 1.0);
    // -i[H, X] = -i H X + i X H
    ComplexMatrix t = -i_unit * kron(id, h) + i_unit * kron(h.transpose(), id);
    const DissipatorBasis basis = dissipator_basis(p.d);
    t += p.kappa * (basis.hopping + p.nu * basis.dephasing);
    return SuperMap::from_transfer(p.d, std::move(t));
}

PositivityClass parse_positivity_class(std::string_view name) {
    if (name == "positive" || name == "pos" || name == "Positive") return PositivityClass::Positive;
    if (name == "schwarz" || name == "Schwarz") return PositivityClass::Schwarz;
    if (name == "kpos" || name == "kpositive" || name == "KPositive") return PositivityClass::KPositive;
    throw Error(ErrorCode::UnknownName, "positivity class '" + std::string(name) + "'");
}

std::string_view to_string(PositivityClass c) {
    switch (c) {
    case PositivityClass::Positive: return "positive";
    case PositivityClass::Schwarz: return "schwarz";
    case PositivityClass::KPositive: return "kpos";
    }
    return "?";
}

double rate_bound_constant(PositivityClass c, int d) {
    switch (c) {
    case PositivityClass::Positive: return 1.0;
    case PositivityClass::Schwarz: return 2.0 / (d + 1.0);
    case PositivityClass::KPositive: return 1.0 / d;
    }
    return 1.0;
}

std::vector<cplx> closed_form_spectrum(const GenParams& p) {
    check_dimension(p.d);
    const int d = p.d;
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(d) * d);
    out.emplace_back(0.0, 0.0);
    for (int l = 1; l < d; ++l) {
        out.emplace_back(-p.kappa * d, 0.0);
    }
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            if (k == l) {
                continue;
            }
            const double hk = p.h.empty() ? 0.0 : p.h[static_cast<std::size_t>(k)];
            const double hl = p.h.empty() ? 0.0 : p.h[static_cast<std::size_t>(l)];
            out.emplace_back(-p.kappa * (d - 1 + p.nu), -(hk - hl));
        }
    }
    return out;
}

double spectrum_mismatch(const std::vector<cplx>& expected, const ComplexVector& numeric) {
    if (static_cast<Eigen::Index>(expected.size()) != numeric.size()) {
        throw Error(ErrorCode::DimensionMismatch, "spectra of different sizes");
    }
    std::vector<bool> used(expected.size(), false);
    double worst = 0.0;
    for (const cplx& e : expected) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t k = 0; k < used.size(); ++k) {
            if (!used[k]) {
                const double dist = std::abs(numeric(static_cast<Eigen::Index>(k)) - e);
                if (dist < best) {
                    best = dist;
                    best_idx = k;
                }
            }
        }
        used[best_idx] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

RateReport spectrum_rates(const GenParams& p, PositivityClass cls) {
    check_dimension(p.d);
    const double d = p.d;
    if (p.kappa < 0.0 || d - 1.0 + p.nu < 0.0) {
        throw Error(ErrorCode::NegativeRate, "rates require kappa >= 0 and d - 1 + nu >= 0");
    }
    RateReport r;
    r.gamma_diag = p.kappa * d;
    r.gamma_offdiag = p.kappa * (d - 1.0 + p.nu);
    r.gamma_total = p.kappa * d * (d - 1.0) * (d + p.nu);
    r.gamma_max = std::max(r.gamma_diag, r.gamma_offdiag);
    r.c_d = rate_bound_constant(cls, p.d);
    const double rhs = r.c_d * r.gamma_total;
    const double scale = std::max(1.0, std::abs(rhs));
    r.bound_satisfied = r.gamma_max <= rhs + 1e-12 * scale;
    r.bound_saturated = std::abs(r.gamma_max - rhs) <= 1e-12 * scale;
    r.spectrum_deviation = spectrum_mismatch(closed_form_spectrum(p), eig_general(build_generator(p).transfer()));
    return r;
}

ConditionalPositivity is_conditionally_positive(const GenParams& p, std::size_t sample_budget, std::uint64_t seed,
                                                Exec exec) {
    require_positive_kappa(p);
    const int d = p.d;
    const SuperMap gen = build_generator(p);
    const ComplexMatrix& t = gen.transfer();

    // Deterministic probes: (e_r +- e^{i phi} e_s)/sqrt2 for every plane and phi in {0, pi/2}.
    std::vector<std::pair<ComplexVector, ComplexVector>> probes;
    const double s2 = 1.0 / std::sqrt(2.0);
    for (int r = 0; r < d; ++r) {
        for (int s = r + 1; s < d; ++s) {
            for (const cplx phase : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
                ComplexVector x = ComplexVector::Zero(d);
                ComplexVector y = ComplexVector::Zero(d);
                x(r) = s2;
                x(s) = s2 * phase;
                y(r) = s2;
                y(s) = -s2 * phase;
                probes.emplace_back(std::move(x), std::move(y));
            }
        }
    }

    auto value = [&](std::size_t k) {
        std::pair<ComplexVector, ComplexVector> xy;
        if (k < probes.size()) {
            xy = probes[k];
        } else {
            auto rng = sample_engine(seed, Stream::OrthonormalPairs, k);
            xy = (k % 2 == 0) ? two_level_pair(d, rng) : orthonormal_pair(d, rng);
        }
        const auto& [x, y] = xy;
        const ComplexVector lx = t * vec(x * x.adjoint());
        return (y.adjoint() * unvec(lx, d) * y)(0).real();
    };

    ConditionalPositivity out;
    out.closed_form = p.nu >= positive_threshold();
    out.sampled_min = argmin_samples(std::max(sample_budget, probes.size()), value, exec).value;
    return out;
}

ConditionalCompletePositivity is_ccp(const GenParams& p) {
    require_positive_kappa(p);
    const ComplexMatrix q = entangled_complement_basis(p.d);
    const ComplexMatrix projected = q.adjoint() * build_generator(p).choi() * q;
    return {p.nu >= cp_threshold(), min_eig(projected)};
}

ComplexMatrix dissipativity_matrix(int d, double a, const ComplexMatrix& x) {
    check_dimension(d);
    if (x.rows() != d || x.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "X must be d x d");
    }
    if (std::abs(x.trace()) > 1e-10 * x.norm()) {
        throw Error(ErrorCode::NotTraceless, "Tr X = " + std::to_string(std::abs(x.trace())));
    }
    const ComplexMatrix xx = x.adjoint() * x;
    const ComplexMatrix dx = dephase(x);
    ComplexMatrix m = xx.trace().real() * identity(d);
    m += (d - a) * xx;
    m -= a * dephase(xx);
    m += a * (dx.adjoint() * x + x.adjoint() * dx);
    return m;
}

ComplexMatrix dissipation_function(const SuperMap& generator, const ComplexMatrix& x) {
    const int d = generator.dim();
    const ComplexMatrix adj = generator.transfer().adjoint();
    auto ladj = [&](const ComplexMatrix& y) { return unvec(adj * vec(y), d); };
    const ComplexMatrix xd = x.adjoint();
    return ladj(xd * x) - ladj(xd) * x - xd * ladj(x);
}

ComplexMatrix dissipativity_witness(int d, double c) {
    check_dimension(d);
    ComplexMatrix x = ComplexMatrix::Zero(d, d);
    x(0, 0) = 1.0;
    x(0, 1) = -c;
    x(1, 0) = c;
    x(1, 1) = -1.0;
    return x;
}

double witness_min_eig(int d, double a) {
    const double denom = d + 2.0 - 2.0 * a;
    if (denom > 0.0) {
        return min_eig(dissipativity_matrix(d, a, dissipativity_witness(d, d / denom)));
    }
    double worst = std::numeric_limits<double>::infinity();
    for (double c : {10.0, 100.0}) {
        worst = std::min(worst, min_eig(dissipativity_matrix(d, a, dissipativity_witness(d, c))));
    }
    return worst;
}

Dissipativity is_dissipative(const GenParams& p, std::size_t sample_budget, std::uint64_t seed, Exec exec) {
    require_positive_kappa(p);
    const int d = p.d;
    const SuperMap gen = build_generator(p);
    const ComplexMatrix adj = gen.transfer().adjoint();

    auto value = [&](std::size_t k) {
        auto rng = sample_engine(seed, Stream::TracelessX, k);
        const ComplexMatrix x = random_traceless(d, rng);
        const ComplexMatrix xd = x.adjoint();
        auto ladj = [&](const ComplexMatrix& y) { return unvec(adj * vec(y), d); };
        const ComplexMatrix dis = ladj(xd * x) - ladj(xd) * x - xd * ladj(x);
        return min_eig(dis / p.kappa, 1e-9);
    };

    Dissipativity out;
    out.closed_form = p.nu >= schwarz_threshold(d);
    out.min_witness_eig = witness_min_eig(d, p.a());
    out.min_sampled_eig = argmin_samples(sample_budget, value, exec).value;
    return out;
}

double lemma1_value(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::DimensionMismatch, "x and y differ in length");
    }
    if (std::abs(x.norm() - 1.0) > 1e-10 || std::abs(y.norm() - 1.0) > 1e-10 || std::abs(x.dot(y)) > 1e-10) {
        throw Error(ErrorCode::NotOrthonormal, "x, y must be orthonormal");
    }
    return (x.cwiseAbs2().array() * y.cwiseAbs2().array()).sum();
}

double lemma1_sampled_max(int d, std::size_t count, std::uint64_t seed, Exec exec) {
    check_dimension(d);
    auto negated = [&](std::size_t k) {
        auto rng = sample_engine(seed, Stream::Lemma1, k);
        const auto [x, y] = orthonormal_pair(d, rng);
        return -lemma1_value(x, y);
    };
    return -argmin_samples(count, negated, exec).value;
}

} // namespace qmaps
