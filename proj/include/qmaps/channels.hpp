// channels.hpp — Linear maps on M_d: the (alpha, beta) family, named maps, Choi matrices

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmaps/linalg.hpp"

namespace qmaps {

// Point of the family (1 - alpha - beta) id + alpha tau0 + beta Delta.
struct MapParams {
    int d{2};
    double alpha{0.0};
    double beta{0.0};

    double identity_weight() const { return 1.0 - alpha - beta; }
};

// A linear map on d x d matrices stored as its d^2 x d^2 transfer matrix
// (column-stacking) together with its unnormalized Choi matrix
// C = sum_ij E_ij (x) m(E_ij).
class SuperMap {
public:
    SuperMap() = default;

    static SuperMap from_transfer(int d, ComplexMatrix transfer);
    static SuperMap from_choi(int d, const ComplexMatrix& choi);

    int dim() const { return d_; }
    const ComplexMatrix& transfer() const { return transfer_; }
    const ComplexMatrix& choi() const { return choi_; }

    ComplexMatrix operator()(const ComplexMatrix& x) const;

    // Partial trace of the Choi matrix over the output factor equals I_d.
    bool is_trace_preserving(double tol = 1e-10) const;
    bool is_unital(double tol = 1e-10) const;

private:
    int d_{0};
    ComplexMatrix transfer_;
    ComplexMatrix choi_;
};

// Reshuffling between transfer and Choi matrices; each is the other's inverse.
ComplexMatrix choi_from_transfer(const ComplexMatrix& transfer, int d);
ComplexMatrix transfer_from_choi(const ComplexMatrix& choi, int d);

struct QuantumState {
    int d{2};
    ComplexMatrix rho;
};

// Returns the reason the state is invalid, or nullopt for a valid density matrix
// (Hermitian, unit trace and min eigenvalue >= -tol).
std::optional<std::string> validate_state(const QuantumState& s, double tol = 1e-10);

ComplexMatrix dephase(const ComplexMatrix& x);

SuperMap identity_map(int d);
SuperMap depolarizing_map(int d);   // tau0(X) = I Tr X / d
SuperMap dephasing_map(int d);      // Delta
SuperMap transposition_map(int d);
// X -> A X B
SuperMap sandwich_map(const ComplexMatrix& a, const ComplexMatrix& b);
// X -> U X U^dagger
SuperMap conjugation_map(const ComplexMatrix& u);

SuperMap build_phi_family(const MapParams& p);

enum class MapName { Reduction, Pinch2, PhiCP, E1, E2, E3, E4 };

MapName parse_map_name(std::string_view name);
std::string_view to_string(MapName name);

struct NamedMap {
    SuperMap map;
    MapParams params;
};

// Named maps of the family together with their (alpha, beta) coordinates.
// The map itself is built from its defining formula, not from the coordinates.
NamedMap named_map(MapName name, int d);

const ComplexMatrix& choi_of(const SuperMap& m);

SuperMap hs_adjoint(const SuperMap& m);

QuantumState apply(const SuperMap& m, const QuantumState& s);
// outer o inner
SuperMap compose(const SuperMap& outer, const SuperMap& inner);
SuperMap mix(std::span<const double> weights, std::span<const SuperMap> maps);

struct FamilyFit {
    double alpha{0.0};
    double beta{0.0};
    double residual{0.0};   // Frobenius distance of the transfer to the fitted family member
};

// Least-squares coordinates of m in span{id, tau0, Delta}.
FamilyFit family_coordinates(const SuperMap& m);

} // namespace qmaps
