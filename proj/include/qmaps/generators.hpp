// generators.hpp — Qudit dephasing/depolarizing generator, its spectrum, and the
// generator-level positivity tests with their numerical oracles

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/kernels.hpp"

namespace qmaps {

// L(rho) = -i[H, rho] + kappa [ (sum_{i!=j} E_ij rho E_ji - (d-1) rho)
//                              + (nu/d) (sum_{k=1}^{d-1} Z^k rho Z^{*k} - (d-1) rho) ]
// with H = diag(h).
struct GenParams {
    int d{2};
    double kappa{1.0};
    double nu{0.0};
    std::vector<double> h;   // empty means H = 0

    // Weight of the pinching inside the unital map Psi_a = I Tr - a Delta.
    double a() const { return 1.0 - nu; }
};

// Z = sum_{l=1}^{d} exp(2 pi i l / d) E_ll
ComplexMatrix clock_matrix(int d);

SuperMap build_generator(const GenParams& p);

// Transfer matrices G1, G2 with L = kappa G1 + kappa nu G2 when H = 0.
struct DissipatorBasis {
    ComplexMatrix hopping;   // sum_{i!=j} E_ij . E_ji - (d-1) id
    ComplexMatrix dephasing; // (1/d) (sum_k Z^k . Z^{*k} - (d-1) id)
};
DissipatorBasis dissipator_basis(int d);

// Closed-form thresholds on nu.
inline double positive_threshold() { return -1.0; }
inline double schwarz_threshold(int d) { return -static_cast<double>(d) / (d + 2.0); }
inline double cp_threshold() { return 0.0; }

enum class PositivityClass { Positive, Schwarz, KPositive };

PositivityClass parse_positivity_class(std::string_view name);
std::string_view to_string(PositivityClass c);

// Constant c_d of the bound Gamma_max <= c_d Gamma for each semigroup class.
double rate_bound_constant(PositivityClass c, int d);

struct RateReport {
    double gamma_diag{0.0};       // kappa d, multiplicity d-1
    double gamma_offdiag{0.0};    // kappa (d-1+nu), multiplicity d(d-1)
    double gamma_total{0.0};
    double gamma_max{0.0};
    double c_d{0.0};
    bool bound_satisfied{false};
    bool bound_saturated{false};
    // max over eigenvalues of |numeric - closed form| for the transfer of L
    double spectrum_deviation{0.0};
};

RateReport spectrum_rates(const GenParams& p, PositivityClass cls);

// Closed-form eigenvalues of L as a multiset, unsorted.
std::vector<cplx> closed_form_spectrum(const GenParams& p);
// Max distance between the closed-form multiset and the numerical eigenvalues
// (greedy nearest matching).
double spectrum_mismatch(const std::vector<cplx>& expected, const ComplexVector& numeric);

struct ConditionalPositivity {
    bool closed_form{false};
    double sampled_min{0.0};   // min of <y| L(|x><x|) |y> over sampled orthonormal pairs
};

// Samples are drawn from three families: deterministic two-level probes,
// Haar pairs on random coordinate planes, and Haar pairs on all of C^d.
ConditionalPositivity is_conditionally_positive(const GenParams& p, std::size_t sample_budget,
                                                std::uint64_t seed = 42, Exec exec = Exec::Parallel);

struct ConditionalCompletePositivity {
    bool closed_form{false};
    double min_eig_projected{0.0};
};

ConditionalCompletePositivity is_ccp(const GenParams& p);

// M(a, X) = Tr(X^dag X) I + (d-a) X^dag X - a Delta(X^dag X) + a (Delta(X^dag) X + X^dag Delta(X))
ComplexMatrix dissipativity_matrix(int d, double a, const ComplexMatrix& x);

// L^dag(X^dag X) - L^dag(X^dag) X - X^dag L^dag(X), evaluated from the generator's transfer matrix.
ComplexMatrix dissipation_function(const SuperMap& generator, const ComplexMatrix& x);

// [[1, -c], [c, -1]] (+) 0_{d-2}
ComplexMatrix dissipativity_witness(int d, double c);

// min_eig M(a, witness(c)) at c = d / (d + 2 - 2a), or the minimum over
// c in {10, 100} when d + 2 - 2a <= 0.
double witness_min_eig(int d, double a);

struct Dissipativity {
    bool closed_form{false};
    double min_witness_eig{0.0};
    double min_sampled_eig{0.0};
};

// Sampled values are min_eig of the dissipation function of the actual
// generator divided by kappa, over random traceless unit-norm X.
Dissipativity is_dissipative(const GenParams& p, std::size_t sample_budget, std::uint64_t seed = 42,
                             Exec exec = Exec::Parallel);

// sum_i |x_i|^2 |y_i|^2 for orthonormal x, y.
double lemma1_value(const ComplexVector& x, const ComplexVector& y);

// Largest lemma1_value over `count` Haar-random orthonormal pairs.
double lemma1_sampled_max(int d, std::size_t count, std::uint64_t seed, Exec exec = Exec::Parallel);

} // namespace qmaps
