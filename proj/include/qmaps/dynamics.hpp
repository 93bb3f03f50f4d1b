// dynamics.hpp — Markovian and non-Markovian evolutions inside the (alpha, beta) family
//
// Every schedule has the time-local form of build_generator with time-dependent
// kappa(t), nu(t); the resulting map is (1 - alpha - beta) id + alpha tau0 + beta Delta with
//   alpha(t) = 1 - A(t),  beta(t) = A(t) - B(t),
//   A(t) = exp(-d int kappa),  B(t) = exp(-int kappa (d - 1 + nu)).

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/generators.hpp"
#include "qmaps/kernels.hpp"
#include "qmaps/regions.hpp"

namespace qmaps {

namespace schedule {

struct ConstantNu {
    int d{2};
    double kappa{1.0};
    double nu{0.0};
    std::vector<double> h;   // optional diagonal Hamiltonian
};

// kappa = 1 and the nu(t) that keeps the map on the CP boundary.
struct OptimalENM {
    int d{2};
};

// OptimalENM until t_*, then nu = -1.
struct PDivisible {
    int d{2};
};

// OptimalENM until t_S, then nu = -d/(d+2).
struct SchwarzDivisible {
    int d{2};
};

// kappa(t) = d/(d - e^{dt}), nu(t) = 1 - e^{dt}; singular kappa at t1 = ln(d)/d.
struct ENM2 {
    int d{2};
};

// Uniform mixture of the d(d-1) Weyl semigroups exp(t L_kl), l > 0.
struct WeylMixture {
    int d{2};
};

} // namespace schedule

using Schedule = std::variant<schedule::ConstantNu, schedule::OptimalENM, schedule::PDivisible,
                              schedule::SchwarzDivisible, schedule::ENM2, schedule::WeylMixture>;

int schedule_dim(const Schedule& s);
std::string_view schedule_name(const Schedule& s);

// Builds a schedule from its CLI name: const, enm, pdiv, sdiv, enm2, weyl.
Schedule make_schedule(std::string_view name, int d, double kappa = 1.0, double nu = 0.0);

// nu(t) = -(d-1)(e^{dt} - 1)/(e^{dt} + d - 1)
double nu_enm(int d, double t);

// Closed-form int_0^t nu_enm = -ln((e^{(d-1)t} + (d-1) e^{-t}) / d)
double integrated_nu_enm(int d, double t);
// The same integral by adaptive quadrature.
double integrated_nu_enm_quadrature(int d, double t);

struct SwitchTimes {
    double t_star{0.0};   // +inf for d = 2
    double t_S{0.0};
};

SwitchTimes switch_times(int d);

// Time-local parameters. Throws BadInput for WeylMixture, whose kappa(t), nu(t)
// are only available through extract_time_local_generator.
double kappa_at(const Schedule& s, double t);
double nu_at(const Schedule& s, double t);

struct AlphaBeta {
    double alpha{0.0};
    double beta{0.0};
};

AlphaBeta alpha_beta_at(const Schedule& s, double t);

// alpha, beta from adaptive quadrature of kappa and kappa (d - 1 + nu); independent of
// the closed forms. Not available for ENM2 (singular kappa) or WeylMixture.
AlphaBeta alpha_beta_by_quadrature(const Schedule& s, double t);

// f(t) = (1/d) sum_r exp(t (omega^r - 1)); real up to rounding.
std::complex<double> weyl_f(int d, double t);

SuperMap map_at(const Schedule& s, double t);

// Analytic t -> infinity limit. Throws NoLimit when the schedule does not converge.
SuperMap asymptotic_map(const Schedule& s);

// exp(t L) of a constant generator.
SuperMap semigroup(const GenParams& p, double t);

// W_kl = Z^k X^l at index k*d + l, Z = sum_k omega^k E_kk, X|k> = |k+1 mod d>.
std::vector<ComplexMatrix> weyl_ops(int d);

SuperMap weyl_mixture_map(int d, double t);

struct CrossingReport {
    // Time after which the trajectory stays inside the region; nullopt when it is
    // still outside at the end of the scan (t = 50).
    std::optional<double> t_P;
    std::optional<double> t_CP;
    std::optional<double> t_EB;
    std::array<double, 3> final_margins{};   // region margins at t = 50
};

CrossingReport crossing_times(int d, double kappa, double nu);

enum class Boundary { P, CP, Schwarz };

Boundary parse_boundary(std::string_view name);

struct TangencySlope {
    double analytic{0.0};
    double finite_difference{0.0};
};

// d/dt at t = 0 of beta(t) + s alpha(t), where beta = -s alpha is the boundary's
// supporting line through the identity: s = 2/d (P), 1/d (CP), 2(d+1)/(d(d+2)) (Schwarz).
TangencySlope tangency_slope(int d, double kappa, double nu, Boundary boundary);

struct TimeLocalFit {
    SuperMap generator;
    double kappa_fit{0.0};
    double nu_fit{0.0};
    double residual{0.0};    // Frobenius mismatch to the two-parameter form
    double condition{0.0};   // condition number of the map's transfer matrix at t
};

using MapFunction = std::function<SuperMap(double)>;

// L_t = dPhi/dt Phi_t^{-1} by central differences, then a least-squares fit to
// kappa G1 + kappa nu G2. Throws SingularMap when Phi_t is not invertible.
TimeLocalFit extract_time_local_generator(const MapFunction& map_fn, double t, double dt = 1e-5);

enum class SchwarzFlag { In, Out, Unknown };

std::string_view to_string(SchwarzFlag f);

struct TrajectoryPoint {
    double t{0.0};
    double alpha{0.0};
    double beta{0.0};
    RegionVerdict verdict;
    SchwarzFlag schwarz_flag{SchwarzFlag::Unknown};   // In when CP, Out when not positive
    double min_choi_eig{0.0};
};

// steps + 1 equally spaced points on [0, t_max].
std::vector<TrajectoryPoint> trajectory(const Schedule& s, double t_max, int steps, Exec exec = Exec::Parallel);

} // namespace qmaps
