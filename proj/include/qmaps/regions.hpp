// regions.hpp — Positive / CP / EB regions of the (alpha, beta) family: closed-form
// membership, polygons and areas, and independent numerical oracles

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qmaps/channels.hpp"
#include "qmaps/kernels.hpp"

namespace qmaps {

enum class Region { P, CP, EB };

Region parse_region(std::string_view name);
std::string_view to_string(Region r);

struct RegionVerdict {
    bool positive{false};
    bool completely_positive{false};
    bool entanglement_breaking{false};
    // Signed slack of the binding condition per region (P, CP, EB); >= 0 inside.
    std::array<double, 3> margins{};

    double margin(Region r) const { return margins[static_cast<std::size_t>(r)]; }
    bool member(Region r) const;
};

// Half-plane a*alpha + b*beta + c >= 0.
struct HalfPlane {
    double a{0.0};
    double b{0.0};
    double c{0.0};

    double value(double alpha, double beta) const { return a * alpha + b * beta + c; }
    // Signed Euclidean distance to the boundary line.
    double distance(double alpha, double beta) const;
};

std::vector<HalfPlane> region_half_planes(Region r, int d);

// Signed distance of the most violated (or tightest) inequality of the region.
double region_margin(Region r, const MapParams& p);

// Membership holds when the margin is >= -tol.
RegionVerdict classify_point(const MapParams& p, double tol = kPsdTolerance);

struct NumericOptions {
    std::size_t sample_budget{256};   // random pure states on top of the fixed probes
    std::uint64_t seed{42};
    double tol{kPsdTolerance};
};

// Oracle verdict: CP from Choi eigenvalues, EB from Choi + partial transpose
// (exact for this family only), positivity by sampling pure inputs (falsifier).
// Margins are min eigenvalues: sampled output, Choi, min(Choi, PT(Choi)).
RegionVerdict classify_numeric(const MapParams& p, const NumericOptions& opt = {});

// min over probe and sampled pure states of min_eig(m(|psi><psi|)).
double sampled_positivity_margin(const SuperMap& m, std::size_t sample_budget, std::uint64_t seed);

struct RegionPolygon {
    Region which{Region::P};
    int d{2};
    std::vector<std::array<double, 2>> vertices;   // counterclockwise, not closed
};

// Intersection of the region's half-planes. Throws DegenerateRegion when the
// result has no area.
RegionPolygon region_polygon(Region which, int d);

// Extreme points named for each region (id, Phi, R, P / E1..E4 / the CP triangle).
std::vector<std::array<double, 2>> named_vertices(Region which, int d);

double shoelace_area(const std::vector<std::array<double, 2>>& vertices);

struct AreaReport {
    double closed_form{0.0};
    double shoelace{0.0};
};

double closed_form_area(Region which, int d);
AreaReport region_area(Region which, int d);

struct GridPoint {
    double alpha{0.0};
    double beta{0.0};
    RegionVerdict closed;
    RegionVerdict numeric;
};

struct GridSpec {
    int d{3};
    int n_alpha{101};
    int n_beta{101};
    double lo{-0.2};
    double hi{0.0};   // 0 means d/(d-1) + 0.2
};

// Row-major over (alpha, beta). Each point's seed derives from its coordinates.
std::vector<GridPoint> classify_grid(const GridSpec& spec, const NumericOptions& opt, Exec exec = Exec::Parallel);

// Properties where closed form and oracle disagree although |closed margin| > filter.
struct Disagreement {
    bool positive{false};
    bool cp{false};
    bool eb{false};
    bool any() const { return positive || cp || eb; }
};
Disagreement compare_verdicts(const RegionVerdict& closed, const RegionVerdict& numeric, double margin_filter = 1e-6);

struct SchwarzWitness {
    ComplexMatrix x;
    double defect{0.0};   // min_eig(m(X^dag X) - m(X)^dag m(X))
};

double schwarz_defect(const SuperMap& m, const ComplexMatrix& x);

// Searches for X violating m(X^dag X) >= m(X)^dag m(X) among the witness
// family [[1,-c],[c,-1]] (+) 0 for c in [-5, 5] and random Ginibre matrices.
// Returns nullopt when nothing below -1e-8 is found; that is not a proof.
std::optional<SchwarzWitness> schwarz_falsify(const SuperMap& m, std::size_t sample_budget, std::uint64_t seed = 42,
                                              Exec exec = Exec::Parallel);

struct SchwarzScanPoint {
    double alpha{0.0};
    double beta{0.0};   // empirical lower edge: smallest beta with no witness found
};

// Empirical only: per alpha, bisection on beta in [-2 alpha/d, -alpha/d] using
// schwarz_falsify as the oracle.
std::vector<SchwarzScanPoint> schwarz_boundary_scan(int d, const std::vector<double>& alphas,
                                                    std::size_t sample_budget, std::uint64_t seed = 42,
                                                    int iterations = 30);

} // namespace qmaps
