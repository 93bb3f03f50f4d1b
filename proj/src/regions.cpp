// regions.cpp

#include "qmaps/regions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qmaps/random.hpp"

namespace qmaps {

namespace {

using Point = std::array<double, 2>;

std::uint64_t point_seed(std::uint64_t seed, int d, double alpha, double beta) {
    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(d) * 0x9e3779b97f4a7c15ULL);
    h ^= std::bit_cast<std::uint64_t>(alpha) + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
    h ^= std::bit_cast<std::uint64_t>(beta) + 0x94d049bb133111ebULL + (h << 6) + (h >> 2);
    return h;
}

// Sutherland-Hodgman clip of a convex polygon against one half-plane.
std::vector<Point> clip(const std::vector<Point>& poly, const HalfPlane& hp) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        const double vc = hp.value(cur[0], cur[1]);
        const double vn = hp.value(nxt[0], nxt[1]);
        if (vc >= 0.0) {
            out.push_back(cur);
        }
        if ((vc >= 0.0) != (vn >= 0.0)) {
            const double s = vc / (vc - vn);
            out.push_back({cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])});
        }
    }
    return out;
}

std::vector<Point> dedupe(const std::vector<Point>& poly, double eps) {
    std::vector<Point> out;
    for (const Point& p : poly) {
        if (out.empty() || std::hypot(p[0] - out.back()[0], p[1] - out.back()[1]) > eps) {
            out.push_back(p);
        }
    }
    while (out.size() > 1 && std::hypot(out.front()[0] - out.back()[0], out.front()[1] - out.back()[1]) <= eps) {
        out.pop_back();
    }
    return out;
}

std::vector<ComplexVector> positivity_probes(int d) {
    std::vector<ComplexVector> probes;
    for (int i = 0; i < d; ++i) {
        ComplexVector e = ComplexVector::Zero(d);
        e(i) = 1.0;
        probes.push_back(e);
    }
    const double s2 = 1.0 / std::sqrt(2.0);
    for (int r = 0; r < d; ++r) {
        for (int s = r + 1; s < d; ++s) {
            for (const cplx phase : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
                ComplexVector v = ComplexVector::Zero(d);
                v(r) = s2;
                v(s) = s2 * phase;
                probes.push_back(v);
            }
        }
    }
    probes.push_back(ComplexVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
    return probes;
}

} // namespace

Region parse_region(std::string_view name) {
    if (name == "p" || name == "P" || name == "positive") return Region::P;
    if (name == "cp" || name == "CP") return Region::CP;
    if (name == "eb" || name == "EB") return Region::EB;
    throw Error(ErrorCode::UnknownName, "region '" + std::string(name) + "'");
}

std::string_view to_string(Region r) {
    switch (r) {
    case Region::P: return "P";
    case Region::CP: return "CP";
    case Region::EB: return "EB";
    }
    return "?";
}

bool RegionVerdict::member(Region r) const {
    switch (r) {
    case Region::P: return positive;
    case Region::CP: return completely_positive;
    case Region::EB: return entanglement_breaking;
    }
    return false;
}

double HalfPlane::distance(double alpha, double beta) const { return value(alpha, beta) / std::hypot(a, b); }

std::vector<HalfPlane> region_half_planes(Region r, int d) {
    check_dimension(d);
    const double dd = d;
    const double top = dd / (dd - 1.0);
    std::vector<HalfPlane> hp = {
        {1.0, 0.0, 0.0},    // alpha >= 0
        {-1.0, 0.0, top},   // alpha <= d/(d-1)
    };
    switch (r) {
    case Region::P:
        hp.push_back({2.0 / dd, 1.0, 0.0});    // beta >= -2 alpha / d
        hp.push_back({-1.0, -1.0, top});       // beta <= d/(d-1) - alpha
        break;
    case Region::CP:
        hp.push_back({1.0 / dd, 1.0, 0.0});                // beta >= -alpha / d
        hp.push_back({-(dd + 1.0) / dd, -1.0, top});       // beta <= d/(d-1) - (d+1) alpha / d
        break;
    case Region::EB:
        hp.push_back({1.0 / dd, 1.0, 0.0});                // beta >= -alpha / d
        hp.push_back({1.0 + 1.0 / dd, 1.0, -1.0});         // beta >= 1 - alpha - alpha / d
        hp.push_back({-(dd + 1.0) / dd, -1.0, top});       // beta <= d/(d-1) - (d+1) alpha / d
        hp.push_back({-1.0 + 1.0 / dd, -1.0, 1.0});        // beta <= 1 - alpha + alpha / d
        break;
    }
    return hp;
}

double region_margin(Region r, const MapParams& p) {
    double m = std::numeric_limits<double>::infinity();
    for (const HalfPlane& hp : region_half_planes(r, p.d)) {
        m = std::min(m, hp.distance(p.alpha, p.beta));
    }
    return m;
}

RegionVerdict classify_point(const MapParams& p, double tol) {
    RegionVerdict v;
    v.margins = {region_margin(Region::P, p), region_margin(Region::CP, p), region_margin(Region::EB, p)};
    v.positive = v.margins[0] >= -tol;
    v.completely_positive = v.margins[1] >= -tol;
    v.entanglement_breaking = v.margins[2] >= -tol;
    return v;
}

double sampled_positivity_margin(const SuperMap& m, std::size_t sample_budget, std::uint64_t seed) {
    const int d = m.dim();
    const std::vector<ComplexVector> probes = positivity_probes(d);
    double worst = std::numeric_limits<double>::infinity();
    const std::size_t total = probes.size() + sample_budget;
    for (std::size_t k = 0; k < total; ++k) {
        ComplexVector psi;
        if (k < probes.size()) {
            psi = probes[k];
        } else {
            auto rng = sample_engine(seed, Stream::PureStates, k);
            psi = haar_state(d, rng);
        }
        worst = std::min(worst, min_eig(m(psi * psi.adjoint()), 1e-9));
    }
    return worst;
}

RegionVerdict classify_numeric(const MapParams& p, const NumericOptions& opt) {
    const SuperMap m = build_phi_family(p);
    const ComplexMatrix& choi = m.choi();
    RegionVerdict v;
    const double choi_min = min_eig(choi);
    // PPT decides separability here only because this Choi family is
    // (1-p-q) P+ + p I + q D; it is not a general EB test.
    const double pt_min = min_eig(partial_transpose(choi, p.d, 2));
    v.margins[0] = sampled_positivity_margin(m, opt.sample_budget, opt.seed);
    v.margins[1] = choi_min;
    v.margins[2] = std::min(choi_min, pt_min);
    v.positive = v.margins[0] >= -opt.tol;
    v.completely_positive = v.margins[1] >= -opt.tol;
    v.entanglement_breaking = v.margins[2] >= -opt.tol;
    return v;
}

std::vector<std::array<double, 2>> named_vertices(Region which, int d) {
    check_dimension(d);
    const double dd = d;
    const double top = dd / (dd - 1.0);
    switch (which) {
    case Region::P:
        // id, P, R, Phi
        return {{0.0, 0.0}, {top, -2.0 / (dd - 1.0)}, {top, 0.0}, {0.0, top}};
    case Region::CP:
        return {{0.0, 0.0}, {top, -1.0 / (dd - 1.0)}, {0.0, top}};
    case Region::EB:
        // E4, E3, E2, E1
        return {{1.0, -1.0 / dd}, {top, -1.0 / (dd - 1.0)}, {dd / (2.0 * (dd - 1.0)), 0.5}, {0.0, 1.0}};
    }
    return {};
}

double shoelace_area(const std::vector<std::array<double, 2>>& v) {
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        twice += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * twice;
}

RegionPolygon region_polygon(Region which, int d) {
    std::vector<Point> poly = {{-10.0, -10.0}, {10.0, -10.0}, {10.0, 10.0}, {-10.0, 10.0}};
    for (const HalfPlane& hp : region_half_planes(which, d)) {
        poly = clip(poly, hp);
    }
    poly = dedupe(poly, 1e-12);
    if (poly.size() < 3 || shoelace_area(poly) <= 1e-14) {
        throw Error(ErrorCode::DegenerateRegion,
                    std::string(to_string(which)) + " region has no area at d=" + std::to_string(d));
    }
    // Start from the vertex with smallest alpha (then smallest beta) for a stable order.
    const auto first = std::min_element(poly.begin(), poly.end());
    std::rotate(poly.begin(), first, poly.end());
    return {which, d, std::move(poly)};
}

double closed_form_area(Region which, int d) {
    check_dimension(d);
    const double dd = d;
    switch (which) {
    case Region::P: return dd * (dd + 2.0) / (2.0 * (dd - 1.0) * (dd - 1.0));
    case Region::CP: return dd * dd / (2.0 * (dd - 1.0) * (dd - 1.0));
    // Shoelace of E4, E3, E2, E1. The often quoted (3d-2)/(2d(d-1)) agrees with it
    // only at d = 2.
    case Region::EB: return (3.0 * dd - 2.0) / (4.0 * (dd - 1.0) * (dd - 1.0));
    }
    return 0.0;
}

AreaReport region_area(Region which, int d) {
    return {closed_form_area(which, d), shoelace_area(region_polygon(which, d).vertices)};
}

std::vector<GridPoint> classify_grid(const GridSpec& spec, const NumericOptions& opt, Exec exec) {
    check_dimension(spec.d);
    const double hi = spec.hi != 0.0 ? spec.hi : spec.d / (spec.d - 1.0) + 0.2;
    const auto na = static_cast<std::size_t>(spec.n_alpha);
    const auto nb = static_cast<std::size_t>(spec.n_beta);
    auto coord = [&](std::size_t k, std::size_t n) {
        return n < 2 ? spec.lo : spec.lo + (hi - spec.lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    };
    std::vector<GridPoint> out(na * nb);
    map_indices(
        out.size(), out,
        [&](std::size_t k) {
            GridPoint g;
            g.alpha = coord(k / nb, na);
            g.beta = coord(k % nb, nb);
            const MapParams p{spec.d, g.alpha, g.beta};
            NumericOptions local = opt;
            local.seed = point_seed(opt.seed, spec.d, g.alpha, g.beta);
            g.closed = classify_point(p, opt.tol);
            g.numeric = classify_numeric(p, local);
            return g;
        },
        exec);
    return out;
}

Disagreement compare_verdicts(const RegionVerdict& closed, const RegionVerdict& numeric, double margin_filter) {
    Disagreement out;
    auto check = [&](Region r) {
        return std::abs(closed.margin(r)) > margin_filter && closed.member(r) != numeric.member(r);
    };
    out.positive = check(Region::P);
    out.cp = check(Region::CP);
    out.eb = check(Region::EB);
    return out;
}

double schwarz_defect(const SuperMap& m, const ComplexMatrix& x) {
    const ComplexMatrix mx = m(x);
    return min_eig(m(x.adjoint() * x) - mx.adjoint() * mx, 1e-9);
}

std::optional<SchwarzWitness> schwarz_falsify(const SuperMap& m, std::size_t sample_budget, std::uint64_t seed,
                                              Exec exec) {
    if (!m.is_unital()) {
        throw Error(ErrorCode::NotUnital, "the Schwarz inequality is tested on unital maps");
    }
    const int d = m.dim();
    constexpr std::size_t kWitnessCount = 101;
    auto sample_x = [&](std::size_t k) -> ComplexMatrix {
        if (k < kWitnessCount) {
            const double c = -5.0 + 10.0 * static_cast<double>(k) / (kWitnessCount - 1);
            ComplexMatrix x = ComplexMatrix::Zero(d, d);
            x(0, 0) = 1.0;
            x(0, 1) = -c;
            x(1, 0) = c;
            x(1, 1) = -1.0;
            return x;
        }
        auto rng = sample_engine(seed, Stream::Ginibre, k);
        const ComplexMatrix g = ginibre(d, rng);
        return g / g.norm();
    };
    const SampleMin best = argmin_samples(
        kWitnessCount + sample_budget, [&](std::size_t k) { return schwarz_defect(m, sample_x(k)); }, exec);
    if (best.value < -1e-8) {
        return SchwarzWitness{sample_x(best.index), best.value};
    }
    return std::nullopt;
}

std::vector<SchwarzScanPoint> schwarz_boundary_scan(int d, const std::vector<double>& alphas,
                                                    std::size_t sample_budget, std::uint64_t seed, int iterations) {
    std::vector<SchwarzScanPoint> out;
    for (double alpha : alphas) {
        auto violated = [&](double beta) {
            return schwarz_falsify(build_phi_family({d, alpha, beta}), sample_budget, seed).has_value();
        };
        double lo = -2.0 * alpha / d;   // positivity edge
        double hi = -alpha / d;         // CP edge, always Schwarz
        if (!violated(lo)) {
            out.push_back({alpha, lo});
            continue;
        }
        for (int it = 0; it < iterations; ++it) {
            const double mid = 0.5 * (lo + hi);
            (violated(mid) ? lo : hi) = mid;
        }
        out.push_back({alpha, hi});
    }
    return out;
}

} // namespace qmaps
