#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmaps/dynamics.hpp"
#include "qmaps/regions.hpp"

using namespace qmaps;

TEST_CASE("classification of named points") {
    for (int d = 2; d <= 5; ++d) {
        const RegionVerdict id = classify_point({d, 0.0, 0.0});
        CHECK(id.positive);
        CHECK(id.completely_positive);
        CHECK(!id.entanglement_breaking);
    }
    const RegionVerdict r = classify_point({3, 1.5, 0.0});
    CHECK(r.positive);
    CHECK(!r.completely_positive);

    const RegionVerdict e4 = classify_point({3, 1.0, -1.0 / 3.0});
    CHECK(e4.entanglement_breaking);
    // E4 lies on both lower EB edges: beta = -alpha/d and beta = 1 - alpha - alpha/d.
    int tight = 0;
    for (const HalfPlane& hp : region_half_planes(Region::EB, 3)) {
        tight += std::abs(hp.value(1.0, -1.0 / 3.0)) <= 1e-15 ? 1 : 0;
    }
    CHECK(tight == 2);
    CHECK(e4.margin(Region::EB) == doctest::Approx(0.0).epsilon(1e-15));

    CHECK(!classify_point({3, -0.1, 0.0}).positive);
}

TEST_CASE("oracle verdicts at named points") {
    for (int d = 2; d <= 5; ++d) {
        const double dd = d;
        const RegionVerdict e3 = classify_numeric({d, dd / (dd - 1.0), -1.0 / (dd - 1.0)});
        CHECK(e3.completely_positive);
        CHECK(e3.entanglement_breaking);
    }
    const SuperMap phi_cp = build_phi_family({3, 0.0, 1.5});
    CHECK(min_eig(phi_cp.choi()) >= -1e-12);
    CHECK(min_eig(partial_transpose(phi_cp.choi(), 3, 2)) < -0.1);

    // Lower P boundary at (3/2, -1): sampled positivity margin is zero.
    const RegionVerdict edge = classify_numeric({3, 1.5, -1.0}, {10000, 42, 1e-9});
    CHECK(std::abs(edge.margin(Region::P)) <= 1e-12);
    CHECK(edge.positive);
}

TEST_CASE("numeric oracle matches closed form away from boundaries") {
    for (int d = 2; d <= 4; ++d) {
        for (double a = -0.15; a <= 1.7; a += 0.1) {
            for (double b = -1.1; b <= 1.7; b += 0.1) {
                const MapParams p{d, a, b};
                CHECK(!compare_verdicts(classify_point(p), classify_numeric(p)).any());
            }
        }
    }
}

TEST_CASE("polygons") {
    const RegionPolygon eb3 = region_polygon(Region::EB, 3);
    REQUIRE(eb3.vertices.size() == 4);
    const std::array<std::array<double, 2>, 4> expected = {{{0.0, 1.0}, {1.0, -1.0 / 3.0}, {1.5, -0.5}, {0.75, 0.5}}};
    for (const auto& v : expected) {
        bool found = false;
        for (const auto& w : eb3.vertices) {
            found = found || (std::abs(v[0] - w[0]) <= 1e-12 && std::abs(v[1] - w[1]) <= 1e-12);
        }
        CHECK(found);
    }
    for (int d = 2; d <= 8; ++d) {
        for (Region r : {Region::P, Region::CP, Region::EB}) {
            const RegionPolygon poly = region_polygon(r, d);
            CHECK(shoelace_area(poly.vertices) > 0.0);   // counterclockwise
            // convex: every turn is a left turn
            const auto& v = poly.vertices;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const auto& a = v[i];
                const auto& b = v[(i + 1) % v.size()];
                const auto& c = v[(i + 2) % v.size()];
                CHECK((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) > 0.0);
            }
            // the polygon and the named extreme points coincide
            const auto named = named_vertices(r, d);
            CHECK(named.size() == v.size());
            CHECK(std::abs(shoelace_area(named) - shoelace_area(v)) <= 1e-12);
        }
        // named EB vertices are extreme points of the closed-form region
        for (const auto& v : named_vertices(Region::EB, d)) {
            const RegionVerdict verdict = classify_point({d, v[0], v[1]});
            CHECK(verdict.entanglement_breaking);
            int tight = 0;
            for (const HalfPlane& hp : region_half_planes(Region::EB, d)) {
                tight += std::abs(hp.value(v[0], v[1])) <= 1e-12 ? 1 : 0;
            }
            CHECK(tight >= 2);
        }
    }
    const auto p3 = named_vertices(Region::P, 3);
    CHECK(p3[0][0] == 0.0);
    CHECK(p3[0][1] == 0.0);
    CHECK(p3[3][1] == doctest::Approx(1.5));
}

TEST_CASE("areas") {
    CHECK(region_area(Region::P, 3).shoelace == doctest::Approx(15.0 / 8.0).epsilon(1e-14));
    CHECK(region_area(Region::CP, 3).shoelace == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
    CHECK(region_area(Region::P, 2).shoelace == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(region_area(Region::CP, 2).shoelace == doctest::Approx(2.0).epsilon(1e-14));
    // EB: the shoelace of E4, E3, E2, E1 is (3d - 2)/(4 (d - 1)^2); at d = 2 this is 1.
    CHECK(region_area(Region::EB, 2).shoelace == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(region_area(Region::EB, 3).shoelace == doctest::Approx(7.0 / 16.0).epsilon(1e-14));
    for (int d = 3; d <= 12; ++d) {
        for (Region r : {Region::P, Region::CP, Region::EB}) {
            const AreaReport a = region_area(r, d);
            CHECK(std::abs(a.closed_form - a.shoelace) <= 1e-12);
        }
    }
}

TEST_CASE("Schwarz falsifier") {
    // Transposition is positive and unital but not Schwarz.
    const auto w = schwarz_falsify(transposition_map(2), 100);
    REQUIRE(w.has_value());
    CHECK(w->defect < -1e-8);
    CHECK(schwarz_defect(transposition_map(2), basis_unit(2, 0, 1)) < 0.0);

    // CP unital maps satisfy the inequality.
    for (int d = 2; d <= 4; ++d) {
        CHECK(!schwarz_falsify(named_map(MapName::E4, d).map, 500).has_value());
        CHECK(!schwarz_falsify(build_phi_family({d, 0.3, 0.2}), 500).has_value());
    }
    CHECK_THROWS_AS(schwarz_falsify(sandwich_map(2.0 * identity(2), identity(2)), 10), Error);

    // Short-time semigroup just below the Schwarz threshold.
    for (int d = 2; d <= 4; ++d) {
        const double nu = schwarz_threshold(d) - 0.1;
        const SuperMap m = hs_adjoint(semigroup({d, 1.0, nu, {}}, 1e-3));
        CHECK(schwarz_falsify(m, 200).has_value());
        const SuperMap ok = hs_adjoint(semigroup({d, 1.0, schwarz_threshold(d) + 0.1, {}}, 1e-3));
        CHECK(!schwarz_falsify(ok, 200).has_value());
    }
}

TEST_CASE("grid is deterministic and parallel equals serial") {
    GridSpec spec;
    spec.d = 3;
    spec.n_alpha = 15;
    spec.n_beta = 13;
    const NumericOptions opt{32, 7, 1e-9};
    const auto a = classify_grid(spec, opt, Exec::Serial);
    const auto b = classify_grid(spec, opt, Exec::Parallel);
    REQUIRE(a.size() == 15u * 13u);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].alpha == b[k].alpha);
        CHECK(a[k].beta == b[k].beta);
        CHECK(a[k].numeric.margins == b[k].numeric.margins);
    }
    CHECK(a.front().alpha == doctest::Approx(-0.2));
    CHECK(a.back().alpha == doctest::Approx(1.7));
}

TEST_CASE("region names") {
    CHECK(parse_region("cp") == Region::CP);
    CHECK(parse_region("EB") == Region::EB);
    CHECK_THROWS_AS(parse_region("x"), Error);
}
