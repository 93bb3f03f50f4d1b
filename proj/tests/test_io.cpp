#include <doctest.h>

#include <clocale>
#include <cstdlib>
#include <sstream>

#include "oracles.hpp"
#include "qmaps/io.hpp"
#include "qmaps/random.hpp"

using namespace qmaps;

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.875) == "1.875");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(round12(0.1 + 0.2) == 0.3);
}

TEST_CASE("matrix and map round trips") {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const int d = 2 + static_cast<int>(k % 3);
        auto rng = sample_engine(17, Stream::Ginibre, k);
        const ComplexMatrix t = ginibre(d * d, rng);
        const Json j = map_to_json(SuperMap::from_transfer(d, t));
        const SuperMap back = map_from_json(Json::parse(j.dump()));
        CHECK(back.dim() == d);
        // entries are written with 12 significant digits
        CHECK(oracle::max_abs(back.transfer() - t) <= 1e-11 * t.cwiseAbs().maxCoeff());
    }
    // plain real entries are accepted
    const ComplexMatrix m = matrix_from_json(Json::parse("[[1, 0], [0, 2]]"));
    CHECK(m(1, 1) == cplx(2.0));
    CHECK_THROWS(matrix_from_json(Json::parse("[[1, 0], [0]]")));
}

TEST_CASE("state round trip and validation") {
    QuantumState s{2, ComplexMatrix::Zero(2, 2)};
    s.rho(0, 0) = 0.25;
    s.rho(1, 1) = 0.75;
    const QuantumState back = state_from_json(state_to_json(s));
    CHECK(back.rho == s.rho);
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"d": 2, "rho": [[2, 0], [0, -1]]})")), Error);
}

TEST_CASE("csv headers") {
    std::ostringstream poly;
    write_polygon_csv(poly, region_polygon(Region::EB, 3));
    CHECK(poly.str().rfind("alpha,beta\n", 0) == 0);

    std::ostringstream traj;
    write_trajectory_csv(traj, trajectory(schedule::OptimalENM{2}, 1.0, 2));
    CHECK(traj.str().rfind("t,alpha,beta,positive,cp,eb,schwarz,min_choi_eig\n", 0) == 0);

    std::ostringstream grid;
    write_grid_csv(grid, {});
    CHECK(grid.str() == "alpha,beta,positive,cp,eb,oracle_positive,oracle_cp,oracle_eb\n");
}

TEST_CASE("crossings encode missing roots as null") {
    const Json j = crossings_to_json(crossing_times(3, 1.0, -2.5));
    CHECK(j["t_P"].is_null());
    CHECK(j["margins_at_t_end"].contains("EB"));
}

TEST_CASE("run config") {
    RunConfig base;
    const RunConfig c = run_config_from_json(Json::parse(R"({"d": 4, "seed": 7, "output_format": "csv"})"), base);
    CHECK(c.d == 4);
    CHECK(c.seed == 7u);
    CHECK(c.output_format == OutputFormat::Csv);
    CHECK(c.sample_budget == base.sample_budget);
}
