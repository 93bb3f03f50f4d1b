// io.hpp — JSON / CSV encodings of maps, states and reports

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmaps/channels.hpp"
#include "qmaps/dynamics.hpp"
#include "qmaps/generators.hpp"
#include "qmaps/regions.hpp"

namespace qmaps {

using Json = nlohmann::ordered_json;

// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double x);
// x rounded to 12 significant digits, so JSON dumps stay short and stable.
double round12(double x);

// [[ [re, im], ... ], ...] row-major
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"d": d, "transfer": matrix}
Json map_to_json(const SuperMap& m);
SuperMap map_from_json(const Json& j);

// {"d": d, "rho": matrix}
Json state_to_json(const QuantumState& s);
QuantumState state_from_json(const Json& j);

Json verdict_to_json(const RegionVerdict& v);
Json crossings_to_json(const CrossingReport& r);
Json rates_to_json(const RateReport& r);

void write_polygon_csv(std::ostream& os, const RegionPolygon& p);
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points);
void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& points);

enum class OutputFormat { Json, Csv };

struct RunConfig {
    int d{3};
    double tolerance{1e-9};
    std::uint64_t seed{42};
    std::size_t sample_budget{10000};
    OutputFormat output_format{OutputFormat::Json};
    std::optional<std::string> output_path;
};

// Missing keys keep their defaults; the seed default is taken from QMAPS_SEED when set.
RunConfig default_run_config();
RunConfig run_config_from_json(const Json& j, RunConfig base);

} // namespace qmaps
