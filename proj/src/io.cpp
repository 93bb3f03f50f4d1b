// io.cpp

#include "qmaps/io.hpp"

#include <cmath>
#include <cstdlib>
#include <locale>
#include <ostream>
#include <sstream>

namespace qmaps {

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";   // no "-0"
    }
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(12);
    os << x;
    return os.str();
}

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    std::istringstream is(format_number(x));
    is.imbue(std::locale::classic());
    double y = 0.0;
    is >> y;
    return y;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw Error(ErrorCode::BadInput, "matrix must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorCode::BadInput, "ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& e = row[static_cast<std::size_t>(c)];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                throw Error(ErrorCode::BadInput, "entries are numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

Json map_to_json(const SuperMap& m) {
    Json j;
    j["d"] = m.dim();
    j["transfer"] = matrix_to_json(m.transfer());
    return j;
}

SuperMap map_from_json(const Json& j) {
    const int d = j.at("d").get<int>();
    check_dimension(d);
    ComplexMatrix t = matrix_from_json(j.at("transfer"));
    if (t.rows() != d * d || t.cols() != d * d) {
        throw Error(ErrorCode::DimensionMismatch, "transfer must be d^2 x d^2");
    }
    return SuperMap::from_transfer(d, std::move(t));
}

Json state_to_json(const QuantumState& s) {
    Json j;
    j["d"] = s.d;
    j["rho"] = matrix_to_json(s.rho);
    return j;
}

QuantumState state_from_json(const Json& j) {
    QuantumState s;
    s.d = j.at("d").get<int>();
    check_dimension(s.d);
    s.rho = matrix_from_json(j.at("rho"));
    if (s.rho.rows() != s.d || s.rho.cols() != s.d) {
        throw Error(ErrorCode::DimensionMismatch, "rho must be d x d");
    }
    if (const auto why = validate_state(s)) {
        throw Error(ErrorCode::BadInput, *why);
    }
    return s;
}

Json verdict_to_json(const RegionVerdict& v) {
    Json j;
    j["positive"] = v.positive;
    j["cp"] = v.completely_positive;
    j["eb"] = v.entanglement_breaking;
    return j;
}

namespace {

Json margins_json(const std::array<double, 3>& m) {
    Json j;
    j["P"] = round12(m[0]);
    j["CP"] = round12(m[1]);
    j["EB"] = round12(m[2]);
    return j;
}

Json optional_time(const std::optional<double>& t) { return t ? Json(round12(*t)) : Json(nullptr); }

const char* flag(bool b) { return b ? "1" : "0"; }

} // namespace

Json crossings_to_json(const CrossingReport& r) {
    Json j;
    j["t_P"] = optional_time(r.t_P);
    j["t_CP"] = optional_time(r.t_CP);
    j["t_EB"] = optional_time(r.t_EB);
    j["margins_at_t_end"] = margins_json(r.final_margins);
    return j;
}

Json rates_to_json(const RateReport& r) {
    Json j;
    j["gamma_diag"] = round12(r.gamma_diag);
    j["gamma_offdiag"] = round12(r.gamma_offdiag);
    j["gamma_total"] = round12(r.gamma_total);
    j["gamma_max"] = round12(r.gamma_max);
    j["c_d"] = round12(r.c_d);
    j["bound_satisfied"] = r.bound_satisfied;
    j["bound_saturated"] = r.bound_saturated;
    j["spectrum_deviation"] = round12(r.spectrum_deviation);
    return j;
}

void write_polygon_csv(std::ostream& os, const RegionPolygon& p) {
    os << "alpha,beta\n";
    for (const auto& v : p.vertices) {
        os << format_number(v[0]) << ',' << format_number(v[1]) << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points) {
    os << "t,alpha,beta,positive,cp,eb,schwarz,min_choi_eig\n";
    for (const TrajectoryPoint& p : points) {
        os << format_number(p.t) << ',' << format_number(p.alpha) << ',' << format_number(p.beta) << ','
           << flag(p.verdict.positive) << ',' << flag(p.verdict.completely_positive) << ','
           << flag(p.verdict.entanglement_breaking) << ',' << to_string(p.schwarz_flag) << ','
           << format_number(p.min_choi_eig) << '\n';
    }
}

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& points) {
    os << "alpha,beta,positive,cp,eb,oracle_positive,oracle_cp,oracle_eb\n";
    for (const GridPoint& p : points) {
        os << format_number(p.alpha) << ',' << format_number(p.beta) << ',' << flag(p.closed.positive) << ','
           << flag(p.closed.completely_positive) << ',' << flag(p.closed.entanglement_breaking) << ','
           << flag(p.numeric.positive) << ',' << flag(p.numeric.completely_positive) << ','
           << flag(p.numeric.entanglement_breaking) << '\n';
    }
}

RunConfig default_run_config() {
    RunConfig c;
    if (const char* env = std::getenv("QMAPS_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == nullptr || *end != '\0') {
            throw Error(ErrorCode::BadInput, "QMAPS_SEED must be an unsigned integer");
        }
        c.seed = v;
    }
    return c;
}

RunConfig run_config_from_json(const Json& j, RunConfig base) {
    if (!j.is_object()) {
        throw Error(ErrorCode::BadInput, "config must be a JSON object");
    }
    if (j.contains("d")) base.d = j["d"].get<int>();
    if (j.contains("tolerance")) base.tolerance = j["tolerance"].get<double>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("sample_budget")) base.sample_budget = j["sample_budget"].get<std::size_t>();
    if (j.contains("output_format")) {
        const auto f = j["output_format"].get<std::string>();
        if (f == "json") {
            base.output_format = OutputFormat::Json;
        } else if (f == "csv") {
            base.output_format = OutputFormat::Csv;
        } else {
            throw Error(ErrorCode::BadInput, "output_format must be json or csv");
        }
    }
    if (j.contains("output_path") && !j["output_path"].is_null()) {
        base.output_path = j["output_path"].get<std::string>();
    }
    if (!(base.tolerance > 0.0)) {
        throw Error(ErrorCode::BadInput, "tolerance must be positive");
    }
    check_dimension(base.d);
    return base;
}

} // namespace qmaps
