// qmaps.cpp — command-line front end
//
// Exit codes: 0 success, 1 property failure, 2 usage error, 3 oracle disagreement.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmaps/dynamics.hpp"
#include "qmaps/generators.hpp"
#include "qmaps/io.hpp"
#include "qmaps/regions.hpp"
#include "qmaps/verify.hpp"

using namespace qmaps;

namespace {

enum Exit { kOk = 0, kPropertyFailure = 1, kUsage = 2, kDisagreement = 3 };

struct GlobalFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<double> tol;
    std::optional<std::string> format;
    std::optional<std::string> output;
};

RunConfig resolve_config(const GlobalFlags& g, std::optional<int> d) {
    RunConfig c = default_run_config();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) {
            throw Error(ErrorCode::BadInput, "cannot open config " + g.config_path);
        }
        c = run_config_from_json(Json::parse(in), c);
    }
    if (g.seed) c.seed = *g.seed;
    if (g.budget) c.sample_budget = *g.budget;
    if (g.tol) c.tolerance = *g.tol;
    if (g.format) c.output_format = *g.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (g.output) c.output_path = *g.output;
    if (d) c.d = *d;
    check_dimension(c.d);
    return c;
}

// Writes to the configured path, or stdout.
void emit(const RunConfig& c, const std::string& text) {
    if (c.output_path) {
        std::ofstream out(*c.output_path);
        if (!out) {
            throw Error(ErrorCode::BadInput, "cannot write " + *c.output_path);
        }
        out << text;
    } else {
        std::cout << text;
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json margins_json(const RegionVerdict& v) {
    Json j;
    j["P"] = round12(v.margins[0]);
    j["CP"] = round12(v.margins[1]);
    j["EB"] = round12(v.margins[2]);
    return j;
}

int cmd_classify(const RunConfig& c, double alpha, double beta) {
    const MapParams p{c.d, alpha, beta};
    const RegionVerdict closed = classify_point(p, c.tolerance);
    const RegionVerdict oracle = classify_numeric(p, {c.sample_budget, c.seed, c.tolerance});
    const Disagreement dis = compare_verdicts(closed, oracle);
    Json j;
    j["d"] = c.d;
    j["alpha"] = round12(alpha);
    j["beta"] = round12(beta);
    j["closed_form"] = verdict_to_json(closed);
    j["oracle"] = verdict_to_json(oracle);
    j["margins"] = {{"closed_form", margins_json(closed)}, {"oracle", margins_json(oracle)}};
    j["agree"] = !dis.any();
    j["seed"] = c.seed;
    j["budget"] = c.sample_budget;
    emit(c, dump(j));
    return dis.any() ? kDisagreement : kOk;
}

int cmd_region(const RunConfig& c, const std::string& which) {
    const Region r = parse_region(which);
    RegionPolygon poly;
    try {
        poly = region_polygon(r, c.d);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateRegion) {
            throw;
        }
        Json j;
        j["which"] = to_string(r);
        j["d"] = c.d;
        j["degenerate"] = true;
        j["vertices"] = Json::array();
        emit(c, dump(j));
        return kOk;
    }
    if (c.output_format == OutputFormat::Csv) {
        std::ostringstream os;
        write_polygon_csv(os, poly);
        emit(c, os.str());
    } else {
        Json j;
        j["which"] = to_string(r);
        j["d"] = c.d;
        j["degenerate"] = false;
        Json v = Json::array();
        for (const auto& p : poly.vertices) {
            v.push_back({round12(p[0]), round12(p[1])});
        }
        j["vertices"] = v;
        emit(c, dump(j));
    }
    return kOk;
}

int cmd_area(const RunConfig& c) {
    Json j;
    j["d"] = c.d;
    Json shoelace;
    bool ok = true;
    for (Region r : {Region::P, Region::CP, Region::EB}) {
        const AreaReport a = region_area(r, c.d);
        j[std::string(to_string(r))] = round12(a.closed_form);
        shoelace[std::string(to_string(r))] = round12(a.shoelace);
        ok = ok && std::abs(a.closed_form - a.shoelace) <= 1e-12;
    }
    j["shoelace"] = shoelace;
    emit(c, dump(j));
    return ok ? kOk : kPropertyFailure;
}

int cmd_trajectory(const RunConfig& c, const Schedule& s, double t_max, int steps) {
    const auto points = trajectory(s, t_max, steps);
    if (c.output_format == OutputFormat::Json) {
        Json rows = Json::array();
        for (const TrajectoryPoint& p : points) {
            Json r;
            r["t"] = round12(p.t);
            r["alpha"] = round12(p.alpha);
            r["beta"] = round12(p.beta);
            r["verdict"] = verdict_to_json(p.verdict);
            r["schwarz"] = to_string(p.schwarz_flag);
            r["min_choi_eig"] = round12(p.min_choi_eig);
            rows.push_back(std::move(r));
        }
        emit(c, dump(rows));
    } else {
        std::ostringstream os;
        write_trajectory_csv(os, points);
        emit(c, os.str());
    }
    return kOk;
}

int cmd_crossings(const RunConfig& c, double kappa, double nu) {
    Json j = crossings_to_json(crossing_times(c.d, kappa, nu));
    j["d"] = c.d;
    j["kappa"] = round12(kappa);
    j["nu"] = round12(nu);
    emit(c, dump(j));
    return kOk;
}

int cmd_spectrum(const RunConfig& c, double kappa, double nu, const std::string& cls_name) {
    const PositivityClass cls = parse_positivity_class(cls_name);
    const GenParams p{c.d, kappa, nu, {}};
    Json j;
    j["d"] = c.d;
    j["kappa"] = round12(kappa);
    j["nu"] = round12(nu);
    j["class"] = to_string(cls);
    j["rates"] = rates_to_json(spectrum_rates(p, cls));
    // Generator test for the requested class: closed form plus its numerical cross-check.
    Json test;
    bool disagree = false;
    switch (cls) {
    case PositivityClass::Positive: {
        const ConditionalPositivity r = is_conditionally_positive(p, c.sample_budget, c.seed);
        test["closed_form"] = r.closed_form;
        test["witness"] = nullptr;
        test["sampled"] = round12(r.sampled_min);
        disagree = r.closed_form && r.sampled_min < -c.tolerance;
        break;
    }
    case PositivityClass::Schwarz: {
        const Dissipativity r = is_dissipative(p, c.sample_budget, c.seed);
        test["closed_form"] = r.closed_form;
        test["witness"] = round12(r.min_witness_eig);
        test["sampled"] = round12(r.min_sampled_eig);
        disagree = r.closed_form && std::min(r.min_witness_eig, r.min_sampled_eig) < -c.tolerance;
        break;
    }
    case PositivityClass::KPositive: {
        const ConditionalCompletePositivity r = is_ccp(p);
        test["closed_form"] = r.closed_form;
        test["witness"] = nullptr;
        test["sampled"] = round12(r.min_eig_projected);
        disagree = r.closed_form != (r.min_eig_projected >= -c.tolerance);
        break;
    }
    }
    test["seed"] = c.seed;
    test["budget"] = c.sample_budget;
    j["test"] = test;
    emit(c, dump(j));
    return disagree ? kDisagreement : kOk;
}

int cmd_verify(const RunConfig& c, const std::string& suite) {
    VerifyOptions opt;
    opt.seed = c.seed;
    opt.sample_budget = c.sample_budget;
    const std::vector<CheckResult> results = run_verify(suite, opt);
    std::ostringstream os;
    int failed = 0;
    for (const CheckResult& r : results) {
        os << (r.pass ? "PASS " : "FAIL ") << r.module << ": " << r.name;
        if (!r.detail.empty()) {
            os << " (" << r.detail << ")";
        }
        os << '\n';
        failed += r.pass ? 0 : 1;
    }
    os << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
    emit(c, os.str());
    return failed == 0 ? kOk : kPropertyFailure;
}

int cmd_apply(const RunConfig& c, const std::string& state_path, const std::string& schedule, double t,
              double kappa, double nu) {
    std::ifstream in(state_path);
    if (!in) {
        throw Error(ErrorCode::BadInput, "cannot open state " + state_path);
    }
    const QuantumState s = state_from_json(Json::parse(in));
    const SuperMap m = map_at(make_schedule(schedule, s.d, kappa, nu), t);
    Json j = state_to_json(apply(m, s));
    j["schedule"] = schedule;
    j["t"] = round12(t);
    emit(c, dump(j));
    return kOk;
}

int cmd_grid(const RunConfig& c, int n_alpha, int n_beta) {
    GridSpec spec;
    spec.d = c.d;
    spec.n_alpha = n_alpha;
    spec.n_beta = n_beta;
    const auto grid = classify_grid(spec, {c.sample_budget, c.seed, c.tolerance});
    std::size_t disagreements = 0;
    for (const GridPoint& g : grid) {
        disagreements += compare_verdicts(g.closed, g.numeric).any() ? 1 : 0;
    }
    std::ostringstream os;
    write_grid_csv(os, grid);
    emit(c, os.str());
    if (disagreements > 0) {
        std::cerr << disagreements << " grid points disagree beyond the margin filter\n";
    }
    return disagreements == 0 ? kOk : kDisagreement;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmaps: positive, Schwarz, CP and EB classification of qudit maps and generators"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "sampling seed (default 42 or $QMAPS_SEED)");
    app.add_option("--budget", g.budget, "random samples per oracle (default 10000)");
    app.add_option("--tol", g.tol, "membership tolerance (default 1e-9)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", g.output, "output file (default stdout)");

    std::optional<int> d;
    double alpha = 0.0;
    double beta = 0.0;
    double kappa = 1.0;
    double nu = 0.0;
    double t_max = 5.0;
    double t = 1.0;
    int steps = 100;
    int n_alpha = 101;
    int n_beta = 101;
    std::string which;
    std::string schedule;
    std::string cls;
    std::string suite = "all";
    std::string state_path;

    auto add_d = [&](CLI::App* sub) { sub->add_option("--d", d, "dimension")->check(CLI::Range(2, kMaxDim)); };

    CLI::App* classify = app.add_subcommand("classify", "closed-form and oracle P / CP / EB membership");
    add_d(classify);
    classify->add_option("--alpha", alpha)->required();
    classify->add_option("--beta", beta)->required();

    CLI::App* region = app.add_subcommand("region", "region polygon");
    add_d(region);
    region->add_option("--which", which, "p, cp or eb")->required();

    CLI::App* area = app.add_subcommand("area", "closed-form and shoelace areas");
    add_d(area);

    CLI::App* traj = app.add_subcommand("trajectory", "(alpha, beta) trajectory of a schedule");
    add_d(traj);
    traj->add_option("--schedule", schedule, "const, enm, pdiv, sdiv, enm2, weyl")
        ->required()
        ->check(CLI::IsMember({"const", "enm", "pdiv", "sdiv", "enm2", "weyl"}));
    traj->add_option("--t-max", t_max);
    traj->add_option("--steps", steps)->check(CLI::PositiveNumber);
    traj->add_option("--kappa", kappa);
    traj->add_option("--nu", nu);

    CLI::App* cross = app.add_subcommand("crossings", "entry times into P, CP, EB for constant nu");
    add_d(cross);
    cross->add_option("--kappa", kappa);
    cross->add_option("--nu", nu)->required();

    CLI::App* spec = app.add_subcommand("spectrum", "relaxation rates, rate bound and generator test");
    add_d(spec);
    spec->add_option("--kappa", kappa);
    spec->add_option("--nu", nu)->required();
    spec->add_option("--class", cls, "positive, schwarz or kpos")->required();

    CLI::App* ver = app.add_subcommand("verify", "run the invariant battery");
    ver->add_option("--suite", suite, "all, linalg, channels, generators, regions, dynamics");

    CLI::App* app_apply = app.add_subcommand("apply", "evolve a JSON state under a schedule");
    app_apply->add_option("--state", state_path, "JSON {d, rho}")->required()->check(CLI::ExistingFile);
    app_apply->add_option("--schedule", schedule)
        ->required()
        ->check(CLI::IsMember({"const", "enm", "pdiv", "sdiv", "enm2", "weyl"}));
    app_apply->add_option("--t", t)->required();
    app_apply->add_option("--kappa", kappa);
    app_apply->add_option("--nu", nu);

    CLI::App* grid = app.add_subcommand("grid", "closed form vs oracle on an (alpha, beta) grid");
    add_d(grid);
    grid->add_option("--n-alpha", n_alpha)->check(CLI::Range(2, 2001));
    grid->add_option("--n-beta", n_beta)->check(CLI::Range(2, 2001));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const bool csv_default = app.got_subcommand(traj) || app.got_subcommand(grid);
        GlobalFlags flags = g;
        if (csv_default && !flags.format) {
            flags.format = "csv";
        }
        const RunConfig c = resolve_config(flags, d);
        if (app.got_subcommand(classify)) return cmd_classify(c, alpha, beta);
        if (app.got_subcommand(region)) return cmd_region(c, which);
        if (app.got_subcommand(area)) return cmd_area(c);
        if (app.got_subcommand(traj)) return cmd_trajectory(c, make_schedule(schedule, c.d, kappa, nu), t_max, steps);
        if (app.got_subcommand(cross)) return cmd_crossings(c, kappa, nu);
        if (app.got_subcommand(spec)) return cmd_spectrum(c, kappa, nu, cls);
        if (app.got_subcommand(ver)) return cmd_verify(c, suite);
        if (app.got_subcommand(app_apply)) return cmd_apply(c, state_path, schedule, t, kappa, nu);
        if (app.got_subcommand(grid)) return cmd_grid(c, n_alpha, n_beta);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
