#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "schrocvx/scenario.hpp"

using namespace schrocvx;

namespace {

std::string read_all(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scenario_dir() { return SCHROCVX_SCENARIO_DIR; }

std::filesystem::path fresh_dir(const std::string& name) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("scenario parsing and validation") {
    const Scenario sc = load_scenario((scenario_dir() / "theorem_1_2_gaussian.json").string());
    CHECK(sc.seed == 42);
    CHECK(sc.checks.size() == 4);
    CHECK(sc.alphas == std::vector<double>{5.0});
    CHECK(sc.time_points == 33);

    CHECK_THROWS_AS(scenario_from_json("{"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json("{\"checks\": [\"check_eq_2_20\"]}"), ConfigError);

    // unknown check name
    const std::string unknown = R"({
      "data": {"dim":1, "log_amp":[0,0], "quad":[[1,0]], "lin":[[0,0]]},
      "checks": ["eq_9_99"]})";
    CHECK_THROWS_AS(scenario_from_json(unknown), UnknownCheckError);

    const std::string empty_grid = R"({
      "data": {"dim":1, "log_amp":[0,0], "quad":[[1,0]], "lin":[[0,0]]},
      "checks": ["check_eq_2_20"], "params": {"alpha": []}})";
    CHECK_THROWS_AS(scenario_from_json(empty_grid), ConfigError);

    const std::string bad_path = R"({
      "data": {"dim":1, "log_amp":[0,0], "quad":[[1,0]], "lin":[[0,0]]},
      "checks": ["check_eq_2_20"], "path": "magic"})";
    CHECK_THROWS_AS(scenario_from_json(bad_path), ConfigError);
}

TEST_CASE("bundled scenario: all four chain checks pass") {
    const auto out = fresh_dir("schrocvx_run_main");
    const RunSummary s = run_scenario_file(
        (scenario_dir() / "theorem_1_2_gaussian.json").string(), out.string());
    CHECK(s.pass_count == 4);
    CHECK(s.fail_count == 0);
    CHECK(s.vacuous_count == 0);
    CHECK(s.min_margin >= -1e-9);
    CHECK(exit_code_for(s) == 0);
    CHECK(std::filesystem::exists(out / "summary.json"));
    CHECK(std::filesystem::exists(out / "check_eq_2_20_0.csv"));
    CHECK(std::filesystem::exists(out / "check_eq_2_23_0.csv"));

    // summary has the fixed key order
    const std::string summary = read_all(out / "summary.json");
    CHECK(summary.find("\"seed\"") < summary.find("\"counts\""));
    CHECK(summary.find("\"counts\"") < summary.find("\"min_margin\""));
    CHECK(summary.find("\"min_margin\"") < summary.find("\"checks\""));
}

TEST_CASE("vacuous region: flagged rows, exit code stays 0") {
    const auto out = fresh_dir("schrocvx_run_vac");
    const RunSummary s = run_scenario_file(
        (scenario_dir() / "vacuous_region.json").string(), out.string());
    CHECK(s.vacuous_count == 2);  // the two Gaussian-weight checks
    CHECK(s.fail_count == 0);
    CHECK(exit_code_for(s) == 0);
}

TEST_CASE("interaction scenario") {
    const auto out = fresh_dir("schrocvx_run_inter");
    const RunSummary s = run_scenario_file(
        (scenario_dir() / "interaction_suite.json").string(), out.string());
    CHECK(s.fail_count == 0);
    CHECK(exit_code_for(s) == 0);
    CHECK(std::filesystem::exists(out / "nu_schedule_0.csv"));
}

TEST_CASE("determinism: identical scenario and seed give byte-identical artifacts") {
    const auto out1 = fresh_dir("schrocvx_det_1");
    const auto out2 = fresh_dir("schrocvx_det_2");
    const std::string path = (scenario_dir() / "theorem_1_2_gaussian.json").string();
    run_scenario_file(path, out1.string());
    run_scenario_file(path, out2.string());
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(out1)) {
        const auto other = out2 / entry.path().filename();
        REQUIRE(std::filesystem::exists(other));
        CHECK(read_all(entry.path()) == read_all(other));
        ++files;
    }
    CHECK(files >= 5);
}

TEST_CASE("emit_plot_data: three columns, endpoint equality, monotone t") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ConvexityReport rep =
        check_eq_2_20(u0, {1.0}, ConvexitySchedule::chebyshev({1.0, 1.0}, 1.0, 9));
    std::ostringstream os;
    emit_plot_data(rep, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,lhs_log,rhs_log");
    double prev_t = -1.0;
    int rows = 0;
    while (std::getline(is, line)) {
        double t, lhs, rhs;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &lhs, &rhs) == 3);
        CHECK(t > prev_t);
        prev_t = t;
        if (rows == 0 || rows == 8) CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == 9);
}

TEST_CASE("axis parsing and sweep") {
    const AxisSpec a = parse_axis("alpha=1.0:3.0:3");
    CHECK(a.name == "alpha");
    REQUIRE(a.values.size() == 3);
    CHECK(a.values[1] == doctest::Approx(2.0));
    CHECK(parse_axis("beta=2:2:1").values == std::vector<double>{2.0});
    CHECK_THROWS_AS(parse_axis("alpha"), ConfigError);
    CHECK_THROWS_AS(parse_axis("alpha=1:2:0"), ConfigError);

    // one-point sweep reproduces the plain run's min margin
    Scenario sc = load_scenario((scenario_dir() / "theorem_1_2_gaussian.json").string());
    sc.checks = {"check_eq_2_22"};
    const auto out_run = fresh_dir("schrocvx_sweep_run");
    const RunSummary rs = run_scenario(sc, out_run.string());

    const auto out_sweep = fresh_dir("schrocvx_sweep_1x1");
    run_sweep(sc, parse_axis("alpha=5:5:1"), parse_axis("beta=2:2:1"), out_sweep.string());
    const std::string matrix = read_all(out_sweep / "check_eq_2_22_margin.csv");
    std::istringstream is(matrix);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    double rowval, margin;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf", &rowval, &margin) == 2);
    CHECK(margin == doctest::Approx(rs.min_margin).epsilon(1e-12));

    // vacuous matrix marks the uncertainty region
    const auto out_vac = fresh_dir("schrocvx_sweep_vac");
    run_sweep(sc, parse_axis("alpha=1:5:2"), parse_axis("beta=1:2:2"), out_vac.string());
    const std::string vac = read_all(out_vac / "check_eq_2_22_vacuous.csv");
    // alpha=1, beta=1 is vacuous (4T >= beta(alpha T + beta)); alpha=5, beta=2 is not
    CHECK(vac.find("\n1,1,") != std::string::npos);
    CHECK(vac.find("\n5,") != std::string::npos);
}

TEST_CASE("sweep: all-pass region matches rate arithmetic, rerun bit-identical") {
    Scenario sc = load_scenario((scenario_dir() / "theorem_1_2_gaussian.json").string());
    sc.checks = {"check_eq_2_22"};
    const AxisSpec alphas = parse_axis("alpha=0.5:5:10");
    const AxisSpec betas = parse_axis("beta=0.5:5:10");

    const auto out = fresh_dir("schrocvx_sweep_10x10");
    run_sweep(sc, alphas, betas, out.string());
    std::istringstream is(read_all(out / "check_eq_2_22_margin.csv"));
    std::string line;
    std::getline(is, line);  // header
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const double T = 1.0;
    for (double alpha : alphas.values) {
        REQUIRE(std::getline(is, line));
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // row label
        for (double beta : betas.values) {
            REQUIRE(std::getline(row, cell, ','));
            const bool vacuous = eq_2_22_vacuous(alpha, beta, T);
            const bool finite =
                weighted_norm_finite(u0, WeightSpec::make_gaussian_iso(beta)) &&
                weighted_norm_finite(propagate(u0, T),
                                     WeightSpec::make_gaussian_iso(alpha * T + beta));
            if (vacuous)
                CHECK(cell == "inf");
            else if (!finite)
                CHECK(cell == "nan");
            else
                CHECK(std::stod(cell) >= -1e-9);
        }
    }

    const auto out2 = fresh_dir("schrocvx_sweep_10x10_b");
    run_sweep(sc, alphas, betas, out2.string());
    CHECK(read_all(out / "check_eq_2_22_margin.csv") ==
          read_all(out2 / "check_eq_2_22_margin.csv"));
    CHECK(read_all(out / "check_eq_2_22_vacuous.csv") ==
          read_all(out2 / "check_eq_2_22_vacuous.csv"));
}

TEST_CASE("frequency scenario runner") {
    FreqScenario fs;
    fs.seed = 11;
    fs.dimension = 6;
    fs.pairs = 2;
    fs.times = {0.1, 0.3, 0.5, 0.7, 1.0};
    const auto out = fresh_dir("schrocvx_freq");
    const FreqSummary s = run_freq_scenario(fs, out.string());
    CHECK(s.pass);
    CHECK(s.max_hdot_residual <= 1e-7);
    CHECK(s.max_identity_residual <= 1e-7);
    CHECK(s.min_ndot_margin >= -1e-7);
    CHECK(s.max_carleman_residual <= 1e-8);
    CHECK(std::filesystem::exists(out / "trace_0.csv"));
    CHECK(std::filesystem::exists(out / "freq_summary.json"));
    const std::string trace = read_all(out / "trace_0.csv");
    CHECK(trace.rfind("t,H,D,N,hdot_residual,ndot_margin\n", 0) == 0);
}

TEST_CASE("seeded rng is deterministic and uniform-bounded") {
    SeededRng a(123), b(123), c(124);
    bool all_equal = true, any_diff_seed = false;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
        all_equal = all_equal && (va == vb);
        any_diff_seed = any_diff_seed || (va != vc);
    }
    CHECK(all_equal);
    CHECK(any_diff_seed);
}
