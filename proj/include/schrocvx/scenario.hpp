#pragma once

// Configuration-driven experiment runner. A scenario is one JSON file
// naming the data, the checks to run (by operation name), the parameter
// grids, and tolerances; the runner executes every parameter tuple,
// writes one report CSV per tuple plus a summary JSON with fixed key
// order, and returns a summary whose counts feed the CLI exit code:
//   0  every non-vacuous check passed (vacuous rows allowed)
//   1  some check failed
//   2  configuration error
//   3  numerical guard violation
// Outputs are deterministic for a fixed scenario + seed; wall-clock time
// is reported on stdout only, never in artifacts.

#include <optional>
#include <string>
#include <vector>

#include "schrocvx/convexity.hpp"

namespace schrocvx {

struct Scenario {
    unsigned long long seed = 1;
    ChirpedGaussian data;
    std::optional<ChirpedGaussian> data_v;  // second solution (interaction checks)
    DataPath path = DataPath::exact;
    GridOptions grid;
    std::vector<std::string> checks;
    std::vector<double> alphas{1.0};
    std::vector<double> betas{1.0};
    std::vector<double> horizons{1.0};
    std::vector<std::vector<double>> lambdas;  // linear-weight checks
    std::vector<std::vector<double>> gammas;   // anisotropic checks
    std::vector<double> powers;                // radial power weights
    std::vector<std::vector<double>> nus;      // Galilean checks
    int time_points = 33;
    std::optional<double> tolerance_exact;
    std::optional<double> tolerance_grid;
    bool emit_plot_data = false;
};

Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

// Known check names, exactly the verifier operation names.
const std::vector<std::string>& known_checks();

struct CheckOutcome {
    std::string check;
    std::string params_json;  // fixed key order
    bool pass = false;
    double min_margin = 0.0;
    bool vacuous = false;
    std::string csv_file;
};

struct RunSummary {
    unsigned long long seed = 0;
    int pass_count = 0;
    int fail_count = 0;
    int vacuous_count = 0;
    double min_margin = 0.0;
    double wall_clock_ms = 0.0;  // stdout only
    std::vector<CheckOutcome> outcomes;

    bool all_pass() const { return fail_count == 0; }
};

RunSummary run_scenario(const Scenario& sc, const std::string& out_dir,
                        double tolerance_scale = 1.0);
RunSummary run_scenario_file(const std::string& scenario_path, const std::string& out_dir,
                             std::optional<unsigned long long> seed_override = {},
                             double tolerance_scale = 1.0);

// Three-column plot data (t, lhs_log, rhs_log).
void emit_plot_data(const ConvexityReport& rep, std::ostream& os);

// "alpha=0.25:5.0:20" -> 20 uniformly spaced values.
struct AxisSpec {
    std::string name;
    std::vector<double> values;
};
AxisSpec parse_axis(const std::string& text);

// Two-axis sweep: per check, a matrix CSV of min margins (rows = first
// axis, columns = second) and a parallel matrix of vacuous flags.
void run_sweep(const Scenario& sc, const AxisSpec& rows, const AxisSpec& cols,
               const std::string& out_dir, double tolerance_scale = 1.0);

// Frequency-function scenarios: random constant Hermitian/anti-Hermitian
// pairs, trace CSVs with per-time residual columns, summary JSON.
struct FreqScenario {
    unsigned long long seed = 1;
    int dimension = 8;
    int pairs = 20;
    std::vector<double> times;  // interior sample times, > 0, increasing
    double local_tol = 1e-11;
    double residual_tolerance = 1e-7;
    double carleman_tolerance = 1e-8;
};
FreqScenario freq_scenario_from_json(const std::string& text);
FreqScenario load_freq_scenario(const std::string& path);

struct FreqSummary {
    unsigned long long seed = 0;
    int pairs = 0;
    double max_hdot_residual = 0.0;
    double max_identity_residual = 0.0;
    double min_ndot_margin = 0.0;
    double max_carleman_residual = 0.0;
    bool pass = false;
};
FreqSummary run_freq_scenario(const FreqScenario& fs, const std::string& out_dir);
FreqSummary run_freq_scenario_file(const std::string& path, const std::string& out_dir,
                                   std::optional<unsigned long long> seed_override = {});

// Portable uniform doubles from one seeded generator (53-bit mantissa).
class SeededRng {
  public:
    explicit SeededRng(unsigned long long seed) : state_(seed) {}
    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);    // [lo, hi)
    unsigned long long raw();

  private:
    unsigned long long splitmix();
    unsigned long long state_;
};

int exit_code_for(const RunSummary& summary);

}  // namespace schrocvx
