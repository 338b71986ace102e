#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "schrocvx/grid.hpp"
#include "schrocvx/scenario.hpp"

namespace {

using namespace schrocvx;

int cmd_verify(const std::string& scenario, const std::string& out_dir,
               std::optional<unsigned long long> seed, double tol_scale) {
    const RunSummary s = run_scenario_file(scenario, out_dir, seed, tol_scale);
    std::printf("seed %llu: %d pass, %d fail, %d vacuous", s.seed, s.pass_count,
                s.fail_count, s.vacuous_count);
    if (std::isfinite(s.min_margin)) std::printf(", min margin %.3e", s.min_margin);
    std::printf(" (%.0f ms)\n", s.wall_clock_ms);
    for (const CheckOutcome& o : s.outcomes)
        if (!o.pass && !o.vacuous)
            std::printf("FAIL %s %s min_margin %.3e\n", o.check.c_str(),
                        o.params_json.c_str(), o.min_margin);
    return exit_code_for(s);
}

int cmd_sweep(const std::string& scenario, const std::vector<std::string>& axes,
              const std::string& out_dir, std::optional<unsigned long long> seed,
              double tol_scale) {
    if (axes.size() != 2) throw ConfigError("sweep needs exactly two --axis specs");
    Scenario sc = load_scenario(scenario);
    if (seed) sc.seed = *seed;
    run_sweep(sc, parse_axis(axes[0]), parse_axis(axes[1]), out_dir, tol_scale);
    std::printf("sweep matrices written to %s\n", out_dir.c_str());
    return 0;
}

int cmd_freq(const std::string& scenario, const std::string& out_dir,
             std::optional<unsigned long long> seed) {
    const FreqSummary s = run_freq_scenario_file(scenario, out_dir, seed);
    std::printf("seed %llu, %d pairs: Hdot residual %.3e, identity residual %.3e, "
                "Ndot margin %.3e, Carleman residual %.3e -> %s\n",
                s.seed, s.pairs, s.max_hdot_residual, s.max_identity_residual,
                s.min_ndot_margin, s.max_carleman_residual, s.pass ? "pass" : "FAIL");
    return s.pass ? 0 : 1;
}

int cmd_propagate(const std::string& gaussian_file, int standard_dim, double t,
                  std::size_t points, double box, const std::string& out,
                  bool fourier_side) {
    ChirpedGaussian g = ChirpedGaussian::standard(std::max(standard_dim, 1));
    if (!gaussian_file.empty()) {
        std::ifstream in(gaussian_file);
        if (!in) throw ConfigError("cannot open " + gaussian_file);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        g = gaussian_from_json(text);
    }
    const GridSpec spec{g.dim, points, box};
    GridField f = sample(g, spec);
    if (t != 0.0) f = fft_propagate(f, t);
    if (fourier_side) f = grid_fourier(f);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + out);
    dump_csv(f, os);
    if (!fourier_side) {
        const double err = field_error(f, propagate(g, t));
        std::printf("wrote %s; relative L2 error vs closed form %.3e\n", out.c_str(), err);
    } else {
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted-norm convexity checks for the free Schroedinger flow"};
    app.require_subcommand(1);

    std::string scenario, out_dir = "out";
    std::optional<unsigned long long> seed;
    double tol_scale = 1.0;
    std::vector<std::string> axes;

    CLI::App* verify = app.add_subcommand("verify", "run a scenario's checks");
    verify->add_option("--scenario", scenario)->required();
    verify->add_option("--out-dir", out_dir);
    verify->add_option("--seed", seed);
    verify->add_option("--tolerance-scale", tol_scale);

    CLI::App* sweep = app.add_subcommand("sweep", "min-margin matrix over two axes");
    sweep->add_option("--scenario", scenario)->required();
    sweep->add_option("--axis", axes, "axis spec name=lo:hi:count (twice)")->required();
    sweep->add_option("--out-dir", out_dir);
    sweep->add_option("--seed", seed);
    sweep->add_option("--tolerance-scale", tol_scale);

    CLI::App* freq = app.add_subcommand("freq", "frequency-function scenarios");
    freq->add_option("--scenario", scenario)->required();
    freq->add_option("--out-dir", out_dir);
    freq->add_option("--seed", seed);

    std::string gaussian_file, prop_out = "field.csv";
    int standard_dim = 1;
    double prop_t = 0.0, prop_box = 40.0;
    std::size_t prop_points = 1024;
    bool fourier_side = false;
    CLI::App* prop = app.add_subcommand("propagate", "dump a propagated field as CSV");
    prop->add_option("--gaussian", gaussian_file, "ChirpedGaussian JSON file");
    prop->add_option("--standard", standard_dim, "use exp(-|x|^2) in n dimensions");
    prop->add_option("--t", prop_t);
    prop->add_option("--points", prop_points);
    prop->add_option("--box", prop_box);
    prop->add_option("--out", prop_out);
    prop->add_flag("--fourier", fourier_side, "dump the Fourier-side field");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(scenario, out_dir, seed, tol_scale);
        if (sweep->parsed()) return cmd_sweep(scenario, axes, out_dir, seed, tol_scale);
        if (freq->parsed()) return cmd_freq(scenario, out_dir, seed);
        if (prop->parsed())
            return cmd_propagate(gaussian_file, standard_dim, prop_t, prop_points, prop_box,
                                 prop_out, fourier_side);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const GuardError& e) {
        std::fprintf(stderr, "numerical guard violation: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
