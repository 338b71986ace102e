#include "schrocvx/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"
#include "schrocvx/frequency.hpp"

namespace schrocvx {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path.string());
    out << text;
}

std::vector<double> default_ones(int dim) { return std::vector<double>(dim, 1.0); }

ordered_json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

struct Task {
    std::string check;
    ordered_json params;
    std::function<ConvexityReport()> run;   // null for table ops
    std::function<std::string()> table;     // CSV text for table ops
};

std::string report_csv_text(const ConvexityReport& rep) {
    std::ostringstream os;
    write_csv(rep, os);
    return os.str();
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "check_eq_2_20",  "check_eq_2_21",  "check_eq_2_22",
        "check_eq_2_23",  "check_logconvex_G", "check_cor_3_1",
        "check_cor_3_2_3_3", "check_cor_3_4", "check_variance_convexity",
        "check_cor_3_5",  "nu_schedule"};
    return names;
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario parse: ") + e.what());
    }
    try {
        Scenario sc;
        sc.seed = j.value("seed", 1ull);
        if (!j.contains("data")) throw ConfigError("scenario: missing \"data\"");
        sc.data = gaussian_from_json(j["data"].dump());
        if (j.contains("data_v")) sc.data_v = gaussian_from_json(j["data_v"].dump());
        const std::string path = j.value("path", std::string("exact"));
        if (path == "exact")
            sc.path = DataPath::exact;
        else if (path == "grid")
            sc.path = DataPath::grid;
        else
            throw ConfigError("scenario: path must be \"exact\" or \"grid\"");
        if (j.contains("grid")) {
            sc.grid.points = j["grid"].value("points", std::size_t{1024});
            sc.grid.box_length = j["grid"].value("box_length", 0.0);
            sc.grid.tail_threshold = j["grid"].value("tail_threshold", kTailThreshold);
        }
        if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
            throw ConfigError("scenario: non-empty \"checks\" array required");
        for (const auto& c : j["checks"]) {
            const std::string name = c.get<std::string>();
            if (std::find(known_checks().begin(), known_checks().end(), name) ==
                known_checks().end())
                throw UnknownCheckError("unknown check: " + name);
            sc.checks.push_back(name);
        }
        const json params = j.value("params", json::object());
        auto grid_of = [&](const char* key, std::vector<double> dflt) {
            if (!params.contains(key)) return dflt;
            auto v = params[key].get<std::vector<double>>();
            if (v.empty()) throw ConfigError(std::string("scenario: empty grid ") + key);
            return v;
        };
        sc.alphas = grid_of("alpha", {1.0});
        sc.betas = grid_of("beta", {1.0});
        sc.horizons = grid_of("T", {1.0});
        if (params.contains("lambda"))
            sc.lambdas = params["lambda"].get<std::vector<std::vector<double>>>();
        if (params.contains("gamma"))
            sc.gammas = params["gamma"].get<std::vector<std::vector<double>>>();
        if (params.contains("p")) sc.powers = params["p"].get<std::vector<double>>();
        if (params.contains("nu"))
            sc.nus = params["nu"].get<std::vector<std::vector<double>>>();
        sc.time_points = params.value("time_points", 33);
        if (sc.time_points < 2) throw ConfigError("scenario: time_points must be >= 2");
        if (j.contains("tolerance")) {
            if (j["tolerance"].contains("exact"))
                sc.tolerance_exact = j["tolerance"]["exact"].get<double>();
            if (j["tolerance"].contains("grid"))
                sc.tolerance_grid = j["tolerance"]["grid"].get<double>();
        }
        sc.emit_plot_data = j.value("emit_plot_data", false);
        return sc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    return scenario_from_json(read_file(path));
}

void emit_plot_data(const ConvexityReport& rep, std::ostream& os) {
    os << "t,lhs_log,rhs_log\n";
    char line[128];
    for (const ReportRow& r : rep.rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", r.t, r.lhs_log, r.rhs_log);
        os << line;
    }
}

AxisSpec parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("axis spec needs name=lo:hi:count");
    AxisSpec spec;
    spec.name = text.substr(0, eq);
    double lo = 0.0, hi = 0.0;
    int count = 0;
    if (std::sscanf(text.c_str() + eq + 1, "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
        count < 1)
        throw ConfigError("axis spec needs name=lo:hi:count, got: " + text);
    if (count == 1) {
        spec.values = {lo};
        return spec;
    }
    for (int i = 0; i < count; ++i)
        spec.values.push_back(lo + (hi - lo) * i / (count - 1));
    return spec;
}

namespace {

CheckOptions options_for(const Scenario& sc, double tolerance_scale) {
    CheckOptions opt;
    opt.path = sc.path;
    opt.grid = sc.grid;
    const std::optional<double> base =
        sc.path == DataPath::exact ? sc.tolerance_exact : sc.tolerance_grid;
    opt.tolerance = (base ? *base : opt.resolved_tolerance()) * tolerance_scale;
    return opt;
}

std::vector<Task> build_tasks(const Scenario& sc, double tolerance_scale) {
    std::vector<Task> tasks;
    const CheckOptions opt = options_for(sc, tolerance_scale);
    const ChirpedGaussian u0 = sc.data;
    const ChirpedGaussian v0 = sc.data_v ? *sc.data_v : sc.data;
    const std::vector<std::vector<double>> lambdas =
        sc.lambdas.empty() ? std::vector<std::vector<double>>{default_ones(u0.dim)}
                           : sc.lambdas;
    const std::vector<std::vector<double>> gammas =
        sc.gammas.empty() ? std::vector<std::vector<double>>{default_ones(u0.dim)}
                          : sc.gammas;
    const std::vector<double> powers = sc.powers.empty() ? std::vector<double>{1.5}
                                                         : sc.powers;
    const std::vector<std::vector<double>> nus =
        sc.nus.empty() ? std::vector<std::vector<double>>{default_ones(u0.dim)} : sc.nus;

    for (const std::string& name : sc.checks) {
        for (double alpha : sc.alphas)
            for (double beta : sc.betas)
                for (double T : sc.horizons) {
                    const ConvexitySchedule sched = ConvexitySchedule::chebyshev(
                        {alpha, beta}, T, sc.time_points);
                    ordered_json base;
                    base["alpha"] = alpha;
                    base["beta"] = beta;
                    base["T"] = T;

                    if (name == "check_eq_2_20" || name == "check_eq_2_21" ||
                        name == "check_logconvex_G") {
                        for (const auto& lam : lambdas) {
                            ordered_json p = base;
                            p["lambda"] = lam;
                            std::function<ConvexityReport()> run;
                            if (name == "check_eq_2_20")
                                run = [=] { return check_eq_2_20(u0, lam, sched, opt); };
                            else if (name == "check_eq_2_21")
                                run = [=] { return check_eq_2_21(u0, lam, sched, opt); };
                            else
                                run = [=] {
                                    return check_logconvex_G(
                                        u0, WeightSpec::make_linear(lam, 1.0), sched, opt);
                                };
                            tasks.push_back({name, p, run, {}});
                        }
                    } else if (name == "check_eq_2_22") {
                        tasks.push_back(
                            {name, base, [=] { return check_eq_2_22(u0, sched, opt); }, {}});
                    } else if (name == "check_eq_2_23") {
                        tasks.push_back(
                            {name, base, [=] { return check_eq_2_23(u0, sched, opt); }, {}});
                    } else if (name == "check_cor_3_1") {
                        for (const auto& gam : gammas) {
                            ordered_json p = base;
                            p["gamma"] = gam;
                            tasks.push_back(
                                {name, p,
                                 [=] { return check_cor_3_1(u0, gam, sched, opt); },
                                 {}});
                        }
                    } else if (name == "check_cor_3_2_3_3") {
                        for (double pw : powers) {
                            ordered_json p = base;
                            p["p"] = pw;
                            tasks.push_back(
                                {name, p,
                                 [=] {
                                     PowerConstantReport pr = check_cor_3_2_3_3(
                                         u0, WeightSpec::make_power_radial(pw, 1.0), sched,
                                         opt);
                                     ConvexityReport rep = pr.report;
                                     return rep;
                                 },
                                 {}});
                        }
                    } else if (name == "check_cor_3_4") {
                        const struct {
                            InteractionVariant v;
                            const char* tag;
                            bool needs_lambda;
                        } variants[] = {{InteractionVariant::dos1, "dos1", true},
                                        {InteractionVariant::dos3, "dos3", false},
                                        {InteractionVariant::fourier_linear,
                                         "fourier_linear", true},
                                        {InteractionVariant::fourier_gaussian,
                                         "fourier_gaussian", false}};
                        for (const auto& var : variants) {
                            const std::vector<std::vector<double>> lams =
                                var.needs_lambda
                                    ? lambdas
                                    : std::vector<std::vector<double>>{default_ones(u0.dim)};
                            for (const auto& lam : lams) {
                                ordered_json p = base;
                                p["variant"] = var.tag;
                                if (var.needs_lambda) p["lambda"] = lam;
                                const InteractionVariant v = var.v;
                                tasks.push_back(
                                    {name, p,
                                     [=] {
                                         return check_cor_3_4(u0, v0, v, lam, sched, opt);
                                     },
                                     {}});
                            }
                        }
                    } else if (name == "check_variance_convexity") {
                        ordered_json p = base;
                        std::vector<double> times;
                        const int n = 41;
                        for (int i = 0; i < n; ++i)
                            times.push_back(-T + 2.0 * T * i / (n - 1));
                        tasks.push_back(
                            {name, p,
                             [=] { return check_variance_convexity(u0, v0, times, opt); },
                             {}});
                    } else if (name == "check_cor_3_5") {
                        for (const auto& nu : nus)
                            for (GalileanVariant v :
                                 {GalileanVariant::gal1, GalileanVariant::gal2}) {
                                ordered_json p = base;
                                p["nu"] = nu;
                                p["variant"] = v == GalileanVariant::gal1 ? "gal1" : "gal2";
                                tasks.push_back(
                                    {name, p,
                                     [=] { return check_cor_3_5(u0, nu, sched, v, opt); },
                                     {}});
                            }
                    } else if (name == "nu_schedule") {
                        ordered_json p = base;
                        tasks.push_back(
                            {name, p, {}, [=] {
                                 const NuSchedule ns =
                                     nu_schedule(u0, alpha, beta, sched.times);
                                 std::ostringstream os;
                                 os << "t,nu\n";
                                 char line[80];
                                 for (const NuScheduleRow& r : ns.rows) {
                                     std::snprintf(line, sizeof line, "%.17g,%.17g\n", r.t,
                                                   r.nu);
                                     os << line;
                                 }
                                 return os.str();
                             }});
                    }
                }
    }
    return tasks;
}

}  // namespace

RunSummary run_scenario(const Scenario& sc, const std::string& out_dir,
                        double tolerance_scale) {
    const auto t_start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    std::vector<Task> tasks = build_tasks(sc, tolerance_scale);

    struct Slot {
        ConvexityReport report;
        std::string table_csv;
        std::exception_ptr error;
    };
    std::vector<Slot> slots(tasks.size());

#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(tasks.size()); ++i) {
        Slot& slot = slots[static_cast<std::size_t>(i)];
        try {
            const Task& task = tasks[static_cast<std::size_t>(i)];
            if (task.run)
                slot.report = task.run();
            else
                slot.table_csv = task.table();
        } catch (...) {
            slot.error = std::current_exception();
        }
    }
    for (const Slot& slot : slots)
        if (slot.error) std::rethrow_exception(slot.error);

    RunSummary summary;
    summary.seed = sc.seed;
    summary.min_margin = kInf;
    std::map<std::string, int> counters;
    ordered_json check_list = ordered_json::array();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& task = tasks[i];
        const int idx = counters[task.check]++;
        CheckOutcome outcome;
        outcome.check = task.check;
        outcome.params_json = task.params.dump();
        outcome.csv_file = task.check + "_" + std::to_string(idx) + ".csv";
        if (task.run) {
            const ConvexityReport& rep = slots[i].report;
            outcome.pass = rep.pass;
            outcome.vacuous = rep.vacuous;
            outcome.min_margin = rep.min_margin;
            write_file(std::filesystem::path(out_dir) / outcome.csv_file,
                       report_csv_text(rep));
            if (sc.emit_plot_data) {
                std::ostringstream os;
                emit_plot_data(rep, os);
                write_file(std::filesystem::path(out_dir) / ("plot_" + outcome.csv_file),
                           os.str());
            }
            if (rep.vacuous)
                ++summary.vacuous_count;
            else if (rep.pass)
                ++summary.pass_count;
            else
                ++summary.fail_count;
            if (!rep.vacuous) summary.min_margin = std::min(summary.min_margin, rep.min_margin);
        } else {
            outcome.pass = true;
            outcome.vacuous = false;
            outcome.min_margin = kInf;
            write_file(std::filesystem::path(out_dir) / outcome.csv_file,
                       slots[i].table_csv);
            ++summary.pass_count;
        }
        summary.outcomes.push_back(outcome);

        ordered_json entry;
        entry["check"] = outcome.check;
        entry["params"] = ordered_json::parse(outcome.params_json);
        entry["pass"] = outcome.pass;
        entry["min_margin"] = number_or_null(outcome.min_margin);
        entry["vacuous"] = outcome.vacuous;
        entry["csv"] = outcome.csv_file;
        check_list.push_back(entry);
    }

    ordered_json summary_json;
    summary_json["seed"] = summary.seed;
    summary_json["counts"] = {{"pass", summary.pass_count},
                              {"fail", summary.fail_count},
                              {"vacuous", summary.vacuous_count}};
    summary_json["min_margin"] = number_or_null(summary.min_margin);
    summary_json["checks"] = check_list;
    write_file(std::filesystem::path(out_dir) / "summary.json", summary_json.dump(2) + "\n");

    summary.wall_clock_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t_start)
                                .count();
    return summary;
}

RunSummary run_scenario_file(const std::string& scenario_path, const std::string& out_dir,
                             std::optional<unsigned long long> seed_override,
                             double tolerance_scale) {
    Scenario sc = load_scenario(scenario_path);
    if (seed_override) sc.seed = *seed_override;
    return run_scenario(sc, out_dir, tolerance_scale);
}

void run_sweep(const Scenario& sc, const AxisSpec& rows, const AxisSpec& cols,
               const std::string& out_dir, double tolerance_scale) {
    auto apply = [](Scenario s, const AxisSpec& axis, double v) {
        if (axis.name == "alpha")
            s.alphas = {v};
        else if (axis.name == "beta")
            s.betas = {v};
        else if (axis.name == "T")
            s.horizons = {v};
        else
            throw ConfigError("sweep axis must be alpha, beta or T, got: " + axis.name);
        return s;
    };
    std::filesystem::create_directories(out_dir);

    for (const std::string& check : sc.checks) {
        std::vector<std::vector<double>> margin(rows.values.size());
        std::vector<std::vector<int>> vac(rows.values.size());
        for (std::size_t r = 0; r < rows.values.size(); ++r) {
            margin[r].resize(cols.values.size());
            vac[r].resize(cols.values.size());
            for (std::size_t c = 0; c < cols.values.size(); ++c) {
                Scenario cell = apply(apply(sc, rows, rows.values[r]), cols, cols.values[c]);
                cell.checks = {check};
                const std::string cell_dir =
                    (std::filesystem::path(out_dir) / ".sweep_cell").string();
                try {
                    const RunSummary rs = run_scenario(cell, cell_dir, tolerance_scale);
                    margin[r][c] = rs.min_margin;
                    vac[r][c] = rs.vacuous_count > 0 ? 1 : 0;
                } catch (const GuardError&) {
                    // cells whose hypotheses fail (infinite endpoint norm,
                    // guard violation) are marked, not fatal
                    margin[r][c] = std::numeric_limits<double>::quiet_NaN();
                    vac[r][c] = 0;
                }
            }
        }
        std::error_code ec;
        std::filesystem::remove_all(std::filesystem::path(out_dir) / ".sweep_cell", ec);

        auto write_matrix = [&](const std::string& file, auto value_at) {
            std::ostringstream os;
            os << rows.name << "\\" << cols.name;
            for (double cv : cols.values) {
                char buf[40];
                std::snprintf(buf, sizeof buf, ",%.17g", cv);
                os << buf;
            }
            os << "\n";
            for (std::size_t r = 0; r < rows.values.size(); ++r) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", rows.values[r]);
                os << buf;
                for (std::size_t c = 0; c < cols.values.size(); ++c) os << "," << value_at(r, c);
                os << "\n";
            }
            write_file(std::filesystem::path(out_dir) / file, os.str());
        };
        write_matrix(check + "_margin.csv", [&](std::size_t r, std::size_t c) {
            char buf[40];
            if (std::isfinite(margin[r][c]))
                std::snprintf(buf, sizeof buf, "%.17g", margin[r][c]);
            else if (std::isnan(margin[r][c]))
                std::snprintf(buf, sizeof buf, "nan");
            else
                std::snprintf(buf, sizeof buf, "inf");
            return std::string(buf);
        });
        write_matrix(check + "_vacuous.csv", [&](std::size_t r, std::size_t c) {
            return std::to_string(vac[r][c]);
        });
    }
}

// --- frequency scenarios ----------------------------------------------------

FreqScenario freq_scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("freq scenario parse: ") + e.what());
    }
    FreqScenario fs;
    fs.seed = j.value("seed", 1ull);
    fs.dimension = j.value("dimension", 8);
    fs.pairs = j.value("pairs", 20);
    if (j.contains("times"))
        fs.times = j["times"].get<std::vector<double>>();
    else
        for (int i = 1; i <= 9; ++i) fs.times.push_back(0.1 * i);
    fs.local_tol = j.value("local_tol", 1e-11);
    fs.residual_tolerance = j.value("residual_tolerance", 1e-7);
    fs.carleman_tolerance = j.value("carleman_tolerance", 1e-8);
    if (fs.dimension < 2 || fs.pairs < 1 || fs.times.empty())
        throw ConfigError("freq scenario: bad dimension/pairs/times");
    return fs;
}

FreqScenario load_freq_scenario(const std::string& path) {
    return freq_scenario_from_json(read_file(path));
}

unsigned long long SeededRng::splitmix() {
    state_ += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

unsigned long long SeededRng::raw() { return splitmix(); }

double SeededRng::uniform() {
    return static_cast<double>(splitmix() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

namespace {

Mat random_matrix(SeededRng& rng, int m) {
    Mat a(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = kernels::cxd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)} * scale;
    return a;
}

Vec random_vector(SeededRng& rng, int m) {
    Vec v(m);
    for (int i = 0; i < m; ++i)
        v[i] = kernels::cxd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return v;
}

}  // namespace

FreqSummary run_freq_scenario(const FreqScenario& fs, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    SeededRng rng(fs.seed);
    FreqSummary summary;
    summary.seed = fs.seed;
    summary.pairs = fs.pairs;
    summary.min_ndot_margin = kInf;

    for (int pair = 0; pair < fs.pairs; ++pair) {
        const Mat m1 = random_matrix(rng, fs.dimension);
        const Mat m2 = random_matrix(rng, fs.dimension);
        const Mat S = 0.5 * (m1 + Mat(m1.adjoint()));
        const Mat A = 0.5 * (m2 - Mat(m2.adjoint()));
        Vec f0 = random_vector(rng, fs.dimension);
        f0.normalize();
        const OperatorPair ops = OperatorPair::constant(S, A);

        const std::vector<double> hres = hdot_residuals(f0, ops, fs.times, 4e-3, fs.local_tol);
        const std::vector<double> margins =
            ndot_lower_bound_margins(f0, ops, fs.times, 4e-3, fs.local_tol);

        const Mat gen = S + A;
        auto f_of = [gen, f0](double t) -> Vec { return Mat(gen * t).exp() * f0; };
        auto dtf_of = [gen, f_of](double t) -> Vec { return gen * f_of(t); };
        double id_res = 0.0;
        for (double t : fs.times)
            id_res = std::max(id_res, check_identity_2_2a(f_of, dtf_of, ops, t));

        // Endpoint-vanishing analytic trajectory for the space-time expansion.
        const Vec v1 = random_vector(rng, fs.dimension);
        const double t0 = fs.times.front(), t1 = fs.times.back();
        auto traj = [=](double t) -> Vec {
            return (t - t0) * (t1 - t) * (f0 + t * v1);
        };
        auto dtraj = [=](double t) -> Vec {
            return (t0 + t1 - 2.0 * t) * (f0 + t * v1) + (t - t0) * (t1 - t) * v1;
        };
        const CarlemanResult car = check_carleman_expansion(traj, dtraj, ops, t0, t1, 32);

        std::vector<double> times_with0 = fs.times;
        if (times_with0.front() > 0.0) times_with0.insert(times_with0.begin(), 0.0);
        const FrequencyTrace trace = evolve(f0, ops, times_with0, fs.local_tol);
        std::ostringstream os;
        os << "t,H,D,N,hdot_residual,ndot_margin\n";
        char line[240];
        for (std::size_t i = 0; i < fs.times.size(); ++i) {
            const std::size_t k = trace.times.size() - fs.times.size() + i;
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          trace.times[k], trace.H[k], trace.D[k], trace.N[k], hres[i],
                          margins[i]);
            os << line;
        }
        write_file(std::filesystem::path(out_dir) /
                       ("trace_" + std::to_string(pair) + ".csv"),
                   os.str());

        for (double r : hres) summary.max_hdot_residual = std::max(summary.max_hdot_residual, r);
        for (double m : margins) summary.min_ndot_margin = std::min(summary.min_ndot_margin, m);
        summary.max_identity_residual = std::max(summary.max_identity_residual, id_res);
        summary.max_carleman_residual = std::max(summary.max_carleman_residual, car.residual);
    }

    summary.pass = summary.max_hdot_residual <= fs.residual_tolerance &&
                   summary.max_identity_residual <= fs.residual_tolerance &&
                   summary.min_ndot_margin >= -fs.residual_tolerance &&
                   summary.max_carleman_residual <= fs.carleman_tolerance;

    ordered_json sj;
    sj["seed"] = summary.seed;
    sj["pairs"] = summary.pairs;
    sj["max_hdot_residual"] = summary.max_hdot_residual;
    sj["max_identity_residual"] = summary.max_identity_residual;
    sj["min_ndot_margin"] = summary.min_ndot_margin;
    sj["max_carleman_residual"] = summary.max_carleman_residual;
    sj["pass"] = summary.pass;
    write_file(std::filesystem::path(out_dir) / "freq_summary.json", sj.dump(2) + "\n");
    return summary;
}

FreqSummary run_freq_scenario_file(const std::string& path, const std::string& out_dir,
                                   std::optional<unsigned long long> seed_override) {
    FreqScenario fs = load_freq_scenario(path);
    if (seed_override) fs.seed = *seed_override;
    return run_freq_scenario(fs, out_dir);
}

int exit_code_for(const RunSummary& summary) { return summary.all_pass() ? 0 : 1; }

}  // namespace schrocvx
