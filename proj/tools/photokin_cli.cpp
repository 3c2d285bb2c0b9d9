// Command-line front end: run simulations, convergence studies, field
// audits, and series extractions, emitting round-trip-safe CSV plus a
// manifest describing every invocation.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "photokin/config_io.hpp"
#include "photokin/experiments.hpp"
#include "photokin/fixed_point.hpp"
#include "photokin/grid.hpp"
#include "photokin/metrics.hpp"
#include "photokin/model.hpp"
#include "photokin/numerics.hpp"
#include "photokin/quadrature.hpp"
#include "photokin/schemes.hpp"

namespace {

using nlohmann::ordered_json;
using namespace photokin;

constexpr const char* kVersion = "photokin 0.1.0";
constexpr const char* kDeterminismNote =
    "seed-free: no randomness anywhere; summation order is fixed, so reruns "
    "and any parallel worker count reproduce these outputs bit for bit";

struct ProblemOptions {
    std::string builtin;
    std::string config_path;

    void attach(CLI::App* cmd) {
        auto* problem = cmd->add_option("--problem", builtin,
                                        "Bundled problem id (test-1, test-2, test-3)");
        auto* config =
            cmd->add_option("--config", config_path, "Problem description as a JSON file");
        problem->excludes(config);
        config->excludes(problem);
    }

    [[nodiscard]] ValidatedProblem resolve() const {
        if (!builtin.empty()) return builtin_problem(builtin);
        if (!config_path.empty()) return validate_problem(load_problem_config(config_path));
        throw std::invalid_argument("config: pass --problem or --config");
    }

    [[nodiscard]] std::string label() const {
        return !builtin.empty() ? builtin : config_path;
    }
};

struct SchemeOptions {
    std::string scheme = "nsfd";
    std::string phi = "phi1";
    std::string weights = "gregory-2";
    std::optional<double> gamma;
    bool serial = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--scheme", scheme, "Scheme: nsfd, rq, ftrq, pc, dq")
            ->capture_default_str();
        cmd->add_option("--phi", phi, "Denominator function: phi1, phi2, phi3")
            ->capture_default_str();
        cmd->add_option("--weights", weights, "dq quadrature family: gregory-1, gregory-2")
            ->capture_default_str();
        cmd->add_option("--gamma", gamma,
                        "Decay-rate constant for phi2/phi3 (default: max f)");
        cmd->add_flag("--serial", serial, "Disable the OpenMP kernels (identical results)");
    }

    [[nodiscard]] SchemeConfig resolve() const {
        SchemeConfig config;
        config.scheme = scheme_from_name(scheme);
        config.phi = phi_from_name(phi);
        config.weights = make_weight_scheme(weights).label;
        config.gamma = gamma;
        config.parallel = !serial;
        return config;
    }
};

double parse_theta(const std::string& text);

struct GridOptions {
    std::string theta;
    std::optional<double> dx, dt, dl;
    std::optional<std::size_t> nx, nt, nl;

    void attach(CLI::App* cmd) {
        auto* theta_opt = cmd->add_option("--theta", theta,
                                          "Uniform spacing dx = dt = dl_scaled = theta; "
                                          "accepts 2^-k notation");
        auto* dx_opt = cmd->add_option("--dx", dx, "Depth spacing");
        auto* dt_opt = cmd->add_option("--dt", dt, "Time spacing");
        auto* dl_opt = cmd->add_option("--dl", dl, "Wavelength spacing");
        auto* nx_opt = cmd->add_option("--nx", nx, "Depth interval count");
        auto* nt_opt = cmd->add_option("--nt", nt, "Time step count (0 = initial row only)");
        auto* nl_opt = cmd->add_option("--nl", nl, "Wavelength interval count");
        for (auto* opt : {dx_opt, dt_opt, dl_opt, nx_opt, nt_opt, nl_opt})
            theta_opt->excludes(opt);
        for (auto* opt : {nx_opt, nt_opt, nl_opt}) {
            dx_opt->excludes(opt);
            dt_opt->excludes(opt);
            dl_opt->excludes(opt);
        }
    }

    [[nodiscard]] GridSpec resolve(const ValidatedProblem& problem) const {
        if (!theta.empty()) return GridSpec::from_theta(problem, parse_theta(theta));
        if (dx || dt || dl) {
            if (!(dx && dt && dl))
                throw std::invalid_argument("config: --dx, --dt, --dl must be given together");
            return GridSpec::from_steps(problem, *dx, *dt, *dl);
        }
        if (nx || nt || nl) {
            if (!(nx && nt && nl))
                throw std::invalid_argument("config: --nx, --nt, --nl must be given together");
            return GridSpec::from_counts(problem, *nx, *nt, *nl);
        }
        throw std::invalid_argument("config: pass --theta, or --dx/--dt/--dl, or --nx/--nt/--nl");
    }
};

/// "0.125" or "2^-3".
double parse_theta(const std::string& text) {
    if (text.rfind("2^", 0) == 0) {
        const int exponent = std::stoi(text.substr(2));
        return std::ldexp(1.0, exponent);
    }
    return std::stod(text);
}

ordered_json grid_json(const GridSpec& grid) {
    return ordered_json{{"Nx", grid.Nx},          {"Nt", grid.Nt}, {"Nl", grid.Nl},
                        {"dx", grid.dx},          {"dt", grid.dt}, {"dl", grid.dl},
                        {"lambda0", grid.lambda0}};
}

void write_json_file(const std::filesystem::path& path, const ordered_json& value) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << value.dump(2) << '\n';
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    ordered_json resolved, const std::vector<std::string>& outputs) {
    ordered_json manifest;
    manifest["command"] = command;
    manifest["config"] = std::move(resolved);
    manifest["outputs"] = outputs;
    manifest["determinism"] = kDeterminismNote;
    manifest["version"] = kVersion;
    write_json_file(out_dir / "manifest.json", manifest);
}

std::filesystem::path ensure_out_dir(const std::string& out) {
    std::filesystem::path dir = out.empty() ? std::filesystem::path(".") : std::filesystem::path(out);
    std::filesystem::create_directories(dir);
    return dir;
}

/// Structural verdicts every produced field must satisfy; conservation is
/// checked to one unit in the last place of the largest initial value.
ordered_json field_verdicts(const SolutionField& c, const SolutionField& cB) {
    const FieldCheck check = check_field(c);
    double max_initial = 0.0;
    for (double value : c.row(0)) max_initial = std::max(max_initial, std::abs(value));
    const double tol = ulp_of(max_initial);
    const double residual = conservation_residual(c, cB);

    ordered_json verdict;
    verdict["scheme"] = c.scheme_name();
    verdict["strictly_positive"] = check.strictly_positive;
    verdict["columns_nonincreasing"] = check.columns_nonincreasing;
    verdict["min_value"] = check.min_value;
    verdict["min_at"] = ordered_json{{"n", check.min_n}, {"j", check.min_j}};
    verdict["conservation_residual"] = residual;
    verdict["conservation_tol"] = tol;
    verdict["conservation_ok"] = residual <= tol;
    verdict["ok"] =
        check.strictly_positive && check.columns_nonincreasing && residual <= tol;
    return verdict;
}

int cmd_run(const ProblemOptions& problem_opts, const SchemeOptions& scheme_opts,
            const GridOptions& grid_opts, const std::string& out) {
    const ValidatedProblem problem = problem_opts.resolve();
    const SchemeConfig config = scheme_opts.resolve();
    const GridSpec grid = grid_opts.resolve(problem);
    const std::filesystem::path out_dir = ensure_out_dir(out);

    const SolutionField field = run_simulation(problem, grid, config);
    const SolutionField product = product_concentration(field);

    std::map<std::string, std::string> provenance;
    provenance["problem"] = problem.describe();
    provenance["config"] = config.describe();
    provenance["version"] = kVersion;
    write_field_csv(out_dir / "field.csv", field, product, provenance);

    ordered_json verdict = field_verdicts(field, product);
    verdict["simulation"] = ordered_json{
        {"negative_seen", field.audit.negative_seen},
        {"monotonicity_violated", field.audit.monotonicity_violated},
        {"clamp_events", field.audit.clamp_events},
        {"max_residual", field.audit.max_residual},
        {"max_iterations", field.audit.max_iterations},
        {"newton_used", field.audit.newton_used},
    };
    write_json_file(out_dir / "audit.json", verdict);

    ordered_json resolved;
    resolved["problem"] = ordered_json::parse(problem_config_json(problem.spec()));
    resolved["scheme"] = config.describe();
    resolved["gamma_resolved"] = config.gamma ? *config.gamma : problem.max_f_probe();
    resolved["grid"] = grid_json(grid);
    write_manifest(out_dir, "run", std::move(resolved),
                   {"field.csv", "audit.json", "manifest.json"});

    std::cout << field.scheme_name() << " on " << problem_opts.label() << ": " << grid.Nt
              << " steps, " << grid.Nx << "x" << grid.Nl << " space-wavelength intervals; min c = "
              << format_round_trip(verdict["min_value"].get<double>())
              << (verdict["ok"].get<bool>() ? "; audit clean" : "; AUDIT FLAGS RAISED")
              << "; outputs in " << out_dir.string() << '\n';
    return 0;
}

int cmd_convergence(const ProblemOptions& problem_opts, const SchemeOptions& scheme_opts,
                    const std::vector<std::string>& theta_args, const std::string& ref_theta_arg,
                    const std::string& cache_dir, const std::string& out) {
    const ValidatedProblem problem = problem_opts.resolve();
    const SchemeConfig config = scheme_opts.resolve();
    if (theta_args.empty()) throw std::invalid_argument("config: pass at least one --theta");
    std::vector<double> thetas;
    thetas.reserve(theta_args.size());
    for (const std::string& arg : theta_args) thetas.push_back(parse_theta(arg));
    const double ref_theta = parse_theta(ref_theta_arg);
    const std::filesystem::path out_dir = ensure_out_dir(out);

    const ReferenceCache cache(cache_dir.empty() ? default_cache_dir()
                                                 : std::filesystem::path(cache_dir));
    const SolutionField reference = reference_solution(problem, ref_theta, &cache);
    const ConvergenceReport report = convergence_study(problem, config, thetas, reference);

    write_convergence_csv(out_dir / "convergence.csv", report);

    ordered_json resolved;
    resolved["problem"] = ordered_json::parse(problem_config_json(problem.spec()));
    resolved["scheme"] = config.describe();
    resolved["thetas"] = thetas;
    resolved["ref_theta"] = ref_theta;
    write_manifest(out_dir, "convergence", std::move(resolved),
                   {"convergence.csv", "manifest.json"});

    std::cout << "scheme=" << report.scheme << "  theta  error  order\n";
    for (const ConvergenceRow& row : report.rows) {
        std::cout << "  " << format_round_trip(row.theta) << "  " << format_round_trip(row.error)
                  << "  " << (std::isnan(row.order) ? std::string("-") : format_round_trip(row.order))
                  << '\n';
    }
    return 0;
}

int cmd_audit(const std::string& field_path) {
    const LoadedField loaded = read_field_csv(field_path);
    const ordered_json verdict = field_verdicts(loaded.c, loaded.cB);
    std::cout << verdict.dump(2) << '\n';
    if (!verdict["strictly_positive"].get<bool>()) {
        std::cout << "negativity: min value " << format_round_trip(verdict["min_value"].get<double>())
                  << " at n=" << verdict["min_at"]["n"] << " j=" << verdict["min_at"]["j"] << '\n';
    }
    return verdict["ok"].get<bool>() ? 0 : 1;
}

int cmd_series(const std::string& field_path, const std::string& metric,
               const ProblemOptions& problem_opts, const std::string& ref_path,
               const std::string& out) {
    const LoadedField loaded = read_field_csv(field_path);
    const GridSpec& grid = loaded.c.grid();
    std::vector<double> times(grid.Nt + 1);
    for (std::size_t n = 0; n <= grid.Nt; ++n) times[n] = grid.t(n);

    std::vector<double> values;
    if (metric == "m_c") {
        values = min_concentration_series(loaded.c);
    } else if (metric == "R_c") {
        const ValidatedProblem problem = problem_opts.resolve();
        values = total_reduction_series(loaded.c, problem);
    } else if (metric == "e_t") {
        if (ref_path.empty())
            throw std::invalid_argument("config: metric e_t needs --ref <field.csv>");
        const LoadedField reference = read_field_csv(ref_path);
        values = mean_space_error_series(loaded.c, reference.c);
    } else {
        throw std::invalid_argument("config: unknown metric '" + metric +
                                    "' (expected m_c, R_c, or e_t)");
    }

    const std::filesystem::path out_dir = ensure_out_dir(out);
    write_series_csv(out_dir / "series.csv", metric, times, values);

    ordered_json resolved;
    resolved["field"] = field_path;
    resolved["metric"] = metric;
    if (!ref_path.empty()) resolved["ref"] = ref_path;
    if (metric == "R_c") resolved["problem"] = problem_opts.label();
    write_manifest(out_dir, "series", std::move(resolved), {"series.csv", "manifest.json"});

    std::cout << metric << " over " << values.size() << " rows written to "
              << (out_dir / "series.csv").string() << '\n';
    return 0;
}

int cmd_weights(const std::string& label, std::size_t n, const std::string& out) {
    const WeightScheme scheme = make_weight_scheme(label);
    const std::vector<double> row = assemble_row(scheme, n);

    std::ostream* stream = &std::cout;
    std::ofstream file;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw std::runtime_error("cannot open " + out + " for writing");
        stream = &file;
    }
    *stream << "k,weight\n";
    for (std::size_t k = 0; k < row.size(); ++k)
        *stream << k << ',' << format_round_trip(row[k]) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positivity-preserving solvers for non-local photochemical kinetics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ProblemOptions run_problem, conv_problem, series_problem;
    SchemeOptions run_scheme, conv_scheme;
    GridOptions run_grid;
    std::string run_out = "out";
    std::string conv_out = "out";
    std::string series_out = "out";
    std::vector<std::string> conv_thetas;
    std::string conv_ref_theta = "2^-7";
    std::string conv_cache_dir;
    std::string audit_field;
    std::string series_field, series_metric, series_ref;
    std::string weights_label = "gregory-2";
    std::size_t weights_n = 8;
    std::string weights_out;

    CLI::App* run = app.add_subcommand("run", "Simulate and write the concentration field");
    run_problem.attach(run);
    run_scheme.attach(run);
    run_grid.attach(run);
    run->add_option("--out", run_out, "Output directory")->capture_default_str();

    CLI::App* conv =
        app.add_subcommand("convergence", "Error and observed-order study against a reference");
    conv_problem.attach(conv);
    conv_scheme.attach(conv);
    conv->add_option("--theta", conv_thetas, "Study spacing; repeat for several (2^-k ok)")
        ->required();
    conv->add_option("--ref-theta", conv_ref_theta, "Reference spacing")->capture_default_str();
    conv->add_option("--cache-dir", conv_cache_dir, "Reference cache directory")
        ->envname("PHOTOKIN_CACHE_DIR");
    conv->add_option("--out", conv_out, "Output directory")->capture_default_str();

    CLI::App* audit = app.add_subcommand("audit", "Re-check a stored field's guarantees");
    audit->add_option("field", audit_field, "Field CSV produced by run")->required();

    CLI::App* series = app.add_subcommand("series", "Extract a time series from a stored field");
    series->add_option("field", series_field, "Field CSV produced by run")->required();
    series->add_option("--metric", series_metric, "m_c (min), R_c (total reduction), e_t (error)")
        ->required();
    series_problem.attach(series);
    series->add_option("--ref", series_ref, "Reference field CSV for e_t");
    series->add_option("--out", series_out, "Output directory")->capture_default_str();

    CLI::App* weights = app.add_subcommand("weights", "Dump a quadrature weight row as CSV");
    weights->add_option("--weights", weights_label, "rectangular, trapezoidal, gregory-1, gregory-2")
        ->capture_default_str();
    weights->add_option("--n", weights_n, "Interval count for the row")->capture_default_str();
    weights->add_option("--out", weights_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_problem, run_scheme, run_grid, run_out);
        if (conv->parsed())
            return cmd_convergence(conv_problem, conv_scheme, conv_thetas, conv_ref_theta,
                                   conv_cache_dir, conv_out);
        if (audit->parsed()) return cmd_audit(audit_field);
        if (series->parsed())
            return cmd_series(series_field, series_metric, series_problem, series_ref, series_out);
        if (weights->parsed()) return cmd_weights(weights_label, weights_n, weights_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SolveError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
