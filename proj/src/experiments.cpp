#include "photokin/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "photokin/numerics.hpp"

namespace photokin {

ProblemSpec builtin_problem_spec(std::string_view name) {
    if (name == "test-1") {
        ProblemSpec s;
        s.L = 1.0;
        s.T = 1.0;
        s.lambda0 = 0.0;
        s.lambda_star = 1.0;
        s.a1 = 1.0;
        s.a2 = 1.0;
        s.mu = 0.1;
        s.c0 = FunctionSpec::builtin("gaussian", {5.0});
        s.C0 = FunctionSpec::builtin("gauss_integral", {5.0});
        s.f = FunctionSpec::builtin("linear", {2.0, -1.0});
        s.I = FunctionSpec::builtin("power", {1.0, 2.0});
        s.epsA = FunctionSpec::builtin("linear", {5.0, 1.0});
        s.epsB = FunctionSpec::builtin("linear", {0.0, 1.0});
        return s;
    }
    if (name == "test-2") {
        // Thin aqueous sample, concentrations in micromolar, depths in cm,
        // times in seconds, wavelengths in nm. The lamp is a smooth band
        // around 365 nm; the absorption edges are logistic surrogates.
        ProblemSpec s;
        s.L = 5.5e-2;
        s.T = 180.0;
        s.lambda0 = 300.0;
        s.lambda_star = 400.0;
        s.a1 = 1.0;
        s.a2 = 1.0;
        s.mu = 1.0;
        s.c0 = FunctionSpec::builtin("constant", {100.0});
        s.C0.reset();
        s.f = FunctionSpec::builtin("linear", {0.0, 0.3});
        s.I = FunctionSpec::builtin("bump", {1.0, 365.0, 15.0});
        s.epsA = FunctionSpec::builtin("logistic", {2.5e-3, 370.0, 15.0});
        s.epsB = FunctionSpec::builtin("logistic", {1.2e-3, 340.0, 12.0});
        return s;
    }
    if (name == "test-3") {
        // Pigment layer, concentrations in mol/cm^3, depths in cm, times in
        // seconds, wavelengths in nm. The reaction front advances from the
        // illuminated face; the product absorbs four times more strongly.
        ProblemSpec s;
        s.L = 7.0e-3;
        s.T = 3600.0;
        s.lambda0 = 300.0;
        s.lambda_star = 512.33;
        s.a1 = 1.0;
        s.a2 = 1.0;
        s.mu = 1.0;
        s.c0 = FunctionSpec::builtin("constant", {3.34e-2});
        s.C0.reset();
        const double k = 1.0e-3 * (1.0 - 5.77e-7 / 1.22e-6);
        s.f = FunctionSpec::builtin("linear", {k * s.L, -k});
        s.I = FunctionSpec::builtin("logistic", {0.95, 420.0, -40.0});
        s.epsA = FunctionSpec::builtin("logistic", {1.2e5, 500.0, 8.0});
        s.epsB = FunctionSpec::builtin("logistic", {4.8e5, 500.0, 8.0});
        return s;
    }
    throw std::invalid_argument("unknown builtin problem '" + std::string(name) + "'");
}

ValidatedProblem builtin_problem(std::string_view name) {
    return validate_problem(builtin_problem_spec(name));
}

std::vector<std::string> builtin_problem_names() { return {"test-1", "test-2", "test-3"}; }

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string grid_describe(const GridSpec& g) {
    std::ostringstream out;
    out << "Nx=" << g.Nx << ";Nt=" << g.Nt << ";Nl=" << g.Nl << ";dx=" << format_round_trip(g.dx)
        << ";dt=" << format_round_trip(g.dt) << ";dl=" << format_round_trip(g.dl)
        << ";lambda0=" << format_round_trip(g.lambda0);
    return out.str();
}

}  // namespace

ReferenceCache::ReferenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string ReferenceCache::key_for(const ValidatedProblem& problem, const SchemeConfig& config,
                                    const GridSpec& grid) {
    // The leading tag doubles as a solver-generation stamp: bumping it
    // orphans every cached field computed by older kernels.
    const std::string text =
        "photokin-3|" + problem.describe() + "|" + config.describe() + "|" + grid_describe(grid);
    std::ostringstream out;
    out << std::hex << fnv1a(text);
    return out.str();
}

std::optional<SolutionField> ReferenceCache::load(const std::string& key) const {
    const std::filesystem::path path = dir_ / (key + ".field");
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string magic, scheme, grid_line;
    if (!std::getline(in, magic) || magic != "photokin-field-1") return std::nullopt;
    if (!std::getline(in, scheme)) return std::nullopt;
    if (!std::getline(in, grid_line)) return std::nullopt;
    GridSpec g;
    {
        std::istringstream gs(grid_line);
        std::string dx, dt, dl, l0;
        if (!(gs >> g.Nx >> g.Nt >> g.Nl >> dx >> dt >> dl >> l0)) return std::nullopt;
        g.dx = std::strtod(dx.c_str(), nullptr);
        g.dt = std::strtod(dt.c_str(), nullptr);
        g.dl = std::strtod(dl.c_str(), nullptr);
        g.lambda0 = std::strtod(l0.c_str(), nullptr);
    }
    SolutionField field(g, scheme);
    const std::size_t count = field.rows() * field.cols();
    std::vector<double> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) return std::nullopt;
    for (std::size_t n = 0; n < field.rows(); ++n) {
        for (std::size_t j = 0; j < field.cols(); ++j) {
            field.at(n, j) = buf[n * field.cols() + j];
        }
    }
    return field;
}

void ReferenceCache::store(const std::string& key, const SolutionField& field) const {
    const std::filesystem::path path = dir_ / (key + ".field");
    const std::filesystem::path tmp = dir_ / (key + ".field.tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        const auto& g = field.grid();
        out << "photokin-field-1\n" << field.scheme_name() << "\n";
        out << g.Nx << ' ' << g.Nt << ' ' << g.Nl << ' ' << format_round_trip(g.dx) << ' '
            << format_round_trip(g.dt) << ' ' << format_round_trip(g.dl) << ' '
            << format_round_trip(g.lambda0) << "\n";
        out.write(reinterpret_cast<const char*>(field.data().data()),
                  static_cast<std::streamsize>(field.data().size() * sizeof(double)));
    }
    std::filesystem::rename(tmp, path);
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("PHOTOKIN_CACHE_DIR"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return std::filesystem::temp_directory_path() / "photokin-cache";
}

SolutionField reference_solution(const ValidatedProblem& problem, double theta_ref,
                                 const ReferenceCache* cache) {
    SchemeConfig config;
    config.scheme = SchemeId::dq;
    config.weights = WeightLabel::gregory2;
    const GridSpec grid = GridSpec::from_theta(problem, theta_ref);
    if (cache != nullptr) {
        const std::string key = ReferenceCache::key_for(problem, config, grid);
        if (auto hit = cache->load(key)) return std::move(*hit);
        SolutionField field = run_simulation(problem, grid, config);
        cache->store(key, field);
        return field;
    }
    return run_simulation(problem, grid, config);
}

ConvergenceReport convergence_study(const ValidatedProblem& problem, const SchemeConfig& config,
                                    const std::vector<double>& thetas,
                                    const SolutionField& reference) {
    ConvergenceReport report;
    report.scheme = config.variant_name();
    for (double theta : thetas) {
        const GridSpec grid = GridSpec::from_theta(problem, theta);
        const auto start = std::chrono::steady_clock::now();
        const SolutionField field = run_simulation(problem, grid, config);
        const auto stop = std::chrono::steady_clock::now();
        ConvergenceRow row;
        row.theta = theta;
        row.seconds = std::chrono::duration<double>(stop - start).count();
        row.error = mean_abs_error(field, reference);
        row.order = report.rows.empty()
                        ? std::numeric_limits<double>::quiet_NaN()
                        : eoc(report.rows.back().error, row.error);
        report.rows.push_back(row);
    }
    return report;
}

std::vector<ConvergenceReport> timing_study(const ValidatedProblem& problem,
                                            const std::vector<SchemeConfig>& configs,
                                            const std::vector<double>& thetas,
                                            const SolutionField& reference) {
    std::vector<ConvergenceReport> reports;
    reports.reserve(configs.size());
    for (const auto& config : configs) {
        reports.push_back(convergence_study(problem, config, thetas, reference));
    }
    return reports;
}

}  // namespace photokin
