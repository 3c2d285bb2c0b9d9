#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photokin/field.hpp"
#include "photokin/metrics.hpp"
#include "photokin/model.hpp"
#include "photokin/schemes.hpp"

namespace photokin {

/// Bundled problem library.
///   "test-1": analytic benchmark (gaussian initial profile, quadratic
///             emission, linear absorption) used by the convergence studies.
///   "test-2": thin-sample UV release experiment. Emission and absorption
///             curves are smooth analytic surrogates shaped after lamp and
///             chromophore data: qualitative, not measured spectra.
///   "test-3": pigment crust formation. Same caveat; the product absorbs
///             four times more strongly than the reactant.
[[nodiscard]] ProblemSpec builtin_problem_spec(std::string_view name);
[[nodiscard]] ValidatedProblem builtin_problem(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_problem_names();

/// Directory store of computed fields keyed by problem + scheme + grid.
/// A hit reproduces the stored field bit for bit.
class ReferenceCache {
public:
    explicit ReferenceCache(std::filesystem::path dir);

    [[nodiscard]] static std::string key_for(const ValidatedProblem& problem,
                                             const SchemeConfig& config, const GridSpec& grid);

    [[nodiscard]] std::optional<SolutionField> load(const std::string& key) const;
    void store(const std::string& key, const SolutionField& field) const;

    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
};

/// PHOTOKIN_CACHE_DIR if set, otherwise a photokin-cache directory under
/// the system temporary path.
[[nodiscard]] std::filesystem::path default_cache_dir();

/// The benchmark field all errors are measured against: a gregory-2
/// direct-quadrature run at uniform spacing theta_ref. Pass a cache to
/// reuse earlier computations; a miss computes and stores.
[[nodiscard]] SolutionField reference_solution(const ValidatedProblem& problem, double theta_ref,
                                               const ReferenceCache* cache = nullptr);

struct ConvergenceRow {
    double theta = 0.0;
    double error = 0.0;
    double order = 0.0;  ///< NaN on the coarsest row
    double seconds = 0.0;
};

struct ConvergenceReport {
    std::string scheme;
    std::vector<ConvergenceRow> rows;
};

/// Runs the scheme at each spacing (coarse to fine) and measures the mean
/// node error against the supplied reference plus the observed order
/// between consecutive rows.
[[nodiscard]] ConvergenceReport convergence_study(const ValidatedProblem& problem,
                                                  const SchemeConfig& config,
                                                  const std::vector<double>& thetas,
                                                  const SolutionField& reference);

/// Work-precision sweep over several schemes. Wall time is informational
/// and excluded from any determinism statement.
[[nodiscard]] std::vector<ConvergenceReport> timing_study(const ValidatedProblem& problem,
                                                          const std::vector<SchemeConfig>& configs,
                                                          const std::vector<double>& thetas,
                                                          const SolutionField& reference);

}  // namespace photokin
