#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "photokin/field.hpp"
#include "photokin/grid.hpp"
#include "photokin/model.hpp"
#include "photokin/quadrature.hpp"

namespace photokin {

enum class SchemeId { nsfd, rq, ftrq, pc, dq };
enum class PhiKind { phi1, phi2, phi3 };

[[nodiscard]] SchemeId scheme_from_name(std::string_view name);
[[nodiscard]] std::string_view scheme_name(SchemeId id);
[[nodiscard]] PhiKind phi_from_name(std::string_view name);
[[nodiscard]] std::string_view phi_name(PhiKind kind);

/// Step-size transform in the nonstandard denominators:
///   phi1 = dt
///   phi2 = dt * (1 + gamma * dt)
///   phi3 = (1 - exp(-gamma * dt)) / gamma
/// All agree with dt to O(dt^2). gamma = 0 degenerates phi3 to its limit dt.
[[nodiscard]] double denominator_phi(PhiKind kind, double dt, double gamma);

struct SchemeConfig {
    SchemeId scheme = SchemeId::nsfd;
    PhiKind phi = PhiKind::phi1;
    /// Decay-rate constant in phi2/phi3; defaults to the validated problem's
    /// max of f.
    std::optional<double> gamma;
    /// Quadrature family for the dq scheme (gregory-1 or gregory-2).
    WeightLabel weights = WeightLabel::gregory2;
    double solver_tol = 1e-14;
    std::size_t solver_max_iter = 200;
    /// OpenMP kernels when set; the plain serial loops otherwise. Both
    /// produce identical bits; the flag exists for testing and benchmarks.
    bool parallel = true;

    [[nodiscard]] std::string describe() const;
    /// Variant label recorded on produced fields ("nsfd", "dq-gregory-2", ...).
    [[nodiscard]] std::string variant_name() const;
};

/// Per-run immutable node caches: the problem ingredients sampled on the
/// grid once, shared read-only by all workers.
class RunContext {
public:
    RunContext(const ValidatedProblem& problem, const GridSpec& grid);

    [[nodiscard]] const ValidatedProblem& problem() const noexcept { return *problem_; }
    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }

    [[nodiscard]] const std::vector<double>& f_node() const noexcept { return f_; }
    [[nodiscard]] const std::vector<double>& c0_node() const noexcept { return c0_; }
    [[nodiscard]] const std::vector<double>& C0_node() const noexcept { return C0_; }

    [[nodiscard]] double max_f_grid() const noexcept { return max_f_; }
    [[nodiscard]] double min_c0_grid() const noexcept { return min_c0_; }
    [[nodiscard]] double max_c0_grid() const noexcept { return max_c0_; }

    /// rho of the attenuated intensity at wavelength node l, given the
    /// cumulative initial content C0x and cumulative current content S at
    /// the evaluation depth. The intensity is nonnegative by construction,
    /// so this stays inside rho's domain.
    [[nodiscard]] double rho_iota(std::size_t l, double C0x, double S) const noexcept {
        const double iota = I_[l] * std::exp(-mu_ * (epsB_[l] * C0x + deps_[l] * S));
        return a1_ * iota / ((iota + a2_) * iota + 1.0);
    }

private:
    const ValidatedProblem* problem_;
    GridSpec grid_;
    std::vector<double> f_, c0_, C0_;
    std::vector<double> I_, epsB_, deps_;
    double mu_ = 0.0, a1_ = 0.0, a2_ = 0.0;
    double max_f_ = 0.0, min_c0_ = 0.0, max_c0_ = 0.0;
};

/// One step of the nonstandard scheme: divide by 1 plus phi_value times the
/// left-rectangle wavelength sum of rho over the attenuated intensity.
/// Preserves positivity and monotone decay for any step size.
void nsfd_step(const RunContext& ctx, double phi_value, std::span<const double> row_in,
               std::span<double> row_out, bool parallel);

/// One step of the exponential-decay scheme: multiply by exp of minus dt
/// times the same wavelength sum. Positivity- and monotonicity-preserving.
void rq_step(const RunContext& ctx, double dt, std::span<const double> row_in,
             std::span<double> row_out, bool parallel);

/// One forward-in-time step: multiply by the bracket 1 - f dt dlambda sum.
/// The bracket may go negative at large steps; that outcome is recorded in
/// the audit rather than treated as an error.
void ftrq_step(const RunContext& ctx, double dt, std::span<const double> row_in,
               std::span<double> row_out, bool parallel);

/// One predictor-corrector step: nonstandard predictor from the previous
/// row, then a corrector averaging the wavelength-trapezoid response of the
/// previous row and the predictor inside an exponential update. Second
/// order in time; positivity- and monotonicity-preserving.
void pc_step(const RunContext& ctx, double phi_value, double dt, std::span<const double> row_prev,
             std::span<double> row_out, bool parallel);

/// Integrates the problem over the grid with the configured scheme and
/// returns the concentration field with its audit filled in.
[[nodiscard]] SolutionField run_simulation(const ValidatedProblem& problem, const GridSpec& grid,
                                           const SchemeConfig& config);

/// Product-species field under exact pairwise conservation:
/// cB(n, j) = c(0, j) - c(n, j).
[[nodiscard]] SolutionField product_concentration(const SolutionField& field);

}  // namespace photokin
