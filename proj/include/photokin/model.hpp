#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "photokin/function_spec.hpp"

namespace photokin {

/// Complete description of one photodegradation problem: a species A with
/// depth profile c(x,t) on [0,L] is converted to a species B under light of
/// wavelengths [lambda0, lambda_star], with local rate
///   dc/dt = -c(x,t) f(x) * integral of rho(iota(lambda, x, t)) d lambda,
/// where iota is the attenuated intensity and rho the conversion response
///   rho(X) = a1 X / (X^2 + a2 X + 1).
///
/// C0 is the cumulative initial content, C0(x) = integral of c0 over [0,x].
/// Leave it unset to have validation derive it numerically from c0.
struct ProblemSpec {
    double L = 1.0;            ///< depth extent, x in [0, L]
    double T = 1.0;            ///< time horizon, t in [0, T]
    double lambda0 = 0.0;      ///< lower wavelength bound
    double lambda_star = 1.0;  ///< upper wavelength bound
    double a1 = 1.0;           ///< conversion response scale
    double a2 = 1.0;           ///< conversion response shape
    double mu = 1.0;           ///< attenuation constant
    FunctionSpec c0 = FunctionSpec::builtin("constant", {1.0});
    std::optional<FunctionSpec> C0;  ///< cumulative initial content; derive if unset
    FunctionSpec f = FunctionSpec::builtin("constant", {1.0});
    FunctionSpec I = FunctionSpec::builtin("constant", {1.0});
    FunctionSpec epsA = FunctionSpec::builtin("constant", {0.0});
    FunctionSpec epsB = FunctionSpec::builtin("constant", {0.0});
};

/// A ProblemSpec that passed validate_problem, plus derived quantities the
/// solvers need. Immutable and safe to share across threads.
class ValidatedProblem {
public:
    [[nodiscard]] const ProblemSpec& spec() const noexcept { return spec_; }

    [[nodiscard]] double c0(double x) const { return spec_.c0(x); }
    [[nodiscard]] double f(double x) const { return spec_.f(x); }
    [[nodiscard]] double I(double lambda) const { return spec_.I(lambda); }
    [[nodiscard]] double epsA(double lambda) const { return spec_.epsA(lambda); }
    [[nodiscard]] double epsB(double lambda) const { return spec_.epsB(lambda); }

    /// Cumulative initial content; analytic if provided, otherwise the
    /// derived piecewise-linear evaluator built during validation.
    [[nodiscard]] double C0(double x) const;

    /// Exact maximum of rho over X >= 0, namely a1 / (2 + a2), attained at X=1.
    [[nodiscard]] double rho_max() const noexcept { return rho_max_; }

    /// Maximum of f over the validation probe grid on [0, L].
    [[nodiscard]] double max_f_probe() const noexcept { return max_f_probe_; }

    /// Canonical serialization of the underlying spec (cache keys, manifests).
    [[nodiscard]] std::string describe() const;

private:
    friend ValidatedProblem validate_problem(ProblemSpec spec, std::size_t probe_points);

    ProblemSpec spec_;
    double rho_max_ = 0.0;
    double max_f_probe_ = 0.0;
    // Derived C0: cumulative trapezoid of c0 on a fixed fine grid, linearly
    // interpolated between cache nodes. Empty when C0 is analytic.
    std::vector<double> c0_cum_;
    double c0_cum_step_ = 0.0;
};

/// Checks the model assumptions on a probe grid (f >= 0 and c0 > 0 on [0,L];
/// I in [0,1] on [lambda0, lambda_star]; positive constants; well-ordered
/// bounds) and caches derived quantities. Throws std::invalid_argument with
/// the first violated assumption and its location.
[[nodiscard]] ValidatedProblem validate_problem(ProblemSpec spec, std::size_t probe_points = 513);

/// Conversion response rho(X) = a1 X / (X^2 + a2 X + 1). Requires X >= 0.
[[nodiscard]] double eval_rho(const ValidatedProblem& problem, double X);

/// Attenuated intensity at wavelength lambda, depth-cumulative initial
/// content C0x, and depth-cumulative current content S:
///   iota = I(lambda) * exp(-mu * (epsB(lambda) * C0x + (epsA - epsB)(lambda) * S)).
/// Requires lambda within [lambda0, lambda_star] up to roundoff slack.
[[nodiscard]] double eval_intensity(const ValidatedProblem& problem, double lambda, double C0x,
                                    double S);

}  // namespace photokin
