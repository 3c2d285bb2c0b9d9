#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace photokin {

/// One scalar ingredient of a problem definition: either a named analytic
/// builtin with parameters, or a strictly increasing lookup table evaluated
/// by linear interpolation with constant extrapolation past the ends.
///
/// Builtins:
///   constant [a]          -> a
///   linear [a, b]         -> a + b*x
///   power [a, p]          -> a * x^p
///   gaussian [s]          -> exp(-x^2 / s),                s > 0
///   gauss_integral [s]    -> sqrt(s*pi)/2 * erf(x/sqrt(s)), s > 0
///   bump [A, c, w]        -> A * exp(1 - 1/(1-u^2)) for u=(x-c)/w, |u|<1,
///                            0 outside; w > 0
///   logistic [A, c, s]    -> A / (1 + exp((x-c)/s)),       s != 0
class FunctionSpec {
public:
    static FunctionSpec builtin(std::string name, std::vector<double> params);
    static FunctionSpec table(std::vector<double> xs, std::vector<double> ys);

    [[nodiscard]] double operator()(double x) const;

    [[nodiscard]] bool is_table() const noexcept { return is_table_; }
    [[nodiscard]] const std::string& builtin_name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<double>& params() const noexcept { return params_; }
    [[nodiscard]] const std::vector<double>& table_x() const noexcept { return xs_; }
    [[nodiscard]] const std::vector<double>& table_y() const noexcept { return ys_; }

    /// Number of evaluations that fell outside a table's abscissa range and
    /// were answered by constant extrapolation. Shared across copies.
    [[nodiscard]] std::uint64_t extrapolation_count() const noexcept;

    /// Canonical one-line serialization; equal specs produce equal strings.
    [[nodiscard]] std::string describe() const;

private:
    FunctionSpec() = default;

    bool is_table_ = false;
    std::string name_;
    std::vector<double> params_;
    std::vector<double> xs_, ys_;
    std::shared_ptr<std::atomic<std::uint64_t>> extrapolations_;
};

/// Named-operation alias for FunctionSpec::operator().
[[nodiscard]] inline double eval_function(const FunctionSpec& spec, double x) {
    return spec(x);
}

}  // namespace photokin
