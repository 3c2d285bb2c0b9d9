#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace photokin {

enum class WeightLabel { rectangular, trapezoidal, gregory1, gregory2 };

/// A family of uniform-grid quadrature rules sharing one set of boundary
/// correction weights. The closed families produce, for n intervals, the
/// symmetric row
///   {s_0, ..., s_{n0-1}, 1, ..., 1, s_{n0-1}, ..., s_0}
/// once n is large enough for the two correction spans to coexist
/// (n >= 2*n0 - 1). For n0 <= n <= 2*n0 - 2 the spans overlap and both
/// corrections apply additively on top of the unit row — the standard
/// starting-weight construction for short convolution ranges, which keeps
/// the family's moment accuracy there; below n0 the row is the composite
/// trapezoid. Every emitted weight is positive and constants integrate
/// exactly. The rectangular family is open on the right: n unit weights
/// on nodes 0..n-1, matching the left-rectangle sums of the first-order
/// schemes.
struct WeightScheme {
    WeightLabel label = WeightLabel::trapezoidal;
    std::size_t n0 = 1;                 ///< correction span length
    std::vector<double> corrections;    ///< s_0..s_{n0-1}; empty for rectangular
    double max_weight = 1.0;            ///< bound over every row the family emits
};

/// Labels: "rectangular", "trapezoidal", "gregory-1", "gregory-2".
[[nodiscard]] WeightScheme make_weight_scheme(std::string_view label);
[[nodiscard]] WeightScheme make_weight_scheme(WeightLabel label);

[[nodiscard]] std::string_view weight_label_name(WeightLabel label);

/// Weight row for n intervals: n+1 entries for the closed families,
/// n entries (nodes 0..n-1) for rectangular. Requires n >= 1.
[[nodiscard]] std::vector<double> assemble_row(const WeightScheme& scheme, std::size_t n);

/// step * sum of row[k]*values[k], compensated, left to right.
/// Requires equal lengths.
[[nodiscard]] double composite_integral(std::span<const double> row,
                                        std::span<const double> values, double step);

/// All partial integrals S_j over [0, j*step] of the sampled values,
/// j = 0..values.size()-1, each consistent with composite_integral of
/// assemble_row(scheme, j). S_0 = 0. Runs in O(n * n0) with a fixed
/// summation order independent of any threading.
[[nodiscard]] std::vector<double> cumulative_integral(const WeightScheme& scheme,
                                                      std::span<const double> values,
                                                      double step);

}  // namespace photokin
