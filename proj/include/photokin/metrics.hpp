#pragma once

#include <cstddef>
#include <vector>

#include "photokin/field.hpp"
#include "photokin/model.hpp"

namespace photokin {

/// Mean absolute node error against a reference on the same or an
/// integer-refined grid: the plain mean of |c - C| over every node of the
/// coarse field, boundaries included. Reference values are taken at
/// coincident nodes; the refinement ratios along x and t must be whole
/// numbers.
[[nodiscard]] double mean_abs_error(const SolutionField& field, const SolutionField& reference);

/// Observed order between two errors from a step halving: log2(Ec / Ef).
[[nodiscard]] double eoc(double error_coarse, double error_fine);

/// Minimum concentration over depth at each time row.
[[nodiscard]] std::vector<double> min_concentration_series(const SolutionField& field);

/// Remaining fraction of the initial content at each time row: trapezoid
/// integral of the row over depth, divided by C0(L).
[[nodiscard]] std::vector<double> total_reduction_series(const SolutionField& field,
                                                         const ValidatedProblem& problem);

/// Mean absolute depth error per time row against a same-grid reference.
[[nodiscard]] std::vector<double> mean_space_error_series(const SolutionField& field,
                                                          const SolutionField& reference);

/// Structural checks evaluated on a finished field.
struct FieldCheck {
    bool strictly_positive = true;
    bool columns_nonincreasing = true;
    double min_value = 0.0;
    std::size_t min_n = 0, min_j = 0;
};

[[nodiscard]] FieldCheck check_field(const SolutionField& field);

/// Worst-case |(c + cB) - c(0,.)| over all nodes; exact conservation holds
/// to one unit in the last place of the largest initial value.
[[nodiscard]] double conservation_residual(const SolutionField& c, const SolutionField& cB);

}  // namespace photokin
