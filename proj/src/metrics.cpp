#include "photokin/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "photokin/numerics.hpp"
#include "photokin/quadrature.hpp"

namespace photokin {

namespace {

std::size_t refinement_ratio(std::size_t fine, std::size_t coarse, const char* axis) {
    if (coarse == 0 || fine % coarse != 0) {
        throw std::invalid_argument(std::string("reference grid does not refine the field along ") +
                                    axis + " (" + std::to_string(fine) + " vs " +
                                    std::to_string(coarse) + " intervals)");
    }
    return fine / coarse;
}

}  // namespace

double mean_abs_error(const SolutionField& field, const SolutionField& reference) {
    const auto& g = field.grid();
    const auto& r = reference.grid();
    const std::size_t kx = refinement_ratio(r.Nx, g.Nx, "x");
    const std::size_t kt = refinement_ratio(r.Nt, g.Nt, "t");
    CompensatedSum acc;
    for (std::size_t n = 0; n <= g.Nt; ++n) {
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            acc.add(std::abs(field.at(n, j) - reference.at(n * kt, j * kx)));
        }
    }
    return acc.value() / (static_cast<double>(g.Nx + 1) * static_cast<double>(g.Nt + 1));
}

double eoc(double error_coarse, double error_fine) {
    if (!(error_coarse > 0.0) || !(error_fine > 0.0)) {
        throw std::invalid_argument("observed order needs strictly positive errors");
    }
    return std::log2(error_coarse / error_fine);
}

std::vector<double> min_concentration_series(const SolutionField& field) {
    std::vector<double> out(field.rows());
    for (std::size_t n = 0; n < field.rows(); ++n) {
        double m = field.at(n, 0);
        for (std::size_t j = 1; j < field.cols(); ++j) m = std::min(m, field.at(n, j));
        out[n] = m;
    }
    return out;
}

std::vector<double> total_reduction_series(const SolutionField& field,
                                           const ValidatedProblem& problem) {
    const auto& g = field.grid();
    const double denom = problem.C0(problem.spec().L);
    if (!(denom > 0.0)) {
        throw std::invalid_argument("total initial content C0(L) must be positive");
    }
    const WeightScheme trap = make_weight_scheme(WeightLabel::trapezoidal);
    const std::vector<double> row_weights = assemble_row(trap, g.Nx);
    std::vector<double> out(field.rows());
    for (std::size_t n = 0; n < field.rows(); ++n) {
        out[n] = composite_integral(row_weights, field.row(n), g.dx) / denom;
    }
    return out;
}

std::vector<double> mean_space_error_series(const SolutionField& field,
                                            const SolutionField& reference) {
    if (field.grid().Nx != reference.grid().Nx || field.grid().Nt != reference.grid().Nt) {
        throw std::invalid_argument("per-row error series needs same-grid fields");
    }
    std::vector<double> out(field.rows());
    for (std::size_t n = 0; n < field.rows(); ++n) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < field.cols(); ++j) {
            acc.add(std::abs(field.at(n, j) - reference.at(n, j)));
        }
        out[n] = acc.value() / static_cast<double>(field.grid().Nx + 1);
    }
    return out;
}

FieldCheck check_field(const SolutionField& field) {
    FieldCheck check;
    check.min_value = field.at(0, 0);
    for (std::size_t n = 0; n < field.rows(); ++n) {
        for (std::size_t j = 0; j < field.cols(); ++j) {
            const double v = field.at(n, j);
            if (v < check.min_value) {
                check.min_value = v;
                check.min_n = n;
                check.min_j = j;
            }
            if (!(v > 0.0)) check.strictly_positive = false;
            if (n > 0 && v > field.at(n - 1, j)) check.columns_nonincreasing = false;
        }
    }
    return check;
}

double conservation_residual(const SolutionField& c, const SolutionField& cB) {
    if (c.rows() != cB.rows() || c.cols() != cB.cols()) {
        throw std::invalid_argument("conservation check needs same-grid fields");
    }
    double worst = 0.0;
    for (std::size_t n = 0; n < c.rows(); ++n) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            worst = std::max(worst, std::abs((c.at(n, j) + cB.at(n, j)) - c.at(0, j)));
        }
    }
    return worst;
}

}  // namespace photokin
