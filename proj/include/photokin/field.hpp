#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "photokin/grid.hpp"

namespace photokin {

/// Runtime observations recorded while a field was produced. A set flag is
/// a property of the computed field, not necessarily an error: some schemes
/// guarantee positivity, others are allowed to lose it and say so here.
struct FieldAudit {
    bool negative_seen = false;
    std::size_t first_negative_n = 0, first_negative_j = 0;
    double most_negative = 0.0;

    bool monotonicity_violated = false;
    std::size_t first_violation_n = 0, first_violation_j = 0;

    std::size_t clamp_events = 0;       ///< iterates pushed back into the box
    double max_residual = 0.0;          ///< worst accepted fixed-point residual
    std::size_t max_iterations = 0;     ///< worst per-step iteration count
    std::size_t total_iterations = 0;
    bool newton_used = false;
};

/// Space-time concentration table: rows n = 0..Nt, columns j = 0..Nx,
/// stored row-major. Row 0 is the sampled initial profile.
class SolutionField {
public:
    SolutionField() = default;
    SolutionField(const GridSpec& grid, std::string scheme_name);

    [[nodiscard]] double& at(std::size_t n, std::size_t j) {
        return data_[n * (grid_.Nx + 1) + j];
    }
    [[nodiscard]] double at(std::size_t n, std::size_t j) const {
        return data_[n * (grid_.Nx + 1) + j];
    }
    [[nodiscard]] std::span<const double> row(std::size_t n) const {
        return std::span<const double>(data_).subspan(n * (grid_.Nx + 1), grid_.Nx + 1);
    }
    [[nodiscard]] std::span<double> row_mut(std::size_t n) {
        return std::span<double>(data_).subspan(n * (grid_.Nx + 1), grid_.Nx + 1);
    }

    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t rows() const noexcept { return grid_.Nt + 1; }
    [[nodiscard]] std::size_t cols() const noexcept { return grid_.Nx + 1; }
    [[nodiscard]] const std::string& scheme_name() const noexcept { return scheme_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }

    FieldAudit audit;

private:
    GridSpec grid_;
    std::string scheme_;
    std::vector<double> data_;
};

}  // namespace photokin
