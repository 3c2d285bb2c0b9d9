#include "photokin/quadrature.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "photokin/numerics.hpp"

namespace photokin {

namespace {

// Row for the overlap range n0 <= n <= 2*n0-2: both end-correction spans
// applied additively on top of the unit row. Symmetric, positive, and
// moment-matched for each family (the correction deficits always total
// the same amount at either end).
std::vector<double> overlap_row(const WeightScheme& scheme, std::size_t n) {
    std::vector<double> row(n + 1, 1.0);
    for (std::size_t k = 0; k < scheme.n0; ++k) {
        row[k] += scheme.corrections[k] - 1.0;
        row[n - k] += scheme.corrections[k] - 1.0;
    }
    return row;
}

}  // namespace

WeightScheme make_weight_scheme(WeightLabel label) {
    WeightScheme s;
    s.label = label;
    switch (label) {
        case WeightLabel::rectangular:
            s.n0 = 1;
            s.corrections = {};
            s.max_weight = 1.0;
            break;
        case WeightLabel::trapezoidal:
            s.n0 = 1;
            s.corrections = {0.5};
            s.max_weight = 1.0;
            break;
        case WeightLabel::gregory1:
            s.n0 = 2;
            s.corrections = {5.0 / 12.0, 13.0 / 12.0};
            // The n=2 overlap row peaks at 7/6, above the 13/12 of the
            // long rows.
            s.max_weight = 7.0 / 6.0;
            break;
        case WeightLabel::gregory2:
            s.n0 = 3;
            s.corrections = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
            s.max_weight = 7.0 / 6.0;
            break;
    }
    return s;
}

WeightScheme make_weight_scheme(std::string_view label) {
    if (label == "rectangular") return make_weight_scheme(WeightLabel::rectangular);
    if (label == "trapezoidal") return make_weight_scheme(WeightLabel::trapezoidal);
    if (label == "gregory-1") return make_weight_scheme(WeightLabel::gregory1);
    if (label == "gregory-2") return make_weight_scheme(WeightLabel::gregory2);
    throw std::invalid_argument("unknown weight scheme '" + std::string(label) + "'");
}

std::string_view weight_label_name(WeightLabel label) {
    switch (label) {
        case WeightLabel::rectangular: return "rectangular";
        case WeightLabel::trapezoidal: return "trapezoidal";
        case WeightLabel::gregory1: return "gregory-1";
        case WeightLabel::gregory2: return "gregory-2";
    }
    return "?";
}

std::vector<double> assemble_row(const WeightScheme& scheme, std::size_t n) {
    if (n < 1) throw std::invalid_argument("quadrature row needs at least one interval");
    if (scheme.label == WeightLabel::rectangular) {
        return std::vector<double>(n, 1.0);
    }
    if (n < scheme.n0) {
        // Too short for even one correction span: composite trapezoid.
        std::vector<double> row(n + 1, 1.0);
        row.front() = 0.5;
        row.back() = 0.5;
        return row;
    }
    if (n + 1 < 2 * scheme.n0) return overlap_row(scheme, n);
    std::vector<double> row(n + 1, 1.0);
    for (std::size_t k = 0; k < scheme.n0; ++k) {
        row[k] = scheme.corrections[k];
        row[n - k] = scheme.corrections[k];
    }
    return row;
}

double composite_integral(std::span<const double> row, std::span<const double> values,
                          double step) {
    if (row.size() != values.size()) {
        throw std::invalid_argument("weight row and sample lengths differ (" +
                                    std::to_string(row.size()) + " vs " +
                                    std::to_string(values.size()) + ")");
    }
    CompensatedSum acc;
    for (std::size_t k = 0; k < row.size(); ++k) acc.add(row[k] * values[k]);
    return step * acc.value();
}

std::vector<double> cumulative_integral(const WeightScheme& scheme,
                                        std::span<const double> values, double step) {
    const std::size_t count = values.size();
    std::vector<double> out(count, 0.0);
    if (count == 0) return out;

    if (scheme.label == WeightLabel::rectangular) {
        CompensatedSum acc;
        for (std::size_t j = 1; j < count; ++j) {
            acc.add(values[j - 1]);
            out[j] = step * acc.value();
        }
        return out;
    }

    const std::size_t n0 = scheme.n0;
    // Short ranges take their n-dependent rows directly.
    const std::size_t ceiling = std::min(count, 2 * n0 - 1);
    for (std::size_t j = 1; j < ceiling; ++j) {
        const std::vector<double> row = assemble_row(scheme, j);
        CompensatedSum acc;
        for (std::size_t k = 0; k <= j; ++k) acc.add(row[k] * values[k]);
        out[j] = step * acc.value();
    }
    if (count <= 2 * n0 - 1) return out;

    CompensatedSum head;  // correction-weighted first n0 nodes
    for (std::size_t k = 0; k < n0; ++k) head.add(scheme.corrections[k] * values[k]);
    const double head_sum = head.value();

    CompensatedSum interior;  // unit-weight nodes n0 .. j-n0
    for (std::size_t j = 2 * n0 - 1; j < count; ++j) {
        if (j >= 2 * n0) interior.add(values[j - n0]);
        CompensatedSum acc;
        acc.add(head_sum);
        acc.add(interior.value());
        for (std::size_t k = j - n0 + 1; k <= j; ++k) {
            acc.add(scheme.corrections[j - k] * values[k]);
        }
        out[j] = step * acc.value();
    }
    return out;
}

}  // namespace photokin
