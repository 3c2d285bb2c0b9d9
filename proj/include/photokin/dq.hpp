#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "photokin/field.hpp"
#include "photokin/fixed_point.hpp"
#include "photokin/quadrature.hpp"
#include "photokin/schemes.hpp"

namespace photokin {

/// Settings for the direct-quadrature scheme: a Gregory weight family gives
/// the time, depth, and wavelength quadratures; each step solves a
/// fixed-point system inside the box [lower bound, max initial value].
struct DqOptions {
    WeightScheme ws;          ///< gregory-1 or gregory-2
    PhiKind bootstrap_phi = PhiKind::phi1;  ///< denominator of the starting-value integrator
    double gamma = 0.0;
    double tol = 1e-14;
    std::size_t max_iter = 200;
    bool parallel = true;
};

/// Guaranteed lower bound for every entry the scheme can produce on this
/// grid: min initial value times exp of minus the worst-case quadrature
/// budget dt(Nt+1) * dl(Nl+1) * W^2 * R * F, where W bounds the weights, R
/// bounds rho, and F bounds f over the grid. May underflow to zero for
/// extreme step sizes, which keeps it a valid bound.
[[nodiscard]] double dq_lower_bound(const RunContext& ctx, const WeightScheme& ws);

/// Wavelength-quadrature profile of one field row: for every depth node j,
/// the weighted sum over wavelength nodes of rho(iota) evaluated at the
/// row's cumulative content S_j. lambda_row must be assemble_row(ws, Nl).
[[nodiscard]] std::vector<double> dq_row_profile(const RunContext& ctx, const WeightScheme& ws,
                                                 std::span<const double> lambda_row,
                                                 std::span<const double> row, bool parallel);

/// The step-n fixed-point map G. The first min(n0, Nx+1) depth components
/// of the output are pinned to the supplied strip values (the quadrature
/// rows give those shallow nodes no self-contained equation, so they ride
/// along as given data from the companion integrator). Every deeper
/// component j maps a candidate row x to
///   c0_j * exp(-dt dl f_j (sum_{p<n} a_p Q_j^p + a_n Q_j^n(x)))
/// with a = assemble_row(ws, n) and Q[p] the finalized profiles of rows
/// p = 0..n-1. The accepted row solves x = G(x).
[[nodiscard]] VectorMap dq_make_map(const RunContext& ctx, const DqOptions& opts, std::size_t n,
                                    const std::vector<std::vector<double>>& Q,
                                    std::span<const double> strip);

/// Solves step n into out_row, seeded from prev_row (clamped into the box)
/// with the strip components pinned, and returns the solver report.
SolveReport dq_solve_step(const RunContext& ctx, const DqOptions& opts, std::size_t n,
                          const std::vector<std::vector<double>>& Q,
                          std::span<const double> strip, std::span<const double> prev_row,
                          std::span<double> out_row);

/// Companion field that supplies everything the implicit solves treat as
/// given data: time rows 1..n0-1 and the first n0 depth components of every
/// later row. For gregory-1 this is a predictor-corrector run whose first
/// row is rebuilt from r = ceil(dt^{-1/2}) refined substeps (lifting its
/// accuracy to what the multistep start needs); for gregory-2 it is a full
/// gregory-1 run, itself carried by such a predictor-corrector companion.
/// The companion's solver statistics are folded into audit.
[[nodiscard]] SolutionField dq_companion_field(const RunContext& ctx, const DqOptions& opts,
                                               FieldAudit& audit);

/// Full integration: initial row, companion rows 1..n0-1, then one
/// implicit solve per remaining step with the companion supplying the
/// shallow strip. Fills field rows and audit.
void dq_run(const RunContext& ctx, const DqOptions& opts, SolutionField& field);

}  // namespace photokin
