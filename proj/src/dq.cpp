#include "photokin/dq.hpp"

#include <algorithm>
#include <cmath>

#include "photokin/numerics.hpp"
#include "photokin/parallel.hpp"

namespace photokin {

namespace {

void aggregate(FieldAudit& audit, const SolveReport& report) {
    audit.max_residual = std::max(audit.max_residual, report.residual);
    const std::size_t iters = report.iterations + report.newton_iterations;
    audit.max_iterations = std::max(audit.max_iterations, iters);
    audit.total_iterations += iters;
    audit.clamp_events += report.clamp_events;
    audit.newton_used = audit.newton_used || report.newton_used;
}

void fold(FieldAudit& audit, const FieldAudit& inner) {
    audit.max_residual = std::max(audit.max_residual, inner.max_residual);
    audit.max_iterations = std::max(audit.max_iterations, inner.max_iterations);
    audit.total_iterations += inner.total_iterations;
    audit.clamp_events += inner.clamp_events;
    audit.newton_used = audit.newton_used || inner.newton_used;
}

/// Number of leading depth components carried by the companion rather than
/// solved: the quadrature rows give nodes j < n0 no self-contained equation.
std::size_t strip_width(const GridSpec& g, const WeightScheme& ws) {
    return std::min<std::size_t>(ws.n0, g.Nx + 1);
}

}  // namespace

double dq_lower_bound(const RunContext& ctx, const WeightScheme& ws) {
    const auto& g = ctx.grid();
    const double W = ws.max_weight;
    const double R = ctx.problem().rho_max();
    const double F = ctx.max_f_grid();
    const double budget = ((g.dt * static_cast<double>(g.Nt + 1)) *
                           (g.dl * static_cast<double>(g.Nl + 1))) *
                          ((W * W) * R) * F;
    return ctx.min_c0_grid() * std::exp(-budget);
}

std::vector<double> dq_row_profile(const RunContext& ctx, const WeightScheme& ws,
                                   std::span<const double> lambda_row,
                                   std::span<const double> row, bool parallel) {
    const auto& g = ctx.grid();
    const std::vector<double> S = cumulative_integral(ws, row, g.dx);
    std::vector<double> out(g.Nx + 1);
    parallel_for(parallel, g.Nx + 1, [&](std::size_t j) {
        const double C0x = ctx.C0_node()[j];
        CompensatedSum acc;
        for (std::size_t l = 0; l <= g.Nl; ++l) {
            acc.add(lambda_row[l] * ctx.rho_iota(l, C0x, S[j]));
        }
        out[j] = acc.value();
    });
    return out;
}

VectorMap dq_make_map(const RunContext& ctx, const DqOptions& opts, std::size_t n,
                      const std::vector<std::vector<double>>& Q,
                      std::span<const double> strip) {
    const auto& g = ctx.grid();
    const std::size_t J = g.Nx + 1;
    const std::vector<double> a = assemble_row(opts.ws, n);
    const std::vector<double> lambda_row = assemble_row(opts.ws, g.Nl);
    const std::size_t ns = strip_width(g, opts.ws);
    std::vector<double> pinned(strip.begin(), strip.begin() + static_cast<std::ptrdiff_t>(ns));

    // History term: time-quadrature of the finalized profiles.
    std::vector<double> H(J);
    parallel_for(opts.parallel, J, [&](std::size_t j) {
        CompensatedSum acc;
        for (std::size_t p = 0; p < n; ++p) acc.add(a[p] * Q[p][j]);
        H[j] = acc.value();
    });

    const double an = a[n];
    const WeightScheme ws = opts.ws;
    const bool parallel = opts.parallel;
    return [&ctx, ws, lambda_row = std::move(lambda_row), H = std::move(H),
            pinned = std::move(pinned), an, parallel](const std::vector<double>& x) {
        const auto& grid = ctx.grid();
        const std::vector<double> Qn = dq_row_profile(ctx, ws, lambda_row, x, parallel);
        std::vector<double> out(x.size());
        parallel_for(parallel, x.size(), [&](std::size_t j) {
            if (j < pinned.size()) {
                out[j] = pinned[j];
                return;
            }
            const double e = ((grid.dt * grid.dl) * ctx.f_node()[j]) * (H[j] + an * Qn[j]);
            out[j] = ctx.c0_node()[j] * std::exp(-e);
        });
        return out;
    };
}

SolveReport dq_solve_step(const RunContext& ctx, const DqOptions& opts, std::size_t n,
                          const std::vector<std::vector<double>>& Q,
                          std::span<const double> strip, std::span<const double> prev_row,
                          std::span<double> out_row) {
    const double lo = dq_lower_bound(ctx, opts.ws);
    const double hi = ctx.max_c0_grid();
    std::vector<double> x(prev_row.begin(), prev_row.end());
    const std::size_t ns = strip_width(ctx.grid(), opts.ws);
    std::copy(strip.begin(), strip.begin() + static_cast<std::ptrdiff_t>(ns), x.begin());
    const VectorMap map = dq_make_map(ctx, opts, n, Q, strip);
    SolveReport report = solve_fixed_point(map, x, lo, hi, opts.tol, opts.max_iter);
    std::copy(x.begin(), x.end(), out_row.begin());
    return report;
}

SolutionField dq_companion_field(const RunContext& ctx, const DqOptions& opts,
                                 FieldAudit& audit) {
    const auto& g = ctx.grid();
    if (opts.ws.n0 >= 3) {
        // One family down: a full gregory-1 run supplies the gregory-2
        // starting rows and strip, and recursively builds its own
        // predictor-corrector companion.
        DqOptions lower = opts;
        lower.ws = make_weight_scheme(WeightLabel::gregory1);
        SolutionField companion(g, "dq-gregory-1");
        auto row0 = companion.row_mut(0);
        std::copy(ctx.c0_node().begin(), ctx.c0_node().end(), row0.begin());
        dq_run(ctx, lower, companion);
        fold(audit, companion.audit);
        return companion;
    }

    // Predictor-corrector march. The first row is rebuilt from refined
    // substeps: r steps of size dt/r accumulate a local error of order
    // dt * (dt/r)^2, which with r = ceil(dt^{-1/2}) meets the start
    // accuracy the multistep families need.
    SolutionField companion(g, "pc");
    auto row0 = companion.row_mut(0);
    std::copy(ctx.c0_node().begin(), ctx.c0_node().end(), row0.begin());
    if (g.Nt == 0) return companion;

    {
        const auto r = static_cast<std::size_t>(std::ceil(1.0 / std::sqrt(g.dt)));
        const double dts = g.dt / static_cast<double>(r);
        const double phi = denominator_phi(opts.bootstrap_phi, dts, opts.gamma);
        std::vector<double> cur(ctx.c0_node().begin(), ctx.c0_node().end());
        std::vector<double> next(g.Nx + 1);
        for (std::size_t s = 0; s < r; ++s) {
            pc_step(ctx, phi, dts, cur, next, opts.parallel);
            cur.swap(next);
        }
        std::copy(cur.begin(), cur.end(), companion.row_mut(1).begin());
    }
    const double phi = denominator_phi(opts.bootstrap_phi, g.dt, opts.gamma);
    for (std::size_t n = 1; n < g.Nt; ++n) {
        pc_step(ctx, phi, g.dt, companion.row(n), companion.row_mut(n + 1), opts.parallel);
    }
    return companion;
}

void dq_run(const RunContext& ctx, const DqOptions& opts, SolutionField& field) {
    const auto& g = ctx.grid();
    const std::size_t n0 = opts.ws.n0;
    const std::size_t ns = strip_width(g, opts.ws);

    const SolutionField companion = dq_companion_field(ctx, opts, field.audit);
    const std::size_t nstart = std::min(n0 - 1, g.Nt);
    for (std::size_t m = 1; m <= nstart; ++m) {
        auto row = field.row_mut(m);
        std::copy(companion.row(m).begin(), companion.row(m).end(), row.begin());
    }
    if (g.Nt < n0) return;

    if (ns == g.Nx + 1) {
        // Every depth node is strip: nothing left to solve, the field is
        // the companion.
        for (std::size_t n = n0; n <= g.Nt; ++n) {
            auto row = field.row_mut(n);
            std::copy(companion.row(n).begin(), companion.row(n).end(), row.begin());
        }
        return;
    }

    const std::vector<double> lambda_row = assemble_row(opts.ws, g.Nl);
    std::vector<std::vector<double>> Q;
    Q.reserve(g.Nt);
    for (std::size_t p = 0; p < n0; ++p) {
        Q.push_back(dq_row_profile(ctx, opts.ws, lambda_row, field.row(p), opts.parallel));
    }
    for (std::size_t n = n0; n <= g.Nt; ++n) {
        const std::span<const double> strip = companion.row(n).subspan(0, ns);
        const SolveReport report =
            dq_solve_step(ctx, opts, n, Q, strip, field.row(n - 1), field.row_mut(n));
        aggregate(field.audit, report);
        if (n < g.Nt) {
            Q.push_back(dq_row_profile(ctx, opts.ws, lambda_row, field.row(n), opts.parallel));
        }
    }
}

}  // namespace photokin
