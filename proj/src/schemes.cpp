#include "photokin/schemes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "photokin/dq.hpp"
#include "photokin/numerics.hpp"
#include "photokin/parallel.hpp"

namespace photokin {

SchemeId scheme_from_name(std::string_view name) {
    if (name == "nsfd") return SchemeId::nsfd;
    if (name == "rq") return SchemeId::rq;
    if (name == "ftrq") return SchemeId::ftrq;
    if (name == "pc") return SchemeId::pc;
    if (name == "dq") return SchemeId::dq;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::nsfd: return "nsfd";
        case SchemeId::rq: return "rq";
        case SchemeId::ftrq: return "ftrq";
        case SchemeId::pc: return "pc";
        case SchemeId::dq: return "dq";
    }
    return "?";
}

PhiKind phi_from_name(std::string_view name) {
    if (name == "phi1") return PhiKind::phi1;
    if (name == "phi2") return PhiKind::phi2;
    if (name == "phi3") return PhiKind::phi3;
    throw std::invalid_argument("unknown denominator '" + std::string(name) + "'");
}

std::string_view phi_name(PhiKind kind) {
    switch (kind) {
        case PhiKind::phi1: return "phi1";
        case PhiKind::phi2: return "phi2";
        case PhiKind::phi3: return "phi3";
    }
    return "?";
}

double denominator_phi(PhiKind kind, double dt, double gamma) {
    if (!(dt > 0.0)) throw std::invalid_argument("denominator transform needs dt > 0");
    switch (kind) {
        case PhiKind::phi1: return dt;
        case PhiKind::phi2: return dt * (1.0 + gamma * dt);
        case PhiKind::phi3: return gamma == 0.0 ? dt : -std::expm1(-gamma * dt) / gamma;
    }
    throw std::invalid_argument("unknown denominator kind");
}

std::string SchemeConfig::describe() const {
    std::ostringstream out;
    out << "scheme=" << scheme_name(scheme);
    if (scheme == SchemeId::nsfd || scheme == SchemeId::pc || scheme == SchemeId::dq) {
        out << ";phi=" << phi_name(phi);
        if (gamma.has_value()) out << ";gamma=" << format_round_trip(*gamma);
    }
    if (scheme == SchemeId::dq) {
        out << ";weights=" << weight_label_name(weights)
            << ";tol=" << format_round_trip(solver_tol) << ";max_iter=" << solver_max_iter;
    }
    return out.str();
}

std::string SchemeConfig::variant_name() const {
    if (scheme == SchemeId::dq) {
        return std::string(scheme_name(scheme)) + "-" + std::string(weight_label_name(weights));
    }
    return std::string(scheme_name(scheme));
}

RunContext::RunContext(const ValidatedProblem& problem, const GridSpec& grid)
    : problem_(&problem), grid_(grid) {
    const auto& s = problem.spec();
    mu_ = s.mu;
    a1_ = s.a1;
    a2_ = s.a2;

    f_.resize(grid.Nx + 1);
    c0_.resize(grid.Nx + 1);
    C0_.resize(grid.Nx + 1);
    for (std::size_t j = 0; j <= grid.Nx; ++j) {
        const double x = grid.x(j);
        f_[j] = problem.f(x);
        c0_[j] = problem.c0(x);
        C0_[j] = problem.C0(x);
        if (!(c0_[j] > 0.0)) {
            throw std::invalid_argument("initial profile not positive at grid node " +
                                        std::to_string(j));
        }
        if (!(f_[j] >= 0.0)) {
            throw std::invalid_argument("f negative at grid node " + std::to_string(j));
        }
    }
    max_f_ = std::max(f_[0], problem.max_f_probe());
    min_c0_ = max_c0_ = c0_[0];
    for (std::size_t j = 1; j <= grid.Nx; ++j) {
        max_f_ = std::max(max_f_, f_[j]);
        min_c0_ = std::min(min_c0_, c0_[j]);
        max_c0_ = std::max(max_c0_, c0_[j]);
    }

    I_.resize(grid.Nl + 1);
    epsB_.resize(grid.Nl + 1);
    deps_.resize(grid.Nl + 1);
    for (std::size_t l = 0; l <= grid.Nl; ++l) {
        const double lambda = grid.lambda(l);
        I_[l] = problem.I(lambda);
        epsB_[l] = problem.epsB(lambda);
        deps_[l] = problem.epsA(lambda) - epsB_[l];
        if (!(I_[l] >= 0.0)) {
            throw std::invalid_argument("emission negative at wavelength node " +
                                        std::to_string(l));
        }
    }
}

namespace {

void require_positive_row(std::span<const double> row, const char* scheme) {
    for (double v : row) {
        if (!(v > 0.0)) {
            throw std::runtime_error(std::string(scheme) +
                                     " step received a nonpositive input row");
        }
    }
}

/// Left-rectangle wavelength sum of rho(iota) at depth node j: nodes
/// 0..Nl-1, ascending, compensated.
double open_wavelength_sum(const RunContext& ctx, std::size_t j, double S) {
    const double C0x = ctx.C0_node()[j];
    CompensatedSum acc;
    for (std::size_t l = 0; l < ctx.grid().Nl; ++l) acc.add(ctx.rho_iota(l, C0x, S));
    return acc.value();
}

const WeightScheme& rect_scheme() {
    static const WeightScheme ws = make_weight_scheme(WeightLabel::rectangular);
    return ws;
}

const WeightScheme& trap_scheme() {
    static const WeightScheme ws = make_weight_scheme(WeightLabel::trapezoidal);
    return ws;
}

}  // namespace

void nsfd_step(const RunContext& ctx, double phi_value, std::span<const double> row_in,
               std::span<double> row_out, bool parallel) {
    require_positive_row(row_in, "nsfd");
    const auto& g = ctx.grid();
    const std::vector<double> S = cumulative_integral(rect_scheme(), row_in, g.dx);
    parallel_for(parallel, g.Nx + 1, [&](std::size_t j) {
        const double A = open_wavelength_sum(ctx, j, S[j]);
        const double denom = 1.0 + ((phi_value * g.dl) * ctx.f_node()[j]) * A;
        row_out[j] = row_in[j] / denom;
    });
}

void rq_step(const RunContext& ctx, double dt, std::span<const double> row_in,
             std::span<double> row_out, bool parallel) {
    require_positive_row(row_in, "rq");
    const auto& g = ctx.grid();
    const std::vector<double> S = cumulative_integral(rect_scheme(), row_in, g.dx);
    parallel_for(parallel, g.Nx + 1, [&](std::size_t j) {
        const double A = open_wavelength_sum(ctx, j, S[j]);
        row_out[j] = row_in[j] * std::exp(-((dt * g.dl) * ctx.f_node()[j]) * A);
    });
}

void ftrq_step(const RunContext& ctx, double dt, std::span<const double> row_in,
               std::span<double> row_out, bool parallel) {
    const auto& g = ctx.grid();
    const std::vector<double> S = cumulative_integral(rect_scheme(), row_in, g.dx);
    parallel_for(parallel, g.Nx + 1, [&](std::size_t j) {
        const double A = open_wavelength_sum(ctx, j, S[j]);
        const double bracket = 1.0 - ((ctx.f_node()[j] * dt) * g.dl) * A;
        row_out[j] = row_in[j] * bracket;
    });
}

void pc_step(const RunContext& ctx, double phi_value, double dt, std::span<const double> row_prev,
             std::span<double> row_out, bool parallel) {
    require_positive_row(row_prev, "pc");
    const auto& g = ctx.grid();
    const std::size_t J = g.Nx + 1;

    // Predictor: one nonstandard step from the previous row.
    const std::vector<double> P = cumulative_integral(rect_scheme(), row_prev, g.dx);
    std::vector<double> pred(J);
    parallel_for(parallel, J, [&](std::size_t j) {
        const double A = open_wavelength_sum(ctx, j, P[j]);
        pred[j] = row_prev[j] / (1.0 + ((phi_value * g.dl) * ctx.f_node()[j]) * A);
    });

    // Corrector: trapezoid in wavelength, averaging the responses of the
    // previous row and the predictor (trapezoid in time across the step).
    const std::vector<double> Tprev = cumulative_integral(trap_scheme(), row_prev, g.dx);
    const std::vector<double> Tpred = cumulative_integral(trap_scheme(), pred, g.dx);
    parallel_for(parallel, J, [&](std::size_t j) {
        const double C0x = ctx.C0_node()[j];
        CompensatedSum acc;
        for (std::size_t l = 0; l <= g.Nl; ++l) {
            const double beta = ctx.rho_iota(l, C0x, Tprev[j]);
            const double gamma = ctx.rho_iota(l, C0x, Tpred[j]);
            const double w = (l == 0 || l == g.Nl) ? 0.5 : 1.0;
            acc.add(w * (beta + gamma));
        }
        row_out[j] = row_prev[j] *
                     std::exp(-(((0.5 * dt) * g.dl) * ctx.f_node()[j]) * acc.value());
    });
}

namespace {

void scan_field_audit(SolutionField& field) {
    auto& audit = field.audit;
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();
    for (std::size_t n = 0; n < rows; ++n) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = field.at(n, j);
            if (v < 0.0) {
                if (!audit.negative_seen) {
                    audit.negative_seen = true;
                    audit.first_negative_n = n;
                    audit.first_negative_j = j;
                }
                audit.most_negative = std::min(audit.most_negative, v);
            }
            if (n > 0 && v > field.at(n - 1, j) && !audit.monotonicity_violated) {
                audit.monotonicity_violated = true;
                audit.first_violation_n = n;
                audit.first_violation_j = j;
            }
        }
    }
}

}  // namespace

SolutionField run_simulation(const ValidatedProblem& problem, const GridSpec& grid,
                             const SchemeConfig& config) {
    RunContext ctx(problem, grid);
    SolutionField field(grid, config.variant_name());
    auto row0 = field.row_mut(0);
    for (std::size_t j = 0; j <= grid.Nx; ++j) row0[j] = ctx.c0_node()[j];

    const double gamma = config.gamma.value_or(problem.max_f_probe());
    switch (config.scheme) {
        case SchemeId::nsfd: {
            const double phi = denominator_phi(config.phi, grid.dt, gamma);
            for (std::size_t n = 0; n < grid.Nt; ++n) {
                nsfd_step(ctx, phi, field.row(n), field.row_mut(n + 1), config.parallel);
            }
            break;
        }
        case SchemeId::rq: {
            for (std::size_t n = 0; n < grid.Nt; ++n) {
                rq_step(ctx, grid.dt, field.row(n), field.row_mut(n + 1), config.parallel);
            }
            break;
        }
        case SchemeId::ftrq: {
            for (std::size_t n = 0; n < grid.Nt; ++n) {
                ftrq_step(ctx, grid.dt, field.row(n), field.row_mut(n + 1), config.parallel);
            }
            break;
        }
        case SchemeId::pc: {
            const double phi = denominator_phi(config.phi, grid.dt, gamma);
            for (std::size_t n = 0; n < grid.Nt; ++n) {
                pc_step(ctx, phi, grid.dt, field.row(n), field.row_mut(n + 1), config.parallel);
            }
            break;
        }
        case SchemeId::dq: {
            if (config.weights != WeightLabel::gregory1 && config.weights != WeightLabel::gregory2) {
                throw std::invalid_argument("dq scheme requires gregory-1 or gregory-2 weights");
            }
            DqOptions opts;
            opts.ws = make_weight_scheme(config.weights);
            opts.bootstrap_phi = config.phi;
            opts.gamma = gamma;
            opts.tol = config.solver_tol;
            opts.max_iter = config.solver_max_iter;
            opts.parallel = config.parallel;
            dq_run(ctx, opts, field);
            break;
        }
    }
    scan_field_audit(field);
    return field;
}

SolutionField product_concentration(const SolutionField& field) {
    SolutionField out(field.grid(), "product(" + field.scheme_name() + ")");
    const std::size_t rows = field.rows();
    const std::size_t cols = field.cols();
    for (std::size_t n = 0; n < rows; ++n) {
        for (std::size_t j = 0; j < cols; ++j) {
            out.at(n, j) = field.at(0, j) - field.at(n, j);
        }
    }
    return out;
}

}  // namespace photokin
