#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "photokin/metrics.hpp"
#include "photokin/numerics.hpp"
#include "photokin/schemes.hpp"
#include "support/random_problems.hpp"

using namespace photokin;

namespace {

/// Small problem with every ingredient nontrivial, for single-step oracles.
ValidatedProblem oracle_problem() {
    ProblemSpec s;
    s.L = 0.8;
    s.T = 1.0;
    s.lambda0 = 0.3;
    s.lambda_star = 1.5;
    s.a1 = 2.1;
    s.a2 = 0.7;
    s.mu = 0.9;
    s.c0 = FunctionSpec::builtin("linear", {0.8, 0.5});
    s.f = FunctionSpec::builtin("gaussian", {2.0});
    s.I = FunctionSpec::builtin("logistic", {0.85, 0.9, 0.25});
    s.epsA = FunctionSpec::builtin("linear", {0.4, 0.3});
    s.epsB = FunctionSpec::builtin("constant", {0.2});
    return validate_problem(s);
}

/// Independent response evaluation straight from the model functions.
double oracle_rho_iota(const ValidatedProblem& p, double lambda, double C0x, double S) {
    const double deps = p.epsA(lambda) - p.epsB(lambda);
    const double iota = p.I(lambda) * std::exp(-p.spec().mu * (p.epsB(lambda) * C0x + deps * S));
    return p.spec().a1 * iota / (iota * iota + p.spec().a2 * iota + 1.0);
}

/// Left-rectangle partial integrals of a row: S_j = dx * sum of the first j.
std::vector<double> oracle_rect_prefix(const std::vector<double>& row, double dx) {
    std::vector<double> S(row.size(), 0.0);
    long double acc = 0.0L;
    for (std::size_t j = 1; j < row.size(); ++j) {
        acc += row[j - 1];
        S[j] = dx * static_cast<double>(acc);
    }
    return S;
}

/// Trapezoid partial integrals of a row; S_0 = 0.
std::vector<double> oracle_trap_prefix(const std::vector<double>& row, double dx) {
    std::vector<double> S(row.size(), 0.0);
    long double acc = 0.0L;
    for (std::size_t j = 1; j < row.size(); ++j) {
        acc += 0.5L * (row[j - 1] + row[j]);
        S[j] = dx * static_cast<double>(acc);
    }
    return S;
}

/// Wavelength nodes 0..Nl-1 of the response at depth node j (left rectangle).
double oracle_open_sum(const ValidatedProblem& p, const GridSpec& g, std::size_t j, double S) {
    const double C0x = p.C0(g.x(j));
    long double acc = 0.0L;
    for (std::size_t l = 0; l < g.Nl; ++l) acc += oracle_rho_iota(p, g.lambda(l), C0x, S);
    return static_cast<double>(acc);
}

std::vector<double> initial_row(const ValidatedProblem& p, const GridSpec& g) {
    std::vector<double> row(g.Nx + 1);
    for (std::size_t j = 0; j <= g.Nx; ++j) row[j] = p.c0(g.x(j));
    return row;
}

}  // namespace

TEST_CASE("scheme and denominator names round-trip") {
    for (auto id : {SchemeId::nsfd, SchemeId::rq, SchemeId::ftrq, SchemeId::pc, SchemeId::dq}) {
        CHECK(scheme_from_name(scheme_name(id)) == id);
    }
    CHECK(scheme_name(SchemeId::nsfd) == "nsfd");
    CHECK(scheme_name(SchemeId::dq) == "dq");
    CHECK_THROWS_AS((void)scheme_from_name("euler"), std::invalid_argument);

    for (auto kind : {PhiKind::phi1, PhiKind::phi2, PhiKind::phi3}) {
        CHECK(phi_from_name(phi_name(kind)) == kind);
    }
    CHECK_THROWS_AS((void)phi_from_name("phi4"), std::invalid_argument);
}

TEST_CASE("denominator transforms match their formulas") {
    const double dt = 0.37;
    const double gamma = 1.8;
    CHECK(denominator_phi(PhiKind::phi1, dt, gamma) == dt);
    CHECK(denominator_phi(PhiKind::phi2, dt, gamma) == dt * (1.0 + gamma * dt));
    CHECK(denominator_phi(PhiKind::phi3, dt, gamma) ==
          doctest::Approx((1.0 - std::exp(-gamma * dt)) / gamma).epsilon(1e-15));

    // gamma = 0 degenerates the exponential transform to dt itself.
    CHECK(denominator_phi(PhiKind::phi3, dt, 0.0) == dt);

    // Ordering for positive gamma: phi3 < phi1 < phi2.
    CHECK(denominator_phi(PhiKind::phi3, dt, gamma) < dt);
    CHECK(denominator_phi(PhiKind::phi2, dt, gamma) > dt);

    // All agree with dt to second order: differences shrink like dt^2.
    const double small = 1e-5;
    CHECK(std::abs(denominator_phi(PhiKind::phi2, small, gamma) - small) ==
          doctest::Approx(gamma * small * small).epsilon(1e-9));
    CHECK(std::abs(denominator_phi(PhiKind::phi3, small, gamma) - small) <
          gamma * small * small);

    CHECK_THROWS_AS((void)denominator_phi(PhiKind::phi1, 0.0, gamma), std::invalid_argument);
    CHECK_THROWS_AS((void)denominator_phi(PhiKind::phi1, -0.1, gamma), std::invalid_argument);
}

TEST_CASE("scheme configuration labels") {
    SchemeConfig c;
    c.scheme = SchemeId::nsfd;
    CHECK(c.variant_name() == "nsfd");
    c.scheme = SchemeId::dq;
    c.weights = WeightLabel::gregory1;
    CHECK(c.variant_name() == "dq-gregory-1");
    c.weights = WeightLabel::gregory2;
    CHECK(c.variant_name() == "dq-gregory-2");

    const std::string d = c.describe();
    CHECK(d.find("scheme=dq") != std::string::npos);
    CHECK(d.find("weights=gregory-2") != std::string::npos);
    CHECK(d.find("phi=phi1") != std::string::npos);

    SchemeConfig rq;
    rq.scheme = SchemeId::rq;
    CHECK(rq.describe() == "scheme=rq");
}

TEST_CASE("run context caches the grid samples") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 5, 2, 6);
    RunContext ctx(p, g);

    for (std::size_t j = 0; j <= g.Nx; ++j) {
        CHECK(ctx.f_node()[j] == p.f(g.x(j)));
        CHECK(ctx.c0_node()[j] == p.c0(g.x(j)));
        CHECK(ctx.C0_node()[j] == p.C0(g.x(j)));
    }
    double lo = ctx.c0_node()[0], hi = lo, fmax = 0.0;
    for (std::size_t j = 0; j <= g.Nx; ++j) {
        lo = std::min(lo, ctx.c0_node()[j]);
        hi = std::max(hi, ctx.c0_node()[j]);
        fmax = std::max(fmax, ctx.f_node()[j]);
    }
    CHECK(ctx.min_c0_grid() == lo);
    CHECK(ctx.max_c0_grid() == hi);
    CHECK(ctx.max_f_grid() >= fmax);
    CHECK(ctx.max_f_grid() >= p.max_f_probe());

    for (std::size_t l = 0; l <= g.Nl; ++l) {
        const double got = ctx.rho_iota(l, 0.31, 0.12);
        const double want = oracle_rho_iota(p, g.lambda(l), 0.31, 0.12);
        CHECK(got == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("single steps match straight-line oracles") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 3, 1, 4);
    RunContext ctx(p, g);
    const auto row0 = initial_row(p, g);
    const auto S = oracle_rect_prefix(row0, g.dx);
    std::vector<double> out(g.Nx + 1);

    SUBCASE("nonstandard denominator step") {
        const double phi = 0.21;
        nsfd_step(ctx, phi, row0, out, false);
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            const double A = oracle_open_sum(p, g, j, S[j]);
            const double want = row0[j] / (1.0 + phi * g.dl * p.f(g.x(j)) * A);
            CHECK(out[j] == doctest::Approx(want).epsilon(1e-13));
        }
    }

    SUBCASE("exponential decay step") {
        rq_step(ctx, g.dt, row0, out, false);
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            const double A = oracle_open_sum(p, g, j, S[j]);
            const double want = row0[j] * std::exp(-g.dt * g.dl * p.f(g.x(j)) * A);
            CHECK(out[j] == doctest::Approx(want).epsilon(1e-13));
        }
    }

    SUBCASE("forward bracket step") {
        ftrq_step(ctx, g.dt, row0, out, false);
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            const double A = oracle_open_sum(p, g, j, S[j]);
            const double want = row0[j] * (1.0 - p.f(g.x(j)) * g.dt * g.dl * A);
            CHECK(out[j] == doctest::Approx(want).epsilon(1e-13));
        }
    }

    SUBCASE("predictor-corrector step") {
        const double phi = denominator_phi(PhiKind::phi2, g.dt, p.max_f_probe());
        pc_step(ctx, phi, g.dt, row0, out, false);

        std::vector<double> pred(g.Nx + 1);
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            const double A = oracle_open_sum(p, g, j, S[j]);
            pred[j] = row0[j] / (1.0 + phi * g.dl * p.f(g.x(j)) * A);
        }
        const auto Tprev = oracle_trap_prefix(row0, g.dx);
        const auto Tpred = oracle_trap_prefix(pred, g.dx);
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            const double C0x = p.C0(g.x(j));
            long double acc = 0.0L;
            for (std::size_t l = 0; l <= g.Nl; ++l) {
                const double w = (l == 0 || l == g.Nl) ? 0.5 : 1.0;
                acc += w * (oracle_rho_iota(p, g.lambda(l), C0x, Tprev[j]) +
                            oracle_rho_iota(p, g.lambda(l), C0x, Tpred[j]));
            }
            const double want =
                row0[j] *
                std::exp(-0.5 * g.dt * g.dl * p.f(g.x(j)) * static_cast<double>(acc));
            CHECK(out[j] == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("steps reject nonpositive input rows") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 3, 1, 4);
    RunContext ctx(p, g);
    std::vector<double> bad = {1.0, 0.0, 1.0, 1.0};
    std::vector<double> out(4);
    CHECK_THROWS_AS(nsfd_step(ctx, 0.1, bad, out, false), std::runtime_error);
    CHECK_THROWS_AS(rq_step(ctx, 0.1, bad, out, false), std::runtime_error);
    CHECK_THROWS_AS(pc_step(ctx, 0.1, 0.1, bad, out, false), std::runtime_error);
    // The forward bracket scheme continues through sign changes by design.
    CHECK_NOTHROW(ftrq_step(ctx, 0.1, bad, out, false));
}

TEST_CASE("zero decay rate leaves every scheme at the initial profile") {
    ProblemSpec s;
    s.L = 1.0;
    s.T = 2.0;
    s.lambda0 = 0.2;
    s.lambda_star = 1.0;
    s.c0 = FunctionSpec::builtin("linear", {0.5, 1.0});
    s.f = FunctionSpec::builtin("constant", {0.0});
    s.I = FunctionSpec::builtin("constant", {0.8});
    const auto p = validate_problem(s);
    const auto g = GridSpec::from_counts(p, 4, 3, 3);

    for (auto scheme : {SchemeId::nsfd, SchemeId::rq, SchemeId::ftrq, SchemeId::pc, SchemeId::dq}) {
        for (auto weights : {WeightLabel::gregory1, WeightLabel::gregory2}) {
            SchemeConfig cfg;
            cfg.scheme = scheme;
            cfg.weights = weights;
            const auto field = run_simulation(p, g, cfg);
            for (std::size_t n = 0; n <= g.Nt; ++n) {
                for (std::size_t j = 0; j <= g.Nx; ++j) {
                    CHECK(field.at(n, j) == field.at(0, j));
                }
            }
            CHECK_FALSE(field.audit.negative_seen);
            CHECK_FALSE(field.audit.monotonicity_violated);
            if (scheme != SchemeId::dq) break;
        }
    }
}

TEST_CASE("forward bracket goes negative where the nonstandard scheme cannot") {
    ProblemSpec s;
    s.L = 1.0;
    s.T = 10.0;
    s.lambda0 = 0.0;
    s.lambda_star = 1.0;
    s.a1 = 3.0;
    s.a2 = 1.0;
    s.mu = 0.1;
    s.c0 = FunctionSpec::builtin("constant", {1.0});
    s.f = FunctionSpec::builtin("constant", {10.0});
    s.I = FunctionSpec::builtin("constant", {1.0});
    s.epsA = FunctionSpec::builtin("constant", {0.1});
    s.epsB = FunctionSpec::builtin("constant", {0.1});
    const auto p = validate_problem(s);
    const auto g = GridSpec::from_counts(p, 2, 1, 4);

    SchemeConfig cfg;
    cfg.scheme = SchemeId::ftrq;
    const auto ftrq = run_simulation(p, g, cfg);
    CHECK(ftrq.audit.negative_seen);
    CHECK(ftrq.audit.first_negative_n == 1);
    CHECK(ftrq.audit.most_negative < 0.0);

    cfg.scheme = SchemeId::nsfd;
    const auto nsfd = run_simulation(p, g, cfg);
    CHECK_FALSE(nsfd.audit.negative_seen);
    CHECK_FALSE(nsfd.audit.monotonicity_violated);
    const auto check = check_field(nsfd);
    CHECK(check.strictly_positive);
    CHECK(check.columns_nonincreasing);
}

TEST_CASE("positivity and monotone decay on randomized problems at wild steps") {
    std::mt19937_64 rng(20240817u);
    for (int trial = 0; trial < 12; ++trial) {
        const auto p = validate_problem(testsupport::random_spec(rng));
        const auto g = testsupport::random_grid(p, rng, 1.0 / 64.0, 100.0);
        CAPTURE(trial);
        CAPTURE(g.dt);

        const std::vector<std::pair<SchemeId, PhiKind>> variants = {
            {SchemeId::nsfd, PhiKind::phi1}, {SchemeId::nsfd, PhiKind::phi2},
            {SchemeId::nsfd, PhiKind::phi3}, {SchemeId::rq, PhiKind::phi1},
            {SchemeId::pc, PhiKind::phi2}};
        for (const auto& [scheme, phi] : variants) {
            SchemeConfig cfg;
            cfg.scheme = scheme;
            cfg.phi = phi;
            const auto field = run_simulation(p, g, cfg);
            const auto check = check_field(field);
            CHECK(check.strictly_positive);
            CHECK(check.columns_nonincreasing);
            CHECK_FALSE(field.audit.negative_seen);
            CHECK_FALSE(field.audit.monotonicity_violated);

            const auto product = product_concentration(field);
            double c0max = 0.0;
            for (std::size_t j = 0; j <= g.Nx; ++j) c0max = std::max(c0max, field.at(0, j));
            CHECK(conservation_residual(field, product) <= ulp_of(c0max));
        }
    }
}

TEST_CASE("product field mirrors the consumed concentration") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 4, 5, 4);
    SchemeConfig cfg;
    cfg.scheme = SchemeId::rq;
    const auto field = run_simulation(p, g, cfg);
    const auto product = product_concentration(field);

    CHECK(product.scheme_name() == "product(rq)");
    CHECK(product.rows() == field.rows());
    for (std::size_t j = 0; j <= g.Nx; ++j) CHECK(product.at(0, j) == 0.0);
    for (std::size_t n = 0; n <= g.Nt; ++n) {
        for (std::size_t j = 0; j <= g.Nx; ++j) {
            CHECK(product.at(n, j) == field.at(0, j) - field.at(n, j));
            if (n > 0) CHECK(product.at(n, j) >= product.at(n - 1, j));
        }
    }
}

TEST_CASE("zero-step run keeps only the sampled initial row") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 5, 0, 4);
    SchemeConfig cfg;
    cfg.scheme = SchemeId::nsfd;
    const auto field = run_simulation(p, g, cfg);
    CHECK(field.rows() == 1);
    for (std::size_t j = 0; j <= g.Nx; ++j) CHECK(field.at(0, j) == p.c0(g.x(j)));
    CHECK_FALSE(field.audit.negative_seen);
}

TEST_CASE("repeated runs are bit-identical") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 6, 4, 5);
    for (auto scheme : {SchemeId::nsfd, SchemeId::rq, SchemeId::pc, SchemeId::dq}) {
        SchemeConfig cfg;
        cfg.scheme = scheme;
        cfg.phi = PhiKind::phi2;
        const auto a = run_simulation(p, g, cfg);
        const auto b = run_simulation(p, g, cfg);
        CHECK(a.data() == b.data());
    }
}

TEST_CASE("dq rejects first-order weight families") {
    const auto p = oracle_problem();
    const auto g = GridSpec::from_counts(p, 3, 2, 3);
    SchemeConfig cfg;
    cfg.scheme = SchemeId::dq;
    cfg.weights = WeightLabel::rectangular;
    CHECK_THROWS_AS((void)run_simulation(p, g, cfg), std::invalid_argument);
    cfg.weights = WeightLabel::trapezoidal;
    CHECK_THROWS_AS((void)run_simulation(p, g, cfg), std::invalid_argument);
}
