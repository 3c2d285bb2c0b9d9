#include "photokin/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "photokin/numerics.hpp"

namespace photokin {

namespace {

constexpr std::size_t kDerivedC0Nodes = (std::size_t{1} << 12) + 1;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

double ValidatedProblem::C0(double x) const {
    if (spec_.C0.has_value()) return (*spec_.C0)(x);
    // Clamped linear interpolation of the cumulative cache.
    if (x <= 0.0) return c0_cum_.front();
    if (x >= spec_.L) return c0_cum_.back();
    const double pos = x / c0_cum_step_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= c0_cum_.size() - 1) i = c0_cum_.size() - 2;
    const double t = pos - static_cast<double>(i);
    return c0_cum_[i] + t * (c0_cum_[i + 1] - c0_cum_[i]);
}

std::string ValidatedProblem::describe() const {
    std::ostringstream out;
    out << "L=" << format_round_trip(spec_.L) << ";T=" << format_round_trip(spec_.T)
        << ";lambda0=" << format_round_trip(spec_.lambda0)
        << ";lambda_star=" << format_round_trip(spec_.lambda_star)
        << ";a1=" << format_round_trip(spec_.a1) << ";a2=" << format_round_trip(spec_.a2)
        << ";mu=" << format_round_trip(spec_.mu) << ";c0=" << spec_.c0.describe()
        << ";C0=" << (spec_.C0 ? spec_.C0->describe() : std::string("derive"))
        << ";f=" << spec_.f.describe() << ";I=" << spec_.I.describe()
        << ";epsA=" << spec_.epsA.describe() << ";epsB=" << spec_.epsB.describe();
    return out.str();
}

ValidatedProblem validate_problem(ProblemSpec spec, std::size_t probe_points) {
    if (probe_points < 2) fail("validation needs at least two probe points");
    if (!(spec.L > 0.0)) fail("depth extent L must be positive");
    if (!(spec.T > 0.0)) fail("time horizon T must be positive");
    if (!(spec.lambda_star > spec.lambda0)) {
        fail("wavelength bounds must satisfy lambda0 < lambda_star");
    }
    if (!(spec.a1 > 0.0)) fail("response constant a1 must be positive");
    if (!(spec.a2 > 0.0)) fail("response constant a2 must be positive");
    if (!(spec.mu > 0.0)) fail("attenuation constant mu must be positive");

    const auto probe = [&](const FunctionSpec& fn, double lo, double hi, auto&& check) {
        const double step = (hi - lo) / static_cast<double>(probe_points - 1);
        for (std::size_t i = 0; i < probe_points; ++i) {
            const double x = (i + 1 == probe_points) ? hi : grid_node(i, step, lo);
            check(x, fn(x));
        }
    };

    probe(spec.f, 0.0, spec.L, [](double x, double v) {
        if (!(v >= 0.0)) {
            fail("f(x) must be nonnegative on [0, L]; f(" + format_round_trip(x) + ") = " +
                 format_round_trip(v));
        }
    });
    probe(spec.c0, 0.0, spec.L, [](double x, double v) {
        if (!(v > 0.0)) {
            fail("c0(x) must be positive on [0, L]; c0(" + format_round_trip(x) + ") = " +
                 format_round_trip(v));
        }
    });
    probe(spec.I, spec.lambda0, spec.lambda_star, [](double lambda, double v) {
        if (!(v >= 0.0) || !(v <= 1.0)) {
            fail("I(lambda) must lie in [0, 1]; I(" + format_round_trip(lambda) + ") = " +
                 format_round_trip(v));
        }
    });

    ValidatedProblem out;
    out.rho_max_ = spec.a1 / (2.0 + spec.a2);

    double fmax = 0.0;
    {
        const double step = spec.L / static_cast<double>(probe_points - 1);
        for (std::size_t i = 0; i < probe_points; ++i) {
            const double x = (i + 1 == probe_points) ? spec.L : grid_node(i, step);
            fmax = std::max(fmax, spec.f(x));
        }
    }
    out.max_f_probe_ = fmax;

    if (!spec.C0.has_value()) {
        // Cumulative trapezoid of c0 on a fine fixed grid.
        const std::size_t n = kDerivedC0Nodes;
        const double h = spec.L / static_cast<double>(n - 1);
        std::vector<double> cum(n);
        CompensatedSum acc;
        cum[0] = 0.0;
        double prev = spec.c0(0.0);
        for (std::size_t i = 1; i < n; ++i) {
            const double x = (i + 1 == n) ? spec.L : grid_node(i, h);
            const double cur = spec.c0(x);
            acc.add(0.5 * h * (prev + cur));
            cum[i] = acc.value();
            prev = cur;
        }
        out.c0_cum_ = std::move(cum);
        out.c0_cum_step_ = h;
    }

    out.spec_ = std::move(spec);
    return out;
}

double eval_rho(const ValidatedProblem& problem, double X) {
    if (!(X >= 0.0)) {
        throw std::domain_error("rho is defined for nonnegative arguments; got " +
                                format_round_trip(X));
    }
    const auto& s = problem.spec();
    return s.a1 * X / ((X + s.a2) * X + 1.0);
}

double eval_intensity(const ValidatedProblem& problem, double lambda, double C0x, double S) {
    const auto& s = problem.spec();
    const double slack = 1e-9 * (s.lambda_star - s.lambda0);
    if (lambda < s.lambda0 - slack || lambda > s.lambda_star + slack) {
        throw std::domain_error("wavelength " + format_round_trip(lambda) +
                                " outside [" + format_round_trip(s.lambda0) + ", " +
                                format_round_trip(s.lambda_star) + "]");
    }
    const double eb = s.epsB(lambda);
    const double ea = s.epsA(lambda);
    return s.I(lambda) * std::exp(-s.mu * (eb * C0x + (ea - eb) * S));
}

}  // namespace photokin
