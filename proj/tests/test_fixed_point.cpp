#include <cmath>
#include <vector>

#include "doctest.h"
#include "photokin/fixed_point.hpp"

using namespace photokin;

TEST_CASE("identity map returns the start with zero residual") {
    std::vector<double> x{1.0, 2.0, 3.0};
    const auto report = solve_fixed_point([](const std::vector<double>& v) { return v; }, x, 0.0,
                                          10.0, 1e-14, 50);
    CHECK(report.converged);
    CHECK(report.residual == 0.0);
    CHECK(x == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("constant map lands on the constant immediately") {
    std::vector<double> x{9.0, 9.0};
    const std::vector<double> c{2.5, 4.0};
    const auto report =
        solve_fixed_point([&](const std::vector<double>&) { return c; }, x, 0.0, 10.0, 1e-14, 50);
    CHECK(report.converged);
    CHECK(report.iterations <= 2);
    CHECK(x[0] == 2.5);
    CHECK(x[1] == 4.0);
}

TEST_CASE("affine contraction reaches its analytic fixed point") {
    // x -> x/2 + 1 has the fixed point 2.
    std::vector<double> x{0.0};
    const auto report = solve_fixed_point(
        [](const std::vector<double>& v) {
            return std::vector<double>{0.5 * v[0] + 1.0};
        },
        x, 0.0, 10.0, 1e-14, 100);
    CHECK(report.converged);
    CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(report.residual <= 1e-14);
    // Geometric convergence: factor 1/2 from distance 2 to 1e-14 needs
    // about 48 halvings; allow slack but pin the order of magnitude.
    CHECK(report.iterations <= 60);
}

TEST_CASE("iterates leaving the box are clamped and counted") {
    // x -> x/2 + 3 has its only fixed point at 6, outside the box [0, 5]:
    // iterates pressing against the lid get clamped (and counted) until
    // both stages give up; the error report carries the tallies.
    std::vector<double> x{4.0};
    bool threw = false;
    try {
        (void)solve_fixed_point(
            [](const std::vector<double>& v) {
                return std::vector<double>{0.5 * v[0] + 3.0};
            },
            x, 0.0, 5.0, 1e-14, 40);
    } catch (const SolveError& e) {
        threw = true;
        CHECK(e.report.clamp_events > 0);
        CHECK_FALSE(e.report.converged);
    }
    CHECK(threw);
    CHECK(x[0] <= 5.0);
    CHECK(x[0] >= 0.0);
}

TEST_CASE("expanding map is finished by the Newton fallback") {
    // x -> 3 - 2x repels the undamped iteration from the fixed point 1;
    // with a short damped budget the Newton stage takes over and solves
    // the affine system in one step.
    std::vector<double> x{0.2};
    const auto report = solve_fixed_point(
        [](const std::vector<double>& v) {
            return std::vector<double>{3.0 - 2.0 * v[0]};
        },
        x, -10.0, 10.0, 1e-13, 25);
    CHECK(report.converged);
    CHECK(report.newton_used);
    CHECK(report.newton_iterations >= 1);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coupled two-component system converges to the joint fixed point") {
    // x = (y+1)/3, y = (x+2)/3 has the solution x = 5/8 - 1/24... solve:
    // x = (y+1)/3, y = (x+2)/3 -> x = ((x+2)/3 + 1)/3 = (x + 5)/9 -> x = 5/8,
    // y = (5/8 + 2)/3 = 7/8.
    std::vector<double> x{0.0, 0.0};
    const auto report = solve_fixed_point(
        [](const std::vector<double>& v) {
            return std::vector<double>{(v[1] + 1.0) / 3.0, (v[0] + 2.0) / 3.0};
        },
        x, 0.0, 10.0, 1e-14, 200);
    CHECK(report.converged);
    CHECK(x[0] == doctest::Approx(5.0 / 8.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("unsolvable system raises the solver error with its report") {
    // x -> x + 1 clamps to the top of the box forever; no fixed point
    // exists inside, and Newton on x - map(x) = -1 cannot help.
    std::vector<double> x{0.0};
    CHECK_THROWS_AS((void)solve_fixed_point(
                        [](const std::vector<double>& v) {
                            return std::vector<double>{v[0] + 1.0};
                        },
                        x, 0.0, 5.0, 1e-14, 30),
                    SolveError);
    try {
        std::vector<double> y{0.0};
        (void)solve_fixed_point(
            [](const std::vector<double>& v) {
                return std::vector<double>{v[0] + 1.0};
            },
            y, 0.0, 5.0, 1e-14, 30);
    } catch (const SolveError& e) {
        CHECK_FALSE(e.report.converged);
        CHECK(e.report.residual > 1e-14);
    }
}

TEST_CASE("solution always lies inside the box") {
    // Map whose raw output wanders outside: result must still be boxed.
    std::vector<double> x{1.0, 1.0, 1.0};
    (void)solve_fixed_point(
        [](const std::vector<double>& v) {
            std::vector<double> out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = 0.9 * v[i] + 0.05;
            return out;
        },
        x, 0.25, 0.75, 1e-12, 500);
    for (double v : x) {
        CHECK(v >= 0.25);
        CHECK(v <= 0.75);
    }
}
