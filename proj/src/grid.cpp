#include "photokin/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace photokin {

namespace {

std::size_t intervals_for(double extent, double step, const char* axis) {
    if (!(step > 0.0)) {
        throw std::invalid_argument(std::string("step along ") + axis + " must be positive");
    }
    const double ratio = extent / step;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, std::abs(ratio))) {
        throw std::invalid_argument(std::string("extent along ") + axis + " (" +
                                    format_round_trip(extent) +
                                    ") is not an integer multiple of step " +
                                    format_round_trip(step));
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

GridSpec GridSpec::from_theta(const ValidatedProblem& problem, double theta) {
    const auto& s = problem.spec();
    GridSpec g;
    g.Nx = intervals_for(s.L, theta, "x");
    g.Nt = intervals_for(s.T, theta, "t");
    g.Nl = intervals_for(s.lambda_star - s.lambda0, theta, "lambda");
    g.dx = s.L / static_cast<double>(g.Nx);
    g.dt = s.T / static_cast<double>(g.Nt);
    g.dl = (s.lambda_star - s.lambda0) / static_cast<double>(g.Nl);
    g.lambda0 = s.lambda0;
    return g;
}

GridSpec GridSpec::from_counts(const ValidatedProblem& problem, std::size_t Nx, std::size_t Nt,
                               std::size_t Nl) {
    if (Nx < 1 || Nl < 1) {
        throw std::invalid_argument("need at least one interval along x and lambda");
    }
    const auto& s = problem.spec();
    GridSpec g;
    g.Nx = Nx;
    g.Nt = Nt;
    g.Nl = Nl;
    g.dx = s.L / static_cast<double>(Nx);
    g.dt = Nt > 0 ? s.T / static_cast<double>(Nt) : s.T;
    g.dl = (s.lambda_star - s.lambda0) / static_cast<double>(Nl);
    g.lambda0 = s.lambda0;
    return g;
}

GridSpec GridSpec::from_steps(const ValidatedProblem& problem, double dx, double dt, double dl) {
    const auto& s = problem.spec();
    GridSpec g;
    g.Nx = intervals_for(s.L, dx, "x");
    g.Nt = intervals_for(s.T, dt, "t");
    g.Nl = intervals_for(s.lambda_star - s.lambda0, dl, "lambda");
    g.dx = dx;
    g.dt = dt;
    g.dl = dl;
    g.lambda0 = s.lambda0;
    return g;
}

}  // namespace photokin
