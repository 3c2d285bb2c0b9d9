#pragma once

#include <cstddef>

#include "photokin/model.hpp"
#include "photokin/numerics.hpp"

namespace photokin {

/// Uniform mesh over [0,L] x [0,T] x [lambda0, lambda_star]:
/// x_j = j*dx (j = 0..Nx), t_n = n*dt (n = 0..Nt), lambda_l = lambda0 + l*dl.
/// Counts are interval counts; node counts are one larger. Nt = 0 describes
/// a field holding only the initial row.
struct GridSpec {
    std::size_t Nx = 1, Nt = 1, Nl = 1;
    double dx = 1.0, dt = 1.0, dl = 1.0;
    double lambda0 = 0.0;

    [[nodiscard]] double x(std::size_t j) const noexcept { return grid_node(j, dx); }
    [[nodiscard]] double t(std::size_t n) const noexcept { return grid_node(n, dt); }
    [[nodiscard]] double lambda(std::size_t l) const noexcept {
        return grid_node(l, dl, lambda0);
    }

    /// Same spacing in every direction: dx = dt = dl = theta. The extents
    /// must be integer multiples of theta.
    static GridSpec from_theta(const ValidatedProblem& problem, double theta);

    /// Spacings derived from the problem extents: dx = L/Nx and so on.
    static GridSpec from_counts(const ValidatedProblem& problem, std::size_t Nx, std::size_t Nt,
                                std::size_t Nl);

    /// Explicit spacings; each extent must be an integer multiple of its
    /// spacing to within 1e-12 relative.
    static GridSpec from_steps(const ValidatedProblem& problem, double dx, double dt, double dl);
};

}  // namespace photokin
