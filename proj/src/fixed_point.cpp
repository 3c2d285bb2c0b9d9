#include "photokin/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace photokin {

namespace {

std::size_t clamp_into_box(std::vector<double>& x, double lo, double hi) {
    std::size_t events = 0;
    for (double& v : x) {
        if (v < lo) {
            v = lo;
            ++events;
        } else if (v > hi) {
            v = hi;
            ++events;
        }
    }
    return events;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Solves A z = b in place by partial-pivot LU. Returns false on a
/// numerically singular pivot.
bool lu_solve(std::vector<double>& A, std::vector<double>& b, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(A[perm[col] * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(A[perm[r] * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < std::numeric_limits<double>::min()) return false;
        std::swap(perm[col], perm[pivot]);
        const double diag = A[perm[col] * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = A[perm[r] * n + col] / diag;
            A[perm[r] * n + col] = m;
            for (std::size_t c = col + 1; c < n; ++c) {
                A[perm[r] * n + c] -= m * A[perm[col] * n + c];
            }
            b[perm[r]] -= m * b[perm[col]];
        }
    }
    std::vector<double> z(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[perm[ri]];
        for (std::size_t c = ri + 1; c < n; ++c) s -= A[perm[ri] * n + c] * z[c];
        z[ri] = s / A[perm[ri] * n + ri];
    }
    b = std::move(z);
    return true;
}

}  // namespace

SolveReport solve_fixed_point(const VectorMap& map, std::vector<double>& x, double lo, double hi,
                              double tol, std::size_t max_iter) {
    SolveReport report;
    report.clamp_events += clamp_into_box(x, lo, hi);

    double theta = 1.0;
    double prev_residual = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < max_iter; ++k) {
        std::vector<double> g = map(x);
        const double residual = max_abs_diff(x, g);
        report.residual = residual;
        if (residual <= tol) {
            report.converged = true;
            return report;
        }
        ++report.iterations;
        if (residual > prev_residual) theta = std::max(0.5 * theta, 0x1p-20);
        prev_residual = residual;
        if (theta == 1.0) {
            x = std::move(g);
        } else {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - theta) * x[i] + theta * g[i];
        }
        report.clamp_events += clamp_into_box(x, lo, hi);
    }

    // Newton on F(x) = x - map(x), forward-difference Jacobian.
    report.newton_used = true;
    const std::size_t n = x.size();
    const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    for (std::size_t k = 0; k < 50; ++k) {
        std::vector<double> g = map(x);
        std::vector<double> F(n);
        for (std::size_t i = 0; i < n; ++i) F[i] = x[i] - g[i];
        double residual = 0.0;
        for (double v : F) residual = std::max(residual, std::abs(v));
        report.residual = residual;
        if (residual <= tol) {
            report.converged = true;
            return report;
        }
        ++report.newton_iterations;

        std::vector<double> J(n * n);
        std::vector<double> xp = x;
        for (std::size_t col = 0; col < n; ++col) {
            const double h = sqrt_eps * (1.0 + std::abs(x[col]));
            xp[col] = x[col] + h;
            const std::vector<double> gp = map(xp);
            for (std::size_t r = 0; r < n; ++r) {
                const double Fp = xp[r] - gp[r];
                J[r * n + col] = (Fp - F[r]) / h;
            }
            xp[col] = x[col];
        }
        std::vector<double> rhs = F;
        if (!lu_solve(J, rhs, n)) {
            throw SolveError("singular Jacobian in Newton fallback", report);
        }
        for (std::size_t i = 0; i < n; ++i) x[i] -= rhs[i];
        report.clamp_events += clamp_into_box(x, lo, hi);
    }
    throw SolveError("fixed-point solve did not reach tolerance", report);
}

}  // namespace photokin
