#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace photokin {

struct SolveReport {
    std::size_t iterations = 0;         ///< damped fixed-point iterations
    std::size_t newton_iterations = 0;
    double residual = 0.0;              ///< final max-norm of x - map(x)
    std::size_t clamp_events = 0;       ///< components pushed back into the box
    bool newton_used = false;
    bool converged = false;
};

class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, SolveReport report)
        : std::runtime_error(what), report(report) {}
    SolveReport report;
};

using VectorMap = std::function<std::vector<double>(const std::vector<double>&)>;

/// Solves x = map(x) inside the box [lo, hi]^n. Damped iteration starting
/// at full steps, halving the damping whenever the residual grows; if the
/// iteration budget runs out, a dense finite-difference Newton run on
/// x - map(x) finishes the job. Iterates leaving the box are clamped
/// componentwise and counted, never rejected. Throws SolveError if both
/// stages fail to reach tol.
SolveReport solve_fixed_point(const VectorMap& map, std::vector<double>& x, double lo, double hi,
                              double tol, std::size_t max_iter);

}  // namespace photokin
