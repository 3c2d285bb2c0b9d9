#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

namespace photokin {

/// Neumaier-compensated accumulator. Every multi-term reduction in the
/// library runs through one of these, always left to right, so results do
/// not depend on how work is split across threads.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

    void reset() noexcept { sum_ = comp_ = 0.0; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Left-to-right compensated sum of a contiguous range.
[[nodiscard]] inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// Uniform grid node i*step, computed directly rather than by accumulation.
[[nodiscard]] inline double grid_node(std::size_t i, double step, double origin = 0.0) noexcept {
    return origin + static_cast<double>(i) * step;
}

/// Distance to the next representable double above |x|.
[[nodiscard]] inline double ulp_of(double x) noexcept {
    const double a = std::abs(x);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] inline std::string format_round_trip(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace photokin
