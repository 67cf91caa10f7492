#pragma once

/**
 * @file tolerance.hpp
 * @brief Relative-plus-absolute floating point comparison.
 */

#include <algorithm>
#include <cmath>

namespace ff {

/// Comparison rule |x - y| <= atol + rtol * max(|x|, |y|).
struct Tolerance {
    double atol = 1e-9;
    double rtol = 1e-9;

    /// Returns true when x and y agree under this tolerance.
    [[nodiscard]] bool close(double x, double y) const
    {
        return std::abs(x - y) <= atol + rtol * std::max(std::abs(x), std::abs(y));
    }

    /// Returns true when |x| is negligible under the absolute part of this tolerance.
    [[nodiscard]] bool negligible(double x) const { return std::abs(x) <= atol; }
};

/// Condition number above which an order-1 tensor is rejected as singular.
inline constexpr double kMaxConditionNumber = 1e8;

}  // namespace ff
