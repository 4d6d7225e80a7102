#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace phenosim {

// Sentinel for log(0). IEEE -inf propagates through + and max as an
// absorbing element; log_add below keeps it NaN-free.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow/underflow; returns kLogZero when
// both operands are kLogZero.
inline double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kLogZero) return a;
    return a + std::log1p(std::exp(b - a));
}

inline double safe_log(double p) { return p > 0.0 ? std::log(p) : kLogZero; }

// log(1 - p) for probabilities, exact at p = 0 and p = 1.
inline double safe_log1m(double p) { return p < 1.0 ? std::log1p(-p) : kLogZero; }

} // namespace phenosim
