#pragma once

#include <cmath>
#include <span>

namespace kwent {

// Neumaier summation; probability vectors can span many orders of magnitude.
inline double compensated_sum(std::span<const double> xs) {
    double sum = 0.0;
    double c = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + c;
}

}  // namespace kwent
