#pragma once

#include <cstddef>
#include <span>

namespace gclab {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  std::size_t points = 0;
};

/// Ordinary least squares of y on x; needs at least 3 points. r_squared is
/// reported as 1 when y is constant (the line fits exactly).
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares of log y on log x over the pairs with x > 0 and y > 0.
SlopeFit fit_log_log(std::span<const double> x, std::span<const double> y);

}  // namespace gclab
