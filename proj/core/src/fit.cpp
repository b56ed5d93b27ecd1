#include "gclab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gclab/error.hpp"
#include "gclab/numeric.hpp"

namespace gclab {

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorKind::invalid_input, "fit_line: x and y differ in length");
  if (x.size() < 3) fail(ErrorKind::invalid_input, "fit_line: fewer than 3 usable points");
  const double mx = compensated_mean(x);
  const double my = compensated_mean(y);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  if (!(sxx.value() > 0.0)) fail(ErrorKind::invalid_input, "fit_line: x values are all equal");
  SlopeFit fit;
  fit.points = x.size();
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy.value() > 0.0
                      ? std::clamp(sxy.value() * sxy.value() / (sxx.value() * syy.value()), 0.0, 1.0)
                      : 1.0;
  return fit;
}

SlopeFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorKind::invalid_input, "fit_log_log: x and y differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return fit_line(lx, ly);
}

}  // namespace gclab
