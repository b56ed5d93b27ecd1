#include "gclab/gaussian.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "gclab/error.hpp"

namespace gclab {

double normal_cdf(double z) noexcept {
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::invalid_parameter, "normal_quantile: p outside [0,1]");
  if (p == 0.0) return -INFINITY;
  if (p == 1.0) return INFINITY;
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

namespace {

// Below this |rho| the tetrachoric series converges in a handful of terms, and
// adaptive quadrature over a tiny interval stalls on its relative tolerance.
constexpr double kSeriesThreshold = 0.05;

// phi(x) phi(y) sum_{k>=1} rho^k / k! He_{k-1}(x) He_{k-1}(y)
double tetrachoric_excess(double x, double y, double rho) {
  const long double lx = x, ly = y, lr = rho;
  long double hx_prev = 0.0L, hx = 1.0L;  // He_{k-2}, He_{k-1}
  long double hy_prev = 0.0L, hy = 1.0L;
  long double coef = 1.0L;  // rho^k / k!
  long double sum = 0.0L;
  int quiet = 0;  // Hermite values can vanish at a root, so wait for several small terms in a row
  for (int k = 1; k <= 80; ++k) {
    coef *= lr / k;
    const long double term = coef * hx * hy;
    sum += term;
    quiet = std::abs(term) <= 1e-19L * std::abs(sum) ? quiet + 1 : 0;
    if (quiet == 3) break;
    const long double nx = lx * hx - (k - 1) * hx_prev;
    const long double ny = ly * hy - (k - 1) * hy_prev;
    hx_prev = hx;
    hx = nx;
    hy_prev = hy;
    hy = ny;
  }
  const long double density = std::exp(-0.5L * (lx * lx + ly * ly)) / (2.0L * std::numbers::pi_v<long double>);
  return static_cast<double>(density * sum);
}

}  // namespace

double bivariate_normal_excess(double x, double y, double rho) {
  if (!(rho > -1.0 && rho < 1.0)) {
    fail(ErrorKind::invalid_parameter, "bivariate_normal_excess: rho must lie in (-1,1)");
  }
  if (rho == 0.0 || std::isinf(x) || std::isinf(y)) return 0.0;
  if (std::abs(rho) <= kSeriesThreshold) return tetrachoric_excess(x, y, rho);
  const long double lx = x;
  const long double ly = y;
  auto density = [lx, ly](long double r) -> long double {
    const long double one_minus = 1.0L - r * r;
    const long double q = (lx * lx - 2.0L * r * lx * ly + ly * ly) / (2.0L * one_minus);
    return std::exp(-q) / std::sqrt(one_minus);
  };
  long double error = 0.0L;
  const long double integral = boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(
      density, 0.0L, static_cast<long double>(rho), 12, 1e-14L, &error);
  return static_cast<double>(integral / (2.0L * std::numbers::pi_v<long double>));
}

double bivariate_normal_cdf(double x, double y, double rho) {
  return normal_cdf(x) * normal_cdf(y) + bivariate_normal_excess(x, y, rho);
}

}  // namespace gclab
