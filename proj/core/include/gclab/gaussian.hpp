#pragma once

namespace gclab {

double normal_cdf(double z) noexcept;
double normal_quantile(double p);

/// P(Z1 <= x, Z2 <= y) - Phi(x) Phi(y) for a standard bivariate normal pair
/// with correlation `rho` in (-1, 1).
///
/// Integrates Plackett's identity d/dr P(Z1<=x, Z2<=y; r) = phi_2(x, y; r)
/// from 0 to rho with adaptive Gauss-Kronrod; absolute error well below 1e-8.
double bivariate_normal_excess(double x, double y, double rho);

double bivariate_normal_cdf(double x, double y, double rho);

}  // namespace gclab
