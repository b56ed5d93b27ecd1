#pragma once

#include <cstddef>
#include <vector>

namespace gclab {

/// Finite-state stationary Markov chain with real values attached to states.
struct MarkovChainSpec {
  std::vector<std::vector<double>> transition;  ///< row-stochastic, s x s
  std::vector<double> values;                   ///< value of each state
  std::vector<double> stationary;               ///< pi with pi P = pi

  std::size_t states() const noexcept { return values.size(); }

  /// Solves for the unique stationary law; throws invalid-parameter when the
  /// matrix is not row-stochastic or the stationary law is not unique.
  static MarkovChainSpec create(std::vector<std::vector<double>> transition, std::vector<double> values);

  /// Throws invalid-parameter unless rows sum to 1 (1e-12), pi is a
  /// probability vector and pi P = pi (1e-10).
  void validate() const;
};

/// phi(1..r_max) as the largest total-variation distance between a row of
/// P^r (over states with pi_i > 0) and pi. Powers are taken of D = P - 1 pi in
/// long double so that tiny coefficients keep their relative precision.
std::vector<double> phi_mixing_profile(const MarkovChainSpec& spec, std::size_t r_max);

/// gamma(0..count-1) of g(X_1), g(X_{1+j}) for the stationary chain.
std::vector<double> chain_observable_covariances(const MarkovChainSpec& spec, const std::vector<double>& g,
                                                 std::size_t count);

/// Joint law P(X_1 = a, X_{1+lag} = b) = pi_a P^lag(a, b).
std::vector<std::vector<double>> chain_joint_law(const MarkovChainSpec& spec, std::size_t lag);

/// Modulus of the second-largest eigenvalue of P.
double second_eigenvalue_modulus(const MarkovChainSpec& spec);

}  // namespace gclab
