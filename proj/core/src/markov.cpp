#include "gclab/markov.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/numeric.hpp"

namespace gclab {
namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

MatrixL to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto s = static_cast<Eigen::Index>(rows.size());
  MatrixL m(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) m(i, j) = rows[i][j];
  return m;
}

void check_stochastic(const std::vector<std::vector<double>>& transition, std::size_t states) {
  if (states == 0) fail(ErrorKind::invalid_parameter, "markov chain needs at least one state");
  if (transition.size() != states) {
    fail(ErrorKind::invalid_parameter, "transition matrix must be s x s with one value per state");
  }
  for (std::size_t i = 0; i < states; ++i) {
    if (transition[i].size() != states) fail(ErrorKind::invalid_parameter, "transition matrix must be square");
    CompensatedSum row;
    for (double p : transition[i]) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        fail(ErrorKind::invalid_parameter, "transition entries must be finite and >= 0");
      }
      row.add(p);
    }
    if (std::abs(row.value() - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "transition row " << i << " sums to " << row.value() << ", not 1";
      fail(ErrorKind::invalid_parameter, os.str());
    }
  }
}

/// D = P - 1 pi.
MatrixL deviation_matrix(const MarkovChainSpec& spec) {
  MatrixL d = to_matrix(spec.transition);
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j) d(i, j) -= static_cast<long double>(spec.stationary[j]);
  return d;
}

}  // namespace

MarkovChainSpec MarkovChainSpec::create(std::vector<std::vector<double>> transition, std::vector<double> values) {
  check_stochastic(transition, values.size());
  const MatrixL p = to_matrix(transition);
  const auto s = p.rows();

  MatrixL generator = p.transpose() - MatrixL::Identity(s, s);
  Eigen::FullPivLU<MatrixL> lu(generator);
  lu.setThreshold(1e-13L);
  if (lu.dimensionOfKernel() != 1) {
    fail(ErrorKind::invalid_parameter, "transition matrix has no unique stationary law");
  }

  // Replace one balance equation by the normalization constraint.
  MatrixL system = generator;
  system.row(s - 1).setOnes();
  VectorL rhs = VectorL::Zero(s);
  rhs(s - 1) = 1.0L;
  const VectorL pi = system.fullPivLu().solve(rhs);

  MarkovChainSpec spec;
  spec.transition = std::move(transition);
  spec.values = std::move(values);
  spec.stationary.resize(static_cast<std::size_t>(s));
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < s; ++i) {
    const long double v = pi(i) < 0.0L && pi(i) > -1e-15L ? 0.0L : pi(i);
    if (v < 0.0L) fail(ErrorKind::invalid_parameter, "stationary solve produced a negative mass");
    total += v;
    spec.stationary[static_cast<std::size_t>(i)] = static_cast<double>(v);
  }
  for (auto& v : spec.stationary) v = static_cast<double>(v / total);
  spec.validate();
  return spec;
}

void MarkovChainSpec::validate() const {
  check_stochastic(transition, values.size());
  if (stationary.size() != values.size()) fail(ErrorKind::invalid_parameter, "stationary law has wrong length");
  CompensatedSum total;
  for (double v : stationary) {
    if (!(v >= 0.0)) fail(ErrorKind::invalid_parameter, "stationary law has a negative entry");
    total.add(v);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) fail(ErrorKind::invalid_parameter, "stationary law must sum to 1");
  for (std::size_t j = 0; j < states(); ++j) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < states(); ++i) acc += static_cast<long double>(stationary[i]) * transition[i][j];
    if (std::abs(static_cast<double>(acc) - stationary[j]) > 1e-10) {
      fail(ErrorKind::invalid_parameter, "stationary law does not satisfy pi P = pi");
    }
  }
}

std::vector<double> phi_mixing_profile(const MarkovChainSpec& spec, std::size_t r_max) {
  spec.validate();
  const MatrixL d = deviation_matrix(spec);
  MatrixL power = d;
  std::vector<double> profile;
  profile.reserve(r_max);
  for (std::size_t r = 1; r <= r_max; ++r) {
    if (r > 1) power = power * d;
    long double worst = 0.0L;
    for (Eigen::Index i = 0; i < power.rows(); ++i) {
      if (spec.stationary[static_cast<std::size_t>(i)] <= 0.0) continue;
      worst = std::max(worst, 0.5L * power.row(i).cwiseAbs().sum());
    }
    profile.push_back(static_cast<double>(std::min(worst, 1.0L)));
  }
  return profile;
}

std::vector<double> chain_observable_covariances(const MarkovChainSpec& spec, const std::vector<double>& g,
                                                 std::size_t count) {
  if (g.size() != spec.states()) fail(ErrorKind::invalid_parameter, "observable must have one value per state");
  const auto s = static_cast<Eigen::Index>(spec.states());
  VectorL gv(s), pi(s);
  for (Eigen::Index i = 0; i < s; ++i) {
    gv(i) = g[static_cast<std::size_t>(i)];
    pi(i) = spec.stationary[static_cast<std::size_t>(i)];
  }
  std::vector<double> out;
  out.reserve(count);
  if (count == 0) return out;

  const long double mean = pi.dot(gv);
  const VectorL centered = gv.array() - mean;
  out.push_back(static_cast<double>(pi.dot(centered.cwiseProduct(centered))));

  // gamma(j) = sum_a pi_a g_a (D^j g)_a, using D^j g = (P^j - 1 pi) g.
  const MatrixL d = deviation_matrix(spec);
  const VectorL weighted = pi.cwiseProduct(gv);
  VectorL propagated = gv;
  for (std::size_t j = 1; j < count; ++j) {
    propagated = d * propagated;
    out.push_back(static_cast<double>(weighted.dot(propagated)));
  }
  return out;
}

std::vector<std::vector<double>> chain_joint_law(const MarkovChainSpec& spec, std::size_t lag) {
  const MatrixL p = to_matrix(spec.transition);
  const auto s = p.rows();
  MatrixL power = MatrixL::Identity(s, s);
  for (std::size_t r = 0; r < lag; ++r) power = power * p;
  std::vector<std::vector<double>> joint(static_cast<std::size_t>(s), std::vector<double>(static_cast<std::size_t>(s)));
  for (Eigen::Index a = 0; a < s; ++a)
    for (Eigen::Index b = 0; b < s; ++b)
      joint[a][b] = static_cast<double>(static_cast<long double>(spec.stationary[a]) * power(a, b));
  return joint;
}

double second_eigenvalue_modulus(const MarkovChainSpec& spec) {
  const auto s = static_cast<Eigen::Index>(spec.states());
  Eigen::MatrixXd p(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) p(i, j) = spec.transition[i][j];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(p, false);
  std::vector<double> moduli;
  for (Eigen::Index i = 0; i < s; ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli.size() > 1 ? moduli[1] : 0.0;
}

}  // namespace gclab
