#include "gclab/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/gaussian.hpp"
#include "gclab/numeric.hpp"

namespace gclab {

Marginal Marginal::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    fail(ErrorKind::invalid_parameter, "uniform marginal requires finite lo < hi");
  }
  Marginal m;
  m.kind_ = Kind::uniform;
  m.params_[0] = lo;
  m.params_[1] = hi;
  return m;
}

Marginal Marginal::normal(double mean, double sd) {
  if (!(sd > 0.0) || !std::isfinite(mean) || !std::isfinite(sd)) {
    fail(ErrorKind::invalid_parameter, "normal marginal requires finite mean and sd > 0");
  }
  Marginal m;
  m.kind_ = Kind::normal;
  m.params_[0] = mean;
  m.params_[1] = sd;
  return m;
}

Marginal Marginal::point(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::invalid_parameter, "point marginal requires a finite value");
  Marginal m;
  m.kind_ = Kind::point;
  m.params_[0] = value;
  m.atoms_ = {value};
  m.atom_probs_ = {1.0};
  m.cumulative_ = {1.0};
  return m;
}

Marginal Marginal::discrete(const std::vector<double>& values, const std::vector<double>& probs) {
  if (values.empty() || values.size() != probs.size()) {
    fail(ErrorKind::invalid_parameter, "discrete marginal requires matching nonempty values and probs");
  }
  std::map<double, double> merged;
  CompensatedSum total;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !(probs[i] >= 0.0)) {
      fail(ErrorKind::invalid_parameter, "discrete marginal requires finite values and probs >= 0");
    }
    total.add(probs[i]);
    if (probs[i] > 0.0) merged[values[i]] += probs[i];
  }
  if (std::abs(total.value() - 1.0) > 1e-10) {
    fail(ErrorKind::invalid_parameter, "discrete marginal probabilities must sum to 1");
  }
  Marginal m;
  m.kind_ = Kind::discrete;
  CompensatedSum running;
  for (const auto& [v, p] : merged) {
    m.atoms_.push_back(v);
    m.atom_probs_.push_back(p);
    running.add(p);
    m.cumulative_.push_back(running.value());
  }
  m.cumulative_.back() = 1.0;
  return m;
}

std::string Marginal::label() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::uniform: os << "uniform(" << params_[0] << "," << params_[1] << ")"; break;
    case Kind::normal: os << "normal(" << params_[0] << "," << params_[1] << ")"; break;
    case Kind::point: os << "point(" << params_[0] << ")"; break;
    case Kind::discrete: os << "discrete[" << atoms_.size() << "]"; break;
  }
  return os.str();
}

double Marginal::cdf(double x) const {
  switch (kind_) {
    case Kind::uniform:
      if (x <= params_[0]) return 0.0;
      if (x >= params_[1]) return 1.0;
      return (x - params_[0]) / (params_[1] - params_[0]);
    case Kind::normal:
      return normal_cdf((x - params_[0]) / params_[1]);
    case Kind::point:
    case Kind::discrete: {
      const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
      if (it == atoms_.begin()) return 0.0;
      return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
    }
  }
  return 0.0;
}

double Marginal::cdf_left(double x) const {
  if (continuous()) return cdf(x);
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double Marginal::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::invalid_parameter, "quantile: p outside [0,1]");
  switch (kind_) {
    case Kind::uniform:
      return params_[0] + p * (params_[1] - params_[0]);
    case Kind::normal:
      return params_[0] + params_[1] * normal_quantile(p);
    case Kind::point:
    case Kind::discrete: {
      const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), p);
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
      return atoms_[idx];
    }
  }
  return 0.0;
}

double Marginal::mean() const {
  switch (kind_) {
    case Kind::uniform: return 0.5 * (params_[0] + params_[1]);
    case Kind::normal: return params_[0];
    case Kind::point:
    case Kind::discrete: {
      CompensatedSum acc;
      for (std::size_t i = 0; i < atoms_.size(); ++i) acc.add(atoms_[i] * atom_probs_[i]);
      return acc.value();
    }
  }
  return 0.0;
}

double Marginal::variance() const {
  switch (kind_) {
    case Kind::uniform: {
      const double w = params_[1] - params_[0];
      return w * w / 12.0;
    }
    case Kind::normal: return params_[1] * params_[1];
    case Kind::point: return 0.0;
    case Kind::discrete: {
      const double mu = mean();
      CompensatedSum acc;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const double d = atoms_[i] - mu;
        acc.add(d * d * atom_probs_[i]);
      }
      return acc.value();
    }
  }
  return 0.0;
}

std::optional<double> Marginal::density_bound() const {
  switch (kind_) {
    case Kind::uniform: return 1.0 / (params_[1] - params_[0]);
    case Kind::normal: return 1.0 / (params_[1] * std::sqrt(2.0 * std::numbers::pi));
    default: return std::nullopt;
  }
}

bool cdf_looks_valid(const Marginal& marginal, int grid_points) {
  const double lo = marginal.continuous() ? marginal.quantile(1e-12) : marginal.atoms().front();
  const double hi = marginal.continuous() ? marginal.quantile(1.0 - 1e-12) : marginal.atoms().back();
  const double span = std::max(hi - lo, 1.0);
  const double start = lo - span;
  const double step = 3.0 * span / (grid_points - 1);
  double previous = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = start + i * step;
    const double f = marginal.cdf(x);
    if (f < previous || f < 0.0 || f > 1.0) return false;
    if (marginal.cdf_left(x) > f) return false;
    previous = f;
  }
  return marginal.cdf(start) < 1e-9 && marginal.cdf(start + 3.0 * span) > 1.0 - 1e-9;
}

}  // namespace gclab
