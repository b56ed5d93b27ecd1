#include "gclab/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/gaussian.hpp"
#include "gclab/numeric.hpp"
#include "gclab/rng.hpp"

namespace gclab {

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::iid: return "iid";
    case ModelKind::gaussian_ar1: return "gaussian-ar1";
    case ModelKind::moving_average: return "moving-average";
    case ModelKind::markov_chain: return "markov-chain";
    case ModelKind::perfect: return "perfect";
  }
  return "unknown";
}

const MarkovChainSpec& StationaryModel::chain() const {
  if (!chain_) fail(ErrorKind::invalid_parameter, "model " + id_ + " is not a markov chain");
  return *chain_;
}

double StationaryModel::analytic_gamma(std::size_t j) const {
  switch (kind_) {
    case ModelKind::iid: return j == 0 ? marginal_.variance() : 0.0;
    case ModelKind::perfect: return marginal_.variance();
    case ModelKind::gaussian_ar1: return std::pow(rho_, static_cast<double>(j));
    case ModelKind::moving_average: {
      if (j >= coeffs_.size()) return 0.0;
      CompensatedSum acc;
      for (std::size_t k = 0; k + j < coeffs_.size(); ++k) acc.add(coeffs_[k] * coeffs_[k + j]);
      return innovation_sd_ * innovation_sd_ * acc.value();
    }
    case ModelKind::markov_chain:
      return chain_observable_covariances(*chain_, chain_->values, j + 1).back();
  }
  return 0.0;
}

double StationaryModel::gaussian_correlation(std::size_t j) const {
  if (!gaussian()) fail(ErrorKind::invalid_parameter, "gaussian_correlation: model is not Gaussian");
  return analytic_gamma(j) / analytic_gamma(0);
}

StationaryModel make_iid(const Marginal& marginal) {
  StationaryModel m(marginal);
  m.kind_ = ModelKind::iid;
  m.id_ = "iid-" + marginal.label();
  return m;
}

StationaryModel make_gaussian_ar1(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    fail(ErrorKind::invalid_parameter, "gaussian-ar1 requires rho in [0,1) (association constraint)");
  }
  StationaryModel m(Marginal::normal(0.0, 1.0));
  m.kind_ = ModelKind::gaussian_ar1;
  m.rho_ = rho;
  std::ostringstream os;
  os << "gaussian-ar1(rho=" << rho << ")";
  m.id_ = os.str();
  return m;
}

StationaryModel make_moving_average(const std::vector<double>& coeffs, double innovation_sd) {
  if (coeffs.empty()) fail(ErrorKind::invalid_parameter, "moving-average requires at least one coefficient");
  bool any_positive = false;
  for (double a : coeffs) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      fail(ErrorKind::invalid_parameter, "moving-average coefficients must be >= 0 (association constraint)");
    }
    any_positive = any_positive || a > 0.0;
  }
  if (!any_positive) fail(ErrorKind::invalid_parameter, "moving-average requires a positive coefficient");
  if (!(innovation_sd > 0.0) || !std::isfinite(innovation_sd)) {
    fail(ErrorKind::invalid_parameter, "moving-average requires innovation_sd > 0");
  }
  CompensatedSum energy;
  for (double a : coeffs) energy.add(a * a);
  StationaryModel m(Marginal::normal(0.0, innovation_sd * std::sqrt(energy.value())));
  m.kind_ = ModelKind::moving_average;
  m.coeffs_ = coeffs;
  m.innovation_sd_ = innovation_sd;
  std::ostringstream os;
  os << "moving-average(m=" << coeffs.size() - 1 << ",sd=" << innovation_sd << ")";
  m.id_ = os.str();
  return m;
}

StationaryModel make_markov_chain(const MarkovChainSpec& spec) {
  spec.validate();
  StationaryModel m(Marginal::discrete(spec.values, spec.stationary));
  m.kind_ = ModelKind::markov_chain;
  m.chain_ = std::make_shared<const MarkovChainSpec>(spec);
  m.id_ = "markov-chain(s=" + std::to_string(spec.states()) + ")";
  return m;
}

StationaryModel make_perfectly_dependent(const Marginal& marginal) {
  StationaryModel m(marginal);
  m.kind_ = ModelKind::perfect;
  m.id_ = "perfect-" + marginal.label();
  return m;
}

namespace {

double draw_from_marginal(const Marginal& marginal, CounterStream& rng) {
  if (marginal.kind() == Marginal::Kind::normal) return marginal.param(0) + marginal.param(1) * rng.next_normal();
  return marginal.quantile(rng.next_uniform());
}

std::size_t draw_index(const std::vector<double>& probs, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return probs.size() - 1;
}

}  // namespace

Path sample(const StationaryModel& model, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n == 0) fail(ErrorKind::invalid_parameter, "sample: n must be >= 1");
  CounterStream rng(seed, stream);
  Path path;
  path.seed = seed;
  path.model_id = model.id();
  path.values.resize(n);
  auto& x = path.values;

  switch (model.kind()) {
    case ModelKind::iid:
      for (auto& v : x) v = draw_from_marginal(model.marginal(), rng);
      break;
    case ModelKind::perfect:
      std::fill(x.begin(), x.end(), draw_from_marginal(model.marginal(), rng));
      break;
    case ModelKind::gaussian_ar1: {
      const double rho = model.rho();
      const double scale = std::sqrt(1.0 - rho * rho);
      x[0] = rng.next_normal();
      for (std::size_t i = 1; i < n; ++i) x[i] = rho * x[i - 1] + scale * rng.next_normal();
      break;
    }
    case ModelKind::moving_average: {
      const auto& a = model.ma_coeffs();
      const std::size_t m = a.size() - 1;
      // Ring of the last m+1 innovations; the first m are burn-in.
      std::vector<double> ring(m + 1);
      for (std::size_t k = 0; k < m; ++k) ring[k] = model.innovation_sd() * rng.next_normal();
      std::size_t head = m;
      for (std::size_t i = 0; i < n; ++i) {
        ring[head] = model.innovation_sd() * rng.next_normal();
        double acc = 0.0;
        for (std::size_t k = 0; k <= m; ++k) acc += a[k] * ring[(head + m + 1 - k) % (m + 1)];
        x[i] = acc;
        head = (head + 1) % (m + 1);
      }
      break;
    }
    case ModelKind::markov_chain: {
      const auto& chain = model.chain();
      std::size_t state = draw_index(chain.stationary, rng.next_uniform());
      x[0] = chain.values[state];
      for (std::size_t i = 1; i < n; ++i) {
        state = draw_index(chain.transition[state], rng.next_uniform());
        x[i] = chain.values[state];
      }
      break;
    }
  }
  return path;
}

void write_path_csv(std::ostream& os, const Path& path) {
  os << "value\n";
  char buffer[32];
  for (double v : path.values) {
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, v);
    os.write(buffer, result.ptr - buffer);
    os << '\n';
  }
}

CovarianceEstimate estimate_lag_covariance(const StationaryModel& model, std::size_t j, std::size_t budget,
                                           std::uint64_t seed) {
  if (budget < 100) fail(ErrorKind::invalid_parameter, "estimate_lag_covariance: budget must be >= 100");
  const Path path = sample(model, budget + j, seed);
  const auto& x = path.values;
  const double mean = compensated_mean(x);
  const std::size_t count = budget;
  constexpr std::size_t kBatches = 50;
  const std::size_t batch_size = count / kBatches;
  std::vector<double> batch_means;
  CompensatedSum total;
  for (std::size_t b = 0; b < kBatches; ++b) {
    CompensatedSum batch;
    for (std::size_t i = b * batch_size; i < (b + 1) * batch_size; ++i) {
      batch.add((x[i] - mean) * (x[i + j] - mean));
    }
    batch_means.push_back(batch.value() / static_cast<double>(batch_size));
    total.add(batch.value());
  }
  for (std::size_t i = kBatches * batch_size; i < count; ++i) total.add((x[i] - mean) * (x[i + j] - mean));
  const double grand = compensated_mean(batch_means);
  CompensatedSum spread;
  for (double m : batch_means) spread.add((m - grand) * (m - grand));
  CovarianceEstimate out;
  out.value = total.value() / static_cast<double>(count);
  out.std_error = std::sqrt(spread.value() / (kBatches - 1) / kBatches);
  out.estimated = true;
  return out;
}

CovarianceEstimate lag_covariance(const StationaryModel& model, std::size_t j, std::size_t budget,
                                  std::uint64_t seed) {
  // Every bundled family has a closed form; the estimator remains for models
  // without one and for cross-checks.
  (void)budget;
  (void)seed;
  return CovarianceEstimate{model.analytic_gamma(j), 0.0, false};
}

double indicator_lag_covariance(const StationaryModel& model, double x, std::size_t j) {
  const double f = model.marginal_cdf(x);
  if (j == 0) return f * (1.0 - f);
  switch (model.kind()) {
    case ModelKind::iid: return 0.0;
    case ModelKind::perfect: return f * (1.0 - f);
    case ModelKind::gaussian_ar1:
    case ModelKind::moving_average: {
      const double z = (x - model.marginal().param(0)) / model.marginal().param(1);
      return bivariate_normal_excess(z, z, model.gaussian_correlation(j));
    }
    case ModelKind::markov_chain: {
      const auto& chain = model.chain();
      std::vector<double> g(chain.states());
      for (std::size_t a = 0; a < g.size(); ++a) g[a] = chain.values[a] <= x ? 1.0 : 0.0;
      return chain_observable_covariances(chain, g, j + 1).back();
    }
  }
  return 0.0;
}

LagCovariance identity_gamma(const StationaryModel& model) {
  if (model.kind() == ModelKind::markov_chain) {
    return LagCovariance(
        [chain = model.chain()](std::size_t count) {
          return chain_observable_covariances(chain, chain.values, count);
        },
        model.id() + ":identity");
  }
  return LagCovariance::from_function([model](std::size_t j) { return model.analytic_gamma(j); },
                                      model.id() + ":identity");
}

LagCovariance indicator_gamma(const StationaryModel& model, double x) {
  std::ostringstream label;
  label << model.id() << ":indicator(x=" << x << ")";
  if (model.kind() == ModelKind::markov_chain) {
    const auto& chain = model.chain();
    std::vector<double> g(chain.states());
    for (std::size_t a = 0; a < g.size(); ++a) g[a] = chain.values[a] <= x ? 1.0 : 0.0;
    return LagCovariance([chain, g](std::size_t count) { return chain_observable_covariances(chain, g, count); },
                         label.str());
  }
  if (model.kind() == ModelKind::gaussian_ar1 || model.kind() == ModelKind::moving_average) {
    return LagCovariance(
        [model, x](std::size_t count) {
          std::vector<double> out(count, 0.0);
          for (std::size_t j = 0; j < count; ++j) {
            // Correlation underflows to exactly 0 far out; the excess is then 0 as well.
            if (j > 0 && model.gaussian_correlation(j) == 0.0) break;
            out[j] = indicator_lag_covariance(model, x, j);
          }
          return out;
        },
        label.str());
  }
  return LagCovariance::from_function([model, x](std::size_t j) { return indicator_lag_covariance(model, x, j); },
                                      label.str());
}

namespace {

double variance_of_cdf_transform(const Marginal& marginal) {
  if (marginal.continuous()) return 1.0 / 12.0;
  std::vector<double> transformed;
  for (double v : marginal.atoms()) transformed.push_back(marginal.cdf(v));
  return Marginal::discrete(transformed, marginal.atom_probs()).variance();
}

}  // namespace

LagCovariance uniform_transform_gamma(const StationaryModel& model) {
  const std::string label = model.id() + ":cdf-transform";
  switch (model.kind()) {
    case ModelKind::iid:
      return LagCovariance::from_values({variance_of_cdf_transform(model.marginal())}, label);
    case ModelKind::perfect: {
      const double v = variance_of_cdf_transform(model.marginal());
      return LagCovariance::from_function([v](std::size_t) { return v; }, label);
    }
    case ModelKind::gaussian_ar1:
    case ModelKind::moving_average:
      // Cov(Phi(Z_1), Phi(Z_2)) = asin(r / 2) / (2 pi) for standard normals with correlation r.
      return LagCovariance::from_function(
          [model](std::size_t j) {
            return std::asin(0.5 * model.gaussian_correlation(j)) / (2.0 * std::numbers::pi);
          },
          label);
    case ModelKind::markov_chain: {
      const auto& chain = model.chain();
      std::vector<double> g(chain.states());
      for (std::size_t a = 0; a < g.size(); ++a) g[a] = model.marginal_cdf(chain.values[a]);
      return LagCovariance([chain, g](std::size_t count) { return chain_observable_covariances(chain, g, count); },
                           label);
    }
  }
  return LagCovariance::from_values({}, label);
}

}  // namespace gclab
