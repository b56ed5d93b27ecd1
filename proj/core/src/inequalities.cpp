#include "gclab/inequalities.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gclab/error.hpp"
#include "gclab/gaussian.hpp"
#include "gclab/numeric.hpp"
#include "gclab/rng.hpp"

namespace gclab {

BivariatePair BivariatePair::gaussian(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    fail(ErrorKind::invalid_parameter, "bivariate-gaussian pair requires rho in [0,1) (association regime)");
  }
  BivariatePair pair;
  pair.kind_ = Kind::gaussian;
  pair.rho_ = rho;
  std::ostringstream os;
  os << "bivariate-gaussian(rho=" << rho << ")";
  pair.label_ = os.str();
  return pair;
}

BivariatePair BivariatePair::finite_joint(std::vector<double> x_values, std::vector<double> y_values,
                                          std::vector<std::vector<double>> joint, std::string label) {
  if (x_values.empty() || y_values.empty() || joint.size() != x_values.size()) {
    fail(ErrorKind::invalid_parameter, "finite-joint pair: matrix shape must match the value lists");
  }
  CompensatedSum total;
  for (const auto& row : joint) {
    if (row.size() != y_values.size()) fail(ErrorKind::invalid_parameter, "finite-joint pair: ragged matrix");
    for (double p : row) {
      if (!(p >= 0.0)) fail(ErrorKind::invalid_parameter, "finite-joint pair: negative probability");
      total.add(p);
    }
  }
  if (std::abs(total.value() - 1.0) > 1e-10) fail(ErrorKind::invalid_parameter, "finite-joint pair: mass must be 1");
  BivariatePair pair;
  pair.kind_ = Kind::finite_joint;
  pair.label_ = std::move(label);
  pair.x_values_ = std::move(x_values);
  pair.y_values_ = std::move(y_values);
  pair.joint_ = std::move(joint);
  return pair;
}

BivariatePair BivariatePair::chain_lag(const MarkovChainSpec& spec, std::size_t lag) {
  if (lag == 0) fail(ErrorKind::invalid_parameter, "chain-lag pair needs lag >= 1");
  auto pair = finite_joint(spec.values, spec.values, chain_joint_law(spec, lag),
                           "chain-lag(s=" + std::to_string(spec.states()) + ",lag=" + std::to_string(lag) + ")");
  pair.kind_ = Kind::chain_lag;
  return pair;
}

double BivariatePair::covariance() const {
  if (kind_ == Kind::gaussian) return rho_;
  return covariance_of(Observable::identity(), Observable::identity());
}

double BivariatePair::covariance_of(const Observable& f, const Observable& g) const {
  if (kind_ == Kind::gaussian) {
    fail(ErrorKind::not_applicable, "covariance_of: exact transform covariance needs a finite-support pair");
  }
  // Centering first keeps the result accurate when E f E g dominates.
  CompensatedSum mf, mg;
  for (std::size_t a = 0; a < x_values_.size(); ++a)
    for (std::size_t b = 0; b < y_values_.size(); ++b) {
      mf.add(joint_[a][b] * f(x_values_[a]));
      mg.add(joint_[a][b] * g(y_values_[b]));
    }
  CompensatedSum cov;
  for (std::size_t a = 0; a < x_values_.size(); ++a)
    for (std::size_t b = 0; b < y_values_.size(); ++b)
      cov.add(joint_[a][b] * (f(x_values_[a]) - mf.value()) * (g(y_values_[b]) - mg.value()));
  return cov.value();
}

double BivariatePair::indicator_covariance(double x, double y) const {
  if (kind_ == Kind::gaussian) return bivariate_normal_excess(x, y, rho_);
  return covariance_of(Observable::indicator_le(x), Observable::indicator_le(y));
}

std::optional<double> BivariatePair::density_bound() const {
  if (kind_ == Kind::gaussian) return 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return std::nullopt;
}

InequalityVerdict make_verdict(std::string id, std::string pair, double lhs, double rhs,
                               std::optional<double> std_error, std::string mode) {
  InequalityVerdict v;
  v.inequality_id = std::move(id);
  v.pair = std::move(pair);
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = rhs - lhs;
  v.std_error = std_error;
  v.holds = std_error ? lhs <= rhs + 3.0 * *std_error : lhs <= rhs + 1e-10;
  v.mode = std::move(mode);
  return v;
}

InequalityVerdict check_newman(const BivariatePair& pair, const SmoothObservable& f, const SmoothObservable& g,
                               const MonteCarloOptions& mc) {
  const double cov = pair.covariance();
  if (cov < 0.0) fail(ErrorKind::not_applicable, "Newman's inequality needs Cov(X,Y) >= 0");
  const double rhs = f.derivative_bound * g.derivative_bound * cov;
  if (pair.kind() != BivariatePair::Kind::gaussian) {
    auto v = make_verdict("newman", pair.label(), std::abs(pair.covariance_of(f.f, g.f)), rhs, std::nullopt, "exact");
    v.inputs = {{"Bf", f.derivative_bound}, {"Bg", g.derivative_bound}, {"cov", cov}};
    return v;
  }
  if (mc.samples < 2) fail(ErrorKind::invalid_parameter, "check_newman: need at least 2 samples");
  CounterStream rng(mc.seed, mc.stream);
  const double rho = pair.rho();
  const double scale = std::sqrt(1.0 - rho * rho);
  std::vector<double> fx(mc.samples), gy(mc.samples);
  for (std::size_t i = 0; i < mc.samples; ++i) {
    const double z1 = rng.next_normal();
    const double z2 = rho * z1 + scale * rng.next_normal();
    fx[i] = f.f(z1);
    gy[i] = g.f(z2);
  }
  const double mf = compensated_mean(fx);
  const double mg = compensated_mean(gy);
  CompensatedSum sum, sum_sq;
  for (std::size_t i = 0; i < mc.samples; ++i) {
    const double prod = (fx[i] - mf) * (gy[i] - mg);
    sum.add(prod);
    sum_sq.add(prod * prod);
  }
  const double n = static_cast<double>(mc.samples);
  const double mean_prod = sum.value() / n;
  const double var_prod = std::max(0.0, sum_sq.value() / n - mean_prod * mean_prod);
  const double estimate = sum.value() / (n - 1.0);
  auto v = make_verdict("newman", pair.label(), std::abs(estimate), rhs, std::sqrt(var_prod / n), "estimated");
  v.inputs = {{"Bf", f.derivative_bound}, {"Bg", g.derivative_bound}, {"cov", cov}, {"samples", n}};
  return v;
}

double lemma_constant(double density_bound) {
  return std::max(2.0 / (std::numbers::pi * std::numbers::pi), 45.0 * density_bound);
}

InequalityVerdict check_indicator_cov_bound(const BivariatePair& pair, double x, double y, double T,
                                            double density_bound) {
  if (!(T > 0.0)) fail(ErrorKind::invalid_parameter, "check_indicator_cov_bound: T must be > 0");
  const double cov = pair.covariance();
  const double m_star = lemma_constant(density_bound);
  const double lhs = pair.indicator_covariance(x, y);
  auto v = make_verdict("indicator-cov-bound", pair.label(), lhs, m_star * (T * T * cov + 1.0 / T), std::nullopt,
                        "exact");
  v.inputs = {{"x", x}, {"y", y}, {"T", T}, {"M", density_bound}, {"M_star", m_star}, {"cov", cov}};
  return v;
}

double optimized_cov13_constant(double density_bound, double covariance) {
  if (!(covariance > 0.0)) fail(ErrorKind::not_applicable, "optimized constant needs Cov(X,Y) > 0");
  const double m_star = lemma_constant(density_bound);
  auto objective = [&](double log_t) {
    const double t = std::exp(log_t);
    return m_star * (t * t * covariance + 1.0 / t);
  };
  // Minimizer is at T = (2C)^{-1/3}; bracket generously around it.
  const double centre = -std::log(2.0 * covariance) / 3.0;
  const auto [arg, value] = boost::math::tools::brent_find_minima(objective, centre - 20.0, centre + 20.0, 60);
  (void)arg;
  return value / std::cbrt(covariance);
}

InequalityVerdict check_cov_one_third(const BivariatePair& pair, double x, double y, double density_bound,
                                      ConstantMode mode) {
  const double cov = pair.covariance();
  if (!(cov > 0.0)) fail(ErrorKind::not_applicable, "Cov^{1/3} bound needs Cov(X,Y) > 0");
  const double stated_constant = 1.0 / lemma_constant(density_bound);
  const double optimized_constant = optimized_cov13_constant(density_bound, cov);
  const double c = mode == ConstantMode::stated ? stated_constant : optimized_constant;
  auto v = make_verdict("cov-one-third", pair.label(), pair.indicator_covariance(x, y), c * std::cbrt(cov),
                        std::nullopt, mode == ConstantMode::stated ? "stated" : "optimized");
  v.inputs = {{"x", x},
              {"y", y},
              {"M", density_bound},
              {"cov", cov},
              {"stated_constant", stated_constant},
              {"optimized_constant", optimized_constant}};
  return v;
}

InequalityVerdict check_bagai_prakasa(const BivariatePair& pair, const std::vector<double>& x_grid,
                                      const std::vector<double>& y_grid, double density_bound, double c) {
  const double cov = pair.covariance();
  if (!(cov > 0.0) && !(cov == 0.0 && pair.kind() == BivariatePair::Kind::gaussian)) {
    fail(ErrorKind::not_applicable, "Bagai-Prakasa Rao bound needs Cov(X,Y) > 0");
  }
  if (x_grid.empty() || y_grid.empty()) fail(ErrorKind::invalid_parameter, "check_bagai_prakasa: empty grid");
  if (!(c > 0.0)) fail(ErrorKind::invalid_parameter, "check_bagai_prakasa: c must be > 0");
  double lhs = 0.0;
  for (double x : x_grid)
    for (double y : y_grid) lhs = std::max(lhs, std::abs(pair.indicator_covariance(x, y)));
  const double scale = std::pow(density_bound, 2.0 / 3.0) * std::cbrt(cov);
  auto v = make_verdict("bagai-prakasa", pair.label(), lhs, c * scale, std::nullopt, "exact");
  v.inputs = {{"M", density_bound}, {"c", c}, {"cov", cov}, {"ratio", scale > 0.0 ? lhs / scale : 0.0}};
  return v;
}

InequalityVerdict check_phi_covariance(const MarkovChainSpec& spec, std::size_t lag, const Observable& f,
                                       const Observable& g, double p) {
  if (!(p > 1.0)) fail(ErrorKind::invalid_parameter, "check_phi_covariance: p must be > 1");
  if (lag == 0) fail(ErrorKind::invalid_parameter, "check_phi_covariance: lag must be >= 1");
  const double q = p / (p - 1.0);
  const auto pair = BivariatePair::chain_lag(spec, lag);
  const double lhs = pair.covariance_of(f, g);
  const double phi = phi_mixing_profile(spec, lag).back();
  CompensatedSum fp, gq;
  for (std::size_t a = 0; a < spec.states(); ++a) {
    fp.add(spec.stationary[a] * std::pow(std::abs(f(spec.values[a])), p));
    gq.add(spec.stationary[a] * std::pow(std::abs(g(spec.values[a])), q));
  }
  const double norm_f = std::pow(fp.value(), 1.0 / p);
  const double norm_g = std::pow(gq.value(), 1.0 / q);
  auto v = make_verdict("phi-covariance", pair.label(), lhs, 2.0 * std::pow(phi, 1.0 / p) * norm_f * norm_g,
                        std::nullopt, "exact");
  v.inputs = {{"lag", static_cast<double>(lag)}, {"p", p}, {"q", q}, {"phi", phi}, {"norm_f_p", norm_f},
              {"norm_g_q", norm_g}};
  return v;
}

MarkovChainSpec two_state_reference_chain() {
  return MarkovChainSpec::create({{0.9, 0.1}, {0.2, 0.8}}, {0.0, 1.0});
}

namespace {

SmoothObservable random_smooth(CounterStream& rng) {
  const double a = 0.2 + 1.8 * rng.next_uniform();
  const int which = static_cast<int>(rng.next_uniform() * 4.0);
  std::ostringstream os;
  switch (which) {
    case 0:
      os << "tanh(" << a << "x)";
      return {{[a](double x) { return std::tanh(a * x); }, os.str()}, a};
    case 1:
      os << "sin(" << a << "x)";
      return {{[a](double x) { return std::sin(a * x); }, os.str()}, a};
    case 2:
      os << "atan(" << a << "x)";
      return {{[a](double x) { return std::atan(a * x); }, os.str()}, a};
    default:
      os << a << "x";
      return {{[a](double x) { return a * x; }, os.str()}, a};
  }
}

}  // namespace

std::vector<InequalityVerdict> run_inequality_battery(const BatteryOptions& options) {
  std::vector<InequalityVerdict> out;
  const std::vector<double> rhos{0.0, 0.1, 0.25, 0.5, 0.75, 0.9};
  const std::vector<double> points{-1.5, -0.5, 0.0, 0.5, 1.5};
  const std::vector<double> ts{0.5, 1.0, 2.0, 4.0};
  const double gaussian_m = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  for (double rho : rhos) {
    const auto pair = BivariatePair::gaussian(rho);
    for (double x : points)
      for (double y : points)
        for (double t : ts) out.push_back(check_indicator_cov_bound(pair, x, y, t, gaussian_m));
    if (rho > 0.0) {
      out.push_back(check_cov_one_third(pair, 0.0, 0.0, gaussian_m, ConstantMode::optimized));
      out.push_back(check_cov_one_third(pair, 0.0, 0.0, gaussian_m, ConstantMode::stated));
      std::vector<double> grid;
      for (int i = 0; i <= 100; ++i) grid.push_back(-4.0 + 0.08 * i);
      out.push_back(check_bagai_prakasa(pair, grid, grid, gaussian_m, 1.0));
    }
  }

  std::vector<MarkovChainSpec> chains{
      two_state_reference_chain(),
      MarkovChainSpec::create({{0.5, 0.5}, {0.5, 0.5}}, {0.0, 1.0}),
      MarkovChainSpec::create({{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.3, 0.6}}, {-1.0, 0.0, 2.0}),
  };
  const std::vector<double> ps{1.5, 2.0, 3.0};
  for (const auto& chain : chains) {
    for (std::size_t lag = 1; lag <= 10; ++lag) {
      for (double p : ps) {
        out.push_back(check_phi_covariance(chain, lag, Observable::identity(), Observable::identity(), p));
      }
      const auto pair = BivariatePair::chain_lag(chain, lag);
      if (pair.covariance() >= 0.0) {
        out.push_back(check_newman(pair, {Observable::identity(), 1.0}, {Observable::identity(), 1.0}));
        out.push_back(check_newman(pair, {{[](double x) { return std::tanh(x); }, "tanh"}, 1.0},
                                   {{[](double x) { return std::atan(x); }, "atan"}, 1.0}));
      }
    }
  }

  CounterStream draws(options.seed, 0x4E45574Dull);
  for (std::size_t trial = 0; trial < options.newman_trials; ++trial) {
    const double rho = 0.95 * draws.next_uniform();
    const auto f = random_smooth(draws);
    const auto g = random_smooth(draws);
    auto verdict = check_newman(BivariatePair::gaussian(rho), f, g,
                                {options.newman_samples, options.seed, replicate_stream(1, trial)});
    verdict.inputs["rho"] = rho;
    out.push_back(std::move(verdict));
  }
  return out;
}

}  // namespace gclab
