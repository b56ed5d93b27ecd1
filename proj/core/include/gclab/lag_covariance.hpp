#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace gclab {

/// The map j -> gamma(j) = Cov(g(X_1), g(X_{1+j})) for some observable g.
///
/// Backed by a table generator so that sources with a recursive structure
/// (matrix powers, geometric decay) can produce gamma(0..count-1) in one pass.
class LagCovariance {
 public:
  using TableFn = std::function<std::vector<double>(std::size_t count)>;

  LagCovariance(TableFn table, std::string label);

  /// gamma(j) = head[j] for j < head.size(), 0 afterwards.
  static LagCovariance from_values(std::vector<double> head, std::string label = "table");
  static LagCovariance from_function(std::function<double(std::size_t)> gamma, std::string label = "function");

  /// gamma(0), ..., gamma(count - 1).
  std::vector<double> values(std::size_t count) const;
  double at(std::size_t j) const;

  const std::string& label() const noexcept { return label_; }

 private:
  TableFn table_;
  std::string label_;
};

}  // namespace gclab
