#include "gclab/lag_covariance.hpp"

#include <utility>

#include "gclab/error.hpp"

namespace gclab {

LagCovariance::LagCovariance(TableFn table, std::string label) : table_(std::move(table)), label_(std::move(label)) {
  if (!table_) fail(ErrorKind::invalid_parameter, "LagCovariance requires a table generator");
}

LagCovariance LagCovariance::from_values(std::vector<double> head, std::string label) {
  return LagCovariance(
      [head = std::move(head)](std::size_t count) {
        std::vector<double> out(count, 0.0);
        for (std::size_t j = 0; j < count && j < head.size(); ++j) out[j] = head[j];
        return out;
      },
      std::move(label));
}

LagCovariance LagCovariance::from_function(std::function<double(std::size_t)> gamma, std::string label) {
  return LagCovariance(
      [gamma = std::move(gamma)](std::size_t count) {
        std::vector<double> out(count);
        for (std::size_t j = 0; j < count; ++j) out[j] = gamma(j);
        return out;
      },
      std::move(label));
}

std::vector<double> LagCovariance::values(std::size_t count) const { return table_(count); }

double LagCovariance::at(std::size_t j) const { return table_(j + 1).back(); }

}  // namespace gclab
