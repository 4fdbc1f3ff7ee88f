#include "rho/sample.hpp"

#include <cmath>

#include "rho/errors.hpp"

namespace rho {

Sample Sample::scalars(std::vector<double> x) {
  if (x.empty()) throw ContractViolation("Sample: need n >= 1 observations");
  for (double v : x) {
    if (std::isnan(v)) throw ContractViolation("Sample: NaN observation");
  }
  Sample s;
  s.kind_ = Kind::scalar;
  s.y_ = std::move(x);
  return s;
}

Sample Sample::pairs(std::vector<double> w, std::size_t design_dim, std::vector<double> y) {
  if (y.empty()) throw ContractViolation("Sample: need n >= 1 observations");
  if (design_dim == 0) throw ContractViolation("Sample: design dimension must be >= 1");
  if (w.size() != y.size() * design_dim) {
    throw ContractViolation("Sample: design matrix size does not match n * d");
  }
  for (double v : w) {
    if (std::isnan(v)) throw ContractViolation("Sample: NaN design value");
  }
  for (double v : y) {
    if (std::isnan(v)) throw ContractViolation("Sample: NaN response");
  }
  Sample s;
  s.kind_ = Kind::pair;
  s.design_dim_ = design_dim;
  s.w_ = std::move(w);
  s.y_ = std::move(y);
  return s;
}

Sample Sample::pairs(std::vector<double> w, std::vector<double> y) {
  return pairs(std::move(w), 1, std::move(y));
}

}  // namespace rho
