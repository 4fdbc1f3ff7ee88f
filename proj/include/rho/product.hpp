#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rho/density.hpp"
#include "rho/sample.hpp"

namespace rho {

/// One basis function of a regression design: 1, w_j, or w_j^k.
struct PredictorTerm {
  enum class Type { constant, power };
  Type type = Type::constant;
  std::size_t component = 0;
  int power = 1;

  /// Accepts "1", "w", "w^k", "w[j]", "w[j]^k".
  static PredictorTerm parse(const std::string& text);
  std::string to_string() const;
  double operator()(std::span<const double> w) const;
  bool operator==(const PredictorTerm&) const = default;
};

/// g(w) = sum_j coef_j * basis_j(w).
struct LinearPredictor {
  std::vector<PredictorTerm> basis;
  std::vector<double> coef;

  static LinearPredictor constant(double c);
  double operator()(std::span<const double> w) const;
  std::string describe() const;
  bool operator==(const LinearPredictor&) const = default;
};

/// Density of a regression pair with respect to P_W x Lebesgue:
/// q(w, y) = r(y - g(w)).
struct PairDensity {
  Density1D error;
  LinearPredictor g;

  double log_density(std::span<const double> w, double y) const {
    return error.log_lebesgue_density(y - g(w));
  }
  bool operator==(const PairDensity&) const = default;
};

using Coordinate = std::variant<Density1D, PairDensity>;

/// The n-uplet of coordinate densities of a product probability. The i.i.d.
/// shorthand stores a single coordinate replicated n times.
class ProductDensity {
 public:
  static ProductDensity iid(Coordinate c, std::size_t n);
  static ProductDensity of(std::vector<Coordinate> coords);

  std::size_t size() const { return n_; }
  bool is_iid() const { return coords_.size() == 1; }
  const Coordinate& coordinate(std::size_t i) const {
    return coords_.size() == 1 ? coords_.front() : coords_[i];
  }
  /// Distinct stored coordinates (one for i.i.d. products).
  const std::vector<Coordinate>& stored() const { return coords_; }

  /// True when every coordinate is a Density1D declared against `base`.
  bool all_scalar_with_base(BaseMeasure base) const;
  bool all_scalar() const;

  /// log density of coordinate i at observation i of X. If `lebesgue` is
  /// set, scalar coordinates are converted to Lebesgue densities.
  double log_density_at(const Sample& X, std::size_t i, bool lebesgue) const;

  std::string describe() const;
  bool operator==(const ProductDensity&) const = default;

 private:
  std::vector<Coordinate> coords_;
  std::size_t n_ = 0;
};

}  // namespace rho
