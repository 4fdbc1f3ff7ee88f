#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rho {

/// n independent observations, either scalars or regression pairs (w, y)
/// with w in R^d. Immutable after construction.
class Sample {
 public:
  enum class Kind { scalar, pair };

  static Sample scalars(std::vector<double> x);
  /// w is row-major n x d (d = design_dim).
  static Sample pairs(std::vector<double> w, std::size_t design_dim, std::vector<double> y);
  /// Convenience for scalar designs.
  static Sample pairs(std::vector<double> w, std::vector<double> y);

  Kind kind() const { return kind_; }
  std::size_t size() const { return y_.size(); }
  std::size_t design_dim() const { return design_dim_; }

  /// Scalar observation i (for scalar samples) or the response y_i (for pairs).
  double x(std::size_t i) const { return y_[i]; }
  double y(std::size_t i) const { return y_[i]; }
  std::span<const double> w(std::size_t i) const {
    return {w_.data() + i * design_dim_, design_dim_};
  }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& design() const { return w_; }

 private:
  Sample() = default;

  Kind kind_ = Kind::scalar;
  std::size_t design_dim_ = 0;
  std::vector<double> w_;
  std::vector<double> y_;
};

}  // namespace rho
