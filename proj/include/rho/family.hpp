#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rho/product.hpp"
#include "rho/sample.hpp"

namespace rho {

/// Serial loops or OpenMP-parallel loops. Both produce identical results.
enum class Exec { serial, parallel };

/// Row-major (entries x n) matrix of log-densities of family entries at the
/// observations.
class LogDensityMatrix {
 public:
  LogDensityMatrix() = default;
  LogDensityMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A finite represented rho-model: indexed product densities sharing a
/// dominating measure, with optional labels, parameter vectors and VC index.
class DensityFamily {
 public:
  DensityFamily() = default;
  explicit DensityFamily(std::vector<ProductDensity> entries, std::vector<std::string> labels = {},
                         std::vector<std::vector<double>> parameters = {});

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t sample_size() const { return entries_.empty() ? 0 : entries_.front().size(); }
  const ProductDensity& entry(std::size_t j) const { return entries_.at(j); }
  const std::vector<ProductDensity>& entries() const { return entries_; }
  const std::string& label(std::size_t j) const { return labels_.at(j); }
  /// Parameter vector of entry j (e.g. grid location); empty if none.
  const std::vector<double>& parameters(std::size_t j) const { return parameters_.at(j); }

  std::optional<double> vc_index() const { return vc_index_; }
  void set_vc_index(double v) { vc_index_ = v; }

  /// Index of an entry equal to p, if any.
  std::optional<std::size_t> find(const ProductDensity& p) const;

  /// True when entries are declared against different base measures, in
  /// which case evaluation converts everything to Lebesgue densities.
  bool uses_lebesgue_evaluation() const { return lebesgue_; }

  LogDensityMatrix evaluate(const Sample& X, Exec exec = Exec::parallel) const;

 private:
  std::vector<ProductDensity> entries_;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> parameters_;
  std::optional<double> vc_index_;
  bool lebesgue_ = false;
};

}  // namespace rho
