#include "rho/family.hpp"

#include "rho/errors.hpp"
#include "rho/kernels.hpp"

namespace rho {

DensityFamily::DensityFamily(std::vector<ProductDensity> entries, std::vector<std::string> labels,
                             std::vector<std::vector<double>> parameters)
    : entries_(std::move(entries)), labels_(std::move(labels)), parameters_(std::move(parameters)) {
  if (entries_.empty()) throw ContractViolation("DensityFamily: need at least one entry");
  const std::size_t n = entries_.front().size();
  for (const ProductDensity& e : entries_) {
    if (e.size() != n) throw ContractViolation("DensityFamily: entries differ in coordinate count");
  }
  if (labels_.empty()) {
    labels_.reserve(entries_.size());
    for (const ProductDensity& e : entries_) labels_.push_back(e.describe());
  }
  if (labels_.size() != entries_.size()) {
    throw ContractViolation("DensityFamily: one label per entry");
  }
  if (parameters_.empty()) parameters_.resize(entries_.size());
  if (parameters_.size() != entries_.size()) {
    throw ContractViolation("DensityFamily: one parameter vector per entry");
  }
  bool shared = true;
  for (BaseMeasure b : {BaseMeasure::lebesgue, BaseMeasure::standard_gaussian}) {
    shared = true;
    for (const ProductDensity& e : entries_) {
      if (e.all_scalar() && !e.all_scalar_with_base(b)) {
        shared = false;
        break;
      }
    }
    if (shared) break;
  }
  lebesgue_ = !shared;
}

std::optional<std::size_t> DensityFamily::find(const ProductDensity& p) const {
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (entries_[j] == p) return j;
  }
  return std::nullopt;
}

LogDensityMatrix DensityFamily::evaluate(const Sample& X, Exec exec) const {
  return exec == Exec::serial ? kernels::evaluate_family_serial(*this, X)
                              : kernels::evaluate_family_parallel(*this, X);
}

}  // namespace rho
