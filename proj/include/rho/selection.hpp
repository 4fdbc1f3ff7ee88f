#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rho/criterion.hpp"
#include "rho/model_zoo.hpp"
#include "rho/psi.hpp"

namespace rho {

/// Weighted collection of rho-models. The union family merges structurally
/// equal entries, so an entry may belong to several models.
class ModelCollection {
 public:
  /// Throws ContractViolation unless sum_m exp(-delta_m) <= 1 + 1e-12 and
  /// all models share one sample size.
  ModelCollection(std::vector<ModelDescriptor> models, PsiKernel kernel);

  const std::vector<ModelDescriptor>& models() const { return models_; }
  const ModelDescriptor& model(std::size_t m) const { return models_.at(m); }
  const PsiKernel& kernel() const { return kernel_; }
  const DensityFamily& union_family() const { return union_; }
  /// Models containing union entry j, in model order.
  const std::vector<std::size_t>& containing_models(std::size_t j) const {
    return membership_.at(j);
  }
  /// Union index of entry `local` of model m.
  std::size_t union_index(std::size_t m, std::size_t local) const { return index_.at(m).at(local); }

  /// dim_bound / 4.7 + delta: the complexity used for penalties and ties.
  double complexity(std::size_t m) const;

 private:
  std::vector<ModelDescriptor> models_;
  PsiKernel kernel_;
  DensityFamily union_;
  std::vector<std::vector<std::size_t>> membership_;
  std::vector<std::vector<std::size_t>> index_;
};

/// log |M| for every model: the uniform prior, equality in the weight condition.
std::vector<double> uniform_weights(std::size_t model_count);

/// kappa * min over models containing the entry of [dim_bound / 4.7 + delta].
double penalty_for(const ModelCollection& coll, std::size_t entry_index);
Penalty collection_penalty(const ModelCollection& coll);

struct SelectionResult {
  RhoFit fit;
  /// Models containing the chosen entry, by increasing complexity.
  std::vector<std::size_t> selected_models;
};

/// Penalized rho-estimation over the union family; slack is
/// slack_multiplier * kappa / 25.
SelectionResult select(const Sample& X, const ModelCollection& coll, double slack_multiplier = 1.0,
                       Exec exec = Exec::parallel);

/// (4 kappa / a1) (dim_bound_m / 4.7 + delta_m + 1.5 + xi), plus
/// gamma * bias_h2 when the approximation error of model m is known.
double risk_bound_report(const ModelCollection& coll, std::size_t m, double xi,
                         std::optional<double> bias_h2 = std::nullopt);

}  // namespace rho
