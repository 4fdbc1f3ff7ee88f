#include "rho/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rho/errors.hpp"

namespace rho {

ModelCollection::ModelCollection(std::vector<ModelDescriptor> models, PsiKernel kernel)
    : models_(std::move(models)), kernel_(kernel) {
  if (models_.empty()) throw ContractViolation("ModelCollection: need at least one model");
  double mass = 0.0;
  for (const ModelDescriptor& m : models_) {
    if (!(m.delta_weight >= 0.0) || !std::isfinite(m.delta_weight)) {
      throw ContractViolation("ModelCollection: weights must be finite and >= 0");
    }
    if (!(m.dim_bound >= 1.0)) throw ContractViolation("ModelCollection: dim_bound must be >= 1");
    if (m.family.empty()) throw ContractViolation("ModelCollection: empty model family");
    mass += std::exp(-m.delta_weight);
  }
  if (mass > 1.0 + 1e-12) {
    throw ContractViolation("ModelCollection: sum of exp(-delta) exceeds 1");
  }
  const std::size_t n = models_.front().family.sample_size();
  for (const ModelDescriptor& m : models_) {
    if (m.family.sample_size() != n) {
      throw ContractViolation("ModelCollection: models differ in sample size");
    }
  }

  std::vector<ProductDensity> entries;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> params;
  index_.resize(models_.size());
  for (std::size_t m = 0; m < models_.size(); ++m) {
    const DensityFamily& fam = models_[m].family;
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const ProductDensity& e = fam.entry(j);
      std::size_t u = entries.size();
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k] == e) {
          u = k;
          break;
        }
      }
      if (u == entries.size()) {
        entries.push_back(e);
        labels.push_back(models_[m].name + "/" + fam.label(j));
        params.push_back(fam.parameters(j));
        membership_.emplace_back();
      }
      membership_[u].push_back(m);
      index_[m].push_back(u);
    }
  }
  union_ = DensityFamily(std::move(entries), std::move(labels), std::move(params));
}

double ModelCollection::complexity(std::size_t m) const {
  const ModelDescriptor& d = models_.at(m);
  return d.dim_bound / 4.7 + d.delta_weight;
}

std::vector<double> uniform_weights(std::size_t model_count) {
  if (model_count == 0) throw ContractViolation("uniform_weights: need at least one model");
  return std::vector<double>(model_count, std::log(static_cast<double>(model_count)));
}

double penalty_for(const ModelCollection& coll, std::size_t entry_index) {
  if (entry_index >= coll.union_family().size()) {
    throw ContractViolation("penalty_for: entry belongs to no model");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m : coll.containing_models(entry_index)) {
    best = std::min(best, coll.complexity(m));
  }
  return coll.kernel().kappa * best;
}

Penalty collection_penalty(const ModelCollection& coll) {
  Penalty pen;
  pen.values.resize(coll.union_family().size());
  for (std::size_t j = 0; j < pen.values.size(); ++j) pen.values[j] = penalty_for(coll, j);
  return pen;
}

SelectionResult select(const Sample& X, const ModelCollection& coll, double slack_multiplier,
                       Exec exec) {
  if (!(slack_multiplier >= 0.0)) throw ContractViolation("select: slack multiplier must be >= 0");
  SelectionResult out;
  out.fit = rho_estimate(X, coll.union_family(), collection_penalty(coll), coll.kernel(),
                         slack_multiplier * coll.kernel().default_slack(), exec);
  out.selected_models = coll.containing_models(out.fit.chosen_index);
  std::stable_sort(out.selected_models.begin(), out.selected_models.end(),
                   [&](std::size_t a, std::size_t b) { return coll.complexity(a) < coll.complexity(b); });
  return out;
}

double risk_bound_report(const ModelCollection& coll, std::size_t m, double xi,
                         std::optional<double> bias_h2) {
  if (!(xi > 0.0)) throw ContractViolation("risk_bound_report: xi must be > 0");
  const PsiKernel& k = coll.kernel();
  double bound = 4.0 * k.kappa / k.a1 * (coll.complexity(m) + 1.5 + xi);
  if (bias_h2) bound += k.gamma * *bias_h2;
  return bound;
}

}  // namespace rho
