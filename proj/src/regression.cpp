#include "rho/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rho/errors.hpp"
#include "rho/hellinger.hpp"

namespace rho {

std::vector<LinearPredictor> predictor_grid(const std::vector<PredictorTerm>& basis,
                                            const std::vector<std::vector<double>>& coefficient_grid) {
  if (basis.empty()) throw ContractViolation("predictor_grid: empty basis");
  std::vector<LinearPredictor> out;
  out.reserve(coefficient_grid.size());
  for (const auto& coef : coefficient_grid) {
    if (coef.size() != basis.size()) {
      throw ContractViolation("predictor_grid: coefficient vector length differs from basis size");
    }
    out.push_back(LinearPredictor{basis, coef});
  }
  return out;
}

std::vector<std::vector<double>> cartesian_grid(const std::vector<std::vector<double>>& axes) {
  std::vector<std::vector<double>> out{{}};
  for (const auto& axis : axes) {
    if (axis.empty()) throw ContractViolation("cartesian_grid: empty axis");
    std::vector<std::vector<double>> next;
    next.reserve(out.size() * axis.size());
    for (const auto& prefix : out) {
      for (double v : axis) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<double> arithmetic_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ContractViolation("arithmetic_grid: need lo <= hi and step > 0");
  }
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

ModelDescriptor build_regression_model(const RegressionModel& model, std::size_t n, double c1) {
  if (model.functions.empty()) throw ContractViolation("regression model: F is empty");
  if (!(model.vc_index_F >= 1.0)) throw ContractViolation("regression model: vc_index_F must be >= 1");
  double multiplier = 1.0;
  ModelDescriptor d;
  d.name = model.name.empty() ? to_string(model.error.kind()) : model.name;
  if (!model.error.unimodal()) {
    if (!model.mode_multiplier || !(*model.mode_multiplier >= 1.0)) {
      throw ContractViolation("regression model: error density " + model.error.describe() +
                              " is not declared unimodal; a mode multiplier >= 1 is required");
    }
    multiplier = *model.mode_multiplier;
    d.diagnostics.push_back("error density not declared unimodal; VC index scaled by " +
                            std::to_string(multiplier));
  }

  std::vector<ProductDensity> entries;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> params;
  for (const LinearPredictor& g : model.functions) {
    entries.push_back(ProductDensity::iid(PairDensity{model.error, g}, n));
    labels.push_back("r=" + model.error.describe() + "; g=" + g.describe());
    params.push_back(g.coef);
  }
  d.family = DensityFamily(std::move(entries), std::move(labels), std::move(params));
  const double vc = kRegressionVcMultiplier * model.vc_index_F * multiplier;
  d.family.set_vc_index(vc);
  d.vc_index = vc;
  d.vc_provenance = "9.41 x VC(F)";
  d.bound_source = BoundSource::vc;
  d.dim_bound = dimension_bound_vc(vc, n, c1, &d.diagnostics);
  d.delta_weight = model.delta_weight;
  return d;
}

ModelCollection build_regression_family(const std::vector<RegressionModel>& models, std::size_t n,
                                        const PsiKernel& k, double c1) {
  if (models.empty()) throw ContractViolation("build_regression_family: no models");
  std::vector<ModelDescriptor> descs;
  descs.reserve(models.size());
  for (const RegressionModel& m : models) descs.push_back(build_regression_model(m, n, c1));
  return ModelCollection(std::move(descs), k);
}

RegressionFit fit_regression(const Sample& X, const ModelCollection& coll, double slack_multiplier,
                             Exec exec) {
  if (X.kind() != Sample::Kind::pair) {
    throw ContractViolation("fit_regression: sample must hold (w, y) pairs");
  }
  SelectionResult sel = select(X, coll, slack_multiplier, exec);
  const ProductDensity& chosen = coll.union_family().entry(sel.fit.chosen_index);
  const auto* pd = std::get_if<PairDensity>(&chosen.coordinate(0));
  if (pd == nullptr) throw ContractViolation("fit_regression: chosen entry is not a regression density");
  return RegressionFit{pd->g, pd->error, std::move(sel)};
}

double d_s_loss(const Density1D& s, const LinearPredictor& g, const LinearPredictor& gp,
                const Sample& design, const QuadratureSpec& quad) {
  if (design.kind() != Sample::Kind::pair || design.size() == 0) {
    throw ContractViolation("d_s_loss: need a nonempty sample of design points");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < design.size(); ++i) {
    const auto w = design.w(i);
    acc += hellinger_sq(s.shifted(g(w)), s.shifted(gp(w)), quad);
  }
  return acc / static_cast<double>(design.size());
}

IdentifiabilityReport check_identifiability(const std::vector<Density1D>& errors,
                                            const std::vector<double>& shift_grid, double ceiling,
                                            const QuadratureSpec& quad) {
  if (shift_grid.empty()) throw ContractViolation("check_identifiability: empty shift grid");
  std::vector<double> sorted = shift_grid;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (std::abs(sorted[i] + sorted[sorted.size() - 1 - i]) > 1e-12 * (1.0 + std::abs(sorted[i]))) {
      throw ContractViolation("check_identifiability: shift grid must be symmetric around 0");
    }
  }
  IdentifiabilityReport rep;
  for (std::size_t a = 0; a < errors.size(); ++a) {
    for (std::size_t b = a + 1; b < errors.size(); ++b) {
      IdentifiabilityPair p;
      p.first = a;
      p.second = b;
      p.h = std::sqrt(hellinger_sq(errors[a], errors[b], quad));
      p.h_min_shifted = std::numeric_limits<double>::infinity();
      for (double shift : shift_grid) {
        const double h = std::sqrt(hellinger_sq(errors[a].shifted(shift), errors[b], quad));
        if (h < p.h_min_shifted) {
          p.h_min_shifted = h;
          p.argmin_shift = shift;
        }
      }
      if (errors[a] == errors[b] || p.h == 0.0) {
        p.ratio = 1.0;
      } else if (p.h_min_shifted == 0.0) {
        p.ratio = std::numeric_limits<double>::infinity();
      } else {
        p.ratio = p.h / p.h_min_shifted;
      }
      p.above_ceiling = p.ratio > ceiling;
      rep.max_ratio = std::max(rep.max_ratio, p.ratio);
      rep.pairs.push_back(p);
    }
  }
  return rep;
}

}  // namespace rho
