#include "rho/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rho/errors.hpp"
#include "rho/kernels.hpp"

namespace rho {

void Penalty::validate(std::size_t family_size) const {
  if (values.size() != family_size) {
    throw ContractViolation("Penalty: one value per family entry is required");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ContractViolation("Penalty: values must be finite and >= 0");
    }
  }
}

double t_statistic(const Sample& X, const ProductDensity& q, const ProductDensity& qp,
                   const PsiKernel& k) {
  if (q.size() != X.size() || qp.size() != X.size()) {
    throw ContractViolation("t_statistic: coordinate counts must equal the sample size");
  }
  // A common base measure keeps the ratio exact; otherwise compare Lebesgue densities.
  bool lebesgue = true;
  for (BaseMeasure b : {BaseMeasure::lebesgue, BaseMeasure::standard_gaussian}) {
    if (q.all_scalar_with_base(b) && qp.all_scalar_with_base(b)) lebesgue = false;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    s += kernels::psi_term(q.log_density_at(X, i, lebesgue), qp.log_density_at(X, i, lebesgue), k);
  }
  return s;
}

double upsilon(const Sample& X, const ProductDensity& q, const DensityFamily& fam,
               const Penalty& pen, const PsiKernel& k) {
  if (fam.empty()) throw ContractViolation("upsilon: family is empty");
  pen.validate(fam.size());
  double pen_q = 0.0;
  if (auto idx = fam.find(q)) pen_q = pen.values[*idx];
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < fam.size(); ++c) {
    best = std::max(best, t_statistic(X, q, fam.entry(c), k) - pen.values[c]);
  }
  return best + pen_q;
}

std::vector<double> upsilon_all(const Sample& X, const DensityFamily& fam, const Penalty& pen,
                                const PsiKernel& k, Exec exec) {
  if (fam.empty()) throw ContractViolation("upsilon: family is empty");
  pen.validate(fam.size());
  const LogDensityMatrix L = fam.evaluate(X, exec);
  return exec == Exec::serial ? kernels::upsilon_serial(L, pen.values, k)
                              : kernels::upsilon_parallel(L, pen.values, k);
}

RhoFit fit_from_trace(std::vector<double> trace, double slack) {
  if (trace.empty()) throw ContractViolation("rho_estimate: family is empty");
  if (!(slack >= 0.0)) throw ContractViolation("rho_estimate: slack must be >= 0");
  double scale = 1.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (double v : trace) {
    scale = std::max(scale, std::abs(v));
    lowest = std::min(lowest, v);
  }
  const double tie = kCriterionTieTolerance * scale;
  RhoFit fit;
  fit.slack = slack;
  fit.upsilon_min = lowest;
  for (std::size_t j = 0; j < trace.size(); ++j) {
    if (trace[j] <= lowest + tie) {
      fit.chosen_index = j;
      break;
    }
  }
  fit.upsilon_at_chosen = trace[fit.chosen_index];
  for (std::size_t j = 0; j < trace.size(); ++j) {
    if (trace[j] <= lowest + slack + tie) fit.admissible_set.push_back(j);
  }
  fit.trace = std::move(trace);
  return fit;
}

RhoFit rho_estimate(const Sample& X, const DensityFamily& fam, const Penalty& pen,
                    const PsiKernel& k, std::optional<double> slack, Exec exec) {
  return fit_from_trace(upsilon_all(X, fam, pen, k, exec), slack.value_or(k.default_slack()));
}

}  // namespace rho
