#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rho/family.hpp"
#include "rho/psi.hpp"
#include "rho/sample.hpp"

namespace rho {

/// Nonnegative penalty per family entry.
struct Penalty {
  std::vector<double> values;

  static Penalty zero(std::size_t size) { return Penalty{std::vector<double>(size, 0.0)}; }
  void validate(std::size_t family_size) const;
};

struct RhoFit {
  std::size_t chosen_index = 0;
  double upsilon_at_chosen = 0.0;
  double upsilon_min = 0.0;
  /// Entries whose criterion is within `slack` of the minimum.
  std::vector<std::size_t> admissible_set;
  double slack = 0.0;
  /// Criterion value of every entry, in family order.
  std::vector<double> trace;
};

/// Relative tolerance under which two criterion values count as tied.
inline constexpr double kCriterionTieTolerance = 1e-12;

/// T(X, q, q') = sum_i psi(sqrt(q'_i(X_i) / q_i(X_i))) with 0/0 = 1 and a/0 = +inf.
double t_statistic(const Sample& X, const ProductDensity& q, const ProductDensity& qp,
                   const PsiKernel& k);

/// max over q' in fam of [T(X,q,q') - pen(q')] + pen(q). pen(q) is taken
/// from the family when q is one of its entries and is 0 otherwise.
double upsilon(const Sample& X, const ProductDensity& q, const DensityFamily& fam,
               const Penalty& pen, const PsiKernel& k);

/// Criterion of every entry (the trace of rho_estimate).
std::vector<double> upsilon_all(const Sample& X, const DensityFamily& fam, const Penalty& pen,
                                const PsiKernel& k, Exec exec = Exec::parallel);

/// Picks the entry of smallest criterion (ties to the smallest index) and
/// reports every entry within `slack` (default kappa/25) of the minimum.
RhoFit rho_estimate(const Sample& X, const DensityFamily& fam, const Penalty& pen,
                    const PsiKernel& k, std::optional<double> slack = std::nullopt,
                    Exec exec = Exec::parallel);

/// Same selection rule applied to precomputed criterion values.
RhoFit fit_from_trace(std::vector<double> trace, double slack);

}  // namespace rho
