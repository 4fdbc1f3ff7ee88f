#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rho/density.hpp"
#include "rho/product.hpp"
#include "rho/quadrature.hpp"
#include "rho/sample.hpp"
#include "rho/selection.hpp"

namespace rho {

/// Multiplier turning the VC index of F into an index bound for the
/// translated densities {r(y - g(w)) : g in F}.
inline constexpr double kRegressionVcMultiplier = 9.41;

/// One error density r paired with a finite set F of regression functions.
struct RegressionModel {
  std::string name;
  Density1D error;
  std::vector<LinearPredictor> functions;
  double vc_index_F = 0.0;
  double delta_weight = 0.0;
  /// Extra VC multiplier for error densities that are not unimodal. Required
  /// (and only used) when error.unimodal() is false.
  std::optional<double> mode_multiplier;
};

/// Every coefficient vector of `coefficient_grid` applied to `basis`.
std::vector<LinearPredictor> predictor_grid(const std::vector<PredictorTerm>& basis,
                                            const std::vector<std::vector<double>>& coefficient_grid);

/// Cartesian product of per-coefficient value lists.
std::vector<std::vector<double>> cartesian_grid(const std::vector<std::vector<double>>& axes);

/// {lo, lo + step, ...} up to hi (inclusive within 1e-9 step).
std::vector<double> arithmetic_grid(double lo, double hi, double step);

/// One model descriptor per regression model with entries q(w,y) = r(y - g(w))
/// and dim_bound from the VC bound at index 9.41 vc_index_F.
ModelDescriptor build_regression_model(const RegressionModel& model, std::size_t n, double c1 = 1.0);

ModelCollection build_regression_family(const std::vector<RegressionModel>& models, std::size_t n,
                                        const PsiKernel& k, double c1 = 1.0);

struct RegressionFit {
  LinearPredictor f_hat;
  Density1D s_hat;
  SelectionResult selection;
};

/// Throws ContractViolation unless X holds (w, y) pairs.
RegressionFit fit_regression(const Sample& X, const ModelCollection& coll,
                             double slack_multiplier = 1.0, Exec exec = Exec::parallel);

/// Mean over the design points of h^2(s(. - g(w)), s(. - g'(w))).
double d_s_loss(const Density1D& s, const LinearPredictor& g, const LinearPredictor& gp,
                const Sample& design, const QuadratureSpec& quad = {});

struct IdentifiabilityPair {
  std::size_t first = 0;
  std::size_t second = 0;
  double h = 0.0;
  /// min over the shift grid of h(R_a, R').
  double h_min_shifted = 0.0;
  double argmin_shift = 0.0;
  /// h / h_min_shifted; 1 for identical densities, +inf when a shift makes
  /// the pair coincide.
  double ratio = 1.0;
  bool above_ceiling = false;
};

struct IdentifiabilityReport {
  std::vector<IdentifiabilityPair> pairs;
  double max_ratio = 1.0;
};

/// Empirical identifiability constants for every pair of error densities.
/// The shift grid must be symmetric around 0.
IdentifiabilityReport check_identifiability(const std::vector<Density1D>& errors,
                                            const std::vector<double>& shift_grid,
                                            double ceiling = 10.0,
                                            const QuadratureSpec& quad = {});

}  // namespace rho
