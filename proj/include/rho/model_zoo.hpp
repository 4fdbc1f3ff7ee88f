#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rho/density.hpp"
#include "rho/family.hpp"
#include "rho/psi.hpp"
#include "rho/quadrature.hpp"

namespace rho {

enum class BoundSource { finite, vc, entropy, user };
std::string to_string(BoundSource s);
BoundSource bound_source_from_string(const std::string& s);

/// A rho-model together with an upper bound on its dimension function and
/// its weight in a model collection.
struct ModelDescriptor {
  std::string name;
  DensityFamily family;
  double dim_bound = 1.0;
  BoundSource bound_source = BoundSource::user;
  std::optional<double> vc_index;
  /// How vc_index was obtained, e.g. "exp-family J+2".
  std::string vc_provenance;
  double delta_weight = 0.0;
  /// Notes from the builder (rejected entries, caps applied, ...).
  std::vector<std::string> diagnostics;
};

// ---------------------------------------------------------------------------
// Dimension bounds

/// 9 log(2 |Q|), floored at 1.
double dimension_bound_finite(std::size_t cardinality);

/// min(C1 V [1 + log+(n / V)], n / 6), floored at 1. When V > n the value
/// is clamped to the n/6 cap and a note is appended to `warnings`.
double dimension_bound_vc(double vc_index, std::size_t n, double c1 = 1.0,
                          std::vector<std::string>* warnings = nullptr);

/// 18 max(1, V log 2 / 2).
double dimension_bound_entropy(double V);

/// x0 = sqrt 2 [sqrt(1 + beta / a2) + 1].
double eta_x0(const PsiKernel& k);

/// sup{z > 0 : sqrt(H(Q, z / beta)) > z / x0}, where H(Q, y) is the log+ of
/// twice the largest number of entries within product-Hellinger distance y
/// of a center. Centers range over `center_pool` instead of all
/// probabilities, so the result is a lower estimate of the exact quantity.
double eta_bar_finite(const DensityFamily& fam, const PsiKernel& k,
                      const DensityFamily& center_pool, const QuadratureSpec& quad = {});
double eta_bar_finite(const DensityFamily& fam, const PsiKernel& k,
                      const QuadratureSpec& quad = {});

// ---------------------------------------------------------------------------
// Builders

/// i.i.d. N(theta, sd^2) entries for theta = theta_min + k step <= theta_max.
ModelDescriptor build_gaussian_location_grid(double theta_min, double theta_max, double step,
                                             double sd, std::size_t n, double c1 = 1.0);

struct HistogramCandidate {
  std::vector<double> breaks;
  std::vector<double> heights;
};

/// Histograms with at most k pieces; vc_index = 2k + 1. Throws
/// ContractViolation on unnormalized candidates or too many pieces.
ModelDescriptor build_histogram_family(const std::vector<HistogramCandidate>& candidates,
                                       std::size_t k, std::size_t n, double c1 = 1.0);

/// Enumerates, for each partition in `breakpoint_grids`, every histogram
/// whose bin masses lie on the simplex grid {j / (simplex_points - 1)}.
std::vector<HistogramCandidate> histogram_simplex_candidates(
    const std::vector<std::vector<double>>& breakpoint_grids, std::size_t simplex_points);

ModelDescriptor build_histogram_family(const std::vector<std::vector<double>>& breakpoint_grids,
                                       std::size_t k, std::size_t simplex_points, std::size_t n,
                                       double c1 = 1.0);

/// Normalized exp(sum beta_j g_j) on [lo, hi] for every coefficient vector;
/// vc_index = J + 2. Entries whose normalizer diverges are skipped and
/// reported in diagnostics.
ModelDescriptor build_exp_family_grid(const std::vector<dens::BasisTerm>& basis, double lo,
                                      double hi,
                                      const std::vector<std::vector<double>>& coefficient_grid,
                                      std::size_t n, double c1 = 1.0,
                                      const QuadratureSpec& quad = {});

/// Wraps an explicit list of i.i.d. candidate densities as a finite model
/// with the cardinality bound.
ModelDescriptor build_finite_model(const std::vector<Density1D>& densities, std::size_t n,
                                   std::string name = "finite");

}  // namespace rho
