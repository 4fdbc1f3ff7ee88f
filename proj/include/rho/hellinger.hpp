#pragma once

#include <vector>

#include "rho/density.hpp"
#include "rho/product.hpp"
#include "rho/quadrature.hpp"

namespace rho {

enum class HellingerMethod {
  /// Closed forms where recognized (equal-variance Gaussians, disjoint
  /// supports), quadrature otherwise.
  automatic,
  /// Always integrate numerically.
  quadrature,
};

/// h^2(p, q) = 1/2 * integral (sqrt p - sqrt q)^2 dLebesgue, in [0, 1].
double hellinger_sq(const Density1D& p, const Density1D& q, const QuadratureSpec& quad = {},
                    HellingerMethod method = HellingerMethod::automatic);

/// Same quantity integrated against another dominating measure: both
/// densities are first re-expressed as dP/dmu, dQ/dmu.
double hellinger_sq_against(const Density1D& p, const Density1D& q, BaseMeasure mu,
                            const QuadratureSpec& quad = {});

/// rho(p, q) = 1 - h^2(p, q).
double hellinger_affinity(const Density1D& p, const Density1D& q, const QuadratureSpec& quad = {},
                          HellingerMethod method = HellingerMethod::automatic);

/// Sum of coordinate h^2; n * h^2 for two i.i.d. products. Requires scalar
/// coordinates and equal coordinate counts.
double product_hellinger_sq(const ProductDensity& P, const ProductDensity& Q,
                            const QuadratureSpec& quad = {},
                            HellingerMethod method = HellingerMethod::automatic);

/// Sorted union of the support ends and breakpoints of p and q.
std::vector<double> merged_breakpoints(const Density1D& p, const Density1D& q);

/// Closed form for N(m1, s^2) vs N(m2, s^2).
double gaussian_equal_sd_hellinger_sq(double mean_diff, double sd);

}  // namespace rho
