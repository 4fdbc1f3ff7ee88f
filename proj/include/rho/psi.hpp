#pragma once

#include <string>

#include "rho/density.hpp"
#include "rho/quadrature.hpp"

namespace rho {

enum class PsiId { psi1, psi2 };

std::string to_string(PsiId id);
/// "psi1" | "psi2"; throws ContractViolation otherwise.
PsiId psi_from_string(const std::string& name);

/// A bounded substitute for the logarithm in likelihood ratios, together
/// with the constants (a0, a1, a2^2) for which it is certified and the
/// derived beta, kappa, gamma used by the risk bounds.
///
///   psi1(x) = (x - 1) / sqrt(x^2 + 1)   a0 = 4.97, a1 = 0.083, a2^2 = 3 + 2 sqrt 2
///   psi2(x) = (x - 1) / (x + 1)         a0 = 4,    a1 = 3/8,   a2^2 = 3 sqrt 2
///
/// Both are increasing from [0, +inf] onto [-1, 1] with psi(1/x) = -psi(x).
struct PsiKernel {
  PsiId id = PsiId::psi2;
  double a0 = 0.0;
  double a1 = 0.0;
  double a2_sq = 0.0;
  double beta = 0.0;   ///< a1 / (4 a2)
  double kappa = 0.0;  ///< 35 a2^2 / a1 + 74
  double gamma = 0.0;  ///< 4 (a0 + 16) / a1 + 2 + 168 / a2^2

  /// psi(x) for x in [0, +inf]; throws ContractViolation on negative or NaN.
  double operator()(double x) const;

  /// psi(sqrt(exp(d))) for a log-density ratio d = log q' - log q. Exactly
  /// odd in d; d = +inf maps to 1 and d = -inf to -1.
  double of_log_ratio(double d) const;

  /// d/dx psi(x) for finite x >= 0.
  double derivative(double x) const;

  double default_slack() const { return kappa / 25.0; }
};

/// Hard-coded certified constants; derived quantities filled in.
PsiKernel kernel_constants(PsiId id);

struct AssumptionReport {
  double lhs_esp = 0.0;
  double rhs_esp = 0.0;
  double lhs_var = 0.0;
  double rhs_var = 0.0;
  bool pass = false;
};

/// Evaluates both sides of
///   int psi(sqrt(q'/q)) dR   <= a0 h^2(R,Q) - a1 h^2(R,Q')
///   int psi^2(sqrt(q'/q)) dR <= a2^2 [h^2(R,Q) + h^2(R,Q')]
/// by quadrature; `pass` iff both hold up to quad.abs_tol. R must be
/// absolutely continuous with respect to Lebesgue measure.
AssumptionReport check_assumption(const PsiKernel& k, const Density1D& q, const Density1D& qp,
                                  const Density1D& r, const QuadratureSpec& quad = {});

}  // namespace rho
