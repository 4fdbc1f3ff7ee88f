#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace rho {

struct QuadratureSpec {
  enum class Scheme { adaptive, fixed_grid };

  Scheme scheme = Scheme::adaptive;
  double abs_tol = 1e-9;
  std::size_t max_subdivisions = std::size_t{1} << 20;
  /// Panels per finite segment when scheme == fixed_grid.
  std::size_t fixed_panels = 512;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t subdivisions = 0;
};

/// Integrates f over the union of consecutive segments [b[k], b[k+1]].
/// The first and last breakpoints may be -inf / +inf; infinite tails are
/// mapped onto [0,1) by x = edge +- t/(1-t). Breakpoints must be sorted.
/// Throws NumericalFailure when the adaptive scheme cannot meet abs_tol
/// within max_subdivisions interval bisections.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

/// Convenience overload for a single (possibly infinite) interval.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

}  // namespace rho
