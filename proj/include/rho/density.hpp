#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rho/quadrature.hpp"

namespace rho {

/// Dominating measure a density is declared against.
enum class BaseMeasure {
  lebesgue,
  /// N(0,1) probability measure; densities are dP/dN(0,1).
  standard_gaussian,
};

std::string to_string(BaseMeasure m);

namespace dens {

struct Gaussian {
  double mean;
  double sd;

  bool operator==(const Gaussian&) const = default;
};
struct Cauchy {
  double loc;
  double scale;

  bool operator==(const Cauchy&) const = default;
};
struct Laplace {
  double loc;
  double scale;

  bool operator==(const Laplace&) const = default;
};
struct Uniform {
  double a;
  double b;

  bool operator==(const Uniform&) const = default;
};
struct Exponential {
  double rate;
  double shift;

  bool operator==(const Exponential&) const = default;
};
struct Histogram {
  std::vector<double> breaks;
  std::vector<double> heights;

  bool operator==(const Histogram&) const = default;
};
/// Basis term of an exponential family on a real interval.
struct BasisTerm {
  enum class Type { power, log, abs };
  Type type = Type::power;
  int power = 1;

  static BasisTerm parse(const std::string& text);
  std::string to_string() const;
  double operator()(double x) const;
  bool operator==(const BasisTerm&) const = default;
};
struct ExpFamily {
  std::vector<BasisTerm> basis;
  std::vector<double> coef;
  double lo;
  double hi;
  double log_normalizer;

  /// Sum_j coef_j * g_j(x), without the normalizer.
  double exponent(double x) const;
  bool operator==(const ExpFamily&) const = default;
};
/// p_theta(x) = exp(theta x - theta^2/2 + (theta^2/2) e^{x^2} 1{x = theta} 1{theta > 0})
/// with respect to N(0,1).
struct PathologicalGaussian {
  double theta;

  bool operator==(const PathologicalGaussian&) const = default;
};
/// Piecewise-linear interpolation of (grid, values), zero outside the grid.
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;

  bool operator==(const Tabulated&) const = default;
};

}  // namespace dens

/// Interval carrying the mass of a density plus the points where the
/// density has kinks or where most of its mass sits. Quadrature uses these
/// as breakpoints.
struct Support {
  double lo;
  double hi;
  std::vector<double> breakpoints;
};

/// A univariate probability density with respect to a declared base measure.
///
/// Values are immutable after construction; factories validate parameters
/// and throw ContractViolation on invalid input. Every density may carry a
/// location offset (see shifted()), so that x -> p(x - c) is representable
/// for every kind.
class Density1D {
 public:
  enum class Kind {
    gaussian,
    cauchy,
    laplace,
    uniform,
    exponential,
    histogram,
    exp_family,
    pathological_gaussian,
    tabulated,
  };
  using Params = std::variant<dens::Gaussian, dens::Cauchy, dens::Laplace, dens::Uniform,
                              dens::Exponential, dens::Histogram, dens::ExpFamily,
                              dens::PathologicalGaussian, dens::Tabulated>;

  static Density1D gaussian(double mean, double sd);
  static Density1D cauchy(double loc, double scale);
  static Density1D laplace(double loc, double scale);
  static Density1D uniform(double a, double b);
  static Density1D exponential(double rate, double shift = 0.0);
  /// Heights must be >= 0 with sum(height * width) = 1 within 1e-9.
  static Density1D histogram(std::vector<double> breaks, std::vector<double> heights);
  /// Normalizes exp(sum beta_j g_j) on [lo, hi] by quadrature. Throws
  /// NumericalFailure when the normalizer diverges.
  static Density1D exp_family(std::vector<dens::BasisTerm> basis, std::vector<double> coef,
                              double lo, double hi, const QuadratureSpec& quad = {});
  static Density1D pathological_gaussian(double theta);
  /// Values are rescaled so the piecewise-linear interpolant integrates to 1.
  static Density1D tabulated(std::vector<double> grid, std::vector<double> values);

  Kind kind() const;
  BaseMeasure base() const;
  const Params& params() const { return params_; }
  double offset() const { return offset_; }

  /// log of the density with respect to base(); -inf outside the support.
  double log_density(double x) const;
  double density(double x) const;
  /// log of the density with respect to Lebesgue measure.
  double log_lebesgue_density(double x) const;
  double lebesgue_density(double x) const;

  Support support() const;
  /// x -> p(x - c).
  Density1D shifted(double c) const;
  /// Gaussian, Cauchy, Laplace, uniform and exponential are declared unimodal.
  bool unimodal() const;

  std::string describe() const;

  bool operator==(const Density1D& other) const;

 private:
  explicit Density1D(Params p) : params_(std::move(p)) {}

  Params params_;
  double offset_ = 0.0;
};

std::string to_string(Density1D::Kind k);
Density1D::Kind kind_from_string(const std::string& s);

double log_std_normal_pdf(double x);

}  // namespace rho
