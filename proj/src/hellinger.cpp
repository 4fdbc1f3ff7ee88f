#include "rho/hellinger.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rho/errors.hpp"

namespace rho {

std::vector<double> merged_breakpoints(const Density1D& p, const Density1D& q) {
  const Support sp = p.support();
  const Support sq = q.support();
  const double lo = std::min(sp.lo, sq.lo);
  const double hi = std::max(sp.hi, sq.hi);
  std::vector<double> bp{lo, hi};
  for (const Support* s : {&sp, &sq}) {
    for (double b : s->breakpoints) {
      if (b > lo && b < hi) bp.push_back(b);
    }
    if (s->lo > lo && s->lo < hi) bp.push_back(s->lo);
    if (s->hi > lo && s->hi < hi) bp.push_back(s->hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

namespace {

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

bool gaussian_location(const Density1D& d, double& mean, double& sd) {
  if (const auto* g = std::get_if<dens::Gaussian>(&d.params())) {
    mean = g->mean + d.offset();
    sd = g->sd;
    return true;
  }
  return false;
}

}  // namespace

double gaussian_equal_sd_hellinger_sq(double mean_diff, double sd) {
  return -std::expm1(-mean_diff * mean_diff / (8.0 * sd * sd));
}

double hellinger_sq(const Density1D& p, const Density1D& q, const QuadratureSpec& quad,
                    HellingerMethod method) {
  quad.validate();
  if (method == HellingerMethod::automatic) {
    if (p == q) return 0.0;
    double m1 = 0, s1 = 0, m2 = 0, s2 = 0;
    if (gaussian_location(p, m1, s1) && gaussian_location(q, m2, s2) && s1 == s2) {
      return gaussian_equal_sd_hellinger_sq(m1 - m2, s1);
    }
    const Support sp = p.support();
    const Support sq = q.support();
    if (sp.hi <= sq.lo || sq.hi <= sp.lo) return 1.0;
  }
  const std::vector<double> bp = merged_breakpoints(p, q);
  const auto integrand = [&](double x) {
    const double a = std::exp(0.5 * p.log_lebesgue_density(x));
    const double b = std::exp(0.5 * q.log_lebesgue_density(x));
    const double d = a - b;
    return 0.5 * d * d;
  };
  return clamp_unit(integrate(integrand, bp, quad).value);
}

double hellinger_sq_against(const Density1D& p, const Density1D& q, BaseMeasure mu,
                            const QuadratureSpec& quad) {
  if (mu == BaseMeasure::lebesgue) {
    return hellinger_sq(p, q, quad, HellingerMethod::quadrature);
  }
  quad.validate();
  const std::vector<double> bp = merged_breakpoints(p, q);
  const auto integrand = [&](double x) {
    const double lb = log_std_normal_pdf(x);
    const double lp = p.log_lebesgue_density(x);
    const double lq = q.log_lebesgue_density(x);
    // sqrt(dP/dmu), sqrt(dQ/dmu), then weight by dmu/dx.
    const double a = std::exp(0.5 * (lp - lb));
    const double b = std::exp(0.5 * (lq - lb));
    const double d = a - b;
    const double v = 0.5 * d * d * std::exp(lb);
    if (std::isfinite(v)) return v;
    const double e = std::exp(0.5 * lp) - std::exp(0.5 * lq);
    return 0.5 * e * e;
  };
  return clamp_unit(integrate(integrand, bp, quad).value);
}

double hellinger_affinity(const Density1D& p, const Density1D& q, const QuadratureSpec& quad,
                          HellingerMethod method) {
  return 1.0 - hellinger_sq(p, q, quad, method);
}

double product_hellinger_sq(const ProductDensity& P, const ProductDensity& Q,
                            const QuadratureSpec& quad, HellingerMethod method) {
  if (P.size() != Q.size()) {
    throw ContractViolation("product_hellinger_sq: coordinate counts differ");
  }
  if (!P.all_scalar() || !Q.all_scalar()) {
    throw ContractViolation("product_hellinger_sq: only scalar coordinates are supported");
  }
  const std::size_t n = P.size();
  if (P.is_iid() && Q.is_iid()) {
    return static_cast<double>(n) * hellinger_sq(std::get<Density1D>(P.coordinate(0)),
                                                 std::get<Density1D>(Q.coordinate(0)), quad,
                                                 method);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += hellinger_sq(std::get<Density1D>(P.coordinate(i)),
                          std::get<Density1D>(Q.coordinate(i)), quad, method);
  }
  return total;
}

}  // namespace rho
