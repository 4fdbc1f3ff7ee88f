#include "rho/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rho/errors.hpp"
#include "rho/hellinger.hpp"

namespace rho {

std::string to_string(PsiId id) { return id == PsiId::psi1 ? "psi1" : "psi2"; }

PsiId psi_from_string(const std::string& name) {
  if (name == "psi1") return PsiId::psi1;
  if (name == "psi2") return PsiId::psi2;
  throw ContractViolation("unknown psi kernel '" + name + "' (expected psi1 or psi2)");
}

PsiKernel kernel_constants(PsiId id) {
  PsiKernel k;
  k.id = id;
  if (id == PsiId::psi1) {
    k.a0 = 4.97;
    k.a1 = 0.083;
    k.a2_sq = 3.0 + 2.0 * std::numbers::sqrt2;
  } else {
    k.a0 = 4.0;
    k.a1 = 3.0 / 8.0;
    k.a2_sq = 3.0 * std::numbers::sqrt2;
  }
  k.beta = k.a1 / (4.0 * std::sqrt(k.a2_sq));
  k.kappa = 35.0 * k.a2_sq / k.a1 + 74.0;
  k.gamma = 4.0 * (k.a0 + 16.0) / k.a1 + 2.0 + 168.0 / k.a2_sq;
  return k;
}

double PsiKernel::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw ContractViolation("psi: argument must be in [0, +inf]");
  }
  if (std::isinf(x)) return 1.0;
  if (id == PsiId::psi2) return (x - 1.0) / (x + 1.0);
  if (x > 1e150) {
    const double r = 1.0 / x;
    return (1.0 - r) / std::sqrt(1.0 + r * r);
  }
  return (x - 1.0) / std::sqrt(x * x + 1.0);
}

double PsiKernel::of_log_ratio(double d) const {
  if (std::isnan(d)) throw ContractViolation("psi: log-ratio is NaN");
  const double a = std::abs(d);
  double v = 0.0;
  if (std::isinf(a)) {
    v = 1.0;
  } else if (id == PsiId::psi2) {
    v = std::tanh(0.25 * a);
  } else {
    // (e^{a/2} - 1) / sqrt(e^a + 1), rewritten to stay finite for large a.
    v = -std::expm1(-0.5 * a) / std::sqrt(1.0 + std::exp(-a));
  }
  return d < 0.0 ? -v : v;
}

double PsiKernel::derivative(double x) const {
  if (!(x >= 0.0) || std::isinf(x)) {
    throw ContractViolation("psi derivative: argument must be finite and >= 0");
  }
  if (id == PsiId::psi2) {
    const double s = x + 1.0;
    return 2.0 / (s * s);
  }
  const double s = x * x + 1.0;
  return (1.0 + x) / (s * std::sqrt(s));
}

AssumptionReport check_assumption(const PsiKernel& k, const Density1D& q, const Density1D& qp,
                                  const Density1D& r, const QuadratureSpec& quad) {
  quad.validate();
  std::vector<double> bp;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Density1D* d : {&q, &qp, &r}) {
    const Support s = d->support();
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi);
    bp.insert(bp.end(), s.breakpoints.begin(), s.breakpoints.end());
    bp.push_back(s.lo);
    bp.push_back(s.hi);
  }
  std::erase_if(bp, [&](double b) { return !(b > lo && b < hi); });
  bp.push_back(lo);
  bp.push_back(hi);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  const auto psi_at = [&](double x) {
    const double lq = q.log_lebesgue_density(x);
    const double lqp = qp.log_lebesgue_density(x);
    if (std::isinf(lq) && std::isinf(lqp) && lq < 0 && lqp < 0) return 0.0;  // 0/0 = 1
    return k.of_log_ratio(lqp - lq);
  };
  const auto esp = [&](double x) {
    const double dr = r.lebesgue_density(x);
    return dr > 0.0 ? psi_at(x) * dr : 0.0;
  };
  const auto var = [&](double x) {
    const double dr = r.lebesgue_density(x);
    if (!(dr > 0.0)) return 0.0;
    const double v = psi_at(x);
    return v * v * dr;
  };

  AssumptionReport rep;
  rep.lhs_esp = integrate(esp, bp, quad).value;
  rep.lhs_var = integrate(var, bp, quad).value;
  const double h_rq = hellinger_sq(r, q, quad);
  const double h_rqp = hellinger_sq(r, qp, quad);
  rep.rhs_esp = k.a0 * h_rq - k.a1 * h_rqp;
  rep.rhs_var = k.a2_sq * (h_rq + h_rqp);
  // Each side carries at most abs_tol per integral, scaled by its coefficient.
  const double tol = quad.abs_tol;
  rep.pass = rep.lhs_esp <= rep.rhs_esp + tol * (1.0 + k.a0 + k.a1) &&
             rep.lhs_var <= rep.rhs_var + tol * (1.0 + 2.0 * k.a2_sq);
  return rep;
}

}  // namespace rho
