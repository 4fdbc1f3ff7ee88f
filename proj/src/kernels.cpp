#include "rho/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rho/errors.hpp"

namespace rho::kernels {

namespace {

void check_shapes(const DensityFamily& fam, const Sample& X) {
  if (fam.empty()) throw ContractViolation("family is empty");
  if (fam.sample_size() != X.size()) {
    throw ContractViolation("family coordinate count does not match sample size");
  }
}

void fill_row(const ProductDensity& p, const Sample& X, bool lebesgue, std::span<double> out) {
  for (std::size_t i = 0; i < X.size(); ++i) out[i] = p.log_density_at(X, i, lebesgue);
}

void check_pen(const LogDensityMatrix& L, std::span<const double> pen) {
  if (pen.size() != L.rows()) throw ContractViolation("penalty size does not match family size");
}

}  // namespace

double t_row(std::span<const double> log_q, std::span<const double> log_qp, const PsiKernel& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < log_q.size(); ++i) s += psi_term(log_q[i], log_qp[i], k);
  return s;
}

LogDensityMatrix evaluate_family_serial(const DensityFamily& fam, const Sample& X) {
  check_shapes(fam, X);
  LogDensityMatrix L(fam.size(), X.size());
  const bool leb = fam.uses_lebesgue_evaluation();
  for (std::size_t j = 0; j < fam.size(); ++j) fill_row(fam.entry(j), X, leb, L.row(j));
  return L;
}

LogDensityMatrix evaluate_family_parallel(const DensityFamily& fam, const Sample& X) {
  check_shapes(fam, X);
  LogDensityMatrix L(fam.size(), X.size());
  const bool leb = fam.uses_lebesgue_evaluation();
  const auto rows = static_cast<std::ptrdiff_t>(fam.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t j = 0; j < rows; ++j) {
    const auto r = static_cast<std::size_t>(j);
    fill_row(fam.entry(r), X, leb, L.row(r));
  }
  return L;
}

std::vector<double> upsilon_serial(const LogDensityMatrix& L, std::span<const double> pen,
                                   const PsiKernel& k) {
  check_pen(L, pen);
  const std::size_t m = L.rows();
  std::vector<double> ups(m);
  for (std::size_t j = 0; j < m; ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m; ++c) {
      const double t = (c == j) ? 0.0 : t_row(L.row(j), L.row(c), k);
      best = std::max(best, t - pen[c]);
    }
    ups[j] = best + pen[j];
  }
  return ups;
}

std::vector<double> upsilon_parallel(const LogDensityMatrix& L, std::span<const double> pen,
                                     const PsiKernel& k) {
  check_pen(L, pen);
  const std::size_t m = L.rows();
  std::vector<double> T(m * m, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t c = j + 1; c < m; ++c) {
      const double t = t_row(L.row(j), L.row(c), k);
      T[j * m + c] = t;
      T[c * m + j] = -t;  // psi(1/x) = -psi(x) holds exactly term by term
    }
  }
  std::vector<double> ups(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m; ++c) best = std::max(best, T[j * m + c] - pen[c]);
    ups[j] = best + pen[j];
  }
  return ups;
}

std::vector<double> mixture_values(const EvaluationMatrix& P, std::span<const double> w) {
  std::vector<double> out(P.n, 0.0);
  for (std::size_t j = 0; j < P.candidates; ++j) {
    if (w[j] == 0.0) continue;
    const double* row = P.values.data() + j * P.n;
    for (std::size_t i = 0; i < P.n; ++i) out[i] += w[j] * row[i];
  }
  return out;
}

double t_mix_serial(const EvaluationMatrix& P, std::span<const double> alpha,
                    std::span<const double> beta, const PsiKernel& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < P.n; ++i) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < P.candidates; ++j) {
      num += beta[j] * P(j, i);
      den += alpha[j] * P(j, i);
    }
    if (!(den > 0.0)) throw ContractViolation("t_mix: mixture denominator is not positive");
    s += k.of_log_ratio(std::log(num) - std::log(den));
  }
  return s;
}

double t_mix_parallel(const EvaluationMatrix& P, std::span<const double> alpha,
                      std::span<const double> beta, const PsiKernel& k) {
  std::vector<double> terms(P.n);
  bool bad = false;
  const auto n = static_cast<std::ptrdiff_t>(P.n);
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < P.candidates; ++j) {
      num += beta[j] * P(j, i);
      den += alpha[j] * P(j, i);
    }
    if (!(den > 0.0)) {
      bad = true;
      terms[i] = 0.0;
    } else {
      terms[i] = k.of_log_ratio(std::log(num) - std::log(den));
    }
  }
  if (bad) throw ContractViolation("t_mix: mixture denominator is not positive");
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace rho::kernels
