#pragma once

// Data-parallel kernels behind the criterion and the aggregation map. Each
// kernel has a serial reference and an OpenMP version; the parallel
// versions reproduce the serial results bit for bit (every reduction runs
// in index order inside one thread).

#include <cstddef>
#include <span>
#include <vector>

#include "rho/family.hpp"
#include "rho/psi.hpp"

namespace rho::kernels {

/// psi(sqrt(q'/q)) from log q and log q', with 0/0 = 1 and a/0 = +inf.
inline double psi_term(double log_q, double log_qp, const PsiKernel& k) {
  const double d = log_qp - log_q;
  if (d != d) return 0.0;  // both zero (or both +inf): ratio 1
  return k.of_log_ratio(d);
}

/// T = sum_i psi(sqrt(q'_i / q_i)) over a pair of log-density rows.
double t_row(std::span<const double> log_q, std::span<const double> log_qp, const PsiKernel& k);

LogDensityMatrix evaluate_family_serial(const DensityFamily& fam, const Sample& X);
LogDensityMatrix evaluate_family_parallel(const DensityFamily& fam, const Sample& X);

/// Upsilon_j = max_k [T(j,k) - pen_k] + pen_j for every entry j.
std::vector<double> upsilon_serial(const LogDensityMatrix& L, std::span<const double> pen,
                                   const PsiKernel& k);
/// Fills the antisymmetric T matrix from its upper triangle in parallel.
std::vector<double> upsilon_parallel(const LogDensityMatrix& L, std::span<const double> pen,
                                     const PsiKernel& k);

/// Candidate evaluations at the sample: row j holds p_j(X_1..X_n) > 0.
struct EvaluationMatrix {
  std::size_t candidates = 0;
  std::size_t n = 0;
  std::vector<double> values;  // row-major candidates x n

  double operator()(std::size_t j, std::size_t i) const { return values[j * n + i]; }
};

/// Mixture values sum_j w_j p_j(X_i) for every i.
std::vector<double> mixture_values(const EvaluationMatrix& P, std::span<const double> w);

/// t(alpha, beta) = sum_i psi(sqrt(<beta,p_i> / <alpha,p_i>)).
double t_mix_serial(const EvaluationMatrix& P, std::span<const double> alpha,
                    std::span<const double> beta, const PsiKernel& k);
double t_mix_parallel(const EvaluationMatrix& P, std::span<const double> alpha,
                      std::span<const double> beta, const PsiKernel& k);

}  // namespace rho::kernels
