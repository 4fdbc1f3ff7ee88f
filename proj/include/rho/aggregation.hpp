#pragma once

#include <cstddef>
#include <vector>

#include "rho/criterion.hpp"
#include "rho/family.hpp"
#include "rho/kernels.hpp"
#include "rho/product.hpp"
#include "rho/psi.hpp"
#include "rho/sample.hpp"

namespace rho {

/// Point of the probability simplex: weights >= 0 summing to 1 (within 1e-12).
struct SimplexPoint {
  std::vector<double> weights;

  static SimplexPoint uniform(std::size_t N);
  static SimplexPoint vertex(std::size_t N, std::size_t j);
  std::size_t size() const { return weights.size(); }
  /// Throws ContractViolation if the invariants do not hold.
  void validate() const;
};

/// Candidate probabilities p_1..p_N evaluated at the sample.
class CandidateSet {
 public:
  /// Throws ContractViolation if some p_j(X_i) is not strictly positive.
  CandidateSet(std::vector<ProductDensity> candidates, const Sample& X);

  std::size_t size() const { return P_.candidates; }
  std::size_t sample_size() const { return P_.n; }
  const kernels::EvaluationMatrix& matrix() const { return P_; }
  const std::vector<ProductDensity>& candidates() const { return candidates_; }
  /// sigma_max / sigma_min of the N x n evaluation matrix (inf if rank deficient).
  double condition_number() const { return condition_; }

 private:
  std::vector<ProductDensity> candidates_;
  kernels::EvaluationMatrix P_;
  double condition_ = 1.0;
};

/// rho-estimation over singleton models {P_j} with penalty kappa * delta_j.
/// Requires sum_j exp(-delta_j) <= 1.
RhoFit select_candidate(const Sample& X, const std::vector<ProductDensity>& candidates,
                        const std::vector<double>& deltas, const PsiKernel& k,
                        double slack_multiplier = 1.0);

/// t(alpha, beta) = sum_i psi(sqrt(sum_j beta_j p_j(X_i) / sum_j alpha_j p_j(X_i))).
double t_mix(const CandidateSet& cs, const SimplexPoint& alpha, const SimplexPoint& beta,
             const PsiKernel& k, Exec exec = Exec::serial);

/// Gradient of beta -> t(alpha, beta).
std::vector<double> t_mix_gradient(const CandidateSet& cs, const SimplexPoint& alpha,
                                   const SimplexPoint& beta, const PsiKernel& k);

struct InnerSolverConfig {
  double tol = 1e-8;
  std::size_t max_iter = 5000;
};

struct InnerResult {
  SimplexPoint beta;
  double value = 0.0;
  /// Frank-Wolfe duality gap at beta: an upper bound on max t - value.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// argmax over the simplex of the concave map beta -> t(alpha, beta), by
/// Frank-Wolfe with away steps and exact line search.
InnerResult inner_argmax(const CandidateSet& cs, const SimplexPoint& alpha, const PsiKernel& k,
                         const InnerSolverConfig& inner = {});

struct SaddleConfig {
  double eps = 1e-4;
  std::size_t max_outer = 1000;
  InnerSolverConfig inner;
  double max_condition = 1e10;
};

struct SaddleResult {
  SimplexPoint alpha_star;
  /// Upper bound on max_beta t(alpha_star, beta): inner value plus FW gap.
  double certificate = 0.0;
  std::size_t iterations = 0;
  double condition_number = 1.0;
  bool converged = false;
};

/// Iterates alpha <- argmax_beta t(alpha, beta) from the uniform weights
/// until max_beta t(alpha, beta) < eps. Non-convergence is reported through
/// `converged == false`, with the last certificate. Throws
/// DegenerateCandidates when the evaluation matrix is ill-conditioned.
SaddleResult saddle_point(const CandidateSet& cs, const PsiKernel& k,
                          const SaddleConfig& config = {});

/// The aggregated density sum_j alpha_j p_j as an entry-wise mixture value
/// at the sample points.
std::vector<double> mixture_at_sample(const CandidateSet& cs, const SimplexPoint& alpha);

}  // namespace rho
