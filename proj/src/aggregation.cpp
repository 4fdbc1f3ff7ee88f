#include "rho/aggregation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rho/errors.hpp"

namespace rho {

namespace {

constexpr double kSimplexTol = 1e-12;

void check_alpha(const CandidateSet& cs, const SimplexPoint& w, const char* what) {
  if (w.size() != cs.size()) {
    throw ContractViolation(std::string(what) + ": weight count differs from candidate count");
  }
}

void renormalize(std::vector<double>& w) {
  double s = 0.0;
  for (double& v : w) {
    if (v < 0.0) v = 0.0;
    s += v;
  }
  for (double& v : w) v /= s;
}

// d/du psi(sqrt u) = psi'(sqrt u) / (2 sqrt u).
double dpsi_sqrt(const PsiKernel& k, double u) {
  const double r = std::sqrt(u);
  return k.derivative(r) / (2.0 * r);
}

}  // namespace

SimplexPoint SimplexPoint::uniform(std::size_t N) {
  if (N == 0) throw ContractViolation("SimplexPoint: dimension must be >= 1");
  return SimplexPoint{std::vector<double>(N, 1.0 / static_cast<double>(N))};
}

SimplexPoint SimplexPoint::vertex(std::size_t N, std::size_t j) {
  if (j >= N) throw ContractViolation("SimplexPoint: vertex index out of range");
  SimplexPoint p{std::vector<double>(N, 0.0)};
  p.weights[j] = 1.0;
  return p;
}

void SimplexPoint::validate() const {
  if (weights.empty()) throw ContractViolation("SimplexPoint: empty weight vector");
  double s = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ContractViolation("SimplexPoint: weights must be finite and >= 0");
    }
    s += v;
  }
  if (std::abs(s - 1.0) > kSimplexTol) throw ContractViolation("SimplexPoint: weights must sum to 1");
}

CandidateSet::CandidateSet(std::vector<ProductDensity> candidates, const Sample& X)
    : candidates_(std::move(candidates)) {
  if (candidates_.empty()) throw ContractViolation("CandidateSet: need at least one candidate");
  const DensityFamily fam(candidates_);
  const LogDensityMatrix L = fam.evaluate(X, Exec::serial);
  P_.candidates = L.rows();
  P_.n = L.cols();
  P_.values.resize(P_.candidates * P_.n);
  for (std::size_t j = 0; j < P_.candidates; ++j) {
    for (std::size_t i = 0; i < P_.n; ++i) {
      const double v = std::exp(L(j, i));
      if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "CandidateSet: candidate " << j << " is not strictly positive and finite at X_" << i;
        throw ContractViolation(os.str());
      }
      P_.values[j * P_.n + i] = v;
    }
  }
  if (P_.candidates > P_.n) {
    condition_ = std::numeric_limits<double>::infinity();
    return;
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(P_.candidates), static_cast<Eigen::Index>(P_.n));
  for (std::size_t j = 0; j < P_.candidates; ++j) {
    for (std::size_t i = 0; i < P_.n; ++i) {
      M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = P_.values[j * P_.n + i];
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  condition_ = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

RhoFit select_candidate(const Sample& X, const std::vector<ProductDensity>& candidates,
                        const std::vector<double>& deltas, const PsiKernel& k,
                        double slack_multiplier) {
  if (candidates.empty()) throw ContractViolation("select_candidate: no candidates");
  if (deltas.size() != candidates.size()) {
    throw ContractViolation("select_candidate: one weight per candidate is required");
  }
  double mass = 0.0;
  Penalty pen;
  for (double d : deltas) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw ContractViolation("select_candidate: weights must be finite and >= 0");
    }
    mass += std::exp(-d);
    pen.values.push_back(k.kappa * d);
  }
  if (mass > 1.0 + 1e-12) throw ContractViolation("select_candidate: sum of exp(-delta) exceeds 1");
  const DensityFamily fam(candidates);
  return rho_estimate(X, fam, pen, k, slack_multiplier * k.default_slack());
}

double t_mix(const CandidateSet& cs, const SimplexPoint& alpha, const SimplexPoint& beta,
             const PsiKernel& k, Exec exec) {
  check_alpha(cs, alpha, "t_mix");
  check_alpha(cs, beta, "t_mix");
  return exec == Exec::serial ? kernels::t_mix_serial(cs.matrix(), alpha.weights, beta.weights, k)
                              : kernels::t_mix_parallel(cs.matrix(), alpha.weights, beta.weights, k);
}

std::vector<double> mixture_at_sample(const CandidateSet& cs, const SimplexPoint& alpha) {
  check_alpha(cs, alpha, "mixture_at_sample");
  return kernels::mixture_values(cs.matrix(), alpha.weights);
}

std::vector<double> t_mix_gradient(const CandidateSet& cs, const SimplexPoint& alpha,
                                   const SimplexPoint& beta, const PsiKernel& k) {
  check_alpha(cs, alpha, "t_mix_gradient");
  check_alpha(cs, beta, "t_mix_gradient");
  const auto& P = cs.matrix();
  const std::vector<double> a = kernels::mixture_values(P, alpha.weights);
  const std::vector<double> b = kernels::mixture_values(P, beta.weights);
  std::vector<double> g(P.candidates, 0.0);
  for (std::size_t i = 0; i < P.n; ++i) {
    const double w = dpsi_sqrt(k, b[i] / a[i]) / a[i];
    for (std::size_t j = 0; j < P.candidates; ++j) g[j] += w * P(j, i);
  }
  return g;
}

InnerResult inner_argmax(const CandidateSet& cs, const SimplexPoint& alpha, const PsiKernel& k,
                         const InnerSolverConfig& inner) {
  check_alpha(cs, alpha, "inner_argmax");
  const auto& P = cs.matrix();
  const std::size_t N = P.candidates;
  const std::size_t n = P.n;
  const std::vector<double> a = kernels::mixture_values(P, alpha.weights);

  InnerResult res;
  res.beta = alpha;
  std::vector<double>& beta = res.beta.weights;
  std::vector<double> b = kernels::mixture_values(P, beta);
  std::vector<double> g(N);
  std::vector<double> dp(n);

  const auto gradient = [&]() {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = dpsi_sqrt(k, b[i] / a[i]) / a[i];
      for (std::size_t j = 0; j < N; ++j) g[j] += w * P(j, i);
    }
  };

  for (res.iterations = 0; res.iterations < inner.max_iter; ++res.iterations) {
    gradient();
    const double g_beta = std::inner_product(g.begin(), g.end(), beta.begin(), 0.0);
    std::size_t s = 0;
    for (std::size_t j = 1; j < N; ++j) {
      if (g[j] > g[s]) s = j;
    }
    std::size_t v = N;
    for (std::size_t j = 0; j < N; ++j) {
      if (beta[j] > 0.0 && (v == N || g[j] < g[v])) v = j;
    }
    const double fw_gap = g[s] - g_beta;
    res.gap = std::max(fw_gap, 0.0);
    if (fw_gap < inner.tol) {
      res.converged = true;
      break;
    }
    const double away_gap = g_beta - g[v];
    // Direction d and largest feasible step.
    std::vector<double> d(N, 0.0);
    double gamma_max = 1.0;
    bool away = false;
    if (fw_gap >= away_gap || beta[v] >= 1.0) {
      for (std::size_t j = 0; j < N; ++j) d[j] = -beta[j];
      d[s] += 1.0;
    } else {
      away = true;
      for (std::size_t j = 0; j < N; ++j) d[j] = beta[j];
      d[v] -= 1.0;
      gamma_max = beta[v] / (1.0 - beta[v]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s_i = 0.0;
      for (std::size_t j = 0; j < N; ++j) s_i += d[j] * P(j, i);
      dp[i] = s_i;
    }
    // phi'(gamma) is decreasing; find its root on [0, gamma_max].
    const auto dphi = [&](double gamma) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double u = (b[i] + gamma * dp[i]) / a[i];
        acc += dpsi_sqrt(k, std::max(u, 1e-300)) * dp[i] / a[i];
      }
      return acc;
    };
    double gamma = gamma_max;
    if (dphi(gamma_max) < 0.0) {
      double lo = 0.0;
      double hi = gamma_max;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dphi(mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      gamma = 0.5 * (lo + hi);
    }
    for (std::size_t j = 0; j < N; ++j) beta[j] += gamma * d[j];
    if (away && gamma == gamma_max) beta[v] = 0.0;
    renormalize(beta);
    b = kernels::mixture_values(P, beta);
  }
  res.value = kernels::t_mix_serial(P, alpha.weights, beta, k);
  return res;
}

SaddleResult saddle_point(const CandidateSet& cs, const PsiKernel& k, const SaddleConfig& config) {
  if (!(config.eps > 0.0 && config.eps <= 1.0)) {
    throw ContractViolation("saddle_point: eps must lie in (0, 1]");
  }
  SaddleResult res;
  res.condition_number = cs.condition_number();
  if (!(cs.condition_number() <= config.max_condition)) {
    std::ostringstream os;
    os << "saddle_point: candidate evaluation matrix is near-singular (condition number "
       << cs.condition_number() << " > " << config.max_condition
       << "); prune redundant candidates";
    throw DegenerateCandidates(os.str(), cs.condition_number());
  }
  SimplexPoint alpha = SimplexPoint::uniform(cs.size());
  if (cs.size() == 1) {
    res.alpha_star = alpha;
    res.converged = true;
    return res;
  }
  for (res.iterations = 1; res.iterations <= config.max_outer; ++res.iterations) {
    InnerResult in = inner_argmax(cs, alpha, k, config.inner);
    res.alpha_star = alpha;
    res.certificate = in.value + in.gap;
    if (res.certificate < config.eps) {
      res.converged = true;
      return res;
    }
    alpha = std::move(in.beta);
  }
  res.iterations = config.max_outer;
  return res;
}

}  // namespace rho
