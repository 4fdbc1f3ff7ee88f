#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rho/aggregation.hpp"
#include "rho/errors.hpp"
#include "rho/rng.hpp"
#include "support/oracles.hpp"

using namespace rho;

namespace {

// Candidates with prescribed values at the sample: coordinate i of candidate
// j is a histogram on [i, i+1) ∪ [i+1, i+2) with height v at X_i = i + 0.5.
ProductDensity from_values(const std::vector<double>& v) {
  std::vector<Coordinate> coords;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lo = static_cast<double>(i);
    coords.push_back(Density1D::histogram({lo, lo + 1, lo + 1 + v[i]}, {v[i], (1 - v[i]) / v[i]}));
  }
  return ProductDensity::of(std::move(coords));
}

Sample grid_sample(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) + 0.5;
  return Sample::scalars(std::move(x));
}

std::vector<std::vector<double>> random_values(CounterRng& rng, std::size_t N, std::size_t n) {
  std::vector<std::vector<double>> p(N, std::vector<double>(n));
  for (auto& row : p) {
    for (double& v : row) v = 0.05 + 0.9 * rng.uniform();
  }
  return p;
}

CandidateSet make_set(const std::vector<std::vector<double>>& p) {
  std::vector<ProductDensity> c;
  for (const auto& row : p) c.push_back(from_values(row));
  return CandidateSet(std::move(c), grid_sample(p.front().size()));
}

}  // namespace

TEST(CandidateSet, EvaluationMatrixHoldsTheValues) {
  const std::vector<std::vector<double>> p{{0.2, 0.7}, {0.9, 0.4}};
  const CandidateSet cs = make_set(p);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(cs.matrix()(j, i), p[j][i], 1e-15);
  }
  EXPECT_GE(cs.condition_number(), 1.0);
}

TEST(CandidateSet, ZeroAtASamplePointRejected) {
  EXPECT_THROW(CandidateSet({ProductDensity::iid(Density1D::uniform(0, 1), 1)}, Sample::scalars({2.0})),
               ContractViolation);
}

TEST(SimplexPoint, Invariants) {
  EXPECT_NO_THROW(SimplexPoint::uniform(3).validate());
  EXPECT_NO_THROW(SimplexPoint::vertex(3, 2).validate());
  EXPECT_THROW((SimplexPoint{{0.5, 0.6}}).validate(), ContractViolation);
  EXPECT_THROW((SimplexPoint{{1.2, -0.2}}).validate(), ContractViolation);
  EXPECT_THROW(SimplexPoint::vertex(2, 2), ContractViolation);
}

TEST(TMix, HandComputedValue) {
  // p = (1) and (4) at a single point: t = psi2(sqrt 4) = 1/3.
  const PsiKernel k = kernel_constants(PsiId::psi2);
  const CandidateSet cs({ProductDensity::iid(Density1D::uniform(0, 1), 1),
                         ProductDensity::iid(Density1D::uniform(0, 0.25), 1)},
                        Sample::scalars({0.1}));
  EXPECT_NEAR(t_mix(cs, SimplexPoint::vertex(2, 0), SimplexPoint::vertex(2, 1), k), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(t_mix(cs, SimplexPoint::uniform(2), SimplexPoint::uniform(2), k), 0.0);
}

TEST(TMix, AntisymmetricAndMatchesOracle) {
  CounterRng rng(21, 0);
  for (PsiId id : {PsiId::psi1, PsiId::psi2}) {
    const PsiKernel k = kernel_constants(id);
    for (int t = 0; t < 40; ++t) {
      const std::size_t N = 2 + t % 3;
      const auto p = random_values(rng, N, 6);
      const CandidateSet cs = make_set(p);
      SimplexPoint a{std::vector<double>(N)};
      SimplexPoint b{std::vector<double>(N)};
      double sa = 0, sb = 0;
      for (std::size_t j = 0; j < N; ++j) {
        sa += a.weights[j] = rng.uniform();
        sb += b.weights[j] = rng.uniform();
      }
      for (std::size_t j = 0; j < N; ++j) {
        a.weights[j] /= sa;
        b.weights[j] /= sb;
      }
      const double ab = t_mix(cs, a, b, k);
      EXPECT_NEAR(ab + t_mix(cs, b, a, k), 0.0, 1e-12);
      EXPECT_NEAR(ab, oracle::t_mix(id, p, a.weights, b.weights), 1e-12);
      EXPECT_EQ(ab, t_mix(cs, a, b, k, Exec::parallel));
    }
  }
}

TEST(TMix, ConcaveInSecondArgument) {
  CounterRng rng(22, 0);
  const PsiKernel k = kernel_constants(PsiId::psi2);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_values(rng, 3, 8);
    const CandidateSet cs = make_set(p);
    const auto rand_point = [&]() {
      SimplexPoint s{{rng.uniform(), rng.uniform(), rng.uniform()}};
      const double z = s.weights[0] + s.weights[1] + s.weights[2];
      for (double& w : s.weights) w /= z;
      return s;
    };
    const SimplexPoint a = rand_point();
    const SimplexPoint b1 = rand_point();
    const SimplexPoint b2 = rand_point();
    SimplexPoint mid{{0, 0, 0}};
    for (int j = 0; j < 3; ++j) mid.weights[j] = 0.5 * (b1.weights[j] + b2.weights[j]);
    EXPECT_GE(t_mix(cs, a, mid, k) + 1e-10, 0.5 * (t_mix(cs, a, b1, k) + t_mix(cs, a, b2, k)));
  }
}

TEST(TMix, GradientMatchesFiniteDifferences) {
  CounterRng rng(23, 0);
  const auto p = random_values(rng, 3, 5);
  const CandidateSet cs = make_set(p);
  const PsiKernel k = kernel_constants(PsiId::psi1);
  const SimplexPoint a{{0.2, 0.5, 0.3}};
  const SimplexPoint b{{0.6, 0.1, 0.3}};
  const auto g = t_mix_gradient(cs, a, b, k);
  // Directional derivatives along e_j - e_0 stay on the simplex.
  for (std::size_t j = 1; j < 3; ++j) {
    const double h = 1e-6;
    SimplexPoint plus = b;
    SimplexPoint minus = b;
    plus.weights[j] += h;
    plus.weights[0] -= h;
    minus.weights[j] -= h;
    minus.weights[0] += h;
    const double fd = (t_mix(cs, a, plus, k) - t_mix(cs, a, minus, k)) / (2 * h);
    EXPECT_NEAR(g[j] - g[0], fd, 1e-6);
  }
}

TEST(InnerArgmax, IdenticalCandidatesGiveZeroGap) {
  const auto d = ProductDensity::iid(Density1D::gaussian(0, 1), 4);
  const CandidateSet cs({d, d}, Sample::scalars({0.1, -0.3, 1.2, 0.0}));
  const InnerResult r = inner_argmax(cs, SimplexPoint::uniform(2), kernel_constants(PsiId::psi2));
  EXPECT_NO_THROW(r.beta.validate());
  EXPECT_NEAR(r.value, 0.0, 1e-15);
  EXPECT_NEAR(r.gap, 0.0, 1e-15);
  EXPECT_TRUE(r.converged);
}

TEST(InnerArgmax, MatchesGoldenSectionOnTheSegment) {
  CounterRng rng(24, 0);
  for (PsiId id : {PsiId::psi1, PsiId::psi2}) {
    const PsiKernel k = kernel_constants(id);
    for (int t = 0; t < 30; ++t) {
      const auto p = random_values(rng, 2, 7);
      const CandidateSet cs = make_set(p);
      const double a0 = rng.uniform();
      const SimplexPoint alpha{{a0, 1 - a0}};
      const InnerResult r = inner_argmax(cs, alpha, k);
      EXPECT_NO_THROW(r.beta.validate());
      const double best = oracle::golden_section_max(
          [&](double b) { return oracle::t_mix(id, p, alpha.weights, {b, 1 - b}); }, 0.0, 1.0, 1e-12);
      EXPECT_NEAR(r.beta.weights[0], best, 1e-6) << t;
    }
  }
}

TEST(Saddle, SingleCandidate) {
  const CandidateSet cs({ProductDensity::iid(Density1D::gaussian(0, 1), 2)}, Sample::scalars({0.0, 1.0}));
  const SaddleResult r = saddle_point(cs, kernel_constants(PsiId::psi2));
  EXPECT_EQ(r.alpha_star.weights, std::vector<double>{1.0});
  EXPECT_EQ(r.certificate, 0.0);
  EXPECT_TRUE(r.converged);
}

TEST(Saddle, RandomSetsAgainstSimplexGridOracle) {
  CounterRng rng(25, 0);
  const PsiKernel k = kernel_constants(PsiId::psi2);
  const double eps = 1e-4;
  for (int t = 0; t < 12; ++t) {
    const std::size_t N = t % 2 == 0 ? 3 : 2;
    const auto p = random_values(rng, N, 5);
    const CandidateSet cs = make_set(p);
    const SaddleResult r = saddle_point(cs, k);
    ASSERT_TRUE(r.converged);
    EXPECT_LT(r.certificate, eps);
    EXPECT_NO_THROW(r.alpha_star.validate());
    double worst_up = -std::numeric_limits<double>::infinity();
    double worst_down = std::numeric_limits<double>::infinity();
    oracle::for_each_simplex_point(N, 100, [&](const std::vector<double>& g) {
      worst_up = std::max(worst_up, oracle::t_mix(PsiId::psi2, p, r.alpha_star.weights, g));
      worst_down = std::min(worst_down, oracle::t_mix(PsiId::psi2, p, g, r.alpha_star.weights));
    });
    // max_beta t(alpha*, beta) is the criterion of the mixture over the convex family.
    EXPECT_LE(worst_up, r.certificate + 1e-3);
    EXPECT_LT(worst_up, eps);
    EXPECT_GT(worst_down, -eps);
  }
}

TEST(Saddle, FavoursTheTrueComponent) {
  const PsiKernel k = kernel_constants(PsiId::psi2);
  const std::size_t n = 200;
  int good = 0;
  int certified = 0;
  for (int r = 0; r < 100; ++r) {
    CounterRng rng(26, r);
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    const CandidateSet cs({ProductDensity::iid(Density1D::gaussian(0, 1), n),
                           ProductDensity::iid(Density1D::gaussian(3, 1), n)},
                          Sample::scalars(x));
    const SaddleResult s = saddle_point(cs, k);
    if (s.alpha_star.weights[0] >= 0.9) ++good;
    if (s.certificate < 1e-4) ++certified;
  }
  EXPECT_GE(good, 95);
  EXPECT_EQ(certified, 100);
}

TEST(Saddle, DegenerateCandidatesReported) {
  const auto d = ProductDensity::iid(Density1D::gaussian(0, 1), 3);
  const CandidateSet cs({d, d}, Sample::scalars({0.1, 0.2, 0.3}));
  try {
    saddle_point(cs, kernel_constants(PsiId::psi2));
    FAIL() << "expected DegenerateCandidates";
  } catch (const DegenerateCandidates& e) {
    EXPECT_GT(e.condition_number(), 1e10);
    EXPECT_NE(std::string(e.what()).find("prune"), std::string::npos);
  }
}

TEST(Saddle, InvalidEpsRejected) {
  const CandidateSet cs({ProductDensity::iid(Density1D::gaussian(0, 1), 1)}, Sample::scalars({0.0}));
  SaddleConfig c;
  c.eps = 0.0;
  EXPECT_THROW(saddle_point(cs, kernel_constants(PsiId::psi2), c), ContractViolation);
  c.eps = 1.5;
  EXPECT_THROW(saddle_point(cs, kernel_constants(PsiId::psi2), c), ContractViolation);
}

TEST(Saddle, NonConvergenceIsReportedNotHidden) {
  CounterRng rng(27, 0);
  const auto p = random_values(rng, 3, 6);
  const CandidateSet cs = make_set(p);
  SaddleConfig c;
  c.max_outer = 1;
  c.eps = 1e-300;
  const SaddleResult r = saddle_point(cs, kernel_constants(PsiId::psi2), c);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_GE(r.certificate, 0.0);
}

TEST(SelectCandidate, Examples) {
  const PsiKernel k = kernel_constants(PsiId::psi2);
  const Sample X = Sample::scalars({0.3, -0.1});
  EXPECT_EQ(select_candidate(X, {ProductDensity::iid(Density1D::gaussian(0, 1), 2)}, {0.0}, k).chosen_index, 0u);
  const auto same = ProductDensity::iid(Density1D::gaussian(0, 1), 2);
  EXPECT_EQ(select_candidate(X, {same, same}, {1.0, 10.0}, k).chosen_index, 0u);
  EXPECT_THROW(select_candidate(X, {same, same}, {0.1, 0.1}, k), ContractViolation);
  EXPECT_THROW(select_candidate(X, {same}, {}, k), ContractViolation);
}

TEST(SelectCandidate, PicksTheTruth) {
  const PsiKernel k = kernel_constants(PsiId::psi2);
  const std::size_t n = 100;
  int hits = 0;
  for (int r = 0; r < 100; ++r) {
    CounterRng rng(28, r);
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    const RhoFit f = select_candidate(Sample::scalars(x),
                                      {ProductDensity::iid(Density1D::gaussian(0, 1), n),
                                       ProductDensity::iid(Density1D::gaussian(5, 1), n)},
                                      {std::log(2.0), std::log(2.0)}, k);
    if (f.chosen_index == 0) ++hits;
  }
  EXPECT_GE(hits, 99);
}
