#include <gtest/gtest.h>

#include <cmath>

#include "rho/errors.hpp"
#include "rho/harness.hpp"
#include "rho/regression.hpp"

using namespace rho;

namespace {

RegressionModel model(Density1D error, std::vector<LinearPredictor> fs, double vc, double delta) {
  return RegressionModel{"m", std::move(error), std::move(fs), vc, delta, std::nullopt};
}

std::vector<LinearPredictor> slope_grid(double lo, double hi, double step) {
  return predictor_grid({PredictorTerm::parse("w")}, cartesian_grid({arithmetic_grid(lo, hi, step)}));
}

std::vector<LinearPredictor> constant_grid(double lo, double hi, double step) {
  return predictor_grid({PredictorTerm::parse("1")}, cartesian_grid({arithmetic_grid(lo, hi, step)}));
}

Sample design(std::vector<double> w) {
  std::vector<double> y(w.size(), 0.0);
  return Sample::pairs(std::move(w), std::move(y));
}

}  // namespace

TEST(Grids, ArithmeticAndCartesian) {
  EXPECT_EQ(arithmetic_grid(-1, 1, 0.5).size(), 5u);
  EXPECT_EQ(cartesian_grid({{1, 2}, {3, 4, 5}}).size(), 6u);
  EXPECT_EQ(cartesian_grid({{1, 2}, {3, 4, 5}})[1], (std::vector<double>{1, 4}));
  EXPECT_THROW(arithmetic_grid(1, 0, 0.1), ContractViolation);
  EXPECT_THROW(predictor_grid({PredictorTerm::parse("w")}, {{1.0, 2.0}}), ContractViolation);
}

TEST(BuildRegression, SingleConstantModel) {
  const auto coll = build_regression_family({model(Density1D::gaussian(0, 1), {LinearPredictor::constant(0)}, 3, 0)},
                                            5, kernel_constants(PsiId::psi2));
  ASSERT_EQ(coll.union_family().size(), 1u);
  const Sample X = Sample::pairs({1, 2, 3, 4, 5}, {0.1, -0.2, 0.3, 0.0, 1.0});
  const auto L = coll.union_family().evaluate(X);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(L(0, i), Density1D::gaussian(0, 1).log_density(X.x(i)));
}

TEST(BuildRegression, VcIndexIsScaled) {
  const ModelDescriptor d = build_regression_model(model(Density1D::gaussian(0, 1), slope_grid(-1, 1, 0.1), 3, 0), 300);
  EXPECT_EQ(d.family.size(), 21u);
  ASSERT_TRUE(d.vc_index.has_value());
  EXPECT_NEAR(*d.vc_index, 28.23, 1e-12);
  EXPECT_DOUBLE_EQ(d.dim_bound, dimension_bound_vc(28.23, 300, 1.0));
}

TEST(BuildRegression, EntriesAreTranslatedErrorDensities) {
  const auto fs = predictor_grid({PredictorTerm::parse("1"), PredictorTerm::parse("w")}, {{0.5, -1.0}, {-0.2, 2.0}});
  const ModelDescriptor d = build_regression_model(model(Density1D::laplace(0, 0.7), fs, 4, 0), 4);
  const Sample X = Sample::pairs({0.0, 0.3, -1.0, 2.0}, {0.2, 1.0, -0.5, 3.0});
  const auto L = d.family.evaluate(X);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    for (std::size_t i = 0; i < 4; ++i) {
      const double w = X.w(i)[0];
      const double direct = Density1D::laplace(0, 0.7).log_density(X.x(i) - (fs[j].coef[0] + fs[j].coef[1] * w));
      EXPECT_NEAR(L(j, i), direct, 1e-14);
    }
  }
}

TEST(BuildRegression, WeightViolationAndMultimodality) {
  const auto k = kernel_constants(PsiId::psi2);
  EXPECT_THROW(build_regression_family({model(Density1D::gaussian(0, 1), {LinearPredictor::constant(0)}, 3, 0),
                                        model(Density1D::cauchy(0, 1), {LinearPredictor::constant(0)}, 3, 0)},
                                       5, k),
               ContractViolation);
  const auto bimodal = Density1D::histogram({-2, -1, 1, 2}, {0.45, 0.05, 0.45});
  EXPECT_THROW(build_regression_model(model(bimodal, {LinearPredictor::constant(0)}, 3, 0), 5), ContractViolation);
  RegressionModel m = model(bimodal, {LinearPredictor::constant(0)}, 3, 0);
  m.mode_multiplier = 2.0;
  const ModelDescriptor d = build_regression_model(m, 500);
  EXPECT_NEAR(*d.vc_index, 9.41 * 3 * 2, 1e-12);
  EXPECT_FALSE(d.diagnostics.empty());
}

TEST(FitRegression, SingleEntryIsReturned) {
  const auto coll = build_regression_family({model(Density1D::gaussian(0, 1), {LinearPredictor::constant(0.3)}, 3, 0)},
                                            3, kernel_constants(PsiId::psi2));
  const RegressionFit f = fit_regression(Sample::pairs({0, 1, 2}, {5, 6, 7}), coll);
  EXPECT_EQ(f.f_hat, LinearPredictor::constant(0.3));
  EXPECT_TRUE(f.s_hat == Density1D::gaussian(0, 1));
  EXPECT_THROW(fit_regression(Sample::scalars({1, 2, 3}), coll), ContractViolation);
}

TEST(FitRegression, ZeroFunctionRecovered) {
  const std::size_t n = 300;
  const auto coll = build_regression_family({model(Density1D::gaussian(0, 1), constant_grid(-2, 2, 0.25), 3, 0)}, n,
                                            kernel_constants(PsiId::psi2));
  int hits = 0;
  for (int r = 0; r < 100; ++r) {
    CounterRng rng(41, r);
    const Sample X = simulate_regression(Density1D::uniform(0, 1), LinearPredictor::constant(0),
                                         Density1D::gaussian(0, 1), n, rng);
    if (std::abs(fit_regression(X, coll).f_hat.coef[0]) < 1e-12) ++hits;
  }
  EXPECT_GE(hits, 95);
}

TEST(FitRegression, SlopeRecovered) {
  const std::size_t n = 300;
  const auto coll = build_regression_family({model(Density1D::gaussian(0, 1), slope_grid(-2, 4, 0.25), 3, 0)}, n,
                                            kernel_constants(PsiId::psi2));
  const LinearPredictor truth{{PredictorTerm::parse("w")}, {1.0}};
  int hits = 0;
  for (int r = 0; r < 60; ++r) {
    CounterRng rng(42, r);
    const Sample X = simulate_regression(Density1D::uniform(0, 1), truth, Density1D::gaussian(0, 1), n, rng);
    if (std::abs(fit_regression(X, coll).f_hat.coef[0] - 1.0) <= 0.25 + 1e-12) ++hits;
  }
  EXPECT_GE(hits, 54);
}

TEST(DsLoss, ClosedForms) {
  const Sample W = design({0.1, 0.5, 0.9});
  const auto s = Density1D::gaussian(0, 1);
  EXPECT_EQ(d_s_loss(s, LinearPredictor::constant(1), LinearPredictor::constant(1), W), 0.0);
  for (double c : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(d_s_loss(s, LinearPredictor::constant(0), LinearPredictor::constant(c), W),
                1 - std::exp(-c * c / 8), 1e-12);
  }
  EXPECT_NEAR(d_s_loss(Density1D::uniform(0, 1), LinearPredictor::constant(0), LinearPredictor::constant(0.5), W), 0.5,
              1e-9);
  EXPECT_THROW(d_s_loss(s, LinearPredictor::constant(0), LinearPredictor::constant(1), Sample::scalars({1.0})),
               ContractViolation);
}

TEST(DsLoss, TranslationInvariantSymmetricAndTriangle) {
  const Sample W = design({-1.0, 0.0, 0.4, 1.5});
  const auto s = Density1D::laplace(0, 1);
  const auto fs = predictor_grid({PredictorTerm::parse("1"), PredictorTerm::parse("w")},
                                 {{0, 0}, {0.3, 0.5}, {-0.2, 1.0}, {1.0, -0.4}});
  for (const auto& g : fs) {
    for (const auto& gp : fs) {
      const double d = d_s_loss(s, g, gp, W);
      LinearPredictor g2 = g;
      LinearPredictor gp2 = gp;
      g2.coef[0] += 0.7;
      gp2.coef[0] += 0.7;
      EXPECT_NEAR(d, d_s_loss(s, g2, gp2, W), 1e-8);
      EXPECT_EQ(d, d_s_loss(s, gp, g, W));
      for (const auto& h : fs) {
        EXPECT_LE(std::sqrt(d), std::sqrt(d_s_loss(s, g, h, W)) + std::sqrt(d_s_loss(s, h, gp, W)) + 1e-8);
      }
    }
  }
}

TEST(Identifiability, Examples) {
  const std::vector<double> grid = arithmetic_grid(-2, 2, 0.05);
  const auto rep = check_identifiability({Density1D::gaussian(0, 1), Density1D::gaussian(0, 1)}, grid);
  ASSERT_EQ(rep.pairs.size(), 1u);
  EXPECT_EQ(rep.pairs[0].ratio, 1.0);

  const auto wide = check_identifiability({Density1D::gaussian(0, 1), Density1D::gaussian(0, 2)}, grid);
  EXPECT_NEAR(wide.pairs[0].argmin_shift, 0.0, 1e-12);
  EXPECT_NEAR(wide.pairs[0].ratio, 1.0, 1e-9);

  const auto unif = check_identifiability({Density1D::uniform(0, 1), Density1D::uniform(0, 2)}, grid);
  EXPECT_TRUE(std::isfinite(unif.pairs[0].ratio));
  EXPECT_GE(unif.pairs[0].ratio, 1.0);

  const auto shifted = check_identifiability({Density1D::gaussian(0, 1), Density1D::gaussian(1, 1)}, grid, 10.0);
  EXPECT_TRUE(std::isinf(shifted.pairs[0].ratio));
  EXPECT_TRUE(shifted.pairs[0].above_ceiling);

  EXPECT_THROW(check_identifiability({Density1D::gaussian(0, 1)}, {0.0, 1.0}), ContractViolation);
}
