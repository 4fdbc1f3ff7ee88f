#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "rho/errors.hpp"
#include "rho/psi.hpp"
#include "rho/rng.hpp"
#include "support/oracles.hpp"

using namespace rho;

TEST(Psi, Psi2Constants) {
  const PsiKernel k = kernel_constants(PsiId::psi2);
  EXPECT_DOUBLE_EQ(k.a0, 4.0);
  EXPECT_DOUBLE_EQ(k.a1, 3.0 / 8.0);
  EXPECT_NEAR(k.a2_sq, 3 * std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(k.kappa, 280 * std::numbers::sqrt2 + 74, 1e-10);
  EXPECT_NEAR(k.kappa, 469.98, 0.01);
  EXPECT_NEAR(k.beta, k.a1 / (4 * std::sqrt(k.a2_sq)), 1e-16);
  EXPECT_NEAR(k.gamma, 4 * (k.a0 + 16) / k.a1 + 2 + 168 / k.a2_sq, 1e-12);
  EXPECT_NEAR(k.default_slack(), k.kappa / 25, 1e-14);
}

TEST(Psi, Psi1Constants) {
  const PsiKernel k = kernel_constants(PsiId::psi1);
  EXPECT_DOUBLE_EQ(k.a0, 4.97);
  EXPECT_DOUBLE_EQ(k.a1, 0.083);
  EXPECT_NEAR(k.a2_sq, 3 + 2 * std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(k.kappa, 35 * k.a2_sq / k.a1 + 74, 1e-10);
}

TEST(Psi, ClosedFormValues) {
  const PsiKernel k2 = kernel_constants(PsiId::psi2);
  const PsiKernel k1 = kernel_constants(PsiId::psi1);
  EXPECT_DOUBLE_EQ(k2(2.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(k2(0.0), -1.0);
  EXPECT_DOUBLE_EQ(k1(0.0), -1.0);
  EXPECT_NEAR(k1(2.0), 1.0 / std::sqrt(5.0), 1e-16);
  EXPECT_EQ(k2(std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_THROW(k2(-1.0), ContractViolation);
  EXPECT_THROW(k1(std::numeric_limits<double>::quiet_NaN()), ContractViolation);
}

TEST(Psi, LogRatioFormMatchesRatioForm) {
  for (PsiId id : {PsiId::psi1, PsiId::psi2}) {
    const PsiKernel k = kernel_constants(id);
    for (double d = -60; d <= 60; d += 0.37) {
      EXPECT_NEAR(k.of_log_ratio(d), oracle::psi_ratio(id, std::exp(0.5 * d)), 1e-14) << d;
      EXPECT_EQ(k.of_log_ratio(d), -k.of_log_ratio(-d));
    }
    EXPECT_EQ(k.of_log_ratio(std::numeric_limits<double>::infinity()), 1.0);
    EXPECT_EQ(k.of_log_ratio(-std::numeric_limits<double>::infinity()), -1.0);
  }
}

TEST(Psi, DerivativeMatchesFiniteDifferences) {
  for (PsiId id : {PsiId::psi1, PsiId::psi2}) {
    const PsiKernel k = kernel_constants(id);
    for (double x : {0.01, 0.3, 1.0, 2.5, 17.0}) {
      const double h = 1e-6 * std::max(1.0, x);
      const double fd = (k(x + h) - k(x - h)) / (2 * h);
      EXPECT_NEAR(k.derivative(x), fd, 1e-7) << x;
    }
  }
}

TEST(Psi, NamesRoundTrip) {
  EXPECT_EQ(psi_from_string("psi1"), PsiId::psi1);
  EXPECT_EQ(psi_from_string(to_string(PsiId::psi2)), PsiId::psi2);
  EXPECT_THROW(psi_from_string("psi3"), ContractViolation);
}

TEST(Psi, AssumptionHoldsForGaussianTriples) {
  CounterRng rng(99, 0);
  for (PsiId id : {PsiId::psi1, PsiId::psi2}) {
    const PsiKernel k = kernel_constants(id);
    for (int t = 0; t < 15; ++t) {
      const auto draw = [&]() {
        return Density1D::gaussian(4 * rng.uniform() - 2, 0.5 + 1.5 * rng.uniform());
      };
      const auto q = draw();
      const auto qp = draw();
      const auto r = draw();
      QuadratureSpec quad;
      quad.abs_tol = 1e-6;
      const AssumptionReport rep = check_assumption(k, q, qp, r, quad);
      EXPECT_TRUE(rep.pass) << rep.lhs_esp << " <= " << rep.rhs_esp << " ; " << rep.lhs_var << " <= " << rep.rhs_var;
      EXPECT_LE(rep.lhs_esp, rep.rhs_esp + 1e-5);
      EXPECT_LE(rep.lhs_var, rep.rhs_var + 1e-5);
    }
  }
}

TEST(Psi, EqualPairGivesZeroMoments) {
  // q = q' makes psi vanish identically.
  const PsiKernel k = kernel_constants(PsiId::psi2);
  const auto q = Density1D::gaussian(0, 1);
  const AssumptionReport rep = check_assumption(k, q, q, q);
  EXPECT_NEAR(rep.lhs_esp, 0.0, 1e-9);
  EXPECT_NEAR(rep.lhs_var, 0.0, 1e-9);
  EXPECT_TRUE(rep.pass);
}
