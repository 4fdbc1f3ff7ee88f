#include <gtest/gtest.h>

#include <cmath>

#include "rho/errors.hpp"
#include "rho/hellinger.hpp"

using namespace rho;

TEST(Hellinger, QuadratureReproducesGaussianClosedForm) {
  for (double sd : {0.5, 1.0, 2.0}) {
    for (int k = 0; k <= 24; ++k) {
      const double delta = 0.25 * k;
      const auto p = Density1D::gaussian(0.0, sd);
      const auto q = Density1D::gaussian(delta, sd);
      const double exact = 1.0 - std::exp(-delta * delta / (8 * sd * sd));
      EXPECT_NEAR(hellinger_sq(p, q, {}, HellingerMethod::quadrature), exact, 1e-8) << delta << " " << sd;
      EXPECT_NEAR(hellinger_sq(p, q), exact, 1e-15);
    }
  }
}

TEST(Hellinger, IdenticalIsZeroAndDisjointIsOne) {
  const auto u = Density1D::uniform(0.0, 1.0);
  EXPECT_EQ(hellinger_sq(u, u), 0.0);
  EXPECT_EQ(hellinger_sq(u, Density1D::uniform(2.0, 3.0)), 1.0);
  EXPECT_NEAR(hellinger_sq(u, Density1D::uniform(2.0, 3.0), {}, HellingerMethod::quadrature), 1.0, 1e-12);
}

TEST(Hellinger, DisplacedUniformOverlap) {
  // Overlap of length 1/2: affinity 1/2.
  EXPECT_NEAR(hellinger_sq(Density1D::uniform(0, 1), Density1D::uniform(0.5, 1.5)), 0.5, 1e-10);
}

TEST(Hellinger, UnequalScaleGaussians) {
  // 1 - sqrt(2 s1 s2 / (s1^2 + s2^2)) for centered Gaussians.
  const double s1 = 1.0;
  const double s2 = 2.0;
  const double exact = 1.0 - std::sqrt(2 * s1 * s2 / (s1 * s1 + s2 * s2));
  EXPECT_NEAR(hellinger_sq(Density1D::gaussian(0, s1), Density1D::gaussian(0, s2)), exact, 1e-9);
}

TEST(Hellinger, SymmetricAndBounded) {
  const std::vector<Density1D> ds{Density1D::gaussian(0, 1), Density1D::cauchy(1, 0.5),
                                  Density1D::laplace(-1, 2), Density1D::exponential(1.0),
                                  Density1D::histogram({-1, 0, 2}, {0.2, 0.4})};
  for (const auto& a : ds) {
    for (const auto& b : ds) {
      const double ab = hellinger_sq(a, b);
      EXPECT_GE(ab, 0.0);
      EXPECT_LE(ab, 1.0);
      EXPECT_NEAR(ab, hellinger_sq(b, a), 1e-9);
    }
  }
}

TEST(Hellinger, IndependentOfDominatingMeasure) {
  const auto p = Density1D::gaussian(0.2, 1.0);
  const auto q = Density1D::laplace(-0.5, 1.3);
  EXPECT_NEAR(hellinger_sq(p, q), hellinger_sq_against(p, q, BaseMeasure::standard_gaussian), 1e-8);
  // The pathological representation differs from N(theta,1) on a null set only.
  const auto path = Density1D::pathological_gaussian(1.0);
  EXPECT_NEAR(hellinger_sq_against(path, Density1D::gaussian(1.0, 1.0), BaseMeasure::standard_gaussian), 0.0,
              1e-9);
}

TEST(Hellinger, AffinityComplementsDistance) {
  const auto p = Density1D::gaussian(0, 1);
  const auto q = Density1D::cauchy(0, 1);
  EXPECT_DOUBLE_EQ(hellinger_affinity(p, q), 1.0 - hellinger_sq(p, q));
}

TEST(Hellinger, ProductOfIidIsNTimesCoordinate) {
  const auto p = Density1D::gaussian(0, 1);
  const auto q = Density1D::gaussian(1, 1);
  const double h = hellinger_sq(p, q);
  EXPECT_NEAR(product_hellinger_sq(ProductDensity::iid(p, 7), ProductDensity::iid(q, 7)), 7 * h, 1e-14);
  const auto mixed = ProductDensity::of({p, q, p});
  EXPECT_NEAR(product_hellinger_sq(mixed, ProductDensity::iid(p, 3)), h, 1e-14);
  EXPECT_THROW(product_hellinger_sq(ProductDensity::iid(p, 2), ProductDensity::iid(p, 3)), ContractViolation);
}
