#include <gtest/gtest.h>

#include "common.hpp"

using namespace sbp;

namespace {

GridPtr grid() {
  static const GridPtr g = build_grid(384, 30.0, Spacing::sinh);
  return g;
}

}  // namespace

TEST(Functionals, ManifoldIsTwoNehariPlusPohozaev) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const RadialField u = test::random_profile(grid(), rng);
    for (ModelParams p : {ModelParams{1.0, 1.0, 5.0}, ModelParams{0.2, 2.0, 4.5}, ModelParams{0.0, 1.0, 5.5}}) {
      const FunctionalBreakdown b = evaluate_any(u, p);
      EXPECT_NEAR(b.manifold, 2.0 * b.nehari + b.pohozaev, 1e-12 * b.manifold_scale());
    }
  }
}

TEST(Functionals, BreakdownPieces) {
  const RadialField u = test::gaussian(grid());
  const ModelParams p{1.0, 1.5, 5.0};
  const FunctionalBreakdown b = evaluate(u, p);
  EXPECT_NEAR(b.energy, 0.5 * b.dirichlet + 0.25 * 2.25 * b.pair_bp - b.lp_p / 5.0, 1e-13);
  EXPECT_DOUBLE_EQ(b.m_plain, b.dirichlet + b.pair_bp);
  EXPECT_DOUBLE_EQ(b.m_q, b.dirichlet + 2.25 * b.pair_bp);
  EXPECT_GT(b.pair_bp, 0.0);
  EXPECT_GT(b.pair_exp, 0.0);
  EXPECT_THROW(evaluate(u, ModelParams{0.0, 1.0, 5.0}), ParameterError);
  EXPECT_THROW(evaluate(u, ModelParams{1.0, 0.0, 5.0}), ParameterError);
  const FunctionalBreakdown z = evaluate(RadialField(grid()), p);
  EXPECT_EQ(z.energy, 0.0);
  EXPECT_EQ(z.manifold, 0.0);
}

TEST(Functionals, PoissonLimitIsApproachedAsScreeningVanishes) {
  const RadialField u = test::gaussian(grid());
  const FunctionalBreakdown sp = evaluate_sp(u, 1.0, 5.0);
  const FunctionalBreakdown tiny = evaluate(u, ModelParams{1e-4, 1.0, 5.0});
  EXPECT_NEAR(tiny.energy, sp.energy, 1e-6);
  EXPECT_NEAR(tiny.manifold, sp.manifold, 1e-5);
}

TEST(Fibering, ValueAtOneIsEnergyAndDerivativeIsManifold) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    const RadialField u = test::random_profile(grid(), rng);
    for (ModelParams p : {ModelParams{1.0, 1.0, 5.0}, ModelParams{0.0, 1.0, 4.5}}) {
      const FunctionalBreakdown b = evaluate_any(u, p);
      EXPECT_NEAR(fiber_value(u, p, 1.0), b.energy, 1e-12 * b.nehari_scale());
      EXPECT_NEAR(fiber_derivative(u, p, 1.0), b.manifold, 1e-12 * b.manifold_scale());
    }
  }
}

TEST(Fibering, ClosedFormMatchesResampledProfile) {
  // ζ(t) = Iₐ(t² u(t·)) computed on the rescaled samples
  const GridPtr g = build_grid(512, 40.0, Spacing::sinh);
  const RadialField u = test::gaussian(g);
  const ModelParams p{1.0, 1.0, 5.0};
  for (double t : {0.6, 1.3, 2.0}) {
    EXPECT_NEAR(fiber_value(u, p, t), evaluate(rescale_field(u, t), p).energy, 1e-4 * std::abs(fiber_value(u, p, t)));
  }
}

TEST(Fibering, DerivativeMatchesFiniteDifference) {
  const RadialField u = test::gaussian(grid(), 1.4);
  const ModelParams p{0.8, 1.2, 5.0};
  const FiberInputs in(u, p);
  for (double t : {0.4, 1.0, 2.5}) {
    const double h = 1e-5 * t;
    const double fd = (fiber_value(in, t + h) - fiber_value(in, t - h)) / (2.0 * h);
    EXPECT_NEAR(fiber_derivative(in, t), fd, 1e-6 * fiber_derivative_terms(in, t).scale);
  }
}

TEST(ScalarInequalities, ExponentialInequalityGrid) {
  std::size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    const double t = 0.05 + (20.0 - 0.05) * i / 99.0;
    for (int j = 0; j < 100; ++j) {
      const double b = 20.0 * j / 99.0;
      if (!(exp_inequality_lhs(t, b) >= 0.0)) ++violations;
    }
  }
  EXPECT_EQ(violations, 0u);
  EXPECT_EQ(exp_inequality_lhs(1.0, 3.0), 0.0);
  EXPECT_EQ(exp_inequality_lhs(2.0, 0.0), 0.0);
  EXPECT_THROW(exp_inequality_lhs(0.0, 1.0), ParameterError);
}

TEST(ScalarInequalities, ScalarGIsNonnegativeWithZeroAtOne) {
  for (double p : {4.2, 5.0, 5.8}) {
    for (int i = 0; i < 2000; ++i) {
      const double t = 0.05 + (20.0 - 0.05) * i / 1999.0;
      EXPECT_GE(scalar_g(t, p), 0.0) << "t = " << t << " p = " << p;
    }
    EXPECT_EQ(scalar_g(1.0, p), 0.0);
  }
}

TEST(ScalarInequalities, RadialKernelGapIsPositive) {
  for (int i = 1; i <= 5000; ++i) {
    const double b = 50.0 * i / 5000.0;
    const double direct = b > 1.0 ? -std::expm1(-b) / b - std::exp(-b) : radial_kernel_gap(b);
    EXPECT_GT(radial_kernel_gap(b), 0.0);
    EXPECT_NEAR(radial_kernel_gap(b), direct, 1e-12 * std::abs(direct));
  }
  EXPECT_GT(radial_kernel_gap(1e-8), 0.0);
  EXPECT_THROW(radial_kernel_gap(0.0), ParameterError);
}

TEST(Splitting, GapIsNonnegativeOnRandomProfiles) {
  std::mt19937_64 rng(2024);
  const ModelParams p{1.0, 1.0, 5.0};
  double worst = INFINITY;
  for (int k = 0; k < 30; ++k) {
    const RadialField u = test::random_profile(grid(), rng);
    for (double t : {0.3, 0.7, 1.5, 3.0}) worst = std::min(worst, splitting_gap(u, p, t));
  }
  EXPECT_GE(worst, -1e-10);
  EXPECT_NEAR(splitting_gap(test::gaussian(grid()), p, 1.0), 0.0, 1e-12);
}

TEST(Nonexistence, CombinationSignsOnGaussian) {
  const RadialField u = test::gaussian(grid());
  EXPECT_LT(nonexistence_combos(u, {1.0, 1.0, 6.0}).d_high, 0.0);
  EXPECT_GT(nonexistence_combos(u, {1.0, 1.0, 1.5}).d_low, 0.0);
  EXPECT_GT(nonexistence_combos(u, {1.0, 1.0, 2.0}).d_radial, 0.0);
  EXPECT_THROW(nonexistence_combos(RadialField(grid()), {1.0, 1.0, 6.0}), UndefinedInputError);
  EXPECT_THROW(nonexistence_combos(u, {0.0, 1.0, 6.0}), ParameterError);
}
