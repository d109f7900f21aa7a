#include <gtest/gtest.h>

#include "common.hpp"

using namespace sbp;
using sbp::test::pi;

TEST(Grid, RejectsBadArguments) {
  EXPECT_THROW(build_grid(8, 10.0), ParameterError);
  EXPECT_THROW(build_grid(64, 0.0), ParameterError);
  EXPECT_THROW(build_grid(64, -1.0), ParameterError);
  EXPECT_THROW(build_grid(64, 10.0, Spacing::sinh, 0.0), ParameterError);
  EXPECT_THROW(build_grid(64, 10.0, Spacing::custom), ParameterError);
  EXPECT_THROW(grid_from_nodes({0.0, 1.0, 0.5}), ParameterError);
  EXPECT_THROW(spacing_from_string("log"), ParameterError);
}

TEST(Grid, EndpointsAndMonotoneNodes) {
  for (Spacing s : {Spacing::uniform, Spacing::graded, Spacing::sinh}) {
    const GridPtr g = build_grid(200, 12.0, s);
    EXPECT_EQ(g->size(), 200u);
    EXPECT_EQ(g->node(0), 0.0);
    EXPECT_EQ(g->node(199), 12.0);
    for (std::size_t i = 1; i < g->size(); ++i) EXPECT_GT(g->node(i), g->node(i - 1));
    for (std::size_t i = 0; i < g->size(); ++i) EXPECT_GT(g->weight(i), 0.0);
  }
}

TEST(Grid, TrapezoidWeightsSumToRadius) {
  for (Spacing s : {Spacing::uniform, Spacing::graded}) {
    const GridPtr g = build_grid(300, 7.5, s);
    double sum = 0.0;
    for (double w : g->weights()) sum += w;
    EXPECT_NEAR(sum, 7.5, 1e-12);
  }
  // sinh weights integrate g'(x) by the trapezoid rule in x, so Σw = R only to O(h²)
  const GridPtr g = build_grid(512, 40.0, Spacing::sinh);
  double sum = 0.0;
  for (double w : g->weights()) sum += w;
  EXPECT_NEAR(sum, 40.0, 1e-3);
}

TEST(Grid, UniformTrapezoidMomentsOfLowPolynomials) {
  // Σ w rᵏ is exact for k ≤ 1; for k = 2 it carries exactly the h² R / 6 endpoint term
  const double R = 7.5;
  const GridPtr g = build_grid(301, R, Spacing::uniform);
  const double h = R / 300.0;
  double m[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < g->size(); ++i) {
    for (int k = 0; k < 3; ++k) m[k] += g->weight(i) * std::pow(g->node(i), k);
  }
  EXPECT_NEAR(m[0], R, 1e-10 * R);
  EXPECT_NEAR(m[1], R * R / 2.0, 1e-10 * R * R);
  EXPECT_NEAR(m[2], R * R * R / 3.0 + h * h * R / 6.0, 1e-10 * R * R * R);
}

TEST(Grid, SpacingRoundTrip) {
  for (Spacing s : {Spacing::uniform, Spacing::graded, Spacing::sinh}) {
    EXPECT_EQ(spacing_from_string(to_string(s)), s);
  }
}

TEST(Field, RejectsNonFiniteAndWrongSize) {
  const GridPtr g = build_grid(32, 4.0);
  EXPECT_THROW(RadialField(g, std::vector<double>(31, 0.0)), ParameterError);
  std::vector<double> v(32, 0.0);
  v[3] = std::nan("");
  EXPECT_THROW(RadialField(g, v), ParameterError);
}

TEST(Field, GaussianMoments) {
  // ∫ e^{-r²} d³x = π^{3/2}, ‖∇e^{-r²}‖² = 3π^{3/2}/(2√2), ‖e^{-r²}‖_5^5 = (π/5)^{3/2}
  for (Spacing s : {Spacing::uniform, Spacing::sinh}) {
    const GridPtr g = build_grid(512, 12.0, s);
    const RadialField u = test::gaussian(g);
    EXPECT_NEAR(radial_integral(u), std::pow(pi, 1.5), 1e-10);
    EXPECT_NEAR(dirichlet_energy(u), 3.0 * std::pow(pi, 1.5) / (2.0 * std::sqrt(2.0)), 1e-8);
    EXPECT_NEAR(lp_norm_pow(u, 5.0), std::pow(pi / 5.0, 1.5), 1e-10);
  }
  const GridPtr gg = build_grid(2000, 12.0, Spacing::graded);
  EXPECT_NEAR(dirichlet_energy(test::gaussian(gg)), 3.0 * std::pow(pi, 1.5) / (2.0 * std::sqrt(2.0)), 1e-3);
}

TEST(Field, ZeroFieldHasZeroNorms) {
  const GridPtr g = build_grid(64, 5.0, Spacing::sinh);
  const RadialField z(g);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(dirichlet_energy(z), 0.0);
  EXPECT_EQ(lp_norm_pow(z, 3.0), 0.0);
}

TEST(Field, DirichletLaplacianMatchesAnalyticLaplacian) {
  // Δ e^{-r²} = (4r² − 6) e^{-r²}
  const GridPtr g = build_grid(512, 10.0, Spacing::sinh);
  const RadialField lap = dirichlet_laplacian(test::gaussian(g));
  for (std::size_t i = 0; i + 1 < g->size(); ++i) {
    const double r = g->node(i);
    if (r > 6.0) break;
    EXPECT_NEAR(lap[i], (4.0 * r * r - 6.0) * std::exp(-r * r), 1e-6) << "r = " << r;
  }
}

TEST(Field, DirichletLaplacianIsEnergyGradient) {
  // d/ds ½‖∇(u + s v)‖² at s = 0 equals −4π Σ w r² Δ_h u · v
  const GridPtr g = build_grid(128, 8.0, Spacing::sinh);
  const RadialField u = test::gaussian(g, 1.3);
  RadialField v = RadialField::sample(g, [](double r) { return std::exp(-(r - 1.0) * (r - 1.0)); });
  v = RadialField(g, [&] {
    std::vector<double> x(v.values().begin(), v.values().end());
    x.front() = 0.0;  // u(0) is a derived node on mapped grids
    x.back() = 0.0;
    return x;
  }());
  const double eps = 1e-6;
  const double fd = (dirichlet_energy(axpy(u, eps, v)) - dirichlet_energy(axpy(u, -eps, v))) / (4.0 * eps);
  const double an = -radial_integral(dirichlet_laplacian(u) * v);
  EXPECT_NEAR(fd, an, 1e-6 * std::abs(an));
}

TEST(Field, RescaleScalingLaws) {
  // v = t² u(t·): ‖∇v‖² = t³ ‖∇u‖², ‖v‖_p^p = t^{2p−3} ‖u‖_p^p
  const GridPtr g = build_grid(512, 30.0, Spacing::sinh);
  const RadialField u = test::gaussian(g);
  for (double t : {0.5, 0.8, 1.7}) {
    const RadialField v = rescale_field(u, t);
    EXPECT_NEAR(dirichlet_energy(v) / dirichlet_energy(u), t * t * t, 1e-4);
    EXPECT_NEAR(lp_norm_pow(v, 5.0) / lp_norm_pow(u, 5.0), std::pow(t, 7.0), 1e-4);
  }
  EXPECT_THROW(rescale_field(u, 0.0), ParameterError);
}

TEST(Field, DerivativesOfSmoothProfile) {
  const GridPtr g = build_grid(400, 10.0, Spacing::sinh);
  const RadialField u = test::gaussian(g);
  const RadialField d = radial_derivative(u);
  const RadialField l = radial_laplacian(u);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double r = g->node(i);
    EXPECT_NEAR(d[i], -2.0 * r * std::exp(-r * r), 1e-7);
    EXPECT_NEAR(l[i], (4.0 * r * r - 6.0) * std::exp(-r * r), 1e-5);
  }
}

TEST(Interpolation, MonotoneCubicHasNoOvershoot) {
  const std::vector<double> x = {0, 1, 2, 3, 4, 5};
  const std::vector<double> y = {0, 0, 1, 1, 1, 0};
  const MonotoneCubic f(x, y);
  for (double t = 0.0; t <= 5.0; t += 0.01) {
    EXPECT_GE(f(t), -1e-15);
    EXPECT_LE(f(t), 1.0 + 1e-15);
  }
  EXPECT_DOUBLE_EQ(f(2.0), 1.0);
}
