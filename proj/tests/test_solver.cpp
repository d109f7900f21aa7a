#include <gtest/gtest.h>

#include "common.hpp"

using namespace sbp;

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.shrink = 1.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.armijo = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.tol_residual = -1.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.seed_profile = SeedProfile::file;
  EXPECT_THROW(c.validate(), ParameterError);
  EXPECT_THROW(seed_profile_from_string("flat"), ParameterError);
}

TEST(Solver, RefusesUnsupportedParameters) {
  const GridPtr g = build_grid(64, 10.0, Spacing::sinh);
  EXPECT_THROW(solve_ground_state({1.0, 1.0, 7.0}, g, {}), ParameterError);
  EXPECT_THROW(solve_ground_state({1.0, 1.0, 4.0}, g, {}), ParameterError);
  EXPECT_THROW(solve_ground_state({0.0, 1.0, 5.0}, g, {}), ParameterError);
  EXPECT_THROW(solve_ground_state({1.0, 0.0, 5.0}, g, {}), ParameterError);
  EXPECT_THROW(solve_sp_ground_state(1.0, 6.0, g, {}), ParameterError);
}

TEST(Solver, ReferenceSolutionClosesAllIdentities) {
  const SolveReport& r = test::reference_solution();
  ASSERT_TRUE(r.converged) << to_string(r.status);
  EXPECT_EQ(r.status, SolveStatus::converged);
  EXPECT_LT(r.residual_relative, 1e-6);
  const FunctionalBreakdown& b = r.breakdown;
  EXPECT_LT(std::abs(b.nehari), 1e-5 * b.nehari_scale());
  EXPECT_LT(std::abs(b.pohozaev), 1e-5 * b.pohozaev_scale());
  EXPECT_LT(std::abs(b.manifold), 1e-5 * b.manifold_scale());
  EXPECT_LT(anorm_identity_residual(r.u, 1.0), 1e-3);
  EXPECT_LT(laplacian_identity_residual(r.u, 1.0), 1e-3);
  EXPECT_GT(r.energy_c, 0.0);
  EXPECT_GT(b.m_plain, 1e-6);
  EXPECT_NEAR(r.fibering.t_star, 1.0, 1e-6);
  EXPECT_GE(r.min_u, -1e-8 * r.u.max_abs());
  EXPECT_GT(r.max_phi, 0.0);
  EXPECT_FALSE(r.exploratory);
}

TEST(Solver, DescentHistoryIsMonotone) {
  const SolveReport& r = test::reference_solution();
  ASSERT_GE(r.history.size(), 2u);
  for (std::size_t k = 1; k < r.history.size(); ++k) {
    EXPECT_LE(r.history[k].energy, r.history[k - 1].energy + 1e-12) << "step " << k;
  }
}

TEST(Solver, ConvergedProfileMaximizesItsFiber) {
  const SolveReport& r = test::reference_solution();
  const FiberInputs in(r.u, r.params);
  const MaximalityCheck m = check_maximality(in, 1.0, 0.1, 10.0, 10000);
  EXPECT_TRUE(m.root_is_max);
}

TEST(Solver, SeedIndependence) {
  SolverConfig c;
  c.seed_profile = SeedProfile::bump;
  const SolveReport bump = solve_ground_state({1.0, 1.0, 5.0}, test::reference_grid(), c);
  ASSERT_TRUE(bump.converged);
  const double e = test::reference_solution().energy_c;
  EXPECT_NEAR(bump.energy_c, e, 1e-4 * e);
}

TEST(Solver, FileSeedAndWarmStart) {
  SolverConfig c;
  c.seed_profile = SeedProfile::file;
  c.seed_field = test::reference_solution().u;
  const SolveReport r = solve_ground_state({1.0, 1.0, 5.0}, test::reference_grid(), c);
  ASSERT_TRUE(r.converged);
  // file seeds are max-normalized, which moves them off the manifold, so only the level is compared
  EXPECT_NEAR(r.energy_c, test::reference_solution().energy_c, 1e-7 * r.energy_c);
  const SolveReport w =
      solve_ground_state({0.9, 1.0, 5.0}, test::reference_grid(), {}, test::reference_solution().u);
  ASSERT_TRUE(w.converged);
  EXPECT_LT(w.iters, test::reference_solution().iters);
}

TEST(Solver, PoissonLimitSolution) {
  const SolveReport& sp = test::reference_sp_solution();
  ASSERT_TRUE(sp.converged);
  EXPECT_TRUE(sp.params.poisson_limit());
  const FunctionalBreakdown& b = sp.breakdown;
  EXPECT_EQ(b.pair_exp, 0.0);
  EXPECT_LT(std::abs(b.nehari), 1e-5 * b.nehari_scale());
  EXPECT_LT(std::abs(b.pohozaev), 1e-5 * b.pohozaev_scale());
  EXPECT_GE(sp.energy_c, test::reference_solution().energy_c);
}

TEST(Solver, DeterministicReports) {
  const SolveReport a = solve_ground_state({1.0, 1.0, 5.0}, test::reference_grid(), {});
  const SolveReport& b = test::reference_solution();
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.energy_c, b.energy_c);
  EXPECT_EQ(a.history.size(), b.history.size());
}

TEST(Solver, ExploratoryRangeIsFlagged) {
  SolverConfig c;
  c.exploratory_p = true;
  c.max_iters = 5;
  const SolveReport r = solve_ground_state({1.0, 1.0, 3.8}, build_grid(128, 20.0, Spacing::sinh), c);
  EXPECT_TRUE(r.exploratory);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(UpperBound, BracketsTheLevel) {
  const SolveReport& sp = test::reference_sp_solution();
  const double ca = test::reference_solution().energy_c;
  const UpperBound ub = upper_bound_check(sp, {1.0, 1.0, 5.0});
  EXPECT_GE(ub.bound, ca - 1e-4 * ca);
  EXPECT_LE(ub.bound, sp.energy_c);
  const UpperBound tiny = upper_bound_check(sp, {1e-3, 1.0, 5.0});
  EXPECT_NEAR(tiny.bound, sp.energy_c, 1e-3 * sp.energy_c);
  // t_u → 1 as a → 0
  const double t1 = upper_bound_check(sp, {0.1, 1.0, 5.0}).t_star;
  const double t2 = upper_bound_check(sp, {0.01, 1.0, 5.0}).t_star;
  EXPECT_LT(std::abs(t2 - 1.0), std::abs(t1 - 1.0));
  EXPECT_THROW(upper_bound_check(test::reference_solution(), {1.0, 1.0, 5.0}), ParameterError);
}

TEST(AssessProfile, ReproducesSolverVerdict) {
  const SolveReport& r = test::reference_solution();
  const SolveReport a = assess_profile(r.u, r.params, {});
  EXPECT_TRUE(a.converged);
  EXPECT_EQ(a.energy_c, r.energy_c);
  const SolveReport g = assess_profile(test::gaussian(test::reference_grid()), r.params, {});
  EXPECT_FALSE(g.converged);
  EXPECT_EQ(g.status, SolveStatus::external);
  EXPECT_THROW(assess_profile(RadialField(test::reference_grid()), r.params, {}), UndefinedInputError);
}
