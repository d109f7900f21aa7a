#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "sbp/sbp.hpp"

namespace sbp::test {

inline constexpr double pi = std::numbers::pi;

inline GridPtr reference_grid() {
  static const GridPtr g = build_grid(512, 40.0, Spacing::sinh);
  return g;
}

/// Converged (a, q, p) = (1, 1, 5) ground state, computed once per process.
inline const SolveReport& reference_solution() {
  static const SolveReport rep = solve_ground_state(ModelParams{1.0, 1.0, 5.0}, reference_grid(), SolverConfig{});
  return rep;
}

/// Converged Schrodinger-Poisson ground state at (q, p) = (1, 5).
inline const SolveReport& reference_sp_solution() {
  static const SolveReport rep = solve_sp_ground_state(1.0, 5.0, reference_grid(), SolverConfig{});
  return rep;
}

inline RadialField gaussian(const GridPtr& g, double width = 1.0) {
  return RadialField::sample(g, [width](double r) { return std::exp(-r * r / (width * width)); });
}

/// Random sum of Gaussians, positive or sign-changing.
inline RadialField random_profile(const GridPtr& g, std::mt19937_64& rng, bool positive = false) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> center(0.0, 3.0), logw(std::log(0.4), std::log(3.0)), amp(-1.0, 1.0);
  const int k = count(rng);
  std::vector<double> c(k), w(k), a(k);
  for (int i = 0; i < k; ++i) {
    c[i] = center(rng);
    w[i] = std::exp(logw(rng));
    a[i] = positive ? std::abs(amp(rng)) + 0.1 : amp(rng);
  }
  return RadialField::sample(g, [&](double r) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += a[i] * std::exp(-(r - c[i]) * (r - c[i]) / (w[i] * w[i]));
    return s;
  });
}

/// Fresh empty directory under the system temp dir.
inline std::string scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sbp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace sbp::test
