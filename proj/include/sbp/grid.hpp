#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbp/error.hpp"

namespace sbp {

enum class Spacing { uniform, graded, sinh, custom };

inline std::string_view to_string(Spacing s) {
  switch (s) {
    case Spacing::uniform: return "uniform";
    case Spacing::graded: return "graded";
    case Spacing::sinh: return "sinh";
    case Spacing::custom: return "custom";
  }
  return "custom";
}

inline Spacing spacing_from_string(std::string_view s) {
  if (s == "uniform") return Spacing::uniform;
  if (s == "graded") return Spacing::graded;
  if (s == "sinh") return Spacing::sinh;
  throw ParameterError("unknown grid spacing '" + std::string(s) + "' (expected uniform|graded|sinh)");
}

/**
 * @brief Radial mesh on [0, r_max] with composite trapezoid weights.
 *
 * The first node sits at r = 0 and the last at r_max. Graded meshes use the
 * map r = r_max x² on a uniform x mesh, which clusters nodes at the origin.
 *
 * Uniform and sinh meshes are "mapped": r = g(x) for an odd analytic g on a
 * uniform x mesh (g(x) = r_max x, or A sinh(B x) with A = r_max / sinh B).
 * Their weights are the trapezoid rule in x, w_i = h_x g'(x_i), which is
 * spectrally accurate for even integrands that vanish at r_max. Graded and
 * custom meshes use the trapezoid rule in r.
 *
 * Grids are immutable and shared between fields through shared_ptr.
 */
class RadialGrid {
 public:
  static constexpr std::size_t min_nodes = 16;

  std::size_t size() const { return nodes_.size(); }
  double r_max() const { return r_max_; }
  Spacing spacing() const { return spacing_; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Width of the cell [r_i, r_{i+1}].
  double width(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }

  /// True for r = g(x) meshes with odd g (uniform, sinh).
  bool mapped() const { return spacing_ == Spacing::uniform || spacing_ == Spacing::sinh; }
  double stretch() const { return stretch_; }
  /// Mesh width in the map variable x ∈ [0, 1].
  double map_step() const { return 1.0 / static_cast<double>(nodes_.size() - 1); }
  /// g(x) and g'(x) of a mapped mesh.
  double map_value(double x) const {
    return spacing_ == Spacing::sinh ? r_max_ * std::sinh(stretch_ * x) / std::sinh(stretch_) : r_max_ * x;
  }
  double map_slope(double x) const {
    return spacing_ == Spacing::sinh ? r_max_ * stretch_ * std::cosh(stretch_ * x) / std::sinh(stretch_) : r_max_;
  }

  /// Local spacing around node i: h_x g'(x_i) on mapped meshes, the mean cell width otherwise.
  double local_width(std::size_t i) const {
    if (mapped()) return map_step() * map_slope(static_cast<double>(i) * map_step());
    if (i == 0) return width(0);
    if (i + 1 == nodes_.size()) return width(i - 1);
    return 0.5 * (width(i - 1) + width(i));
  }

  bool operator==(const RadialGrid& other) const {
    return spacing_ == other.spacing_ && nodes_ == other.nodes_;
  }

  friend std::shared_ptr<const RadialGrid> build_grid(std::size_t n, double r_max, Spacing spacing, double stretch);
  friend std::shared_ptr<const RadialGrid> grid_from_nodes(std::vector<double> nodes);

 private:
  RadialGrid(std::vector<double> nodes, double r_max, Spacing spacing, double stretch)
      : nodes_(std::move(nodes)), weights_(nodes_.size(), 0.0), r_max_(r_max), spacing_(spacing), stretch_(stretch) {
    if (spacing_ == Spacing::sinh) {
      const double hx = map_step();
      for (std::size_t i = 0; i < nodes_.size(); ++i) weights_[i] = hx * map_slope(static_cast<double>(i) * hx);
      weights_.front() *= 0.5;
      weights_.back() *= 0.5;
      return;
    }
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      const double h = nodes_[i + 1] - nodes_[i];
      weights_[i] += 0.5 * h;
      weights_[i + 1] += 0.5 * h;
    }
  }

  std::vector<double> nodes_;
  std::vector<double> weights_;
  double r_max_;
  Spacing spacing_;
  double stretch_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Default B of the sinh map: the spacing at the origin is B / sinh B ≈ 1/15 of the uniform one.
inline constexpr double default_sinh_stretch = 5.0;

inline GridPtr build_grid(std::size_t n, double r_max, Spacing spacing = Spacing::uniform,
                          double stretch = default_sinh_stretch) {
  detail::require(n >= RadialGrid::min_nodes, "grid needs at least 16 nodes, got " + std::to_string(n));
  detail::require(std::isfinite(r_max) && r_max > 0.0, "r_max must be positive and finite");
  detail::require(spacing != Spacing::custom, "custom grids are built with grid_from_nodes");
  detail::require(spacing != Spacing::sinh || (std::isfinite(stretch) && stretch > 0.0 && stretch <= 20.0),
                  "sinh stretch must be in (0, 20]");
  std::vector<double> nodes(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / last;
    switch (spacing) {
      case Spacing::uniform: nodes[i] = r_max * x; break;
      case Spacing::graded: nodes[i] = r_max * x * x; break;
      case Spacing::sinh: nodes[i] = r_max * std::sinh(stretch * x) / std::sinh(stretch); break;
      case Spacing::custom: break;
    }
  }
  nodes.back() = r_max;
  return GridPtr(new RadialGrid(std::move(nodes), r_max, spacing, spacing == Spacing::sinh ? stretch : 0.0));
}

/// Grid over explicit nodes (e.g. read back from a field file).
inline GridPtr grid_from_nodes(std::vector<double> nodes) {
  detail::require(nodes.size() >= RadialGrid::min_nodes, "grid needs at least 16 nodes");
  detail::require(std::isfinite(nodes.front()) && nodes.front() >= 0.0, "first node must be >= 0");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    detail::require(std::isfinite(nodes[i]) && nodes[i] > nodes[i - 1], "grid nodes must be strictly increasing");
  }
  const double r_max = nodes.back();
  return GridPtr(new RadialGrid(std::move(nodes), r_max, Spacing::custom, 0.0));
}

}  // namespace sbp
