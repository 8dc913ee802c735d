#pragma once

#include "minkval/common.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace minkval {

/// Fixed-order pairwise summation; keeps reductions bitwise reproducible
/// and sums of integers exact.
double pairwise_sum(std::span<const double> xs);

enum class GridKind { fibonacci, quasi_random, monte_carlo };

/// Equal-weight quadrature grid on S^{n-1}, n in {3,4}. Nodes are unit
/// vectors; the rule integrates against the rotation invariant
/// probability measure, so the weights are 1/N and quadrature of the
/// constant 1 is exactly 1.
class SphereGrid {
public:
  SphereGrid(int n, std::vector<Vec> nodes);

  int dim() const { return n_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec>& nodes() const { return nodes_; }
  const Vec& node(int k) const { return nodes_[k]; }
  double weight(int) const { return 1.0 / static_cast<double>(nodes_.size()); }
  std::uint64_t content_id() const { return content_id_; }

  /// Quadrature of tabulated values against the invariant probability measure.
  double integrate(std::span<const double> values) const;

  /// Interpolate tabulated values at an arbitrary unit vector. For n=3 this
  /// is conic barycentric interpolation on the node triangulation (exact for
  /// restrictions of linear functions); for n=4 a nearest-neighbor weighted
  /// average.
  double interpolate(std::span<const double> values, const Vec& u) const;

  int nearest_node(const Vec& u) const;

private:
  void ensure_triangulation() const;
  int locate_triangle(const Vec& u, Vec& bary) const;

  int n_;
  std::vector<Vec> nodes_;
  std::uint64_t content_id_;

  // n=3 triangulation cache (hull facets of the node cloud).
  mutable std::once_flag tri_once_;
  mutable std::vector<std::array<int, 3>> triangles_;
  mutable std::vector<std::vector<int>> node_triangles_;
};

using SphereGridPtr = std::shared_ptr<const SphereGrid>;

SphereGridPtr build_sphere_grid(int n, int node_count, GridKind kind, std::uint64_t seed);

GridKind grid_kind_from_string(const std::string& s);
std::string to_string(GridKind k);

/// Values of a continuous function tabulated on a grid.
struct SphericalFunction {
  SphereGridPtr grid;
  std::vector<double> values;

  SphericalFunction() = default;
  SphericalFunction(SphereGridPtr g, std::vector<double> v);

  double operator()(const Vec& u) const { return grid->interpolate(values, u); }
};

/// Canonical pairing <f,g> = integral of f*g against the invariant
/// probability measure.
double pair(const SphericalFunction& f, const SphericalFunction& g);

}  // namespace minkval
