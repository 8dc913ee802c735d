#pragma once

#include "minkval/common.hpp"
#include "minkval/sphere_grid.hpp"
#include "minkval/subspace.hpp"

#include <variant>
#include <vector>

namespace minkval {

/// Convex body given as the hull of a finite vertex set. Duplicated or
/// interior vertices are permitted; they do not change any support value.
struct Polytope {
  int n = 0;
  std::vector<Vec> vertices;

  Polytope() = default;
  Polytope(int n_, std::vector<Vec> vertices_);

  Polytope translated(const Vec& x) const;
  Polytope scaled(double lambda) const;
  Polytope rotated(const Mat& q) const;
};

struct Ball {
  Vec center;
  double radius = 0.0;

  Ball() = default;
  Ball(Vec center_, double radius_);
  int dim() const { return static_cast<int>(center.size()); }
};

/// A spherical function certified as a support function, evaluated by
/// grid interpolation.
struct SupportBody {
  SphericalFunction h;
};

using BodyHandle = std::variant<Polytope, Ball, SupportBody>;

int body_dim(const BodyHandle& body);

/// h(K,u) = max { u.x : x in K } for |u| = 1.
double support_eval(const BodyHandle& body, const Vec& u);
double support_eval(const Polytope& p, const Vec& u);

/// 1-homogeneous extension H(x) = |x| h(K, x/|x|); H(0) = 0.
double support_extension(const BodyHandle& body, const Vec& x);

/// Minkowski linear combination with nonnegative coefficients. All-polytope
/// (or all-ball) inputs combine exactly; mixed inputs produce a SupportBody
/// on the supplied grid.
BodyHandle minkowski_combine(const std::vector<BodyHandle>& bodies, const std::vector<double>& coeffs,
                             SphereGridPtr grid = nullptr);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);

BodyHandle reflect(const BodyHandle& body);
Polytope reflect(const Polytope& p);

/// vol_i of the orthogonal projection of the body onto E, computed inside
/// E's coordinates.
double project_volume(const Polytope& body, const Subspace& e);

/// Projected vertex coordinates frame^T * v.
std::vector<Vec> project_points(const std::vector<Vec>& vertices, const Mat& frame);

/// Steiner point s(K) = n * integral of h(K,u) u over the invariant
/// probability measure.
Vec steiner_point(const BodyHandle& body, const SphereGrid& grid);

/// Deterministic test-instance generator: vertices i.i.d. uniform on the
/// unit sphere, resampled until the hull is full-dimensional.
Polytope random_polytope(int n, int vertex_count, std::uint64_t seed);

/// Support values tabulated on a grid.
SphericalFunction support_function(const BodyHandle& body, SphereGridPtr grid);

double polytope_volume(const Polytope& p);

}  // namespace minkval
