#pragma once

#include "minkval/common.hpp"

#include <vector>

namespace minkval {

/// Simplicial facet of a convex hull: d vertex indices, outward unit
/// normal and plane offset (normal . x = offset on the facet).
struct HullFacet {
  std::vector<int> vertices;
  Vec normal;
  double offset = 0.0;
};

/// Coplanar simplicial facets merged into one geometric facet.
struct MergedFacet {
  std::vector<int> vertices;  // sorted, deduplicated
  Vec normal;
  double offset = 0.0;
  double area = 0.0;  // (d-1)-volume
};

/// Incremental convex hull in dimension 2..4 with a long-double
/// orientation fallback for near-degenerate sign tests.
class ConvexHull {
public:
  ConvexHull(const std::vector<Vec>& points, int dim);

  int dim() const { return dim_; }
  /// Affine dimension of the input point set.
  int hull_dim() const { return hull_dim_; }
  /// d-volume of the hull; 0 when hull_dim() < dim().
  double volume() const { return volume_; }
  const std::vector<Vec>& points() const { return points_; }
  /// Simplicial facets; empty when the hull is degenerate.
  const std::vector<HullFacet>& facets() const { return facets_; }
  const std::vector<MergedFacet>& merged_facets() const { return merged_; }
  /// Indices of the extreme points.
  const std::vector<int>& vertex_ids() const { return vertex_ids_; }

private:
  void build();
  int dim_;
  int hull_dim_ = 0;
  double volume_ = 0.0;
  std::vector<Vec> points_;
  std::vector<HullFacet> facets_;
  std::vector<MergedFacet> merged_;
  std::vector<int> vertex_ids_;
};

/// Convex hull volume of a point set in R^d, d <= 4; 0 for degenerate sets.
double hull_volume(const std::vector<Vec>& points, int dim);

/// Area and perimeter of the planar hull (monotone chain). Collinear sets
/// report area 0 and perimeter = twice the segment length.
struct Chain2D {
  double area = 0.0;
  double perimeter = 0.0;
};
Chain2D chain_hull_2d(const std::vector<Vec>& points);

/// Faces of a full-dimensional polytope, grouped by dimension.
/// Faces are intersections of merged facets; each face knows its
/// vertex set and the facets containing it.
struct PolytopeFace {
  std::vector<int> vertices;       // sorted point indices
  std::vector<int> facet_ids;      // merged facet indices containing the face
  int dim = 0;
  double volume = 0.0;             // dim-volume of the face
  Mat span;                        // n x dim orthonormal basis of the direction space
  Vec base;                        // a point on the face
};

class FaceLattice {
public:
  explicit FaceLattice(const ConvexHull& hull);
  /// Faces of dimension i, 0 <= i <= n-1 (facets are dimension n-1).
  const std::vector<PolytopeFace>& faces(int i) const;
  int dim() const { return n_; }

private:
  int n_;
  std::vector<std::vector<PolytopeFace>> by_dim_;
};

}  // namespace minkval
