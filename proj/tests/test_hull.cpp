#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkval/hull.hpp"
#include "minkval/rng.hpp"

#include <cmath>

using namespace minkval;

namespace {

std::vector<Vec> cube_vertices(int n, double lo, double hi) {
  std::vector<Vec> verts;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vec v(n);
    for (int b = 0; b < n; ++b) v(b) = (mask & (1u << b)) ? hi : lo;
    verts.push_back(v);
  }
  return verts;
}

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

}  // namespace

TEST_CASE("unit cube volume in R^3") {
  CHECK(hull_volume(cube_vertices(3, 0.0, 1.0), 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hull_volume(cube_vertices(3, -1.0, 1.0), 3) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("standard simplex volume 1/6") {
  std::vector<Vec> verts = {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)};
  CHECK(hull_volume(verts, 3) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("degenerate point sets have volume zero") {
  std::vector<Vec> two = {vec3(0, 0, 0), vec3(1, 1, 1)};
  CHECK(hull_volume(two, 3) == 0.0);
  std::vector<Vec> planar = {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(1, 1, 0)};
  CHECK(hull_volume(planar, 3) == 0.0);
}

TEST_CASE("duplicated and interior points do not change the hull") {
  auto verts = cube_vertices(3, 0.0, 1.0);
  verts.push_back(vec3(0.5, 0.5, 0.5));
  verts.push_back(vec3(0.0, 0.0, 0.0));
  verts.push_back(vec3(0.25, 0.75, 0.5));
  ConvexHull hull(verts, 3);
  CHECK(hull.volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hull.vertex_ids().size() == 8);
}

TEST_CASE("cross-polytope volumes") {
  // conv{+-e_k} has volume 2^n / n!.
  for (int n : {2, 3, 4}) {
    std::vector<Vec> verts;
    for (int k = 0; k < n; ++k) {
      Vec v = Vec::Zero(n);
      v(k) = 1.0;
      verts.push_back(v);
      verts.push_back(Vec(-v));
    }
    double expect = std::pow(2.0, n);
    for (int k = 2; k <= n; ++k) expect /= k;
    CHECK(hull_volume(verts, n) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("4d cube volume and facet structure") {
  ConvexHull hull(cube_vertices(4, 0.0, 1.0), 4);
  CHECK(hull.volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hull.merged_facets().size() == 8);
  for (const auto& f : hull.merged_facets()) {
    CHECK(f.area == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.vertices.size() == 8);
  }
}

TEST_CASE("cube merged facets are the six squares") {
  ConvexHull hull(cube_vertices(3, 0.0, 1.0), 3);
  CHECK(hull.merged_facets().size() == 6);
  double area = 0.0;
  for (const auto& f : hull.merged_facets()) {
    CHECK(f.vertices.size() == 4);
    area += f.area;
  }
  CHECK(area == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("random sphere points: hull volume approaches the ball") {
  RngStream rng(42);
  std::vector<Vec> pts;
  for (int k = 0; k < 4000; ++k) pts.push_back(rng.unit_vector(3));
  double v = hull_volume(pts, 3);
  double kappa3 = 4.0 * M_PI / 3.0;
  CHECK(v < kappa3);
  CHECK(v > 0.97 * kappa3);
}

TEST_CASE("2d hull perimeter of a square") {
  std::vector<Vec> verts;
  for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}) {
    Vec v(2);
    v << x, y;
    verts.push_back(v);
  }
  ConvexHull hull(verts, 2);
  CHECK(hull.volume() == doctest::Approx(1.0).epsilon(1e-12));
  double per = 0.0;
  for (const auto& f : hull.merged_facets()) per += f.area;
  CHECK(per == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("face lattice of the unit cube") {
  ConvexHull hull(cube_vertices(3, 0.0, 1.0), 3);
  FaceLattice faces(hull);
  CHECK(faces.faces(2).size() == 6);
  CHECK(faces.faces(1).size() == 12);
  CHECK(faces.faces(0).size() == 8);
  for (const auto& e : faces.faces(1)) {
    CHECK(e.volume == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(e.facet_ids.size() == 2);
  }
}

TEST_CASE("face lattice of the 4-cube") {
  ConvexHull hull(cube_vertices(4, 0.0, 1.0), 4);
  FaceLattice faces(hull);
  CHECK(faces.faces(3).size() == 8);
  CHECK(faces.faces(2).size() == 24);
  CHECK(faces.faces(1).size() == 32);
  CHECK(faces.faces(0).size() == 16);
}

TEST_CASE("face lattice of a random polytope satisfies Euler's relation") {
  RngStream rng(7);
  std::vector<Vec> pts;
  for (int k = 0; k < 30; ++k) pts.push_back(rng.unit_vector(3));
  ConvexHull hull(pts, 3);
  FaceLattice faces(hull);
  int v = static_cast<int>(faces.faces(0).size());
  int e = static_cast<int>(faces.faces(1).size());
  int f = static_cast<int>(faces.faces(2).size());
  CHECK(v - e + f == 2);
  CHECK(v == 30);
}

TEST_CASE("hull of nearly coplanar points stays finite and sane") {
  auto verts = cube_vertices(3, 0.0, 1.0);
  for (auto& v : verts) v(2) *= 1e-9;
  double vol = hull_volume(verts, 3);
  CHECK(vol == doctest::Approx(1e-9).epsilon(1e-6));
}
