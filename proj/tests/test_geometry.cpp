#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkval/bodies.hpp"
#include "minkval/hull.hpp"
#include "minkval/json_io.hpp"
#include "minkval/measures.hpp"
#include "minkval/rng.hpp"

#include <cmath>

using namespace minkval;

namespace {

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

Polytope cube3(double lo, double hi) {
  std::vector<Vec> verts;
  for (unsigned m = 0; m < 8; ++m)
    verts.push_back(vec3(m & 1 ? hi : lo, m & 2 ? hi : lo, m & 4 ? hi : lo));
  return Polytope(3, std::move(verts));
}

Polytope simplex3() {
  return Polytope(3, {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)});
}

}  // namespace

TEST_CASE("support values of standard bodies") {
  CHECK(support_eval(BodyHandle(cube3(-1, 1)), vec3(1, 0, 0)) == doctest::Approx(1.0));
  Ball b(Vec(Vec::Zero(3)), 1.0);
  RngStream rng(3);
  for (int k = 0; k < 16; ++k) CHECK(support_eval(BodyHandle(b), rng.unit_vector(3)) == doctest::Approx(1.0));
  Vec diag = vec3(1, 1, 1) / std::sqrt(3.0);
  CHECK(support_eval(BodyHandle(simplex3()), diag) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("support rejects non-unit directions") {
  CHECK_THROWS_AS(support_eval(BodyHandle(simplex3()), vec3(1, 1, 0)), InputError);
}

TEST_CASE("minkowski combination identity case") {
  Polytope k = simplex3();
  Polytope l = cube3(0, 1);
  auto combined = minkowski_combine({BodyHandle(k), BodyHandle(l)}, {1.0, 0.0});
  RngStream rng(5);
  for (int t = 0; t < 32; ++t) {
    Vec u = rng.unit_vector(3);
    CHECK(support_eval(combined, u) == doctest::Approx(support_eval(BodyHandle(k), u)).epsilon(1e-12));
  }
}

TEST_CASE("minkowski combination rejects negative coefficients") {
  CHECK_THROWS_AS(minkowski_combine({BodyHandle(simplex3())}, {-0.5}), InputError);
}

TEST_CASE("segment sum builds a square") {
  Polytope s1(3, {vec3(-1, 0, 0), vec3(1, 0, 0)});
  Polytope s2(3, {vec3(0, -1, 0), vec3(0, 1, 0)});
  auto square = minkowski_combine({BodyHandle(s1), BodyHandle(s2)}, {1.0, 1.0});
  Vec u = vec3(1, 1, 0) / std::sqrt(2.0);
  CHECK(support_eval(square, u) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("difference body of the simplex has the extremal volume ratio") {
  // Oracle: brute-force hull volume of all pairwise vertex differences.
  Polytope k = simplex3();
  std::vector<Vec> diffs;
  for (const auto& a : k.vertices)
    for (const auto& b : k.vertices) diffs.push_back(a - b);
  double ratio = hull_volume(diffs, 3) / polytope_volume(k);
  CHECK(ratio == doctest::Approx(20.0).epsilon(1e-9));
  auto dk = minkowski_combine({BodyHandle(k), reflect(BodyHandle(k))}, {1.0, 1.0});
  CHECK(polytope_volume(std::get<Polytope>(dk)) == doctest::Approx(20.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("reflection") {
  Ball b(Vec(Vec::Zero(3)), 2.0);
  auto rb = reflect(BodyHandle(b));
  CHECK(std::get<Ball>(rb).radius == 2.0);
  CHECK(std::get<Ball>(rb).center.norm() == 0.0);

  Polytope k = simplex3();
  auto rk = std::get<Polytope>(reflect(BodyHandle(k)));
  RngStream rng(11);
  for (int t = 0; t < 64; ++t) {
    Vec u = rng.unit_vector(3);
    CHECK(support_eval(rk, u) == doctest::Approx(support_eval(k, Vec(-u))).epsilon(1e-12));
  }
}

TEST_CASE("h(K,u) + h(-K,u) equals the width vol_1(K|u)") {
  RngStream rng(13);
  for (int t = 0; t < 8; ++t) {
    Polytope k = random_polytope(3, 14, 100 + t);
    Vec u = rng.unit_vector(3);
    Subspace line(3, 1, u);
    double width = project_volume(k, line);
    double lhs = support_eval(k, u) + support_eval(reflect(k), u);
    CHECK(lhs == doctest::Approx(width).epsilon(1e-12));
  }
}

TEST_CASE("projection volumes of standard bodies") {
  Polytope c = cube3(-1, 1);
  Mat f(3, 2);
  f.setZero();
  f(0, 0) = 1.0;
  f(1, 1) = 1.0;
  CHECK(project_volume(c, Subspace(3, 2, f)) == doctest::Approx(4.0).epsilon(1e-12));

  // Hexagonal shadow of the unit cube along the main diagonal.
  Vec diag = vec3(1, 1, 1) / std::sqrt(3.0);
  Mat h = Mat::Identity(3, 3);
  Vec w = vec3(1, 0, 0) - diag;
  h -= (2.0 / w.squaredNorm()) * (w * w.transpose());
  Subspace perp_diag(3, 2, h.rightCols(2));
  CHECK(project_volume(cube3(0, 1), perp_diag) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("projection of a polytopal ball approximates kappa_i") {
  const Polytope& b = ball_polytope(3, 2000);
  for (int i : {1, 2}) {
    GrassmannSample s = sample_grassmann(3, i, 4, 99);
    for (const auto& e : s.subspaces) {
      CHECK(project_volume(b, e) == doctest::Approx(unit_ball_volume(i)).epsilon(0.01));
    }
  }
}

TEST_CASE("subspace construction rejects non-orthonormal frames") {
  Mat f(3, 2);
  f << 1, 0, 0, 1, 0.5, 0;
  CHECK_THROWS_AS(Subspace(3, 2, f), InputError);
}

TEST_CASE("steiner point") {
  auto grid = build_sphere_grid(3, 4096, GridKind::fibonacci, 0);
  Polytope sym = cube3(-1, 1);
  CHECK(steiner_point(BodyHandle(sym), *grid).norm() < 5e-3);

  Ball b(vec3(0.3, -0.2, 0.5), 1.0);
  Vec s = steiner_point(BodyHandle(b), *grid);
  CHECK((s - b.center).norm() < 5e-3);

  // Translation equivariance on the same grid; the residual is the grid's
  // second-moment quadrature error.
  Polytope k = random_polytope(3, 12, 7);
  Vec x = vec3(0.4, 0.1, -0.3);
  Vec s1 = steiner_point(BodyHandle(k), *grid);
  Vec s2 = steiner_point(BodyHandle(k.translated(x)), *grid);
  CHECK((s2 - (s1 + x)).norm() < 1e-5);
}

TEST_CASE("random polytope generator") {
  Polytope a = random_polytope(3, 20, 42);
  Polytope b = random_polytope(3, 20, 42);
  REQUIRE(a.vertices.size() == b.vertices.size());
  for (std::size_t k = 0; k < a.vertices.size(); ++k) CHECK((a.vertices[k] - b.vertices[k]).norm() == 0.0);
  CHECK(polytope_volume(a) > 0.0);
  Polytope c = random_polytope(3, 20, 43);
  CHECK((a.vertices[0] - c.vertices[0]).norm() > 0.0);
}

TEST_CASE("sublinearity of exact support evaluators") {
  RngStream rng(23);
  Polytope k = random_polytope(3, 16, 5);
  Ball b(vec3(0.1, 0.2, -0.3), 0.7);
  for (const BodyHandle& body : {BodyHandle(k), BodyHandle(b)}) {
    for (int t = 0; t < 2000; ++t) {
      Vec x = rng.gaussian_vector(3);
      Vec y = rng.gaussian_vector(3);
      CHECK(support_extension(body, x + y) <= support_extension(body, x) + support_extension(body, y) + 1e-9);
    }
  }
}

TEST_CASE("rotation covariance and translation of polytope support") {
  RngStream rng(29);
  Polytope k = random_polytope(3, 16, 9);
  Mat q = random_rotation(3, rng);
  Polytope kq = k.rotated(q);
  Vec x = rng.gaussian_vector(3);
  Polytope kx = k.translated(x);
  for (int t = 0; t < 64; ++t) {
    Vec u = rng.unit_vector(3);
    CHECK(support_eval(kq, u) == doctest::Approx(support_eval(k, Vec(q.transpose() * u))).epsilon(1e-12));
    CHECK(support_eval(kx, u) == doctest::Approx(support_eval(k, u) + x.dot(u)).epsilon(1e-12));
  }
}

TEST_CASE("projection monotone under hull containment and homogeneous") {
  RngStream rng(31);
  Polytope l = random_polytope(3, 20, 77);
  std::vector<Vec> sub(l.vertices.begin(), l.vertices.begin() + 10);
  Polytope k(3, sub);
  for (int t = 0; t < 16; ++t) {
    GrassmannSample s = sample_grassmann(3, 2, 1, 1000 + t);
    const Subspace& e = s.subspaces[0];
    CHECK(project_volume(k, e) <= project_volume(l, e) + 1e-12);
    double lam = 0.5 + rng.uniform01();
    CHECK(project_volume(k.scaled(lam), e) ==
          doctest::Approx(lam * lam * project_volume(k, e)).epsilon(1e-9));
  }
}

TEST_CASE("body JSON round trip is bit-exact") {
  Polytope k = random_polytope(3, 8, 3);
  Json j = body_to_json(BodyHandle(k));
  Json j2 = Json::parse(j.dump());
  auto k2 = std::get<Polytope>(body_from_json(j2));
  REQUIRE(k2.vertices.size() == k.vertices.size());
  for (std::size_t a = 0; a < k.vertices.size(); ++a)
    for (int c = 0; c < 3; ++c) CHECK(k2.vertices[a](c) == k.vertices[a](c));

  Ball b(vec3(0.25, -1.5, 3.0), 0.125);
  auto b2 = std::get<Ball>(body_from_json(Json::parse(body_to_json(BodyHandle(b)).dump())));
  CHECK(b2.radius == b.radius);
  CHECK(b2.center(0) == b.center(0));
}

TEST_CASE("4d bodies: support and projection basics") {
  Polytope k = random_polytope(4, 12, 21);
  RngStream rng(37);
  Vec u = rng.unit_vector(4);
  double h = support_eval(k, u);
  double best = -1e300;
  for (const auto& v : k.vertices) best = std::max(best, v.dot(u));
  CHECK(h == best);
  GrassmannSample s = sample_grassmann(4, 3, 2, 5);
  for (const auto& e : s.subspaces) CHECK(project_volume(k, e) > 0.0);
}
