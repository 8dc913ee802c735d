#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkval/bodies.hpp"
#include "minkval/grassmann_ops.hpp"
#include "minkval/json_io.hpp"
#include "minkval/measures.hpp"
#include "minkval/operators.hpp"
#include "minkval/rng.hpp"

#include <cmath>

using namespace minkval;

namespace {

Polytope cube3(double lo, double hi) {
  std::vector<Vec> verts;
  for (unsigned m = 0; m < 8; ++m) {
    Vec v(3);
    v << (m & 1 ? hi : lo), (m & 2 ? hi : lo), (m & 4 ? hi : lo);
    verts.push_back(v);
  }
  return Polytope(3, std::move(verts));
}

}  // namespace

TEST_CASE("grassmann sample basics") {
  GrassmannSample s = sample_grassmann(3, 1, 500, 17);
  CHECK(s.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
  GrassmannSample s2 = sample_grassmann(3, 1, 500, 17);
  CHECK((s.subspaces[7].frame - s2.subspaces[7].frame).norm() == 0.0);

  // Rotation-start independence: the mean of cos^2 to a fixed subspace is
  // the same within MC error when the whole sample is rotated.
  RngStream rng(23);
  Mat q = random_rotation(3, rng);
  Subspace ref = base_subspace(3, 1);
  double m1 = 0.0, m2 = 0.0, var = 0.0;
  std::vector<double> v1;
  for (std::size_t k = 0; k < s.subspaces.size(); ++k) {
    double a = cosine(s.subspaces[k], ref);
    double b = cosine(s.subspaces[k].rotated(q), ref);
    v1.push_back(a * a);
    m1 += a * a;
    m2 += b * b;
  }
  m1 /= s.subspaces.size();
  m2 /= s.subspaces.size();
  for (double x : v1) var += (x - m1) * (x - m1);
  double se = std::sqrt(var / (s.subspaces.size() - 1) / s.subspaces.size());
  CHECK(std::abs(m1 - m2) < 3.0 * (2.0 * se) + 1e-3);
}

TEST_CASE("kubota consistency of uniform line samples over the cube") {
  // Average width of the unit cube over random lines equals
  // W_2(cube) kappa_1 / kappa_3, with W_2 from the Steiner-fit oracle.
  Polytope cube = cube3(0, 1);
  GrassmannSample s = sample_grassmann(3, 1, 20000, 5);
  std::vector<double> vals(s.subspaces.size());
  for (std::size_t k = 0; k < s.subspaces.size(); ++k) vals[k] = project_volume(cube, s.subspaces[k]);
  double mean = pairwise_sum(vals) / vals.size();
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  double se = std::sqrt(var / (vals.size() - 1) / vals.size());

  QuermassVector q = quermass_steiner_fit(cube);
  double target = q.w[2] * unit_ball_volume(1) / unit_ball_volume(3);
  CHECK(std::abs(mean - target) < 3.0 * se + 0.01 * target);
}

TEST_CASE("cosine examples") {
  Subspace e = base_subspace(3, 1);
  CHECK(cosine(e, e) == doctest::Approx(1.0));
  Mat f2(3, 1);
  f2 << 0, 1, 0;
  CHECK(cosine(e, Subspace(3, 1, f2)) == doctest::Approx(0.0));
  // Lines at 60 degrees; oracle: project a unit segment and measure it.
  Mat f3(3, 1);
  f3 << 0.5, std::sqrt(3.0) / 2.0, 0;
  Subspace f(3, 1, f3);
  CHECK(cosine(e, f) == doctest::Approx(0.5).epsilon(1e-12));
  Polytope segment(3, {Vec(Vec::Zero(3)), e.frame.col(0)});
  CHECK(project_volume(segment, f) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cosine(e, f) == doctest::Approx(cosine(f, e)).epsilon(1e-12));

  GrassmannSample s = sample_grassmann(3, 2, 2, 1);
  CHECK_THROWS_AS(cosine(e, s.subspaces[0]), InputError);
}

TEST_CASE("cosine transform of the constant matches the brute-force mean") {
  // Oracle: E|cos| between uniform lines in R^3 by direct MC.
  RngStream rng(41);
  const int m = 60000;
  std::vector<double> vals(m);
  double mean = 0.0;
  for (int k = 0; k < m; ++k) {
    Vec a = rng.unit_vector(3), b = rng.unit_vector(3);
    vals[k] = std::abs(a.dot(b));
    mean += vals[k];
  }
  mean /= m;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  double se_oracle = std::sqrt(var / (m - 1) / m);

  GrassmannSample s = sample_grassmann(3, 1, 20000, 2);
  GrassmannFunction one{3, 1, [](const Subspace&) { return 1.0; }};
  GrassmannFunction c1 = cosine_transform(one, s);
  RngStream rng2(43);
  for (int t = 0; t < 4; ++t) {
    Subspace f = random_subspace(3, 1, rng2);
    CHECK(std::abs(c1(f) - mean) < 3.0 * (se_oracle + 0.5 / std::sqrt(20000.0)));
  }
}

TEST_CASE("cosine transform is self-adjoint") {
  // <C_1 f, g> = <f, C_1 g> over independent uniform samples.
  const int m = 8000;
  GrassmannSample sa = sample_grassmann(3, 1, m, 7);
  GrassmannSample sb = sample_grassmann(3, 1, m, 8);
  Subspace ref = base_subspace(3, 1);
  auto ffun = [&](const Subspace& e) { return cosine(e, ref); };
  auto gfun = [](const Subspace& e) {
    double c = e.frame.col(0)(2);
    return c * c;
  };
  GrassmannFunction f{3, 1, ffun}, g{3, 1, gfun};
  GrassmannFunction cf = cosine_transform(f, sa);
  GrassmannFunction cg = cosine_transform(g, sb);
  std::vector<double> lhs_terms(m), rhs_terms(m);
  for (int k = 0; k < m; ++k) {
    lhs_terms[k] = cf(sb.subspaces[k]) * gfun(sb.subspaces[k]);
    rhs_terms[k] = cg(sa.subspaces[k]) * ffun(sa.subspaces[k]);
  }
  double lhs = pairwise_sum(lhs_terms) / m;
  double rhs = pairwise_sum(rhs_terms) / m;
  auto se_of = [](const std::vector<double>& xs, double mean) {
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / (xs.size() - 1) / xs.size());
  };
  double tol = 3.0 * (se_of(lhs_terms, lhs) + se_of(rhs_terms, rhs));
  CHECK(std::abs(lhs - rhs) < tol);
}

TEST_CASE("cosine transform rotation equivariance") {
  GrassmannSample s = sample_grassmann(3, 2, 12000, 11);
  Subspace ref = base_subspace(3, 2);
  GrassmannFunction f{3, 2, [&](const Subspace& e) { return std::pow(cosine(e, ref), 2.0); }};
  RngStream rng(5);
  Mat q = random_rotation(3, rng);
  GrassmannFunction cf = cosine_transform(f, s);
  GrassmannFunction frot{3, 2, [&](const Subspace& e) { return f(e.rotated(Mat(q.transpose()))); }};
  GrassmannFunction cfrot = cosine_transform(frot, s);
  for (int t = 0; t < 4; ++t) {
    Subspace e = random_subspace(3, 2, rng);
    CHECK(cfrot(e) == doctest::Approx(cf(e.rotated(Mat(q.transpose())))).epsilon(0.05));
  }
}

TEST_CASE("radon transform of a constant is the constant") {
  GrassmannFunction c{3, 2, [](const Subspace&) { return 4.25; }};
  RngStream rng(3);
  for (int t = 0; t < 4; ++t) {
    Vec u = rng.unit_vector(3);
    CHECK(radon_at(c, 2, u, 64, 12345) == doctest::Approx(4.25).epsilon(1e-12));
  }
  CHECK_THROWS_AS(radon_at(c, 0, rng.unit_vector(3), 8, 1), InputError);
}

TEST_CASE("radon transform is linear in the function") {
  Polytope k1 = random_polytope(3, 10, 61);
  Polytope k2 = random_polytope(3, 10, 62);
  GrassmannFunction f1{3, 2, [&](const Subspace& e) { return project_volume(k1, e); }};
  GrassmannFunction f2{3, 2, [&](const Subspace& e) { return project_volume(k2, e); }};
  GrassmannFunction combo{3, 2, [&](const Subspace& e) { return 2.0 * f1(e) - 0.5 * f2(e); }};
  Vec u = pole(3);
  const std::uint64_t seed = 999;
  double a = radon_at(combo, 2, u, 256, seed);
  double b = 2.0 * radon_at(f1, 2, u, 256, seed) - 0.5 * radon_at(f2, 2, u, 256, seed);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("radon transform agrees with the lifted group convolution") {
  Polytope k = random_polytope(3, 14, 31);
  GrassmannFunction f{3, 2, [&](const Subspace& e) { return project_volume(k, e); }};
  RngStream rng(9);
  for (int t = 0; t < 3; ++t) {
    Vec u = rng.unit_vector(3);
    double a = radon_at(f, 2, u, 1024, derive_seed(77, t));
    double b = lifted_radon_convolution_at(f, u, 4096, derive_seed(78, t));
    CHECK(a == doctest::Approx(b).epsilon(0.05));
  }
}

TEST_CASE("projection body two-route identity via the radon transform") {
  // h(Pi_i K, .) = (kappa_{n-1}/kappa_i) R_{n-i} vol_i^perp(K | .), n = 3.
  Polytope k = cube3(0, 1);
  RngStream rng(13);
  for (int i : {1, 2}) {
    GrassmannFunction volp{3, 3 - i, [&](const Subspace& e) { return project_volume(k, perp(e)); }};
    const double c = unit_ball_volume(2) / unit_ball_volume(i);
    for (int t = 0; t < 4; ++t) {
      Vec u = rng.unit_vector(3);
      double lhs = c * radon_at(volp, 3 - i, u, 2048, derive_seed(101, i, t));
      double rhs = projection_body_i_support(k, i, u);
      CHECK(lhs == doctest::Approx(rhs).epsilon(0.03));
    }
  }
}

TEST_CASE("perp is an involution matching cosine") {
  RngStream rng(19);
  for (int t = 0; t < 16; ++t) {
    Subspace e = random_subspace(4, 2, rng);
    CHECK(cosine(e, perp(perp(e))) == doctest::Approx(1.0).epsilon(1e-10));
  }
  Subspace line = base_subspace(3, 1);
  Subspace p = perp(line);
  CHECK(p.i == 2);
  CHECK(p.frame.col(0).dot(line.frame.col(0)) == doctest::Approx(0.0).epsilon(1e-12));

  for (int t = 0; t < 16; ++t) {
    Subspace e = random_subspace(4, 2, rng);
    Subspace f = random_subspace(4, 2, rng);
    CHECK(cosine(e, f) == doctest::Approx(cosine(perp(e), perp(f))).epsilon(1e-10));
  }
}

TEST_CASE("rotation_mapping_pole maps the pole and honors stabilizer seeds") {
  RngStream rng(29);
  for (int t = 0; t < 16; ++t) {
    Vec u = rng.unit_vector(3);
    Mat eta = rotation_mapping_pole(u, 100 + t);
    CHECK((eta * pole(3) - u).norm() < 1e-12);
    Mat eta2 = rotation_mapping_pole(u, 200 + t);
    CHECK((eta2 * pole(3) - u).norm() < 1e-12);
    CHECK((eta - eta2).norm() > 1e-6);  // different stabilizer parts
    CHECK((eta * eta.transpose() - Mat::Identity(3, 3)).norm() < 1e-12);
  }
}

TEST_CASE("hat identity for O(i) x O(n-i) invariant functions") {
  // f built from the principal angles to the base subspace satisfies
  // f(theta E_base) = f(theta^{-1} E_base).
  for (auto [n, i] : {std::pair{3, 1}, {3, 2}, {4, 2}}) {
    Subspace base = base_subspace(n, i);
    auto f = [&](const Subspace& e) {
      Mat m = base.frame.transpose() * e.frame;
      Eigen::JacobiSVD<Mat> svd(m);
      double s = 0.0;
      for (int k = 0; k < svd.singularValues().size(); ++k)
        s += std::pow(svd.singularValues()(k), 2.0) + 0.3 * std::pow(svd.singularValues()(k), 4.0);
      return s;
    };
    RngStream rng(31 + n * 10 + i);
    for (int t = 0; t < 1000; ++t) {
      Mat q = random_rotation(n, rng);
      double a = f(base.rotated(q));
      double b = f(base.rotated(Mat(q.transpose())));
      CHECK(std::abs(a - b) < 1e-9);
    }
  }
}

TEST_CASE("hat anti-homomorphism on atomic rotation measures") {
  // <hat(mu * sigma), f> = <hat(sigma) * hat(mu), f> exactly for atomic
  // measures on the group.
  RotationSample mu = sample_rotations(3, 24, 3);
  RotationSample sigma = sample_rotations(3, 18, 4);
  Mat a = Mat::Random(3, 3);
  auto f = [&](const Mat& r) { return (a * r).trace() + r(0, 0) * r(1, 2); };
  auto fhat = [&](const Mat& r) { return f(Mat(r.transpose())); };
  double lhs = pair_convolution(mu, sigma, fhat);  // <mu*sigma, hat f> = <hat(mu*sigma), f>
  double rhs = pair_convolution(hat(sigma), hat(mu), f);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("subspace canonicalization is stable under frame changes") {
  RngStream rng(37);
  for (int t = 0; t < 16; ++t) {
    Subspace e = random_subspace(4, 2, rng);
    Mat r(2, 2);
    double ang = rng.uniform(0, 2 * M_PI);
    r << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
    Subspace e2(4, 2, Mat(e.frame * r));
    Subspace c1 = canonicalize(e);
    Subspace c2 = canonicalize(e2);
    CHECK((c1.frame - c2.frame).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("grassmann sample JSON round trip") {
  GrassmannSample s = sample_grassmann(4, 2, 12, 5);
  Json j = grassmann_to_json(s);
  GrassmannSample s2 = grassmann_from_json(Json::parse(j.dump()));
  REQUIRE(s2.subspaces.size() == s.subspaces.size());
  for (std::size_t k = 0; k < s.subspaces.size(); ++k)
    CHECK(cosine(s.subspaces[k], s2.subspaces[k]) == doctest::Approx(1.0).epsilon(1e-9));
}
