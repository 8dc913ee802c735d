#include "minkval/operators.hpp"

#include "minkval/hull.hpp"
#include "minkval/rng.hpp"

#include <cmath>

namespace minkval {

double crofton_value(const CroftonMeasure& sigma, const Polytope& k) {
  if (sigma.ambient() != k.n) throw InputError("crofton_value: dimension mismatch");
  std::vector<double> terms(sigma.sample.subspaces.size());
  for (std::size_t j = 0; j < terms.size(); ++j)
    terms[j] = sigma.sample.weights[j] * project_volume(k, sigma.sample.subspaces[j]);
  return pairwise_sum(terms);
}

double apply_crofton_minkowski_at(const CroftonMeasure& sigma, const Polytope& k, const Vec& u,
                                  std::uint64_t seed, double* se_out) {
  if (!sigma.symmetrize)
    throw InputError("apply_crofton_minkowski: symmetrization required for well-definedness");
  const int n = k.n;
  RngStream rng(seed);
  // eta maps the pole to u; per-sample stabilizer rotations realize the
  // O(n-1) symmetrization of the measure.
  Mat eta = Mat::Identity(n, n);
  {
    Vec w = pole(n) - u;
    double wn2 = w.squaredNorm();
    if (wn2 > 1e-28) eta -= (2.0 / wn2) * (w * w.transpose());
  }
  const std::size_t m = sigma.sample.subspaces.size();
  std::vector<double> contrib(m);
  for (std::size_t j = 0; j < m; ++j) {
    Mat rho = random_pole_stabilizer(n, rng);
    Mat frame = eta * (rho * sigma.sample.subspaces[j].frame);
    Subspace e(n, sigma.degree(), std::move(frame));
    contrib[j] = sigma.sample.weights[j] * project_volume(k, e);
  }
  double value = pairwise_sum(contrib);
  if (se_out) {
    // Treat m * c_j as i.i.d. estimates of the total: se = sqrt(m * var(c)).
    double mean = value / static_cast<double>(m);
    double var = 0.0;
    for (double c : contrib) var += (c - mean) * (c - mean);
    var /= (m > 1 ? (m - 1) : 1);
    *se_out = std::sqrt(var * static_cast<double>(m));
  }
  return value;
}

NodewiseFunction apply_crofton_minkowski(const CroftonMeasure& sigma, const Polytope& k, SphereGridPtr grid,
                                         std::uint64_t seed) {
  NodewiseFunction out;
  std::vector<double> values(grid->size());
  out.se.resize(grid->size());
  for (int node = 0; node < grid->size(); ++node) {
    values[node] = apply_crofton_minkowski_at(sigma, k, grid->node(node),
                                              derive_seed(seed, 0x41434d6bu, static_cast<std::uint64_t>(node)),
                                              &out.se[node]);
  }
  out.fn = SphericalFunction(std::move(grid), std::move(values));
  return out;
}

double pi_radial_constant(int n, int i) {
  return binomial(n - 1, i) * unit_ball_volume(n - 1) / (unit_ball_volume(i) * unit_ball_volume(n - 1 - i));
}

CroftonMeasure pi_crofton_measure(int n, int i, int count, std::uint64_t seed) {
  if (i < 1 || i > n - 1) throw InputError("pi_crofton_measure: need 1 <= i <= n-1");
  CroftonMeasure sigma;
  sigma.sample.n = n;
  sigma.sample.i = i;
  sigma.symmetrize = true;
  const double c = pi_radial_constant(n, i);
  sigma.sample.weights.assign(count, c / static_cast<double>(count));
  Vec e1 = pole(n);
  for (int j = 0; j < count; ++j) {
    RngStream rng(derive_seed(seed, 0x5069437du, static_cast<std::uint64_t>(j)));
    // E = perp(span{pole} + random (n-i-1)-frame in pole^perp): an
    // i-subspace of pole^perp, uniform under the stabilizer.
    Mat blocked(n, n - i);
    blocked.col(0) = e1;
    if (n - i - 1 > 0) blocked.rightCols(n - i - 1) = random_frame_in_complement(e1, n - i - 1, rng);
    sigma.sample.subspaces.push_back(perp(Subspace(n, n - i, orthonormalize(blocked))));
  }
  return sigma;
}

double projection_body_support(const AtomicMeasure& surface, const Vec& u) {
  std::vector<double> terms(surface.atoms.size());
  for (std::size_t a = 0; a < terms.size(); ++a)
    terms[a] = surface.atoms[a].weight * std::abs(u.dot(surface.atoms[a].dir));
  return 0.5 * pairwise_sum(terms);
}

double projection_body_support(const Polytope& k, const Vec& u) {
  return projection_body_support(surface_area_measure(k), u);
}

namespace {

Mat complement_basis_of_direction(const Vec& u) {
  const int n = static_cast<int>(u.size());
  Mat h = Mat::Identity(n, n);
  Vec w = pole(n) - u;
  double wn2 = w.squaredNorm();
  if (wn2 > 1e-28) h -= (2.0 / wn2) * (w * w.transpose());
  return h.rightCols(n - 1);
}

}  // namespace

double projection_volume_direct(const Polytope& k, const Vec& u) {
  Mat basis = complement_basis_of_direction(u);
  return hull_volume(project_points(k.vertices, basis), k.n - 1);
}

double projection_body_i_support(const Polytope& k, int i, const Vec& u) {
  if (i < 1 || i > k.n - 1) throw InputError("projection_body_i: need 1 <= i <= n-1");
  Mat basis = complement_basis_of_direction(u);
  return intrinsic_volume_exact(project_points(k.vertices, basis), k.n - 1, i);
}

SupportBody projection_body(const Polytope& k, SphereGridPtr grid) {
  AtomicMeasure s = surface_area_measure(k);
  std::vector<double> values(grid->size());
  for (int j = 0; j < grid->size(); ++j) values[j] = projection_body_support(s, grid->node(j));
  return SupportBody{SphericalFunction(std::move(grid), std::move(values))};
}

SupportBody projection_body_i(const Polytope& k, int i, SphereGridPtr grid) {
  std::vector<double> values(grid->size());
  for (int j = 0; j < grid->size(); ++j) values[j] = projection_body_i_support(k, i, grid->node(j));
  return SupportBody{SphericalFunction(std::move(grid), std::move(values))};
}

Estimate projection_body_i_support_kubota(const Polytope& k, int i, const Vec& u, int inner_count,
                                          std::uint64_t seed) {
  const int n = k.n;
  if (i < 1 || i > n - 1) throw InputError("projection_body_i_support_kubota: bad degree");
  RngStream rng(seed);
  const double c = pi_radial_constant(n, i);
  std::vector<double> vals(inner_count);
  for (int t = 0; t < inner_count; ++t) {
    Mat frame = random_frame_in_complement(u, i, rng);
    vals[t] = hull_volume(project_points(k.vertices, frame), i);
  }
  double mean = pairwise_sum(vals) / inner_count;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= std::max(1, inner_count - 1);
  return {c * mean, c * std::sqrt(var / inner_count)};
}

Polytope difference_body(const Polytope& k) { return minkowski_sum(k, reflect(k)); }

Ball difference_body(const Ball& k) { return Ball(Vec(Vec::Zero(k.dim())), 2.0 * k.radius); }

Ball lambda_ball(const Polytope& k, int i) {
  if (i < 0 || i > k.n) throw InputError("lambda_ball: need 0 <= i <= n");
  return Ball(Vec(Vec::Zero(k.n)), intrinsic_volume(k, i));
}

double mean_section_even_at(const Polytope& k, int i, double c, const Vec& u, int inner_count,
                            std::uint64_t seed) {
  const int n = k.n;
  if (i < 2 || i > n - 1) throw InputError("mean_section_even: need 2 <= i <= n-1");
  const int j = n + 1 - i;
  GrassmannFunction f;
  f.n = n;
  f.i = j;
  f.eval = [&k](const Subspace& e) { return project_volume(k, e); };
  return c * radon_at(f, j, u, inner_count, seed);
}

SphericalFunction mean_section_even(const Polytope& k, int i, double c, SphereGridPtr grid, int inner_count,
                                    std::uint64_t seed) {
  std::vector<double> values(grid->size());
  for (int node = 0; node < grid->size(); ++node)
    values[node] = mean_section_even_at(k, i, c, grid->node(node), inner_count,
                                        derive_seed(seed, 0x4d536563u, static_cast<std::uint64_t>(node)));
  return SphericalFunction(std::move(grid), std::move(values));
}

RealValuation crofton_valuation(const CroftonMeasure& sigma) {
  RealValuation phi;
  phi.n = sigma.ambient();
  phi.degree = sigma.degree();
  phi.even = true;
  phi.eval = [sigma](const Polytope& k) { return crofton_value(sigma, k); };
  return phi;
}

RealValuation intrinsic_volume_valuation(int n, int i) {
  RealValuation phi;
  phi.n = n;
  phi.degree = i;
  phi.even = true;
  phi.eval = [i](const Polytope& k) { return intrinsic_volume(k, i); };
  return phi;
}

double klain_function(const RealValuation& phi, const Subspace& e, const Polytope& probe) {
  if (phi.n != e.n || probe.n != e.n) throw InputError("klain_function: dimension mismatch");
  // The probe must lie inside E.
  Mat proj = e.frame * e.frame.transpose();
  for (const auto& v : probe.vertices)
    if ((v - proj * v).norm() > 1e-8 * (1.0 + v.norm()))
      throw InputError("klain_function: probe is not contained in E");
  double vol = hull_volume(project_points(probe.vertices, e.frame), e.i);
  if (!(vol > 0.0)) throw InputError("klain_function: zero-volume probe");
  return phi(probe) / vol;
}

Polytope cube_probe(const Subspace& e) {
  std::vector<Vec> verts;
  const int i = e.i;
  verts.reserve(std::size_t{1} << i);
  for (unsigned mask = 0; mask < (1u << i); ++mask) {
    Vec x = Vec::Zero(i);
    for (int b = 0; b < i; ++b)
      if (mask & (1u << b)) x(b) = 1.0;
    verts.push_back(e.frame * x);
  }
  return Polytope(e.n, std::move(verts));
}

Polytope simplex_probe(const Subspace& e, std::uint64_t seed) {
  RngStream rng(derive_seed(seed, 0x50726f62u));
  for (;;) {
    std::vector<Vec> local = {Vec(Vec::Zero(e.i))};
    for (int k = 0; k < e.i; ++k) local.push_back(rng.gaussian_vector(e.i));
    if (e.i > 1 && hull_volume(local, e.i) < 1e-3) continue;
    std::vector<Vec> verts;
    for (const auto& x : local) verts.push_back(e.frame * x);
    return Polytope(e.n, std::move(verts));
  }
}

NodewiseFunction associated_body(const CroftonMeasure& sigma, SphereGridPtr grid, std::uint64_t seed) {
  if (!sigma.symmetrize) throw InputError("associated_body: symmetrized measure required");
  const int n = sigma.ambient();
  const int i = sigma.degree();
  Subspace e_base = base_subspace(n, i);
  NodewiseFunction out;
  std::vector<double> values(grid->size());
  out.se.resize(grid->size());
  const std::size_t m = sigma.sample.subspaces.size();
  for (int node = 0; node < grid->size(); ++node) {
    const Vec& u = grid->node(node);
    RngStream rng(derive_seed(seed, 0x41736f63u, static_cast<std::uint64_t>(node)));
    Mat theta = Mat::Identity(n, n);
    {
      Vec w = pole(n) - u;
      double wn2 = w.squaredNorm();
      if (wn2 > 1e-28) theta -= (2.0 / wn2) * (w * w.transpose());
    }
    Subspace target(n, i, theta.transpose() * e_base.frame);
    std::vector<double> contrib(m);
    for (std::size_t j = 0; j < m; ++j) {
      Mat rho = random_pole_stabilizer(n, rng);
      Subspace e(n, i, rho * sigma.sample.subspaces[j].frame);
      contrib[j] = sigma.sample.weights[j] * cosine(e, target);
    }
    values[node] = pairwise_sum(contrib);
    double mean = values[node] / static_cast<double>(m);
    double var = 0.0;
    for (double c : contrib) var += (c - mean) * (c - mean);
    var /= (m > 1 ? (m - 1) : 1);
    out.se[node] = std::sqrt(var * static_cast<double>(m));
  }
  out.fn = SphericalFunction(std::move(grid), std::move(values));
  return out;
}

double operator_support_at(const MinkowskiValuation& op, const Polytope& k, const Vec& u, std::uint64_t seed,
                           int inner_count) {
  return std::visit(
      [&](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, FromCroftonOp>) {
          return apply_crofton_minkowski_at(o.sigma, k, u, seed);
        } else if constexpr (std::is_same_v<T, ProjectionBodyOp>) {
          return projection_body_support(k, u);
        } else if constexpr (std::is_same_v<T, ProjectionBodyIOp>) {
          return projection_body_i_support(k, o.i, u);
        } else if constexpr (std::is_same_v<T, DifferenceBodyOp>) {
          return support_eval(k, u) + support_eval(k, Vec(-u));
        } else if constexpr (std::is_same_v<T, LambdaOp>) {
          return intrinsic_volume(k, o.i);
        } else {
          return mean_section_even_at(k, o.i, o.c, u, inner_count, seed);
        }
      },
      op);
}

SphericalFunction apply_operator(const MinkowskiValuation& op, const Polytope& k, SphereGridPtr grid,
                                 std::uint64_t seed, int inner_count) {
  // Cache the surface measure / intrinsic volume across nodes where the
  // operator allows it.
  if (std::holds_alternative<ProjectionBodyOp>(op)) {
    AtomicMeasure s = surface_area_measure(k);
    std::vector<double> values(grid->size());
    for (int node = 0; node < grid->size(); ++node) values[node] = projection_body_support(s, grid->node(node));
    return SphericalFunction(std::move(grid), std::move(values));
  }
  if (std::holds_alternative<LambdaOp>(op)) {
    double v = intrinsic_volume(k, std::get<LambdaOp>(op).i);
    std::vector<double> values(grid->size(), v);
    return SphericalFunction(std::move(grid), std::move(values));
  }
  std::vector<double> values(grid->size());
  for (int node = 0; node < grid->size(); ++node)
    values[node] = operator_support_at(op, k, grid->node(node),
                                       derive_seed(seed, 0x4f705375u, static_cast<std::uint64_t>(node)),
                                       inner_count);
  return SphericalFunction(std::move(grid), std::move(values));
}

}  // namespace minkval
