#include "minkval/bodies.hpp"

#include "minkval/hull.hpp"
#include "minkval/rng.hpp"

#include <cmath>

namespace minkval {

Polytope::Polytope(int n_, std::vector<Vec> vertices_) : n(n_), vertices(std::move(vertices_)) {
  if (n < 2) throw InputError("Polytope: ambient dimension must be >= 2");
  if (vertices.empty()) throw InputError("Polytope: empty vertex list");
  for (const auto& v : vertices) {
    if (v.size() != n) throw InputError("Polytope: vertex dimension mismatch");
    if (!v.allFinite()) throw InputError("Polytope: non-finite vertex");
  }
}

Polytope Polytope::translated(const Vec& x) const {
  Polytope q = *this;
  for (auto& v : q.vertices) v += x;
  return q;
}

Polytope Polytope::scaled(double lambda) const {
  if (lambda < 0.0) throw InputError("Polytope::scaled: negative factor");
  Polytope q = *this;
  for (auto& v : q.vertices) v *= lambda;
  return q;
}

Polytope Polytope::rotated(const Mat& q) const {
  Polytope out = *this;
  for (auto& v : out.vertices) v = q * v;
  return out;
}

Ball::Ball(Vec center_, double radius_) : center(std::move(center_)), radius(radius_) {
  if (radius < 0.0) throw InputError("Ball: negative radius");
  if (!center.allFinite()) throw InputError("Ball: non-finite center");
}

int body_dim(const BodyHandle& body) {
  return std::visit(
      [](const auto& b) -> int {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polytope>) return b.n;
        else if constexpr (std::is_same_v<T, Ball>) return b.dim();
        else return b.h.grid->dim();
      },
      body);
}

double support_eval(const Polytope& p, const Vec& u) {
  double best = p.vertices[0].dot(u);
  for (std::size_t k = 1; k < p.vertices.size(); ++k) best = std::max(best, p.vertices[k].dot(u));
  return best;
}

double support_eval(const BodyHandle& body, const Vec& u) {
  require_unit(u, 1e-12, "support direction");
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return support_eval(b, u);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return b.center.dot(u) + b.radius;
        } else {
          return b.h(u);
        }
      },
      body);
}

double support_extension(const BodyHandle& body, const Vec& x) {
  double nrm = x.norm();
  if (nrm < 1e-300) return 0.0;
  return nrm * support_eval(body, Vec(x / nrm));
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
  if (a.n != b.n) throw InputError("minkowski_sum: dimension mismatch");
  if (a.vertices.size() * b.vertices.size() > 4'000'000)
    throw InputError("minkowski_sum: vertex product too large");
  std::vector<Vec> verts;
  verts.reserve(a.vertices.size() * b.vertices.size());
  for (const auto& va : a.vertices)
    for (const auto& vb : b.vertices) verts.push_back(va + vb);
  return Polytope(a.n, std::move(verts));
}

BodyHandle minkowski_combine(const std::vector<BodyHandle>& bodies, const std::vector<double>& coeffs,
                             SphereGridPtr grid) {
  if (bodies.empty()) throw InputError("minkowski_combine: no bodies");
  if (bodies.size() != coeffs.size()) throw InputError("minkowski_combine: coefficient count mismatch");
  for (double c : coeffs)
    if (!(c >= 0.0)) throw InputError("minkowski_combine: negative coefficient");

  const int n = body_dim(bodies[0]);
  for (const auto& b : bodies)
    if (body_dim(b) != n) throw InputError("minkowski_combine: dimension mismatch");

  bool all_poly = true, all_ball = true;
  for (const auto& b : bodies) {
    all_poly = all_poly && std::holds_alternative<Polytope>(b);
    all_ball = all_ball && std::holds_alternative<Ball>(b);
  }

  if (all_poly) {
    std::vector<Vec> verts = {Vec::Zero(n)};
    for (std::size_t k = 0; k < bodies.size(); ++k) {
      const auto& p = std::get<Polytope>(bodies[k]);
      if (coeffs[k] == 0.0) continue;
      std::vector<Vec> next;
      if (verts.size() * p.vertices.size() > 4'000'000)
        throw InputError("minkowski_combine: vertex product too large");
      next.reserve(verts.size() * p.vertices.size());
      for (const auto& v : verts)
        for (const auto& w : p.vertices) next.push_back(v + coeffs[k] * w);
      verts = std::move(next);
    }
    return Polytope(n, std::move(verts));
  }
  if (all_ball) {
    Vec c = Vec::Zero(n);
    double r = 0.0;
    for (std::size_t k = 0; k < bodies.size(); ++k) {
      const auto& b = std::get<Ball>(bodies[k]);
      c += coeffs[k] * b.center;
      r += coeffs[k] * b.radius;
    }
    return Ball(std::move(c), r);
  }

  if (!grid) {
    for (const auto& b : bodies)
      if (std::holds_alternative<SupportBody>(b)) {
        grid = std::get<SupportBody>(b).h.grid;
        break;
      }
  }
  if (!grid) throw InputError("minkowski_combine: mixed combination requires a grid");
  std::vector<double> values(grid->size(), 0.0);
  for (int j = 0; j < grid->size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < bodies.size(); ++k)
      if (coeffs[k] != 0.0) s += coeffs[k] * support_eval(bodies[k], grid->node(j));
    values[j] = s;
  }
  return SupportBody{SphericalFunction(grid, std::move(values))};
}

Polytope reflect(const Polytope& p) {
  Polytope q = p;
  for (auto& v : q.vertices) v = -v;
  return q;
}

BodyHandle reflect(const BodyHandle& body) {
  return std::visit(
      [](const auto& b) -> BodyHandle {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return reflect(b);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Ball(Vec(-b.center), b.radius);
        } else {
          // h(-K,u) = h(K,-u), re-tabulated on the same grid.
          const auto& g = b.h.grid;
          std::vector<double> values(g->size());
          for (int k = 0; k < g->size(); ++k) values[k] = b.h(Vec(-g->node(k)));
          return SupportBody{SphericalFunction(g, std::move(values))};
        }
      },
      body);
}

std::vector<Vec> project_points(const std::vector<Vec>& vertices, const Mat& frame) {
  std::vector<Vec> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(frame.transpose() * v);
  return out;
}

double project_volume(const Polytope& body, const Subspace& e) {
  if (e.n != body.n) throw InputError("project_volume: subspace dimension mismatch");
  if (e.i < 1 || e.i > e.n - 1) throw InputError("project_volume: need 1 <= i <= n-1");
  if (e.i == 1) {
    // Width along the line: hull volume in R^1 without the hull machinery.
    double lo = body.vertices[0].dot(e.frame.col(0));
    double hi = lo;
    for (const auto& v : body.vertices) {
      double t = v.dot(e.frame.col(0));
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    return hi - lo;
  }
  return hull_volume(project_points(body.vertices, e.frame), e.i);
}

Vec steiner_point(const BodyHandle& body, const SphereGrid& grid) {
  const int n = grid.dim();
  if (body_dim(body) != n) throw InputError("steiner_point: grid dimension mismatch");
  Vec s = Vec::Zero(n);
  std::vector<double> comp(grid.size());
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < grid.size(); ++k) comp[k] = support_eval(body, grid.node(k)) * grid.node(k)(c);
    s(c) = n * grid.integrate(comp);
  }
  return s;
}

Polytope random_polytope(int n, int vertex_count, std::uint64_t seed) {
  if (vertex_count < n + 1) throw InputError("random_polytope: need at least n+1 vertices");
  for (std::uint64_t attempt = 0;; ++attempt) {
    RngStream rng(derive_seed(seed, 0x506f6c79u, attempt));
    std::vector<Vec> verts;
    verts.reserve(vertex_count);
    for (int k = 0; k < vertex_count; ++k) verts.push_back(rng.unit_vector(n));
    if (hull_volume(verts, n) > 1e-6) return Polytope(n, std::move(verts));
  }
}

SphericalFunction support_function(const BodyHandle& body, SphereGridPtr grid) {
  std::vector<double> values(grid->size());
  for (int k = 0; k < grid->size(); ++k) values[k] = support_eval(body, grid->node(k));
  return SphericalFunction(std::move(grid), std::move(values));
}

double polytope_volume(const Polytope& p) { return hull_volume(p.vertices, p.n); }

}  // namespace minkval
