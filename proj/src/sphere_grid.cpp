#include "minkval/sphere_grid.hpp"

#include "minkval/hull.hpp"
#include "minkval/rng.hpp"

#include <array>
#include <cmath>

namespace minkval {

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

SphereGrid::SphereGrid(int n, std::vector<Vec> nodes) : n_(n), nodes_(std::move(nodes)) {
  if (n_ != 3 && n_ != 4) throw InputError("SphereGrid: unsupported dimension (n must be 3 or 4)");
  if (nodes_.empty()) throw InputError("SphereGrid: empty node set");
  std::string sig;
  sig.reserve(nodes_.size() * n_ * sizeof(double) + 8);
  for (const auto& u : nodes_) {
    if (u.size() != n_) throw InputError("SphereGrid: node dimension mismatch");
    if (std::abs(u.norm() - 1.0) > 1e-12) throw InputError("SphereGrid: node is not a unit vector");
    for (int c = 0; c < n_; ++c) sig.append(reinterpret_cast<const char*>(&u(c)), sizeof(double));
  }
  content_id_ = fnv1a64(sig);
}

double SphereGrid::integrate(std::span<const double> values) const {
  if (values.size() != nodes_.size()) throw InputError("SphereGrid::integrate: value count mismatch");
  return pairwise_sum(values) / static_cast<double>(nodes_.size());
}

int SphereGrid::nearest_node(const Vec& u) const {
  int best = 0;
  double best_dot = nodes_[0].dot(u);
  for (int k = 1; k < size(); ++k) {
    double d = nodes_[k].dot(u);
    if (d > best_dot) {
      best_dot = d;
      best = k;
    }
  }
  return best;
}

void SphereGrid::ensure_triangulation() const {
  std::call_once(tri_once_, [this] {
    ConvexHull hull(nodes_, 3);
    triangles_.reserve(hull.facets().size());
    node_triangles_.assign(nodes_.size(), {});
    for (const auto& f : hull.facets()) {
      std::array<int, 3> t = {f.vertices[0], f.vertices[1], f.vertices[2]};
      int id = static_cast<int>(triangles_.size());
      triangles_.push_back(t);
      for (int v : t) node_triangles_[v].push_back(id);
    }
  });
}

int SphereGrid::locate_triangle(const Vec& u, Vec& bary) const {
  ensure_triangulation();
  auto try_triangle = [&](int t) {
    Eigen::Matrix3d m;
    for (int c = 0; c < 3; ++c) m.col(c) = nodes_[triangles_[t][c]];
    Eigen::Vector3d a = m.fullPivLu().solve(u);
    if (a.minCoeff() >= -1e-9) {
      bary = a;
      return true;
    }
    return false;
  };
  const int v0 = nearest_node(u);
  for (int t : node_triangles_[v0])
    if (try_triangle(t)) return t;
  // Second ring: triangles incident to the first ring's vertices.
  for (int t : node_triangles_[v0]) {
    for (int v : triangles_[t]) {
      for (int t2 : node_triangles_[v])
        if (try_triangle(t2)) return t2;
    }
  }
  for (int t = 0; t < static_cast<int>(triangles_.size()); ++t)
    if (try_triangle(t)) return t;
  throw std::runtime_error("SphereGrid: interpolation point not located (degenerate grid?)");
}

double SphereGrid::interpolate(std::span<const double> values, const Vec& u) const {
  if (values.size() != nodes_.size()) throw InputError("SphereGrid::interpolate: value count mismatch");
  require_unit(u, 1e-9, "interpolation direction");
  if (n_ == 3) {
    Vec bary;
    int t = locate_triangle(u, bary);
    const auto& tri = triangles_[t];
    return bary(0) * values[tri[0]] + bary(1) * values[tri[1]] + bary(2) * values[tri[2]];
  }
  // n = 4: inverse-angle weighted average over the 8 nearest nodes.
  constexpr int kNeighbors = 8;
  std::array<int, kNeighbors> ids{};
  std::array<double, kNeighbors> dots{};
  ids.fill(-1);
  dots.fill(-2.0);
  for (int k = 0; k < size(); ++k) {
    double d = nodes_[k].dot(u);
    int worst = 0;
    for (int j = 1; j < kNeighbors; ++j)
      if (dots[j] < dots[worst]) worst = j;
    if (d > dots[worst]) {
      dots[worst] = d;
      ids[worst] = k;
    }
  }
  double wsum = 0.0, vsum = 0.0;
  for (int j = 0; j < kNeighbors; ++j) {
    double ang = std::acos(std::clamp(dots[j], -1.0, 1.0));
    if (ang < 1e-12) return values[ids[j]];
    double w = 1.0 / ang;
    wsum += w;
    vsum += w * values[ids[j]];
  }
  return vsum / wsum;
}

namespace {

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

Vec node3_from_cylinder(double z, double phi) {
  double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  Vec u(3);
  u << rho * std::cos(phi), rho * std::sin(phi), z;
  return u / u.norm();
}

// Uniform point on S^3 from three uniform variates (double polar form).
Vec node4_from_cube(double t, double a, double b) {
  double alpha = 2.0 * M_PI * a;
  double beta = 2.0 * M_PI * b;
  double r1 = std::sqrt(std::max(0.0, 1.0 - t));
  double r2 = std::sqrt(std::max(0.0, t));
  Vec u(4);
  u << r1 * std::cos(alpha), r1 * std::sin(alpha), r2 * std::cos(beta), r2 * std::sin(beta);
  return u / u.norm();
}

}  // namespace

SphereGridPtr build_sphere_grid(int n, int node_count, GridKind kind, std::uint64_t seed) {
  if (n != 3 && n != 4) throw InputError("build_sphere_grid: unsupported dimension (n must be 3 or 4)");
  if (node_count < 100) throw InputError("build_sphere_grid: node_count must be >= 100");

  std::vector<Vec> nodes;
  nodes.reserve(node_count);
  RngStream rng(derive_seed(seed, 0x5f4e6f64u));

  switch (kind) {
    case GridKind::fibonacci: {
      if (n == 3) {
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < node_count; ++k) {
          double z = 1.0 - (2.0 * k + 1.0) / node_count;
          nodes.push_back(node3_from_cylinder(z, golden * k));
        }
      } else {
        // R2-style lattice in the double polar parametrization.
        const double rho = 1.2207440846057595;  // plastic number cube root solution
        const double a1 = 1.0 / rho, a2 = 1.0 / (rho * rho);
        for (int k = 0; k < node_count; ++k) {
          double t = (k + 0.5) / node_count;
          double a = std::fmod(0.5 + a1 * (k + 1), 1.0);
          double b = std::fmod(0.5 + a2 * (k + 1), 1.0);
          nodes.push_back(node4_from_cube(t, a, b));
        }
      }
      break;
    }
    case GridKind::quasi_random: {
      for (int k = 0; k < node_count; ++k) {
        if (n == 3) {
          double z = 2.0 * halton(k + 1, 2) - 1.0;
          nodes.push_back(node3_from_cylinder(z, 2.0 * M_PI * halton(k + 1, 3)));
        } else {
          nodes.push_back(node4_from_cube(halton(k + 1, 2), halton(k + 1, 3), halton(k + 1, 5)));
        }
      }
      break;
    }
    case GridKind::monte_carlo: {
      for (int k = 0; k < node_count; ++k) nodes.push_back(rng.unit_vector(n));
      break;
    }
  }
  return std::make_shared<SphereGrid>(n, std::move(nodes));
}

GridKind grid_kind_from_string(const std::string& s) {
  if (s == "fibonacci") return GridKind::fibonacci;
  if (s == "quasi_random") return GridKind::quasi_random;
  if (s == "monte_carlo") return GridKind::monte_carlo;
  throw InputError("unknown grid kind: " + s);
}

std::string to_string(GridKind k) {
  switch (k) {
    case GridKind::fibonacci: return "fibonacci";
    case GridKind::quasi_random: return "quasi_random";
    case GridKind::monte_carlo: return "monte_carlo";
  }
  return "?";
}

SphericalFunction::SphericalFunction(SphereGridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw InputError("SphericalFunction: null grid");
  if (static_cast<int>(values.size()) != grid->size())
    throw InputError("SphericalFunction: value count mismatch");
  for (double x : values)
    if (!std::isfinite(x)) throw InputError("SphericalFunction: non-finite value");
}

double pair(const SphericalFunction& f, const SphericalFunction& g) {
  if (!f.grid || !g.grid) throw InputError("pair: missing grid");
  if (f.grid->content_id() != g.grid->content_id()) throw InputError("pair: grid mismatch");
  std::vector<double> prod(f.values.size());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = f.values[k] * g.values[k];
  return f.grid->integrate(prod);
}

}  // namespace minkval
