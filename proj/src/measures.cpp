#include "minkval/measures.hpp"

#include "minkval/hull.hpp"
#include "minkval/rng.hpp"
#include "minkval/sphere_grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace minkval {

double AtomicMeasure::total_mass() const {
  std::vector<double> w(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) w[k] = atoms[k].weight;
  return pairwise_sum(w);
}

double AtomicMeasure::total_variation() const {
  double s = 0.0;
  for (const auto& a : atoms) s += std::abs(a.weight);
  return s;
}

AtomicMeasure surface_area_measure(const Polytope& p) {
  ConvexHull hull(p.vertices, p.n);
  if (hull.hull_dim() < p.n) throw DegenerateBodyError("surface_area_measure: body is lower-dimensional");
  AtomicMeasure m;
  m.n = p.n;
  m.label = "S_" + std::to_string(p.n - 1);
  for (const auto& f : hull.merged_facets()) m.atoms.push_back({f.normal, f.area});
  return m;
}

namespace {

// Geodesic arc from a to b sampled at m midpoints (slerp).
void append_arc_atoms(AtomicMeasure& out, const Vec& a, const Vec& b, double face_weight, int m) {
  double cosang = std::clamp(a.dot(b), -1.0, 1.0);
  double ang = std::acos(cosang);
  if (ang < 1e-12) {
    out.atoms.push_back({a, face_weight * ang});
    return;
  }
  for (int k = 0; k < m; ++k) {
    double s = (k + 0.5) / m;
    Vec u = (std::sin((1.0 - s) * ang) * a + std::sin(s * ang) * b) / std::sin(ang);
    out.atoms.push_back({u / u.norm(), face_weight * ang / m});
  }
}

}  // namespace

AtomicMeasure area_measure(const Polytope& p, int i, std::uint64_t seed) {
  const int n = p.n;
  if (i < 0 || i > n - 1) throw InputError("area_measure: need 0 <= i <= n-1");
  if (i == n - 1) {
    auto m = surface_area_measure(p);
    m.label = "S_" + std::to_string(i);
    return m;
  }
  ConvexHull hull(p.vertices, n);
  if (hull.hull_dim() < n) throw DegenerateBodyError("area_measure: body is lower-dimensional");
  FaceLattice lattice(hull);
  const auto& mf = hull.merged_facets();
  const auto& hull_vertices = hull.vertex_ids();

  AtomicMeasure out;
  out.n = n;
  out.label = "S_" + std::to_string(i);
  const double norm = binomial(n - 1, i);

  const auto& faces = lattice.faces(i);
  for (std::size_t fid = 0; fid < faces.size(); ++fid) {
    const auto& face = faces[fid];
    if (i == n - 2) {
      // The normal region of an (n-2)-face is the geodesic arc between the
      // normals of its two facets.
      if (face.facet_ids.size() != 2) continue;  // collinear-merge artifacts
      const Vec& na = mf[face.facet_ids[0]].normal;
      const Vec& nb = mf[face.facet_ids[1]].normal;
      append_arc_atoms(out, na, nb, face.volume / norm, 32);
      continue;
    }
    // Rejection sampling on the unit sphere of the face's normal space.
    const int cdim = n - face.dim;
    Mat cbasis;
    if (face.dim == 0) {
      cbasis = Mat::Identity(n, n);
    } else {
      Eigen::HouseholderQR<Mat> qr(face.span);
      Mat q = qr.householderQ() * Mat::Identity(n, n);
      cbasis = q.rightCols(cdim);
    }
    RngStream rng(derive_seed(seed, 0x436f6e65u, fid));
    const int tried = 8192;
    std::vector<Vec> accepted;
    double scale = 1.0;
    for (const auto& v : p.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;
    for (int t = 0; t < tried; ++t) {
      Vec u = cbasis * rng.unit_vector(cdim);
      double h = -std::numeric_limits<double>::infinity();
      for (int vid : hull_vertices) h = std::max(h, u.dot(hull.points()[vid]));
      std::vector<int> support;
      for (int vid : hull_vertices)
        if (u.dot(hull.points()[vid]) >= h - tol) support.push_back(vid);
      if (support == face.vertices) accepted.push_back(u);
    }
    if (accepted.empty()) continue;
    const double region = unit_sphere_area(cdim) * static_cast<double>(accepted.size()) / tried;
    // Thin very dense acceptance sets, keeping the total weight.
    const std::size_t keep = std::min<std::size_t>(accepted.size(), 256);
    const double w_atom = face.volume * region / (norm * static_cast<double>(keep));
    for (std::size_t k = 0; k < keep; ++k) {
      std::size_t idx = (k * accepted.size()) / keep;
      out.atoms.push_back({accepted[idx], w_atom});
    }
  }
  return out;
}

AtomicMeasure even_area_measure(const Polytope& p, int i, std::uint64_t seed) {
  AtomicMeasure a = area_measure(p, i, seed);
  AtomicMeasure b = area_measure(reflect(p), i, derive_seed(seed, 0x4576656eu));
  AtomicMeasure out;
  out.n = p.n;
  out.label = "s_" + std::to_string(i);
  out.atoms.reserve(a.atoms.size() + b.atoms.size());
  for (auto& at : a.atoms) out.atoms.push_back({at.dir, 0.5 * at.weight});
  for (auto& at : b.atoms) out.atoms.push_back({at.dir, 0.5 * at.weight});
  return out;
}

double mixed_quermass_pair(const AtomicMeasure& s_i, const std::function<double(const Vec&)>& h_l) {
  std::vector<double> terms(s_i.atoms.size());
  for (std::size_t k = 0; k < s_i.atoms.size(); ++k)
    terms[k] = s_i.atoms[k].weight * h_l(s_i.atoms[k].dir);
  return pairwise_sum(terms) / s_i.n;
}

double mixed_quermass_pair(const AtomicMeasure& s_i, const BodyHandle& l) {
  return mixed_quermass_pair(s_i, [&l](const Vec& u) { return support_eval(l, u); });
}

double mixed_quermass_pair(const Polytope& k, const BodyHandle& l, int i) {
  if (i < 1 || i > k.n - 1) throw InputError("mixed_quermass_pair: need 1 <= i <= n-1");
  return mixed_quermass_pair(area_measure(k, i), l);
}

const Polytope& ball_polytope(int n, int vertex_count) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Polytope> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, vertex_count);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<Vec> verts;
  verts.reserve(vertex_count);
  if (n == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < vertex_count; ++k) {
      double z = 1.0 - (2.0 * k + 1.0) / vertex_count;
      double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec u(3);
      u << rho * std::cos(golden * k), rho * std::sin(golden * k), z;
      verts.push_back(u / u.norm());
    }
  } else if (n == 4) {
    auto halton = [](std::uint64_t index, std::uint64_t base) {
      double f = 1.0, r = 0.0;
      while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
      }
      return r;
    };
    for (int k = 0; k < vertex_count; ++k) {
      double t = halton(k + 1, 2);
      double alpha = 2.0 * M_PI * halton(k + 1, 3);
      double beta = 2.0 * M_PI * halton(k + 1, 5);
      double r1 = std::sqrt(1.0 - t), r2 = std::sqrt(t);
      Vec u(4);
      u << r1 * std::cos(alpha), r1 * std::sin(alpha), r2 * std::cos(beta), r2 * std::sin(beta);
      verts.push_back(u / u.norm());
    }
  } else {
    throw InputError("ball_polytope: n must be 3 or 4");
  }
  return cache.emplace(key, Polytope(n, std::move(verts))).first->second;
}

double ball_polytope_deficit(int n, int vertex_count) {
  const Polytope& b = ball_polytope(n, vertex_count);
  RngStream rng(0xdef1c17u);
  double worst = 0.0;
  for (int k = 0; k < 4000; ++k) {
    Vec u = rng.unit_vector(n);
    worst = std::max(worst, 1.0 - support_eval(b, u));
  }
  return worst;
}

namespace {

int default_ball_vertices(int n) { return n == 3 ? 2400 : 900; }

std::vector<double> default_epsilons(int n) {
  if (n == 3) return {0.2, 0.45, 0.7, 0.95, 1.2, 1.45};
  return {0.2, 0.45, 0.7, 0.95, 1.2, 1.45, 1.7};
}

}  // namespace

QuermassVector quermass_steiner_fit(const Polytope& k, const std::vector<double>& epsilons,
                                    int ball_vertices) {
  const int n = k.n;
  if (static_cast<int>(epsilons.size()) < n + 1)
    throw InputError("quermass_steiner_fit: need at least n+1 epsilons");
  for (double e : epsilons)
    if (!(e > 0.0)) throw InputError("quermass_steiner_fit: epsilons must be positive");
  {
    auto sorted = epsilons;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j < sorted.size(); ++j)
      if (sorted[j] - sorted[j - 1] < 1e-12) throw InputError("quermass_steiner_fit: epsilons must be distinct");
  }
  if (ball_vertices <= 0) ball_vertices = default_ball_vertices(n);
  const Polytope& bp = ball_polytope(n, ball_vertices);

  const int rows = static_cast<int>(epsilons.size());
  Mat a(rows, n + 1);
  Vec rhs(rows);
  for (int r = 0; r < rows; ++r) {
    const double eps = epsilons[r];
    std::vector<Vec> pts;
    pts.reserve(k.vertices.size() * bp.vertices.size());
    for (const auto& v : k.vertices)
      for (const auto& b : bp.vertices) pts.push_back(v + eps * b);
    rhs(r) = hull_volume(pts, n);
    for (int i = 0; i <= n; ++i) a(r, i) = binomial(n, i) * std::pow(eps, i);
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double cond = svd.singularValues()(0) / svd.singularValues()(n);
  if (!(cond < 1e8)) throw ConditioningError("quermass_steiner_fit: ill-conditioned fit");
  Vec w = svd.solve(rhs);

  QuermassVector q;
  q.n = n;
  q.provenance = "steiner_fit";
  q.w.assign(w.data(), w.data() + n + 1);
  return q;
}

QuermassVector quermass_steiner_fit(const Polytope& k) {
  return quermass_steiner_fit(k, default_epsilons(k.n), 0);
}

Estimate quermass_kubota(const Polytope& k, int i, const GrassmannSample& sample) {
  if (i < 1 || i > k.n - 1) throw InputError("quermass_kubota: need 1 <= i <= n-1");
  if (sample.i != i || sample.n != k.n) throw InputError("quermass_kubota: sample shape mismatch");
  const double c = unit_ball_volume(k.n) / unit_ball_volume(i);
  const std::size_t m = sample.subspaces.size();
  std::vector<double> vals(m);
  for (std::size_t j = 0; j < m; ++j) vals[j] = project_volume(k, sample.subspaces[j]);
  double mean = pairwise_sum(vals) / static_cast<double>(m);
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= (m > 1 ? (m - 1) : 1);
  Estimate e;
  e.value = c * mean;
  e.se = c * std::sqrt(var / static_cast<double>(m));
  return e;
}

double intrinsic_volume(const QuermassVector& q, int i) {
  if (i < 0 || i > q.n) throw InputError("intrinsic_volume: index out of range");
  return binomial(q.n, i) * q.w[q.n - i] / unit_ball_volume(q.n - i);
}

double intrinsic_volume_exact(const std::vector<Vec>& points, int d, int j) {
  if (j < 0 || j > d) throw InputError("intrinsic_volume_exact: need 0 <= j <= d");
  if (j == 0) return 1.0;
  if (points.empty()) return 0.0;
  if (d == 1) {
    double lo = points[0](0), hi = points[0](0);
    for (const auto& p : points) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    return hi - lo;
  }
  if (d == 2) {
    Chain2D ch = chain_hull_2d(points);
    return (j == 2) ? ch.area : ch.perimeter / 2.0;
  }
  ConvexHull hull(points, d);
  const int r = hull.hull_dim();
  if (r < d) {
    if (j > r) return 0.0;
    // Reduce to the affine hull.
    Vec base = points[0];
    Mat diffs(d, static_cast<int>(points.size()) - 1);
    for (std::size_t k = 1; k < points.size(); ++k) diffs.col(k - 1) = points[k] - base;
    Eigen::ColPivHouseholderQR<Mat> qr(diffs);
    qr.setThreshold(1e-9);
    Mat q = qr.householderQ() * Mat::Identity(d, r);
    std::vector<Vec> local;
    local.reserve(points.size());
    for (const auto& p : points) local.push_back(q.transpose() * (p - base));
    return intrinsic_volume_exact(local, r, j);
  }
  if (j == d) return hull.volume();
  if (d == 2 && j == 1) {
    double per = 0.0;
    for (const auto& f : hull.merged_facets()) per += f.area;
    return per / 2.0;
  }
  if (d == 3 && j == 2) {
    double area = 0.0;
    for (const auto& f : hull.merged_facets()) area += f.area;
    return area / 2.0;
  }
  if (d == 3 && j == 1) {
    FaceLattice lattice(hull);
    const auto& mf = hull.merged_facets();
    double s = 0.0;
    for (const auto& edge : lattice.faces(1)) {
      if (edge.facet_ids.size() != 2) continue;
      double c = std::clamp(mf[edge.facet_ids[0]].normal.dot(mf[edge.facet_ids[1]].normal), -1.0, 1.0);
      s += edge.volume * std::acos(c);
    }
    return s / (2.0 * M_PI);
  }
  throw InputError("intrinsic_volume_exact: unsupported (d, j) combination");
}

double intrinsic_volume(const Polytope& k, int i) {
  if (i == 0) return 1.0;
  if (k.n <= 3) return intrinsic_volume_exact(k.vertices, k.n, i);
  if (i == k.n) return polytope_volume(k);
  ConvexHull hull(k.vertices, k.n);
  if (hull.hull_dim() < k.n) {
    // Intrinsic volumes do not depend on the ambient space.
    Vec base = k.vertices[0];
    Mat diffs(k.n, static_cast<int>(k.vertices.size()) - 1);
    for (std::size_t j = 1; j < k.vertices.size(); ++j) diffs.col(j - 1) = k.vertices[j] - base;
    Eigen::ColPivHouseholderQR<Mat> qr(diffs);
    qr.setThreshold(1e-9);
    const int r = qr.rank();
    if (i > r) return 0.0;
    Mat q = qr.householderQ() * Mat::Identity(k.n, r);
    std::vector<Vec> local;
    for (const auto& p : k.vertices) local.push_back(q.transpose() * (p - base));
    return intrinsic_volume_exact(local, r, i);
  }
  return intrinsic_volume(quermass_steiner_fit(k), i);
}

MixedVolumeFit mixed_volume_fit(const Polytope& k, const Polytope& l) {
  if (k.n != l.n) throw InputError("mixed_volume_fit: dimension mismatch");
  const int n = k.n;
  std::vector<double> lam, mu;
  for (int t = 0; t <= n; ++t) {
    lam.push_back(0.25 + 0.4 * t);
    mu.push_back(0.25 + 0.4 * t);
  }
  const int rows = static_cast<int>(lam.size() * mu.size());
  Mat a(rows, n + 1);
  Vec rhs(rows);
  int r = 0;
  for (double la : lam) {
    for (double m : mu) {
      std::vector<Vec> pts;
      pts.reserve(k.vertices.size() * l.vertices.size());
      for (const auto& vk : k.vertices)
        for (const auto& vl : l.vertices) pts.push_back(la * vk + m * vl);
      rhs(r) = hull_volume(pts, n);
      for (int c = 0; c <= n; ++c) a(r, c) = binomial(n, c) * std::pow(la, c) * std::pow(m, n - c);
      ++r;
    }
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vec coef = svd.solve(rhs);
  MixedVolumeFit fit;
  fit.coeffs.assign(coef.data(), coef.data() + n + 1);
  double worst = 0.0;
  Vec pred = a * coef;
  for (int j = 0; j < rows; ++j) worst = std::max(worst, std::abs(pred(j) - rhs(j)) / std::max(1e-300, std::abs(rhs(j))));
  fit.residual_rel = worst;
  return fit;
}

double convolve_atoms_profile(const AtomicMeasure& mu, const std::function<double(double)>& gamma,
                              const Vec& u) {
  std::vector<double> terms(mu.atoms.size());
  for (std::size_t k = 0; k < mu.atoms.size(); ++k)
    terms[k] = mu.atoms[k].weight * gamma(std::clamp(u.dot(mu.atoms[k].dir), -1.0, 1.0));
  return pairwise_sum(terms);
}

Estimate quermass_top_from_support(const std::function<double(const Vec&)>& h, const SphereGrid& grid) {
  const int n = grid.dim();
  std::vector<double> vals(grid.size());
  for (int k = 0; k < grid.size(); ++k) vals[k] = h(grid.node(k));
  double mean = pairwise_sum(vals) / grid.size();
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= std::max(1, grid.size() - 1);
  Estimate e;
  e.value = unit_ball_volume(n) * mean;
  e.se = unit_ball_volume(n) * std::sqrt(var / grid.size());
  return e;
}

double zonotope_volume(const AtomicMeasure& s) {
  const int n = s.n;
  std::vector<Vec> g;
  g.reserve(s.atoms.size());
  for (const auto& a : s.atoms) g.push_back(0.5 * std::abs(a.weight) * a.dir);
  const int m = static_cast<int>(g.size());
  double vol = 0.0;
  if (n == 3) {
    Eigen::Matrix3d d;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c) {
          d.col(0) = g[a];
          d.col(1) = g[b];
          d.col(2) = g[c];
          vol += std::abs(d.determinant());
        }
    return 8.0 * vol;
  }
  if (n == 4) {
    Eigen::Matrix4d d;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c)
          for (int e = c + 1; e < m; ++e) {
            d.col(0) = g[a];
            d.col(1) = g[b];
            d.col(2) = g[c];
            d.col(3) = g[e];
            vol += std::abs(d.determinant());
          }
    return 16.0 * vol;
  }
  throw InputError("zonotope_volume: n must be 3 or 4");
}

std::pair<Polytope, Polytope> split_polytope(const Polytope& q, const Vec& w, double c) {
  Polytope section = slice_polytope(q, w, c);
  std::vector<Vec> below = section.vertices, above = section.vertices;
  double scale = 1.0;
  for (const auto& v : q.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  for (const auto& v : q.vertices) {
    double s = v.dot(w) - c;
    if (s <= tol) below.push_back(v);
    if (s >= -tol) above.push_back(v);
  }
  return {Polytope(q.n, std::move(below)), Polytope(q.n, std::move(above))};
}

Polytope slice_polytope(const Polytope& q, const Vec& w, double c) {
  ConvexHull hull(q.vertices, q.n);
  if (hull.hull_dim() < q.n) throw DegenerateBodyError("slice_polytope: body is lower-dimensional");
  FaceLattice lattice(hull);
  double scale = 1.0;
  for (const auto& v : q.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  std::vector<Vec> pts;
  for (const auto& edge : lattice.faces(1)) {
    const Vec& a = hull.points()[edge.vertices.front()];
    const Vec& b = hull.points()[edge.vertices.back()];
    double sa = a.dot(w) - c, sb = b.dot(w) - c;
    if (std::abs(sa) <= tol) pts.push_back(a);
    if (std::abs(sb) <= tol) pts.push_back(b);
    if ((sa < -tol && sb > tol) || (sa > tol && sb < -tol)) {
      double t = sa / (sa - sb);
      pts.push_back(a + t * (b - a));
    }
  }
  if (pts.empty()) throw InputError("slice_polytope: hyperplane misses the body");
  return Polytope(q.n, std::move(pts));
}

}  // namespace minkval
