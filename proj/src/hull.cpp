#include "minkval/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace minkval {

namespace {

// Determinants for the generalized cross product, templated on the
// scalar so the same code serves double and long double.
template <typename T>
T det2(T a, T b, T c, T d) {
  return a * d - b * c;
}

template <typename T>
T det3(const T m[3][3]) {
  return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
         m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
         m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

// c with c . a_k = 0 for all columns a_k of A (d x (d-1)) and
// det[A | c] = |c|^2 > 0.
Vec generalized_cross(const Mat& a) {
  const int d = static_cast<int>(a.rows());
  Vec c(d);
  if (d == 2) {
    c(0) = -a(1, 0);
    c(1) = a(0, 0);
  } else if (d == 3) {
    c(0) = a(1, 0) * a(2, 1) - a(2, 0) * a(1, 1);
    c(1) = a(2, 0) * a(0, 1) - a(0, 0) * a(2, 1);
    c(2) = a(0, 0) * a(1, 1) - a(1, 0) * a(0, 1);
  } else if (d == 4) {
    for (int i = 0; i < 4; ++i) {
      double m[3][3];
      int r = 0;
      for (int row = 0; row < 4; ++row) {
        if (row == i) continue;
        for (int col = 0; col < 3; ++col) m[r][col] = a(row, col);
        ++r;
      }
      double sign = ((i + 4) % 2 == 0) ? 1.0 : -1.0;
      c(i) = sign * det3(m);
    }
  } else {
    throw InputError("generalized_cross: dimension must be 2..4");
  }
  return c;
}

// Orientation determinant det[p1-p0, ..., pd-p0] in long double.
long double orient_ld(const std::vector<Vec>& pts, const std::vector<int>& ids, const Vec& q) {
  const int d = static_cast<int>(pts[ids[0]].size());
  long double m[4][4];
  for (int k = 1; k < d; ++k)
    for (int i = 0; i < d; ++i)
      m[k - 1][i] = static_cast<long double>(pts[ids[k]](i)) - static_cast<long double>(pts[ids[0]](i));
  for (int i = 0; i < d; ++i)
    m[d - 1][i] = static_cast<long double>(q(i)) - static_cast<long double>(pts[ids[0]](i));
  if (d == 2) return det2(m[0][0], m[0][1], m[1][0], m[1][1]);
  if (d == 3) {
    long double mm[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mm[i][j] = m[i][j];
    return det3(mm);
  }
  // d == 4: expand along the last row.
  long double det = 0.0L;
  for (int j = 0; j < 4; ++j) {
    long double mm[3][3];
    for (int r = 0; r < 3; ++r) {
      int cc = 0;
      for (int col = 0; col < 4; ++col) {
        if (col == j) continue;
        mm[r][cc++] = m[r][col];
      }
    }
    long double sign = ((3 + j) % 2 == 0) ? 1.0L : -1.0L;
    det += sign * m[3][j] * det3(mm);
  }
  return det;
}

struct WorkFacet {
  std::vector<int> vertices;   // d ids
  std::vector<int> neighbors;  // neighbor facet across ridge opposite vertices[k]
  Vec normal;                  // outward unit normal
  double offset = 0.0;
  std::vector<int> conflicts;  // candidate outside points
  bool alive = true;
};

// Pack up to 3 sorted ids (each < 2^21) into one key.
std::uint64_t ridge_key(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  std::uint64_t k = 0;
  for (int v : ids) k = (k << 21) | static_cast<std::uint64_t>(v + 1);
  return k;
}

}  // namespace

ConvexHull::ConvexHull(const std::vector<Vec>& points, int dim) : dim_(dim), points_(points) {
  if (dim < 1 || dim > 4) throw InputError("ConvexHull: dimension must be 1..4");
  for (const auto& p : points_) {
    if (p.size() != dim) throw InputError("ConvexHull: point dimension mismatch");
    if (!p.allFinite()) throw InputError("ConvexHull: non-finite point");
  }
  build();
}

void ConvexHull::build() {
  const int d = dim_;
  const int npts = static_cast<int>(points_.size());
  if (npts == 0) return;

  double scale = 1.0;
  for (const auto& p : points_) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps_rank = 1e-10 * scale;
  const double eps_vis = 1e-10 * scale;

  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < npts; ++i) {
      if (points_[i](0) < points_[lo](0)) lo = i;
      if (points_[i](0) > points_[hi](0)) hi = i;
    }
    double len = points_[hi](0) - points_[lo](0);
    if (len <= eps_rank) {
      hull_dim_ = 0;
      return;
    }
    hull_dim_ = 1;
    volume_ = len;
    vertex_ids_ = {lo, hi};
    HullFacet fl;
    fl.vertices = {lo};
    fl.normal = Vec::Constant(1, -1.0);
    fl.offset = -points_[lo](0);
    HullFacet fh;
    fh.vertices = {hi};
    fh.normal = Vec::Constant(1, 1.0);
    fh.offset = points_[hi](0);
    facets_ = {fl, fh};
    for (const auto& f : facets_) {
      MergedFacet m;
      m.vertices = f.vertices;
      m.normal = f.normal;
      m.offset = f.offset;
      m.area = 1.0;
      merged_.push_back(m);
    }
    return;
  }

  // Greedy affinely independent seed set: p0, then points maximizing the
  // residual against the span built so far.
  std::vector<int> seed;
  {
    int p0 = 0;
    for (int i = 1; i < npts; ++i) {
      for (int c = 0; c < d; ++c) {
        if (points_[i](c) < points_[p0](c) - 0.0) {
          p0 = i;
          break;
        } else if (points_[i](c) > points_[p0](c)) {
          break;
        }
      }
    }
    seed.push_back(p0);
    Mat basis(d, 0);
    while (static_cast<int>(seed.size()) < d + 1) {
      int best = -1;
      double best_res = eps_rank;
      for (int i = 0; i < npts; ++i) {
        Vec r = points_[i] - points_[seed[0]];
        if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
        double res = r.norm();
        if (res > best_res) {
          best_res = res;
          best = i;
        }
      }
      if (best < 0) break;
      Vec r = points_[best] - points_[seed[0]];
      if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
      r /= r.norm();
      basis.conservativeResize(d, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r;
      seed.push_back(best);
    }
    hull_dim_ = static_cast<int>(seed.size()) - 1;
    if (hull_dim_ < d) return;  // degenerate: volume stays 0, no facets
  }

  Vec interior = Vec::Zero(d);
  for (int id : seed) interior += points_[id];
  interior /= static_cast<double>(d + 1);

  std::vector<WorkFacet> fs;
  fs.reserve(64);

  auto make_facet = [&](std::vector<int> verts) {
    WorkFacet f;
    f.vertices = std::move(verts);
    Mat a(d, d - 1);
    for (int k = 1; k < d; ++k) a.col(k - 1) = points_[f.vertices[k]] - points_[f.vertices[0]];
    Vec c = generalized_cross(a);
    double nrm = c.norm();
    if (nrm < 1e-13 * std::pow(scale, d - 1)) {
      // Sliver facet with nearly dependent edges: take the best-fit
      // hyperplane normal instead. The facet carries ~zero area and is
      // usually removed by later insertions.
      Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
      c = svd.matrixU().col(d - 1);
      nrm = 1.0;
    }
    c /= nrm;
    double off = c.dot(points_[f.vertices[0]]);
    if (c.dot(interior) > off) {
      c = -c;
      off = -off;
      std::swap(f.vertices[0], f.vertices[1]);
    }
    f.normal = c;
    f.offset = off;
    f.neighbors.assign(d, -1);
    return f;
  };

  // Signed distance with a long-double fallback inside the epsilon band.
  auto visible_from = [&](const WorkFacet& f, const Vec& q) {
    double s = f.normal.dot(q) - f.offset;
    if (s > eps_vis) return true;
    if (s < -eps_vis) return false;
    // Orientation of the facet's stored vertex order was fixed so that
    // det[v1-v0, ..., v_{d-1}-v0, normal] > 0; a point is on the outside
    // iff det[v1-v0, ..., v_{d-1}-v0, q-v0] > 0.
    long double o = orient_ld(points_, f.vertices, q);
    {
      // Relate the sign of o to the outward normal once per call.
      long double on = orient_ld(points_, f.vertices, points_[f.vertices[0]] + f.normal);
      if (on < 0.0L) o = -o;
    }
    return o > 0.0L;
  };

  // Initial simplex: the d+1 facets obtained by dropping one seed vertex.
  for (int drop = 0; drop <= d; ++drop) {
    std::vector<int> verts;
    for (int k = 0; k <= d; ++k)
      if (k != drop) verts.push_back(seed[k]);
    fs.push_back(make_facet(std::move(verts)));
  }
  // Wire the initial neighbors: facets i and j share the ridge missing
  // seed vertices i and j.
  {
    std::unordered_map<std::uint64_t, std::pair<int, int>> ridge_owner;
    for (int fi = 0; fi < static_cast<int>(fs.size()); ++fi) {
      for (int k = 0; k < d; ++k) {
        std::vector<int> ridge;
        for (int m = 0; m < d; ++m)
          if (m != k) ridge.push_back(fs[fi].vertices[m]);
        auto key = ridge_key(ridge);
        auto it = ridge_owner.find(key);
        if (it == ridge_owner.end()) {
          ridge_owner[key] = {fi, k};
        } else {
          fs[fi].neighbors[k] = it->second.first;
          fs[it->second.first].neighbors[it->second.second] = fi;
        }
      }
    }
  }

  // Conflict assignment for all non-seed points.
  {
    std::vector<char> is_seed(npts, 0);
    for (int id : seed) is_seed[id] = 1;
    for (int i = 0; i < npts; ++i) {
      if (is_seed[i]) continue;
      for (auto& f : fs) {
        if (visible_from(f, points_[i])) {
          f.conflicts.push_back(i);
          break;
        }
      }
    }
  }

  std::vector<int> pending;
  for (int fi = 0; fi < static_cast<int>(fs.size()); ++fi)
    if (!fs[fi].conflicts.empty()) pending.push_back(fi);

  while (!pending.empty()) {
    int fi = pending.back();
    pending.pop_back();
    if (fi >= static_cast<int>(fs.size()) || !fs[fi].alive || fs[fi].conflicts.empty()) continue;

    // Farthest conflict point of this facet.
    int p = -1;
    double best = -1.0;
    for (int q : fs[fi].conflicts) {
      double s = fs[fi].normal.dot(points_[q]) - fs[fi].offset;
      if (s > best) {
        best = s;
        p = q;
      }
    }
    const Vec& q = points_[p];

    // BFS for the visible region.
    std::vector<int> visible;
    std::vector<char> seen(fs.size(), 0);
    std::vector<int> stack = {fi};
    seen[fi] = 1;
    while (!stack.empty()) {
      int g = stack.back();
      stack.pop_back();
      if (!fs[g].alive) continue;
      if (!visible_from(fs[g], q)) continue;
      visible.push_back(g);
      for (int nb : fs[g].neighbors) {
        if (nb >= 0 && !seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    if (visible.empty()) continue;
    std::vector<char> is_visible(fs.size(), 0);
    for (int g : visible) is_visible[g] = 1;

    // Horizon ridges and replacement facets.
    std::vector<int> fresh;
    std::unordered_map<std::uint64_t, std::pair<int, int>> open_ridge;
    std::vector<int> orphan_points;
    for (int g : visible) {
      for (int q2 : fs[g].conflicts)
        if (q2 != p) orphan_points.push_back(q2);
      fs[g].conflicts.clear();
      for (int k = 0; k < d; ++k) {
        int nb = fs[g].neighbors[k];
        if (nb >= 0 && is_visible[nb]) continue;  // interior ridge of the visible region
        std::vector<int> ridge;
        for (int m = 0; m < d; ++m)
          if (m != k) ridge.push_back(fs[g].vertices[m]);
        std::vector<int> verts = ridge;
        verts.push_back(p);
        WorkFacet nf = make_facet(std::move(verts));
        int nf_id = static_cast<int>(fs.size());
        // The neighbor across the horizon ridge is the outside facet nb.
        // Locate the slot: in nf, the ridge is opposite vertex p.
        for (int m = 0; m < d; ++m)
          if (nf.vertices[m] == p) nf.neighbors[m] = nb;
        fs.push_back(std::move(nf));
        fresh.push_back(nf_id);
        if (nb >= 0) {
          for (int m = 0; m < d; ++m) {
            if (fs[nb].neighbors[m] == g) {
              // Verify the ridge matches (shared vertices) before rewiring.
              std::vector<int> r2;
              for (int mm = 0; mm < d; ++mm)
                if (mm != m) r2.push_back(fs[nb].vertices[mm]);
              if (ridge_key(r2) == ridge_key(ridge)) {
                fs[nb].neighbors[m] = nf_id;
                break;
              }
            }
          }
        }
        // Remaining ridges of nf (those containing p) pair up among the
        // fresh facets.
        for (int m = 0; m < d; ++m) {
          if (fs[nf_id].vertices[m] == p) continue;
          std::vector<int> r2;
          for (int mm = 0; mm < d; ++mm)
            if (mm != m) r2.push_back(fs[nf_id].vertices[mm]);
          auto key = ridge_key(r2);
          auto it = open_ridge.find(key);
          if (it == open_ridge.end()) {
            open_ridge[key] = {nf_id, m};
          } else {
            fs[nf_id].neighbors[m] = it->second.first;
            fs[it->second.first].neighbors[it->second.second] = nf_id;
            open_ridge.erase(it);
          }
        }
      }
      fs[g].alive = false;
    }

    // Redistribute orphaned conflict points.
    std::sort(orphan_points.begin(), orphan_points.end());
    orphan_points.erase(std::unique(orphan_points.begin(), orphan_points.end()), orphan_points.end());
    for (int q2 : orphan_points) {
      for (int nf_id : fresh) {
        if (visible_from(fs[nf_id], points_[q2])) {
          fs[nf_id].conflicts.push_back(q2);
          break;
        }
      }
    }
    for (int nf_id : fresh)
      if (!fs[nf_id].conflicts.empty()) pending.push_back(nf_id);
  }

  // Compact the result.
  std::vector<char> used(npts, 0);
  double vol = 0.0;
  for (const auto& f : fs) {
    if (!f.alive) continue;
    HullFacet out;
    out.vertices = f.vertices;
    out.normal = f.normal;
    out.offset = f.offset;
    facets_.push_back(out);
    for (int v : f.vertices) used[v] = 1;
    Mat m(d, d);
    for (int k = 0; k < d; ++k) m.col(k) = points_[f.vertices[k]] - interior;
    vol += std::abs(m.determinant());
  }
  double dfact = 1.0;
  for (int k = 2; k <= d; ++k) dfact *= k;
  volume_ = vol / dfact;
  for (int i = 0; i < npts; ++i)
    if (used[i]) vertex_ids_.push_back(i);

  // Merge coplanar simplicial facets.
  {
    const double tol_n = 1e-9;
    std::vector<int> group(facets_.size(), -1);
    int ngroups = 0;
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      if (group[i] >= 0) continue;
      group[i] = ngroups;
      // Grow the group by adjacency in normal/offset space.
      for (std::size_t j = i + 1; j < facets_.size(); ++j) {
        if (group[j] >= 0) continue;
        if (facets_[i].normal.dot(facets_[j].normal) > 1.0 - tol_n &&
            std::abs(facets_[i].offset - facets_[j].offset) < tol_n * (1.0 + std::abs(facets_[i].offset)) * scale) {
          group[j] = ngroups;
        }
      }
      ++ngroups;
    }
    merged_.assign(ngroups, MergedFacet{});
    double dm1fact = dfact / d;  // (d-1)!
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      MergedFacet& mf = merged_[group[i]];
      if (mf.vertices.empty()) {
        mf.normal = facets_[i].normal;
        mf.offset = facets_[i].offset;
      }
      for (int v : facets_[i].vertices) mf.vertices.push_back(v);
      Mat a(d, d - 1);
      for (int k = 1; k < d; ++k)
        a.col(k - 1) = points_[facets_[i].vertices[k]] - points_[facets_[i].vertices[0]];
      mf.area += generalized_cross(a).norm() / dm1fact;
    }
    for (auto& mf : merged_) {
      std::sort(mf.vertices.begin(), mf.vertices.end());
      mf.vertices.erase(std::unique(mf.vertices.begin(), mf.vertices.end()), mf.vertices.end());
    }
  }
}

Chain2D chain_hull_2d(const std::vector<Vec>& points) {
  // Andrew's monotone chain; much lighter than the generic machinery for
  // the projection-volume inner loops.
  const std::size_t m = points.size();
  Chain2D out;
  if (m < 2) return out;
  std::vector<std::pair<double, double>> p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = {points[k](0), points[k](1)};
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  const std::size_t q = p.size();
  if (q == 1) return out;
  auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                  const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> h(2 * q);
  std::size_t k = 0;
  for (std::size_t idx = 0; idx < q; ++idx) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[idx]) <= 0.0) --k;
    h[k++] = p[idx];
  }
  for (std::size_t idx = q - 1, t = k + 1; idx-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[idx]) <= 0.0) --k;
    h[k++] = p[idx];
  }
  h.resize(k - 1);
  double area2 = 0.0, per = 0.0;
  for (std::size_t a = 0; a < h.size(); ++a) {
    const auto& u = h[a];
    const auto& v = h[(a + 1) % h.size()];
    area2 += u.first * v.second - v.first * u.second;
    per += std::hypot(v.first - u.first, v.second - u.second);
  }
  out.area = 0.5 * std::abs(area2);
  // A degenerate chain is a segment; its boundary is traversed twice.
  out.perimeter = (h.size() == 2) ? 2.0 * std::hypot(h[1].first - h[0].first, h[1].second - h[0].second) : per;
  return out;
}

double hull_volume(const std::vector<Vec>& points, int dim) {
  if (points.empty()) return 0.0;
  if (static_cast<int>(points.size()) <= dim) return 0.0;
  if (dim == 2) return chain_hull_2d(points).area;
  return ConvexHull(points, dim).volume();
}

namespace {

int affine_dim(const std::vector<Vec>& pts, const std::vector<int>& ids, Mat* span_out, Vec* base_out) {
  const int d = static_cast<int>(pts[ids[0]].size());
  Vec base = pts[ids[0]];
  Mat diffs(d, static_cast<int>(ids.size()) - 1);
  for (std::size_t k = 1; k < ids.size(); ++k) diffs.col(k - 1) = pts[ids[k]] - base;
  if (diffs.cols() == 0) {
    if (span_out) *span_out = Mat(d, 0);
    if (base_out) *base_out = base;
    return 0;
  }
  Eigen::ColPivHouseholderQR<Mat> qr(diffs);
  qr.setThreshold(1e-9);
  int rank = static_cast<int>(qr.rank());
  if (span_out) {
    Mat q = qr.householderQ() * Mat::Identity(d, rank);
    *span_out = q;
  }
  if (base_out) *base_out = base;
  return rank;
}

}  // namespace

FaceLattice::FaceLattice(const ConvexHull& hull) : n_(hull.dim()) {
  if (hull.hull_dim() < n_) throw DegenerateBodyError("FaceLattice: polytope is lower-dimensional");
  by_dim_.assign(n_, {});
  const auto& pts = hull.points();
  const auto& mf = hull.merged_facets();

  // Closure of the facet vertex sets under pairwise intersection; every
  // proper face of a polytope arises this way.
  struct Entry {
    std::vector<int> verts;
    std::vector<int> facets;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::uint64_t, std::vector<int>> by_hash;  // hash -> entry ids

  auto vec_hash = [](const std::vector<int>& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  };
  auto find_entry = [&](const std::vector<int>& v) -> int {
    auto it = by_hash.find(vec_hash(v));
    if (it == by_hash.end()) return -1;
    for (int id : it->second)
      if (entries[id].verts == v) return id;
    return -1;
  };
  auto add_entry = [&](std::vector<int> v, std::vector<int> facets) -> int {
    int id = static_cast<int>(entries.size());
    by_hash[vec_hash(v)].push_back(id);
    entries.push_back({std::move(v), std::move(facets)});
    return id;
  };

  for (std::size_t i = 0; i < mf.size(); ++i) add_entry(mf[i].vertices, {static_cast<int>(i)});

  std::size_t frontier_begin = 0;
  while (frontier_begin < entries.size()) {
    std::size_t frontier_end = entries.size();
    for (std::size_t a = frontier_begin; a < frontier_end; ++a) {
      for (std::size_t b = 0; b < mf.size(); ++b) {
        std::vector<int> inter;
        std::set_intersection(entries[a].verts.begin(), entries[a].verts.end(), mf[b].vertices.begin(),
                              mf[b].vertices.end(), std::back_inserter(inter));
        if (inter.empty() || inter == entries[a].verts) continue;
        int id = find_entry(inter);
        if (id < 0) {
          auto facets = entries[a].facets;
          facets.push_back(static_cast<int>(b));
          std::sort(facets.begin(), facets.end());
          add_entry(std::move(inter), std::move(facets));
        } else {
          auto& fl = entries[id].facets;
          if (std::find(fl.begin(), fl.end(), static_cast<int>(b)) == fl.end()) {
            fl.push_back(static_cast<int>(b));
            std::sort(fl.begin(), fl.end());
          }
        }
      }
    }
    frontier_begin = frontier_end;
  }

  // Each closed set is a face; classify by affine dimension. Facets that
  // merely share vertices are filtered by recomputing containment.
  for (auto& e : entries) {
    PolytopeFace face;
    face.vertices = e.verts;
    Mat span;
    Vec base;
    face.dim = affine_dim(pts, e.verts, &span, &base);
    if (face.dim > n_ - 1) continue;
    face.span = span;
    face.base = base;
    // Complete the containing-facet list: a facet contains the face iff
    // all face vertices lie on the facet plane.
    face.facet_ids.clear();
    for (std::size_t b = 0; b < mf.size(); ++b) {
      bool on = true;
      for (int v : face.vertices) {
        if (std::abs(mf[b].normal.dot(pts[v]) - mf[b].offset) > 1e-8 * (1.0 + std::abs(mf[b].offset))) {
          on = false;
          break;
        }
      }
      if (on) face.facet_ids.push_back(static_cast<int>(b));
    }
    if (face.dim == 0) {
      face.volume = 1.0;
    } else {
      std::vector<Vec> local;
      local.reserve(face.vertices.size());
      for (int v : face.vertices) local.push_back(span.transpose() * (pts[v] - base));
      face.volume = (face.dim == static_cast<int>(local[0].size())) ? hull_volume(local, face.dim) : 0.0;
    }
    by_dim_[face.dim].push_back(std::move(face));
  }
}

const std::vector<PolytopeFace>& FaceLattice::faces(int i) const {
  if (i < 0 || i >= n_) throw InputError("FaceLattice::faces: dimension out of range");
  return by_dim_[i];
}

}  // namespace minkval
