#include "minkval/subspace.hpp"

#include <cmath>

namespace minkval {

Subspace::Subspace(int n_, int i_, Mat frame_) : n(n_), i(i_), frame(std::move(frame_)) {
  if (n < 2 || i < 1 || i > n) throw InputError("Subspace: need 1 <= i <= n, n >= 2");
  if (frame.rows() != n || frame.cols() != i) throw InputError("Subspace: frame shape mismatch");
  Mat gram = frame.transpose() * frame;
  if ((gram - Mat::Identity(i, i)).cwiseAbs().maxCoeff() > 1e-10)
    throw InputError("Subspace: frame is not orthonormal");
}

double GrassmannSample::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double GrassmannSample::total_variation() const {
  double s = 0.0;
  for (double w : weights) s += std::abs(w);
  return s;
}

Subspace random_subspace(int n, int i, RngStream& rng) {
  return Subspace(n, i, orthonormalize(rng.gaussian_matrix(n, i)));
}

GrassmannSample sample_grassmann(int n, int i, int count, std::uint64_t seed) {
  if (i < 1 || i > n - 1) throw InputError("sample_grassmann: need 1 <= i <= n-1");
  if (count < 1) throw InputError("sample_grassmann: count must be positive");
  GrassmannSample s;
  s.n = n;
  s.i = i;
  s.subspaces.reserve(count);
  s.weights.assign(count, 1.0 / static_cast<double>(count));
  for (int k = 0; k < count; ++k) {
    RngStream rng(derive_seed(seed, 0x47724b5au, static_cast<std::uint64_t>(k)));
    s.subspaces.push_back(random_subspace(n, i, rng));
  }
  return s;
}

Mat random_frame_in_complement(const Vec& u, int i, RngStream& rng) {
  const int n = static_cast<int>(u.size());
  if (i < 0 || i > n - 1) throw InputError("random_frame_in_complement: bad frame size");
  if (i == 0) return Mat(n, 0);
  // Gaussian vectors projected off u, then orthonormalized.
  Mat g = rng.gaussian_matrix(n, i);
  g -= u * (u.transpose() * g);
  return orthonormalize(g);
}

double cosine(const Subspace& e, const Subspace& f) {
  if (e.n != f.n || e.i != f.i) throw InputError("cosine: subspace shape mismatch");
  double c = std::abs((e.frame.transpose() * f.frame).determinant());
  return std::min(c, 1.0);
}

Subspace perp(const Subspace& e) {
  Eigen::HouseholderQR<Mat> qr(e.frame);
  Mat q = qr.householderQ() * Mat::Identity(e.n, e.n);
  return Subspace(e.n, e.n - e.i, q.rightCols(e.n - e.i));
}

GrassmannFunction perp_transform(const GrassmannFunction& f) {
  GrassmannFunction g;
  g.n = f.n;
  g.i = f.n - f.i;
  g.eval = [inner = f.eval](const Subspace& e) { return inner(perp(e)); };
  return g;
}

Mat rotation_mapping_pole(const Vec& u, std::uint64_t stabilizer_seed) {
  require_unit(u, 1e-12, "pole target");
  const int n = static_cast<int>(u.size());
  Vec e1 = pole(n);
  Mat h = Mat::Identity(n, n);
  Vec w = e1 - u;
  double wn2 = w.squaredNorm();
  if (wn2 > 1e-28) h -= (2.0 / wn2) * (w * w.transpose());
  RngStream rng(derive_seed(stabilizer_seed, 0x526f7450u));
  return h * random_pole_stabilizer(n, rng);
}

Subspace canonicalize(const Subspace& e) {
  Mat proj = e.frame * e.frame.transpose();
  Eigen::ColPivHouseholderQR<Mat> qr(proj);
  Mat q = qr.householderQ() * Mat::Identity(e.n, e.i);
  for (int j = 0; j < e.i; ++j) {
    int arg = 0;
    for (int r = 1; r < e.n; ++r)
      if (std::abs(q(r, j)) > std::abs(q(arg, j)) + 1e-14) arg = r;
    if (q(arg, j) < 0.0) q.col(j) = -q.col(j);
  }
  return Subspace(e.n, e.i, q);
}

Subspace base_subspace(int n, int i) {
  Mat f = Mat::Zero(n, i);
  for (int k = 0; k < i; ++k) f(k, k) = 1.0;
  return Subspace(n, i, f);
}

}  // namespace minkval
