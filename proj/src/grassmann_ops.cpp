#include "minkval/grassmann_ops.hpp"

#include <cmath>

namespace minkval {

double cosine_transform_at(const GrassmannSample& sample, const Subspace& f) {
  if (sample.n != f.n || sample.i != f.i) throw InputError("cosine_transform: shape mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < sample.subspaces.size(); ++j)
    s += sample.weights[j] * cosine(sample.subspaces[j], f);
  return s;
}

GrassmannFunction cosine_transform(const GrassmannFunction& f, const GrassmannSample& sample) {
  if (sample.n != f.n || sample.i != f.i) throw InputError("cosine_transform: shape mismatch");
  GrassmannFunction out;
  out.n = f.n;
  out.i = f.i;
  // Weighted sum with f-values frozen at the sample subspaces.
  std::vector<double> fv(sample.subspaces.size());
  for (std::size_t j = 0; j < sample.subspaces.size(); ++j) fv[j] = f(sample.subspaces[j]);
  auto subs = sample.subspaces;
  auto wts = sample.weights;
  out.eval = [subs = std::move(subs), wts = std::move(wts), fv = std::move(fv)](const Subspace& F) {
    double s = 0.0;
    for (std::size_t j = 0; j < subs.size(); ++j) s += wts[j] * fv[j] * cosine(subs[j], F);
    return s;
  };
  return out;
}

double radon_at(const GrassmannFunction& f, int i, const Vec& u, int inner_count, std::uint64_t seed) {
  if (i < 1) throw InputError("radon_to_sphere: i must be >= 1");
  const int n = static_cast<int>(u.size());
  if (f.n != n || f.i != i) throw InputError("radon_to_sphere: function shape mismatch");
  if (i == 1) {
    Mat frame = u;
    return f(Subspace(n, 1, frame));
  }
  RngStream rng(seed);
  double s = 0.0;
  for (int k = 0; k < inner_count; ++k) {
    Mat rest = random_frame_in_complement(u, i - 1, rng);
    Mat frame(n, i);
    frame.col(0) = u;
    frame.rightCols(i - 1) = rest;
    s += f(Subspace(n, i, frame));
  }
  return s / inner_count;
}

SphericalFunction radon_to_sphere(const GrassmannFunction& f, int i, SphereGridPtr grid, int inner_count,
                                  std::uint64_t seed) {
  std::vector<double> values(grid->size());
  for (int k = 0; k < grid->size(); ++k)
    values[k] = radon_at(f, i, grid->node(k), inner_count,
                         derive_seed(seed, 0x5261646fu, static_cast<std::uint64_t>(k)));
  return SphericalFunction(std::move(grid), std::move(values));
}

double lifted_radon_convolution_at(const GrassmannFunction& f, const Vec& u, int mc_count,
                                   std::uint64_t seed) {
  // (f * mu_{S^{i-1}})(eta pole) with mu lifted to O(n):
  //   integral over v uniform on S^{i-1} and xi in the pole stabilizer of
  //   f(eta xi^{-1} theta_v^{-1} E_base),
  // where theta_v maps the pole to v. The base subspace spans the first i
  // coordinates, so S^{i-1} = S^{n-1} cap E_base.
  const int n = f.n;
  const int i = f.i;
  RngStream rng(seed);
  Mat eta = rotation_mapping_pole(u, derive_seed(seed, 0x4c696674u));
  Subspace e_base = base_subspace(n, i);
  double s = 0.0;
  for (int k = 0; k < mc_count; ++k) {
    Vec vi = rng.unit_vector(i);
    Vec v = Vec::Zero(n);
    v.head(i) = vi;
    Mat theta_v = rotation_mapping_pole(v, rng.next_u64());
    Mat xi = random_pole_stabilizer(n, rng);
    Mat g = eta * xi.transpose() * theta_v.transpose();
    s += f(e_base.rotated(g));
  }
  return s / mc_count;
}

RotationSample sample_rotations(int n, int count, std::uint64_t seed) {
  RotationSample s;
  s.n = n;
  s.rotations.reserve(count);
  s.weights.assign(count, 1.0 / count);
  RngStream rng(derive_seed(seed, 0x526f7453u));
  for (int k = 0; k < count; ++k) s.rotations.push_back(random_rotation(n, rng));
  return s;
}

RotationSample hat(const RotationSample& mu) {
  RotationSample out = mu;
  for (auto& r : out.rotations) r = Mat(r.transpose());
  return out;
}

double pair_convolution(const RotationSample& mu, const RotationSample& sigma,
                        const std::function<double(const Mat&)>& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < mu.rotations.size(); ++j)
    for (std::size_t k = 0; k < sigma.rotations.size(); ++k)
      s += mu.weights[j] * sigma.weights[k] * f(mu.rotations[j] * sigma.rotations[k]);
  return s;
}

double pair_measure(const RotationSample& mu, const std::function<double(const Mat&)>& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < mu.rotations.size(); ++j) s += mu.weights[j] * f(mu.rotations[j]);
  return s;
}

}  // namespace minkval
