#pragma once

#include "minkval/sphere_grid.hpp"
#include "minkval/subspace.hpp"

#include <functional>

namespace minkval {

/// (C_i f)(F) = integral of |cos(E,F)| f(E) dE, approximated by the
/// weighted sample.
GrassmannFunction cosine_transform(const GrassmannFunction& f, const GrassmannSample& sample);

/// Cosine transform of a sampled measure: F -> sum_j w_j |cos(E_j, F)|.
double cosine_transform_at(const GrassmannSample& sample, const Subspace& f);

/// (R_i f)(u) = average of f over i-subspaces containing u. Each node uses
/// an independent substream derived from (seed, node index), so parallel
/// and serial evaluation agree.
SphericalFunction radon_to_sphere(const GrassmannFunction& f, int i, SphereGridPtr grid, int inner_count,
                                  std::uint64_t seed);

double radon_at(const GrassmannFunction& f, int i, const Vec& u, int inner_count, std::uint64_t seed);

/// Reference path for the homogeneous-space convolution f * mu of a
/// Grassmann function with the uniform probability measure on the
/// subsphere S^{i-1} (lifted to the group and integrated by Monte Carlo
/// over the stabilizer). Used to validate the reduced Radon formula.
double lifted_radon_convolution_at(const GrassmannFunction& f, const Vec& u, int mc_count,
                                   std::uint64_t seed);

/// Measures on O(n) as weighted rotation atoms; enough structure to state
/// the convolution calculus identities at the group level.
struct RotationSample {
  int n = 0;
  std::vector<Mat> rotations;
  std::vector<double> weights;
};

RotationSample sample_rotations(int n, int count, std::uint64_t seed);
RotationSample hat(const RotationSample& mu);

/// <mu * sigma, f> = double sum of w_j s_k f(theta_j eta_k).
double pair_convolution(const RotationSample& mu, const RotationSample& sigma,
                        const std::function<double(const Mat&)>& f);

double pair_measure(const RotationSample& mu, const std::function<double(const Mat&)>& f);

}  // namespace minkval
