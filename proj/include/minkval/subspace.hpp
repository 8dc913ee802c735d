#pragma once

#include "minkval/common.hpp"
#include "minkval/rng.hpp"

#include <functional>
#include <vector>

namespace minkval {

/// i-dimensional linear subspace of R^n, stored as an orthonormal frame
/// (n x i matrix with orthonormal columns).
struct Subspace {
  int n = 0;
  int i = 0;
  Mat frame;

  Subspace() = default;
  Subspace(int n_, int i_, Mat frame_);

  /// Rotated subspace with frame q * frame.
  Subspace rotated(const Mat& q) const { return Subspace(n, i, q * frame); }
};

/// Weighted subspace sample set; represents a (possibly signed) measure
/// on Gr_{i,n}.
struct GrassmannSample {
  int n = 0;
  int i = 0;
  std::vector<Subspace> subspaces;
  std::vector<double> weights;

  double total_weight() const;
  double total_variation() const;
};

/// Evaluation rule on Gr_{i,n}.
struct GrassmannFunction {
  int n = 0;
  int i = 0;
  std::function<double(const Subspace&)> eval;

  double operator()(const Subspace& e) const { return eval(e); }
};

/// Uniform sample of the invariant probability measure on Gr_{i,n}.
GrassmannSample sample_grassmann(int n, int i, int count, std::uint64_t seed);

Subspace random_subspace(int n, int i, RngStream& rng);

/// Random i-frame inside the orthogonal complement of u (columns are
/// orthonormal and orthogonal to u).
Mat random_frame_in_complement(const Vec& u, int i, RngStream& rng);

/// |cos(E,F)| = |det(A_E^T A_F)| in [0,1]; symmetric and frame-independent.
double cosine(const Subspace& e, const Subspace& f);

/// Orthogonal complement.
Subspace perp(const Subspace& e);

/// f^perp(E) = f(E^perp).
GrassmannFunction perp_transform(const GrassmannFunction& f);

/// Orthogonal matrix eta with eta * e_1 = u, composed with a seeded random
/// rotation fixing e_1 (stabilizer randomization).
Mat rotation_mapping_pole(const Vec& u, std::uint64_t stabilizer_seed);

/// Canonical frame for serialization: equal subspaces produce identical
/// frames (column-pivoted QR of the projector, sign-fixed).
Subspace canonicalize(const Subspace& e);

/// The canonical base subspace spanned by the first i coordinate axes
/// (contains the pole e_1).
Subspace base_subspace(int n, int i);

}  // namespace minkval
