#pragma once

#include "minkval/common.hpp"

#include <cstdint>

namespace minkval {

/// Deterministic counter-based seeding; used to derive independent
/// substreams from (seed, tag) pairs so parallel and serial runs agree.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull;
  h ^= splitmix64(s);
  s ^= b * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull;
  h ^= splitmix64(s);
  return h;
}

/// xoshiro256++ stream. Self-contained so results are identical across
/// platforms and standard libraries.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via the polar method (no cached spare, so the
  /// consumption pattern is position-independent).
  double normal() {
    for (;;) {
      double x = 2.0 * uniform01() - 1.0;
      double y = 2.0 * uniform01() - 1.0;
      double r2 = x * x + y * y;
      if (r2 > 0.0 && r2 < 1.0) return x * std::sqrt(-2.0 * std::log(r2) / r2);
    }
  }

  Vec gaussian_vector(int d) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v(k) = normal();
    return v;
  }

  Vec unit_vector(int d) {
    for (;;) {
      Vec v = gaussian_vector(d);
      double nrm = v.norm();
      if (nrm > 1e-8) return v / nrm;
    }
  }

  Mat gaussian_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

/// Orthonormal frame spanning the column space of a (Gaussian) matrix,
/// with the R-diagonal sign fix that makes QR sampling Haar-distributed.
inline Mat orthonormalize(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  Mat r = qr.matrixQR().topLeftCorner(a.cols(), a.cols());
  for (int j = 0; j < a.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

/// Haar-random element of O(n).
inline Mat random_rotation(int n, RngStream& rng) {
  return orthonormalize(rng.gaussian_matrix(n, n));
}

/// Haar-random element of the stabilizer of the pole e_1 (block diag(1, Q)).
inline Mat random_pole_stabilizer(int n, RngStream& rng) {
  Mat q = Mat::Identity(n, n);
  if (n > 1) q.bottomRightCorner(n - 1, n - 1) = random_rotation(n - 1, rng);
  return q;
}

}  // namespace minkval
