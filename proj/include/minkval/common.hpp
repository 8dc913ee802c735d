#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace minkval {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when an argument violates an operation's preconditions.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Thrown when a body is lower-dimensional where full dimension is required.
class DegenerateBodyError : public std::runtime_error {
public:
  explicit DegenerateBodyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a fit or solve is too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
public:
  explicit ConditioningError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
  if (d < 0) throw InputError("unit_ball_volume: negative dimension");
  // kappa_d = pi^{d/2} / Gamma(d/2 + 1)
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Surface area of the unit sphere S^{d-1} in R^d.
inline double unit_sphere_area(int d) {
  if (d < 1) throw InputError("unit_sphere_area: dimension must be >= 1");
  return d * unit_ball_volume(d);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

/// Canonical pole on S^{n-1}: the first coordinate axis.
inline Vec pole(int n) {
  Vec e = Vec::Zero(n);
  e(0) = 1.0;
  return e;
}

inline void require_unit(const Vec& u, double tol = 1e-12, const char* who = "vector") {
  if (std::abs(u.norm() - 1.0) > tol)
    throw InputError(std::string(who) + ": not a unit vector");
}

/// FNV-1a over a byte string; used for content-addressed run ids.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace minkval
