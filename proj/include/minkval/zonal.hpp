#pragma once

#include "minkval/common.hpp"
#include "minkval/sphere_grid.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace minkval {

/// Point mass of a zonal measure at colatitude t = cos(angle to the pole).
/// t = +-1 is a point mass at the (anti)pole; |t| < 1 is the uniform
/// probability measure on the latitude subsphere, scaled by weight.
struct ZonalAtom {
  double t = 1.0;
  double weight = 1.0;
};

/// Zonal measure on S^{n-1}, split into an absolutely continuous part
/// (density in t against the invariant probability measure) and atoms.
struct ZonalProfile {
  std::function<double(double)> density;  // may be empty
  double support_min = -1.0;              // density vanishes below this t
  std::vector<ZonalAtom> atoms;

  bool has_density() const { return static_cast<bool>(density); }

  /// hat (inversion pullback) of a zonal measure on the sphere is itself.
  ZonalProfile hat() const { return *this; }
};

/// Pushforward density of t = pole . u under the invariant probability
/// measure on S^{n-1}.
double colatitude_density(int n, double t);

/// Gauss-Legendre rule on [-1,1] (cached per order).
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

double total_mass(const ZonalProfile& zeta, int n);

/// Dirac measure at the pole.
ZonalProfile dirac_pole();

/// Spherical approximate identity: nonnegative bump supported on the
/// geodesic cap of radius 1/m, unit total mass.
ZonalProfile approximate_identity(int m, int n);

/// (f * zeta)(u) for tabulated f, evaluated at every node of f's grid.
/// The density part is a plain quadrature over the grid, so it is accurate
/// when the profile varies on scales coarser than the grid spacing.
SphericalFunction convolve_zonal(const SphericalFunction& f, const ZonalProfile& zeta);

/// (f * zeta)(u) for an analytically evaluable f, via Gauss-Legendre
/// quadrature in t and deterministic latitude averaging. Accurate for
/// concentrated profiles.
double convolve_zonal_at(const std::function<double(const Vec&)>& f, int n, const ZonalProfile& zeta,
                         const Vec& u, int t_order = 64, int latitude_points = 48);

SphericalFunction convolve_zonal_fn(const std::function<double(const Vec&)>& f, const ZonalProfile& zeta,
                                    SphereGridPtr grid, int t_order = 64, int latitude_points = 48);

/// Average of f over the latitude sphere { v : v.u = t }.
double latitude_average(const std::function<double(const Vec&)>& f, int n, const Vec& u, double t,
                        int latitude_points);

struct SupportCheck {
  bool ok = true;
  Vec x, y;            // first violating pair (when !ok)
  double violation = 0.0;
};

/// Samples random x, y and checks sublinearity of the 1-homogeneous
/// extension: H(x+y) <= H(x) + H(y) + tol. Returns the first violating
/// pair as witness.
SupportCheck is_support_function(const SphericalFunction& f, int trials, double tol,
                                 std::uint64_t seed = 0x53757042u);
SupportCheck is_support_function_fn(const std::function<double(const Vec&)>& h, int n, int trials, double tol,
                                    std::uint64_t seed = 0x53757042u);

}  // namespace minkval
