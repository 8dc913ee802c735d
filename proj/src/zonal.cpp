#include "minkval/zonal.hpp"

#include "minkval/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace minkval {

double colatitude_density(int n, double t) {
  if (t < -1.0 || t > 1.0) return 0.0;
  if (n == 3) return 0.5;
  if (n == 4) return (2.0 / M_PI) * std::sqrt(std::max(0.0, 1.0 - t * t));
  throw InputError("colatitude_density: n must be 3 or 4");
}

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> rule(order);
  for (int k = 0; k < order; ++k) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (k + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= order; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = order * (x * p1 - p0) / (x * x - 1.0);
    rule[k] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  std::sort(rule.begin(), rule.end());
  return cache.emplace(order, std::move(rule)).first->second;
}

double total_mass(const ZonalProfile& zeta, int n) {
  double mass = 0.0;
  for (const auto& a : zeta.atoms) mass += a.weight;
  if (zeta.has_density()) {
    const double lo = std::max(-1.0, zeta.support_min);
    const auto& rule = gauss_legendre(128);
    double s = 0.0;
    for (auto [x, w] : rule) {
      double t = 0.5 * (lo + 1.0) + 0.5 * (1.0 - lo) * x;
      s += w * zeta.density(t) * colatitude_density(n, t);
    }
    mass += 0.5 * (1.0 - lo) * s;
  }
  return mass;
}

ZonalProfile dirac_pole() {
  ZonalProfile z;
  z.atoms = {{1.0, 1.0}};
  return z;
}

ZonalProfile approximate_identity(int m, int n) {
  if (m < 1) throw InputError("approximate_identity: m must be positive");
  if (n != 3 && n != 4) throw InputError("approximate_identity: n must be 3 or 4");
  const double t0 = std::cos(1.0 / m);
  if (1.0 - t0 < 1e-14) throw InputError("approximate_identity: cap is degenerate");
  auto bump = [t0](double t) {
    if (t <= t0) return 0.0;
    double r = (1.0 - t) / (1.0 - t0);
    double b = 1.0 - r * r;
    return b * b * b;
  };
  ZonalProfile z;
  z.support_min = t0;
  z.density = bump;
  double mass = total_mass(z, n);
  z.density = [bump, mass](double t) { return bump(t) / mass; };
  return z;
}

double latitude_average(const std::function<double(const Vec&)>& f, int n, const Vec& u, double t,
                        int latitude_points) {
  if (t >= 1.0 - 1e-14) return f(u);
  if (t <= -1.0 + 1e-14) return f(Vec(-u));
  // Orthonormal basis of u^perp from the Householder map e1 -> u.
  Mat h = Mat::Identity(n, n);
  Vec w = pole(n) - u;
  double wn2 = w.squaredNorm();
  if (wn2 > 1e-28) h -= (2.0 / wn2) * (w * w.transpose());
  Mat basis = h.rightCols(n - 1);
  const double r = std::sqrt(1.0 - t * t);
  double sum = 0.0;
  if (n == 3) {
    for (int k = 0; k < latitude_points; ++k) {
      double phi = 2.0 * M_PI * (k + 0.5) / latitude_points;
      Vec v = t * u + r * (std::cos(phi) * basis.col(0) + std::sin(phi) * basis.col(1));
      sum += f(Vec(v / v.norm()));
    }
    return sum / latitude_points;
  }
  // n = 4: Fibonacci points on the 2-sphere of u^perp.
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < latitude_points; ++k) {
    double z = 1.0 - (2.0 * k + 1.0) / latitude_points;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * k;
    Vec s = rho * std::cos(phi) * basis.col(0) + rho * std::sin(phi) * basis.col(1) + z * basis.col(2);
    Vec v = t * u + r * s;
    sum += f(Vec(v / v.norm()));
  }
  return sum / latitude_points;
}

double convolve_zonal_at(const std::function<double(const Vec&)>& f, int n, const ZonalProfile& zeta,
                         const Vec& u, int t_order, int latitude_points) {
  double value = 0.0;
  for (const auto& a : zeta.atoms) value += a.weight * latitude_average(f, n, u, a.t, latitude_points);
  if (zeta.has_density()) {
    const double lo = std::max(-1.0, zeta.support_min);
    const auto& rule = gauss_legendre(t_order);
    double s = 0.0;
    for (auto [x, w] : rule) {
      double t = 0.5 * (lo + 1.0) + 0.5 * (1.0 - lo) * x;
      double dens = zeta.density(t) * colatitude_density(n, t);
      if (dens != 0.0) s += w * dens * latitude_average(f, n, u, t, latitude_points);
    }
    value += 0.5 * (1.0 - lo) * s;
  }
  return value;
}

SphericalFunction convolve_zonal_fn(const std::function<double(const Vec&)>& f, const ZonalProfile& zeta,
                                    SphereGridPtr grid, int t_order, int latitude_points) {
  std::vector<double> values(grid->size());
  for (int k = 0; k < grid->size(); ++k)
    values[k] = convolve_zonal_at(f, grid->dim(), zeta, grid->node(k), t_order, latitude_points);
  return SphericalFunction(std::move(grid), std::move(values));
}

SphericalFunction convolve_zonal(const SphericalFunction& f, const ZonalProfile& zeta) {
  const auto& grid = *f.grid;
  const int nnodes = grid.size();
  std::vector<double> out(nnodes, 0.0);
  std::vector<double> term(nnodes);
  for (int k = 0; k < nnodes; ++k) {
    const Vec& u = grid.node(k);
    double v = 0.0;
    if (zeta.has_density()) {
      for (int j = 0; j < nnodes; ++j) term[j] = f.values[j] * zeta.density(u.dot(grid.node(j)));
      v += grid.integrate(term);
    }
    for (const auto& a : zeta.atoms) {
      if (a.t >= 1.0 - 1e-14) {
        v += a.weight * f.values[k];
      } else if (a.t <= -1.0 + 1e-14) {
        v += a.weight * f(Vec(-u));
      } else {
        v += a.weight * latitude_average([&f](const Vec& x) { return f(x); }, grid.dim(), u, a.t, 32);
      }
    }
    out[k] = v;
  }
  return SphericalFunction(f.grid, std::move(out));
}

namespace {

SupportCheck support_check_impl(const std::function<double(const Vec&)>& h, int n, int trials, double tol,
                                std::uint64_t seed) {
  if (trials < 1000) throw InputError("is_support_function: trials must be >= 1000");
  auto ext = [&](const Vec& x) {
    double nrm = x.norm();
    if (nrm < 1e-300) return 0.0;
    return nrm * h(Vec(x / nrm));
  };
  RngStream rng(derive_seed(seed, 0x49735375u));
  SupportCheck r;
  for (int k = 0; k < trials; ++k) {
    Vec x = rng.gaussian_vector(n);
    Vec y = rng.gaussian_vector(n);
    double lhs = ext(x + y);
    double rhs = ext(x) + ext(y);
    if (lhs > rhs + tol) {
      r.ok = false;
      r.x = x;
      r.y = y;
      r.violation = lhs - rhs;
      return r;
    }
  }
  return r;
}

}  // namespace

SupportCheck is_support_function(const SphericalFunction& f, int trials, double tol, std::uint64_t seed) {
  return support_check_impl([&f](const Vec& u) { return f(u); }, f.grid->dim(), trials, tol, seed);
}

SupportCheck is_support_function_fn(const std::function<double(const Vec&)>& h, int n, int trials, double tol,
                                    std::uint64_t seed) {
  return support_check_impl(h, n, trials, tol, seed);
}

}  // namespace minkval
