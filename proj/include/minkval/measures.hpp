#pragma once

#include "minkval/bodies.hpp"
#include "minkval/subspace.hpp"

#include <functional>
#include <string>
#include <vector>

namespace minkval {

struct Atom {
  Vec dir;
  double weight = 0.0;
};

/// Weighted atoms on S^{n-1}; surface-area measures, zonal measures and
/// Crofton-measure pushforwards all land here.
struct AtomicMeasure {
  int n = 0;
  std::vector<Atom> atoms;
  std::string label;

  double total_mass() const;
  double total_variation() const;
};

/// Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// S_{n-1}(P, .): one atom per merged facet (outer normal, facet volume).
AtomicMeasure surface_area_measure(const Polytope& p);

/// Area measure of order i: each i-face contributes vol_i(F)/binom(n-1,i)
/// spread over its normal region on the sphere. Facets give single atoms,
/// (n-2)-faces exact geodesic arcs, lower faces rejection-sampled regions.
AtomicMeasure area_measure(const Polytope& p, int i, std::uint64_t seed = 0x41726561u);

/// s_i(K,.) = (S_i(K,.) + S_i(-K,.)) / 2.
AtomicMeasure even_area_measure(const Polytope& p, int i, std::uint64_t seed = 0x41726561u);

/// W_{n-1-i}(K,L) = (1/n) integral of h(L,u) dS_i(K,u).
double mixed_quermass_pair(const Polytope& k, const BodyHandle& l, int i);
double mixed_quermass_pair(const AtomicMeasure& s_i, const BodyHandle& l);

/// Support evaluator variant, for bodies defined by a rule rather than a
/// handle (projection bodies evaluated exactly per direction).
double mixed_quermass_pair(const AtomicMeasure& s_i, const std::function<double(const Vec&)>& h_l);

struct QuermassVector {
  int n = 0;
  std::vector<double> w;  // W_0 .. W_n
  std::string provenance;
};

/// Inscribed polytopal approximation of the unit ball (deterministic
/// quasi-uniform vertices).
const Polytope& ball_polytope(int n, int vertex_count);

/// Hausdorff distance bound for ball_polytope: 1 - min h(B_poly, u).
double ball_polytope_deficit(int n, int vertex_count);

/// Steiner fit: V(K + eps B) by hull volume of K + eps * ball_polytope,
/// least-squares fit of the degree-n polynomial in eps.
QuermassVector quermass_steiner_fit(const Polytope& k, const std::vector<double>& epsilons,
                                    int ball_vertices = 0);
QuermassVector quermass_steiner_fit(const Polytope& k);  // default epsilons

/// W_{n-i}(K) via Grassmann averaging (Kubota), with standard error.
Estimate quermass_kubota(const Polytope& k, int i, const GrassmannSample& sample);

/// V_i from the quermass vector: kappa_{n-i} V_i = binom(n,i) W_{n-i}.
double intrinsic_volume(const QuermassVector& q, int i);

/// V_i(K) for a polytope: exact for bodies of affine dimension <= 3,
/// Steiner fit otherwise.
double intrinsic_volume(const Polytope& k, int i);

/// Exact intrinsic volume V_j of the hull of a point set in R^d, d <= 3
/// (d <= 4 when j = d). Lower-dimensional point sets are reduced to their
/// affine hull first.
double intrinsic_volume_exact(const std::vector<Vec>& points, int d, int j);

/// Bi-homogeneous mixed volume oracle: fits V(lambda K + mu L) on a grid of
/// coefficients. coeffs[k] = V(K[k], L[n-k]).
struct MixedVolumeFit {
  std::vector<double> coeffs;
  double residual_rel = 0.0;
};
MixedVolumeFit mixed_volume_fit(const Polytope& k, const Polytope& l);

/// (mu * g)(u) = sum_a w_a g(u . v_a) for a zonal function profile g.
double convolve_atoms_profile(const AtomicMeasure& mu, const std::function<double(double)>& gamma,
                              const Vec& u);

/// Mean width route: W_{n-1}(K) = kappa_n * mean of h(K,.) over the grid.
Estimate quermass_top_from_support(const std::function<double(const Vec&)>& h, const SphereGrid& grid);

/// Volume of the zonotope with generators (w_a/2) v_a (the body whose
/// support function is (1/2) sum w_a |u . v_a|).
double zonotope_volume(const AtomicMeasure& s);

/// Halves of a polytope split by the hyperplane x.w = c, each including the
/// section polygon's vertices; the union is the original body.
std::pair<Polytope, Polytope> split_polytope(const Polytope& q, const Vec& w, double c);
Polytope slice_polytope(const Polytope& q, const Vec& w, double c);

}  // namespace minkval
