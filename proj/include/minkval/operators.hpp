#pragma once

#include "minkval/grassmann_ops.hpp"
#include "minkval/measures.hpp"
#include "minkval/zonal.hpp"

#include <variant>

namespace minkval {

/// Weighted subspace sample representing a (signed) measure on Gr_{i,n};
/// with symmetrization enabled, every use composes the sample subspaces
/// with fresh random rotations fixing the pole.
struct CroftonMeasure {
  GrassmannSample sample;
  bool symmetrize = true;

  int degree() const { return sample.i; }
  int ambient() const { return sample.n; }
};

/// (A_i sigma)(K) = integral of vol_i(K|E) d sigma(E) over the raw sample.
double crofton_value(const CroftonMeasure& sigma, const Polytope& k);

/// Tabulated spherical function together with per-node standard errors.
struct NodewiseFunction {
  SphericalFunction fn;
  std::vector<double> se;
};

/// h(Phi_i K, u) at every grid node via the lifted Crofton representation:
/// at node u, choose eta with eta * pole = u and sum w_j vol_i(K | eta rho_j E_j)
/// with fresh stabilizer rotations rho_j. Requires symmetrization for
/// well-definedness.
NodewiseFunction apply_crofton_minkowski(const CroftonMeasure& sigma, const Polytope& k, SphereGridPtr grid,
                                         std::uint64_t seed);

double apply_crofton_minkowski_at(const CroftonMeasure& sigma, const Polytope& k, const Vec& u,
                                  std::uint64_t seed, double* se_out = nullptr);

/// Crofton measure of the i-th projection body operator: subspaces
/// orthogonal to the pole, weighted by the Kubota constant for intrinsic
/// volumes inside a hyperplane.
CroftonMeasure pi_crofton_measure(int n, int i, int count, std::uint64_t seed);

/// binom(n-1,i) kappa_{n-1} / (kappa_i kappa_{n-1-i}); relates the mean
/// projection onto i-subspaces of a hyperplane to V_i inside it.
double pi_radial_constant(int n, int i);

/// h(Pi K, u) = (1/2) integral |u.v| dS_{n-1}(K,v), exact per direction.
double projection_body_support(const AtomicMeasure& surface, const Vec& u);
double projection_body_support(const Polytope& k, const Vec& u);

/// vol_{n-1}(K | u^perp) by direct projection (the defining route).
double projection_volume_direct(const Polytope& k, const Vec& u);

/// h(Pi_i K, u) = V_i(K | u^perp), exact via low-dimensional intrinsic
/// volumes of the projected polytope.
double projection_body_i_support(const Polytope& k, int i, const Vec& u);

SupportBody projection_body(const Polytope& k, SphereGridPtr grid);
SupportBody projection_body_i(const Polytope& k, int i, SphereGridPtr grid);

/// Kubota-inside-the-hyperplane route for V_i(K|u^perp); cross-check path
/// with its own inner Grassmann sample.
Estimate projection_body_i_support_kubota(const Polytope& k, int i, const Vec& u, int inner_count,
                                          std::uint64_t seed);

Polytope difference_body(const Polytope& k);
Ball difference_body(const Ball& k);

/// Lambda_i K = V_i(K) B.
Ball lambda_ball(const Polytope& k, int i);

/// Even part of the mean section operator (up to the caller-supplied
/// constant): c * R_{n+1-i} vol_{n+1-i}(K | .).
SphericalFunction mean_section_even(const Polytope& k, int i, double c, SphereGridPtr grid, int inner_count,
                                    std::uint64_t seed);
double mean_section_even_at(const Polytope& k, int i, double c, const Vec& u, int inner_count,
                            std::uint64_t seed);

/// Real-valued translation invariant valuation.
struct RealValuation {
  int n = 0;
  int degree = 0;
  bool even = true;
  std::function<double(const Polytope&)> eval;

  double operator()(const Polytope& k) const { return eval(k); }
};

RealValuation crofton_valuation(const CroftonMeasure& sigma);
RealValuation intrinsic_volume_valuation(int n, int i);

/// Klain function g(E) = phi(probe)/vol_i(probe) for a probe inside E.
double klain_function(const RealValuation& phi, const Subspace& e, const Polytope& probe);

/// Unit i-cube spanned by the frame of E (vol_i = 1), optionally sheared
/// by a seeded random simplex for probe-independence tests.
Polytope cube_probe(const Subspace& e);
Polytope simplex_probe(const Subspace& e, std::uint64_t seed);

/// Support function of the associated body of Theorem-type Crofton data:
/// h(L, theta pole) = (C_i sigma)(theta^{-1} E_base).
NodewiseFunction associated_body(const CroftonMeasure& sigma, SphereGridPtr grid, std::uint64_t seed);

/// Minkowski valuation operator specification (tagged union).
struct FromCroftonOp {
  CroftonMeasure sigma;
};
struct ProjectionBodyOp {};
struct ProjectionBodyIOp {
  int i = 1;
};
struct DifferenceBodyOp {};
struct LambdaOp {
  int i = 1;
};
struct MeanSectionEvenOp {
  int i = 2;
  double c = 1.0;
};
using MinkowskiValuation =
    std::variant<FromCroftonOp, ProjectionBodyOp, ProjectionBodyIOp, DifferenceBodyOp, LambdaOp, MeanSectionEvenOp>;

/// h(Phi K, u); exact where the operator admits an exact route, seeded
/// Monte Carlo otherwise.
double operator_support_at(const MinkowskiValuation& op, const Polytope& k, const Vec& u, std::uint64_t seed,
                           int inner_count = 256);

/// Materialize h(Phi K, .) on a grid.
SphericalFunction apply_operator(const MinkowskiValuation& op, const Polytope& k, SphereGridPtr grid,
                                 std::uint64_t seed, int inner_count = 256);

}  // namespace minkval
