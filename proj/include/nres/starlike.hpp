#pragma once

#include <functional>

#include "nres/bounds.hpp"
#include "nres/reports.hpp"
#include "nres/resolvent.hpp"

namespace nres {

using MapFn = std::function<CVector(const CVector&)>;
using JacFn = std::function<CMatrix(const CVector&)>;
using QuantityFn = std::function<cxd(const CVector&)>;

/// Starlikeness quantity s(x) = <(h'(x))^{-1} h(x), x> / ||x||^2, computed by a
/// linear solve. Throws on x = 0 or a singular derivative.
cxd starlike_quantity(const MapFn& h, const JacFn& h_prime, const CVector& x);

/// Same quantity for a resolvent, inversion-free through the identity
/// (G'(x))^{-1} G(x) = G(x) + lambda f'(G(x)) G(x).
cxd resolvent_starlike_quantity(const ResolventFamily& fam, double lambda, const CVector& x);

/// Estimated starlikeness order: the sampled infimum of Re(1/s(x)) clamped to
/// [0,1]. The disk condition |s - 1/(2 gamma)| <= 1/(2 gamma) holds exactly when
/// Re(1/s) >= gamma, so this yields the supremal order in one pass.
OrderEstimate order_estimate(const QuantityFn& quantity, int dim, const SphereSampler& sampler,
                             const std::string& method = "generic");

OrderEstimate resolvent_order_estimate(const ResolventFamily& fam, double lambda,
                                       const SphereSampler& sampler);

/// Order-1/2 threshold check: applicable once lambda reaches the largest root
/// of psi = 1; then the estimated order must reach 1/2 up to tolerance.
DiagnosticsReport order_half_check(const ResolventFamily& fam, double lambda,
                                   const BoundsProfile& profile, const SphereSampler& sampler,
                                   double tolerance = 1e-3);

/// Order check from the derivative-deviation bound: when b*d(lambda) stays in
/// the admissible range, the estimated order must reach gamma_order(b*d(lambda)).
DiagnosticsReport derivative_bound_order_check(const ResolventFamily& fam, double lambda,
                                               const BoundsProfile& profile,
                                               const SphereSampler& sampler,
                                               double tolerance = 1e-3);

/// Sampled bound b with ||f'(x) - f'(0)|| <= b ||x||; the ratio form makes the
/// estimate attain the Schwarz-normalized supremum.
double derivative_deviation_bound(const GeneratorMap& f, const SphereSampler& sampler);

}  // namespace nres
