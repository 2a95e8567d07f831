#pragma once

#include "nres/generator.hpp"
#include "nres/reports.hpp"

namespace nres {

/// Support function of the numerical range of a matrix in direction theta:
/// the top eigenvalue of the Hermitian part of e^{-i theta} A, computed by
/// cyclic Jacobi rotations. Exact unit phases are used at multiples of pi/2.
double support_function(const CMatrix& a, double theta);

/// Sampled accretivity constant: min over ball samples of Re<f(x),x>/||x||^2,
/// with a seeded sphere polish. The result is an upper estimate of the true
/// infimum; certification must keep a safety margin below it.
AccretivityReport accretivity_constant(const GeneratorMap& f, const SphereSampler& sampler);

/// True when the linearization f'(0) is strongly accretive compatibly with the
/// given constant: K(pi) < 0 and K(pi) + a <= 0.
bool strongly_accretive_linear_part(const GeneratorMap& f, double a);

/// Pointwise inequality diagnostics for membership in the accretive class:
/// disk containment of <f(x),x>, the radial lower bound, and the derivative
/// form. Each margin must stay above -tolerance for a certified map.
DiagnosticsReport equivalence_diagnostics(const GeneratorMap& f, double a,
                                          const SphereSampler& sampler, double tolerance = 1e-9);

/// Homogeneous-expansion coefficient bounds: for n = 2..max_degree the term
/// norm estimate must not exceed 2 n^{n/(n-1)} (K(0) - a).
DiagnosticsReport coefficient_bound_check(const GeneratorMap& f, double a, int max_degree,
                                          const SphereSampler& sampler, double tolerance = 1e-9);

}  // namespace nres
