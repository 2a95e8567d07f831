#pragma once

#include <string>

#include "nres/bounds.hpp"
#include "nres/generator.hpp"
#include "nres/reports.hpp"
#include "nres/sampler.hpp"

namespace nres {

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  int continuation_steps = 8;
  bool geometric_schedule = false;  // parameter ramp: geometric instead of linear
};

struct SolveResult {
  CVector w;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  int continuation_steps = 0;
  std::string note;
};

/// Solution operator family of w + lambda f(w) = x for an accretive generator.
/// Solves continue in the parameter from 0 (where the operator is the identity)
/// with damped Newton at each stage; failed or too-long stages are bisected.
class ResolventFamily {
 public:
  ResolventFamily(GeneratorMap f, double certified_a, SolverOptions opts = {});

  const GeneratorMap& generator() const { return f_; }
  double certified_a() const { return a_; }
  const SolverOptions& options() const { return opts_; }

  /// Unique w in the ball with w + lambda f(w) = x; requires ||x|| < 1.
  SolveResult solve(double lambda, const CVector& x) const;

  /// Same, recording one trace row per Newton iterate:
  /// (step, mu, re/im of each component of w, residual).
  SolveResult solve(double lambda, const CVector& x, Table* trace) const;

  /// Continuation of the solution along x = t*direction without the ball
  /// restriction; used by the extension-radius march.
  SolveResult solve_extended(double lambda, const CVector& x, const CVector& warm_start) const;

 private:
  GeneratorMap f_;
  double a_;
  SolverOptions opts_;
};

/// Two-sided distortion check beta ||x|| <= ||G(x)|| <= alpha ||x|| over the
/// sampled ball, with worst ratios recorded.
DiagnosticsReport distortion_check(const ResolventFamily& fam, double lambda,
                                   const SphereSampler& sampler, const BoundsProfile& profile,
                                   double tolerance = 1e-9);

/// For alpha(lambda) <= ||w|| < 1 the point w + lambda f(w) must leave the ball.
DiagnosticsReport boundary_pushout_check(const ResolventFamily& fam, double lambda,
                                         const SphereSampler& sampler,
                                         const BoundsProfile& profile, double tolerance = 1e-9);

/// Sampled accretivity constants of f o G_lambda and of G_lambda itself,
/// compared against a_lambda and b_lambda.
DiagnosticsReport composed_accretivity_check(const ResolventFamily& fam, double lambda,
                                             const SphereSampler& sampler,
                                             const BoundsProfile& profile,
                                             double tolerance = 1e-9);

/// Marches x = t*direction with adaptive steps until Newton breaks down or the
/// Jacobian degenerates; returns the largest t reached (a lower estimate of the
/// extension radius along that ray), capped at `cap`. One-dimensional maps only.
double singularity_radius_1d(const ResolventFamily& fam, double lambda, cxd direction,
                             double cap = 10.0);

}  // namespace nres
