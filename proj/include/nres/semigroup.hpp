#pragma once

#include <vector>

#include "nres/generator.hpp"
#include "nres/reports.hpp"
#include "nres/resolvent.hpp"

namespace nres {

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> norms;
  long steps = 0;
  long rejected = 0;
  int clamp_events = 0;

  Table to_table() const;  // columns: t, re/im components, norm
};

/// Integrates u' = -f(u), u(0) = x on [0, T] with an embedded Runge-Kutta 5(4)
/// pair; local error per step is kept below tol*h. States must stay inside the
/// closed ball: a drift past 1 - 1e-12 is radially clamped once (audited),
/// anything beyond 1 + 1e-8 or a second clamp aborts the run.
Trajectory integrate_cauchy(const GeneratorMap& f, const CVector& x, double T, double tol);

/// Exponential decay check ||u(t)|| <= e^{-a t} ||x|| at every accepted step.
DiagnosticsReport squeezing_check(const GeneratorMap& f, double a, const CVector& x, double T,
                                  double ode_tol = 1e-10, double tolerance = 1e-8);

/// n-fold composition of the resolvent at parameter t/n applied to x.
CVector product_formula(const ResolventFamily& fam, double t, int n, const CVector& x);

/// Errors ||product_formula(n) - u(t, x)|| per n; columns (n, error).
Table product_formula_errors(const ResolventFamily& fam, double t, const CVector& x,
                             const std::vector<int>& n_list, double ode_tol = 1e-12);

}  // namespace nres
