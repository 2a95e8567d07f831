#include "nres/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nres/parallel.hpp"

namespace nres {

namespace {

struct NewtonOutcome {
  CVector w;
  double residual = 0.0;
  int iterations = 0;
  bool ok = false;
};

CVector residual_vec(const GeneratorMap& f, double mu, const CVector& x, const CVector& w) {
  CVector fw = f.eval_extended(w);
  CVector r = w;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += mu * fw[i] - x[i];
  return r;
}

NewtonOutcome newton_stage(const GeneratorMap& f, double mu, const CVector& x, CVector w,
                           const SolverOptions& opts, bool keep_in_ball, Table* trace,
                           int* trace_step) {
  NewtonOutcome out;
  double res = norm(residual_vec(f, mu, x, w));
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (trace) {
      std::vector<double> row{static_cast<double>((*trace_step)++), mu};
      for (const cxd& c : w) {
        row.push_back(c.real());
        row.push_back(c.imag());
      }
      row.push_back(res);
      trace->add_row(std::move(row));
    }
    if (res <= opts.tolerance) {
      out.w = std::move(w);
      out.residual = res;
      out.iterations = it;
      out.ok = true;
      return out;
    }
    CMatrix jac = CMatrix::identity(f.dim()) + mu * f.frechet_extended(w);
    CVector rhs = residual_vec(f, mu, x, w);
    for (cxd& c : rhs) c = -c;
    CVector dw;
    try {
      dw = lu_solve(jac, rhs);
    } catch (const SingularMatrix&) {
      break;
    }
    double step = 1.0;
    if (keep_in_ball) {
      while (step > 1e-12 && norm(w + step * dw) >= 1.0 - 1e-13) step *= 0.5;
    }
    CVector w_next;
    double res_next = res;
    bool moved = false;
    while (step > 1e-12) {
      w_next = w + step * dw;
      res_next = norm(residual_vec(f, mu, x, w_next));
      if (res_next <= (1.0 - 0.2 * step) * res) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
    w = std::move(w_next);
    res = res_next;
  }
  out.w = std::move(w);
  out.residual = res;
  out.ok = false;
  return out;
}

}  // namespace

ResolventFamily::ResolventFamily(GeneratorMap f, double certified_a, SolverOptions opts)
    : f_(std::move(f)), a_(certified_a), opts_(opts) {
  if (opts_.continuation_steps < 1) opts_.continuation_steps = 1;
}

SolveResult ResolventFamily::solve(double lambda, const CVector& x) const {
  return solve(lambda, x, nullptr);
}

SolveResult ResolventFamily::solve(double lambda, const CVector& x, Table* trace) const {
  if (!(lambda > 0.0)) throw DomainViolation("resolvent solve: lambda must be positive");
  if (!(norm(x) < 1.0)) throw DomainViolation("resolvent solve: point outside the open unit ball");
  if (trace && trace->columns.empty()) {
    trace->columns = {"step", "mu"};
    for (int i = 0; i < f_.dim(); ++i) {
      trace->columns.push_back("w" + std::to_string(i) + "_re");
      trace->columns.push_back("w" + std::to_string(i) + "_im");
    }
    trace->columns.push_back("residual");
  }

  SolveResult result;
  if (lambda <= 1e-12) {
    result.w = x;
    result.converged = true;
    return result;
  }

  // Parameter targets from 0 to lambda; failed stages are bisected in place.
  std::vector<double> stack;
  const int n_steps = opts_.continuation_steps;
  if (opts_.geometric_schedule) {
    for (int k = 1; k <= n_steps; ++k)
      stack.push_back(lambda * std::pow(0.5, static_cast<double>(n_steps - k)));
  } else {
    for (int k = 1; k <= n_steps; ++k) stack.push_back(lambda * k / n_steps);
  }
  std::reverse(stack.begin(), stack.end());

  CVector w = x;  // solution at mu = 0
  double mu_cur = 0.0;
  int trace_step = 0;
  int stages = 0;
  int total_iterations = 0;
  while (!stack.empty()) {
    if (++stages > 4000) {
      result.w = std::move(w);
      result.residual = norm(residual_vec(f_, mu_cur, x, result.w));
      result.note = "continuation exceeded the stage budget";
      result.continuation_steps = stages;
      return result;
    }
    const double mu_t = stack.back();
    NewtonOutcome stage =
        newton_stage(f_, mu_t, x, w, opts_, /*keep_in_ball=*/true, trace, &trace_step);
    total_iterations += std::max(stage.iterations, 1);
    const bool small_jump = stage.ok && norm(stage.w - w) < 0.1;
    if (small_jump) {
      w = std::move(stage.w);
      mu_cur = mu_t;
      stack.pop_back();
      continue;
    }
    if (mu_t - mu_cur < 1e-13 * lambda) {
      result.w = std::move(w);
      result.residual = norm(residual_vec(f_, mu_cur, x, result.w));
      result.iterations = total_iterations;
      result.continuation_steps = stages;
      result.note = "continuation stalled near mu = " + std::to_string(mu_t);
      return result;
    }
    stack.push_back(0.5 * (mu_cur + mu_t));
  }

  result.w = std::move(w);
  result.residual = norm(residual_vec(f_, lambda, x, result.w));
  result.iterations = total_iterations;
  result.continuation_steps = stages;
  result.converged = result.residual < opts_.tolerance && norm(result.w) < 1.0;
  return result;
}

SolveResult ResolventFamily::solve_extended(double lambda, const CVector& x,
                                            const CVector& warm_start) const {
  if (!(lambda > 0.0)) throw DomainViolation("resolvent solve: lambda must be positive");
  SolverOptions opts = opts_;
  opts.max_iterations = std::max(opts.max_iterations, 300);
  int trace_step = 0;
  NewtonOutcome out =
      newton_stage(f_, lambda, x, warm_start, opts, /*keep_in_ball=*/false, nullptr, &trace_step);
  SolveResult result;
  result.w = std::move(out.w);
  result.residual = out.residual;
  result.iterations = out.iterations;
  result.converged = out.ok;
  return result;
}

DiagnosticsReport distortion_check(const ResolventFamily& fam, double lambda,
                                   const SphereSampler& sampler, const BoundsProfile& profile,
                                   double tolerance) {
  const double al = alpha(profile, lambda);
  const BetaValue be = beta(profile, lambda);
  const auto points = sampler.ball_points(fam.generator().dim());

  struct Row {
    double r = 0.0, ratio = 0.0, upper_margin = 0.0, lower_margin = 0.0, residual = 0.0;
    bool converged = false;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const CVector& x = points[i];
    const SolveResult res = fam.solve(lambda, x);
    Row row;
    row.r = norm(x);
    row.converged = res.converged;
    row.residual = res.residual;
    if (res.converged) {
      const double gw = norm(res.w);
      row.ratio = gw / row.r;
      row.upper_margin = al * row.r - gw;
      row.lower_margin = gw - be.value * row.r;
    }
    rows[i] = row;
  });

  DiagnosticsReport rep;
  rep.samples = Table{{"r", "ratio", "upper_margin", "lower_margin", "residual"}, {}};
  double worst_upper = std::numeric_limits<double>::infinity();
  double worst_lower = std::numeric_limits<double>::infinity();
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = -std::numeric_limits<double>::infinity();
  std::size_t arg_upper = 0, arg_lower = 0;
  long failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    rep.samples.add_row({row.r, row.ratio, row.upper_margin, row.lower_margin, row.residual});
    if (!row.converged) {
      ++failures;
      continue;
    }
    if (row.upper_margin < worst_upper) {
      worst_upper = row.upper_margin;
      arg_upper = i;
    }
    if (row.lower_margin < worst_lower) {
      worst_lower = row.lower_margin;
      arg_lower = i;
    }
    ratio_min = std::min(ratio_min, row.ratio);
    ratio_max = std::max(ratio_max, row.ratio);
  }

  CheckRecord solver;
  solver.name = "distortion.solver";
  solver.threshold = 0.0;
  solver.margin = -static_cast<double>(failures);
  solver.pass = failures == 0;
  solver.samples = static_cast<long>(rows.size());
  if (failures > 0) solver.note = std::to_string(failures) + " solves failed to converge";
  rep.checks.push_back(solver);

  CheckRecord upper;
  upper.name = "distortion.upper";
  upper.threshold = tolerance;
  upper.margin = worst_upper;
  upper.pass = failures == 0 && worst_upper >= -tolerance;
  upper.samples = static_cast<long>(rows.size());
  upper.worst_point = points[arg_upper];
  upper.note = "max ratio " + format_double(ratio_max) + ", alpha " + format_double(al);
  rep.checks.push_back(upper);

  CheckRecord lower;
  lower.name = "distortion.lower";
  lower.threshold = tolerance;
  lower.margin = worst_lower;
  lower.pass = failures == 0 && worst_lower >= -tolerance;
  lower.vacuous = be.vacuous;
  lower.samples = static_cast<long>(rows.size());
  lower.worst_point = points[arg_lower];
  lower.note = "min ratio " + format_double(ratio_min) + ", beta " + format_double(be.value);
  rep.checks.push_back(lower);
  return rep;
}

DiagnosticsReport boundary_pushout_check(const ResolventFamily& fam, double lambda,
                                         const SphereSampler& sampler,
                                         const BoundsProfile& profile, double tolerance) {
  const double al = alpha(profile, lambda);
  DiagnosticsReport rep;
  rep.samples = Table{{"r", "pushed_norm", "margin"}, {}};
  CheckRecord check;
  check.name = "pushout.norm";
  check.threshold = tolerance;
  if (al >= 1.0 - 1e-12) {
    check.vacuous = true;
    check.note = "alpha(lambda) = 1: the sampled annulus is empty";
    rep.checks.push_back(check);
    return rep;
  }
  const GeneratorMap& f = fam.generator();
  const auto dirs = sampler.directions(f.dim());
  const auto& radii = sampler.radial_grid();
  const auto phases = phase_grid(f.dim() == 1 ? 16 : 4);
  double worst = std::numeric_limits<double>::infinity();
  CVector worst_point;
  for (const CVector& u : dirs) {
    for (double rg : radii) {
      // Remap the radial grid into [alpha, 1).
      const double r = al + (rg / radii.back()) * (1.0 - 1e-6 - al);
      if (r < al || r >= 1.0) continue;
      for (double phi : phases) {
        const cxd s = std::polar(r, phi);
        CVector w = u;
        for (cxd& c : w) c *= s;
        const double pushed = norm(w + lambda * f.eval(w));
        const double margin = pushed - 1.0;
        rep.samples.add_row({r, pushed, margin});
        if (margin < worst) {
          worst = margin;
          worst_point = std::move(w);
        }
      }
    }
  }
  check.margin = worst;
  check.pass = worst >= -tolerance;
  check.samples = static_cast<long>(rep.samples.rows.size());
  check.worst_point = worst_point;
  rep.checks.push_back(check);
  return rep;
}

DiagnosticsReport composed_accretivity_check(const ResolventFamily& fam, double lambda,
                                             const SphereSampler& sampler,
                                             const BoundsProfile& profile, double tolerance) {
  const double al = a_lambda(profile, lambda);
  const double bl = b_lambda(profile, lambda);
  const BetaValue be = beta(profile, lambda);
  const GeneratorMap& f = fam.generator();
  const auto points = sampler.ball_points(f.dim());

  struct Row {
    double composed = 0.0, resolvent = 0.0;
    bool converged = false;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const CVector& x = points[i];
    const SolveResult res = fam.solve(lambda, x);
    if (!res.converged) return;
    const double x2 = norm_sq(x);
    rows[i].converged = true;
    rows[i].composed = std::real(inner_product(f.eval(res.w), x)) / x2;
    rows[i].resolvent = std::real(inner_product(res.w, x)) / x2;
  });

  DiagnosticsReport rep;
  rep.samples = Table{{"composed_quotient", "resolvent_quotient"}, {}};
  double worst_composed = std::numeric_limits<double>::infinity();
  double worst_resolvent = std::numeric_limits<double>::infinity();
  std::size_t argc = 0, argr = 0;
  long failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].converged) {
      ++failures;
      continue;
    }
    rep.samples.add_row({rows[i].composed, rows[i].resolvent});
    if (rows[i].composed < worst_composed) {
      worst_composed = rows[i].composed;
      argc = i;
    }
    if (rows[i].resolvent < worst_resolvent) {
      worst_resolvent = rows[i].resolvent;
      argr = i;
    }
  }

  CheckRecord composed;
  composed.name = "composed.generator";
  composed.threshold = tolerance;
  composed.margin = worst_composed - al;
  composed.pass = failures == 0 && composed.margin >= -tolerance;
  composed.samples = static_cast<long>(rows.size());
  composed.worst_point = points[argc];
  composed.note = "a_lambda " + format_double(al);
  rep.checks.push_back(composed);

  CheckRecord resolvent;
  resolvent.name = "composed.resolvent";
  resolvent.threshold = tolerance;
  resolvent.margin = worst_resolvent - bl;
  resolvent.pass = failures == 0 && resolvent.margin >= -tolerance;
  resolvent.vacuous = be.vacuous;
  resolvent.samples = static_cast<long>(rows.size());
  resolvent.worst_point = points[argr];
  resolvent.note = "b_lambda " + format_double(bl);
  rep.checks.push_back(resolvent);
  return rep;
}

double singularity_radius_1d(const ResolventFamily& fam, double lambda, cxd direction,
                             double cap) {
  if (fam.generator().dim() != 1)
    throw DomainViolation("singularity_radius_1d: one-dimensional maps only");
  const double dn = std::abs(direction);
  if (dn < 1e-14) throw DomainViolation("singularity_radius_1d: zero direction");
  direction /= dn;

  // Interior start via the regular continuation solve.
  double t_good = 0.5;
  SolveResult base = fam.solve(lambda, {t_good * direction});
  while (!base.converged && t_good > 1e-3) {
    t_good *= 0.5;
    base = fam.solve(lambda, {t_good * direction});
  }
  if (!base.converged)
    throw ConvergenceFailure("singularity_radius_1d: no interior starting point");
  CVector w = base.w;

  const GeneratorMap& f = fam.generator();
  auto jacobian_scalar = [&](const CVector& wv) {
    return cxd(1.0, 0.0) + lambda * f.frechet_extended(wv)(0, 0);
  };

  double dt = 0.05;
  while (t_good < cap && dt > 1e-9) {
    const double t_try = std::min(t_good + dt, cap);
    const CVector x{t_try * direction};
    // Tangent predictor dw/dt = direction / (1 + lambda f'(w)).
    CVector guess = w;
    const cxd jac = jacobian_scalar(w);
    if (std::abs(jac) > 1e-10) guess[0] += (t_try - t_good) * direction / jac;
    const SolveResult res = fam.solve_extended(lambda, x, guess);
    if (res.converged) {
      w = res.w;
      t_good = t_try;
      if (std::abs(jacobian_scalar(w)) < 1e-8) return t_good;  // fold reached
      dt = std::min(dt * 1.4, 0.05);
    } else {
      dt *= 0.5;
    }
  }
  return std::min(t_good, cap);
}

}  // namespace nres
