#include "nres/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace nres {

namespace {

// Dormand-Prince 5(4) tableau; the fifth-order solution propagates (FSAL).
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

CVector combine(const CVector& base, double h, std::initializer_list<std::pair<double, const CVector*>> parts) {
  CVector out = base;
  for (const auto& [c, v] : parts)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*v)[i];
  return out;
}

}  // namespace

Table Trajectory::to_table() const {
  Table t;
  t.columns.push_back("t");
  const int dim = states.empty() ? 0 : static_cast<int>(states.front().size());
  for (int i = 0; i < dim; ++i) {
    t.columns.push_back("u" + std::to_string(i) + "_re");
    t.columns.push_back("u" + std::to_string(i) + "_im");
  }
  t.columns.push_back("norm");
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> row{times[k]};
    for (const cxd& c : states[k]) {
      row.push_back(c.real());
      row.push_back(c.imag());
    }
    row.push_back(norms[k]);
    t.add_row(std::move(row));
  }
  return t;
}

Trajectory integrate_cauchy(const GeneratorMap& f, const CVector& x, double T, double tol) {
  if (!(norm(x) < 1.0)) throw DomainViolation("integrate_cauchy: start outside the open ball");
  if (!(T > 0.0)) throw DomainViolation("integrate_cauchy: horizon must be positive");
  if (!(tol > 0.0)) throw DomainViolation("integrate_cauchy: tolerance must be positive");

  auto rhs = [&](const CVector& u) {
    CVector v = f.eval_extended(u);
    for (cxd& c : v) c = -c;
    return v;
  };

  Trajectory tr;
  CVector u = x;
  double t = 0.0;
  tr.times.push_back(0.0);
  tr.states.push_back(u);
  tr.norms.push_back(norm(u));

  CVector k1 = rhs(u);
  double h = std::min(T, 1e-2);
  long guard = 0;
  while (t < T) {
    if (++guard > 10000000) throw NumericalError("integrate_cauchy: step budget exceeded");
    h = std::min(h, T - t);
    const CVector k2 = rhs(combine(u, h, {{kA21, &k1}}));
    const CVector k3 = rhs(combine(u, h, {{kA31, &k1}, {kA32, &k2}}));
    const CVector k4 = rhs(combine(u, h, {{kA41, &k1}, {kA42, &k2}, {kA43, &k3}}));
    const CVector k5 = rhs(combine(u, h, {{kA51, &k1}, {kA52, &k2}, {kA53, &k3}, {kA54, &k4}}));
    const CVector k6 = rhs(
        combine(u, h, {{kA61, &k1}, {kA62, &k2}, {kA63, &k3}, {kA64, &k4}, {kA65, &k5}}));
    const CVector u5 =
        combine(u, h, {{kB1, &k1}, {kB3, &k3}, {kB4, &k4}, {kB5, &k5}, {kB6, &k6}});
    const CVector k7 = rhs(u5);
    const CVector errv = combine(CVector(u.size(), cxd(0.0, 0.0)), h,
                                 {{kE1, &k1}, {kE3, &k3}, {kE4, &k4}, {kE5, &k5}, {kE6, &k6}, {kE7, &k7}});
    const double err = norm(errv);
    if (err <= tol * h || h <= 1e-14) {
      t += h;
      u = u5;
      const double un = norm(u);
      if (un > 1.0 + 1e-8)
        throw NumericalError("integrate_cauchy: state escaped the closed ball");
      if (un >= 1.0 - 1e-12) {
        const double s = (1.0 - 1e-12) / un;
        for (cxd& c : u) c *= s;
        if (++tr.clamp_events > 1)
          throw NumericalError("integrate_cauchy: repeated radial clamping");
      }
      ++tr.steps;
      tr.times.push_back(t);
      tr.states.push_back(u);
      tr.norms.push_back(norm(u));
      k1 = k7;
      const double fac = 0.9 * std::pow(tol * h / std::max(err, 1e-300), 0.25);
      h *= std::clamp(fac, 0.2, 5.0);
    } else {
      ++tr.rejected;
      h *= std::max(0.2, 0.9 * std::pow(tol * h / err, 0.25));
    }
  }
  return tr;
}

DiagnosticsReport squeezing_check(const GeneratorMap& f, double a, const CVector& x, double T,
                                  double ode_tol, double tolerance) {
  const Trajectory tr = integrate_cauchy(f, x, T, ode_tol);
  const double x0 = norm(x);
  DiagnosticsReport rep;
  rep.samples = Table{{"t", "norm", "bound", "margin"}, {}};
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double bound = std::exp(-a * tr.times[i]) * x0;
    const double margin = bound - tr.norms[i];
    rep.samples.add_row({tr.times[i], tr.norms[i], bound, margin});
    worst = std::min(worst, margin);
  }
  CheckRecord c;
  c.name = "squeezing.bound";
  c.threshold = tolerance;
  c.margin = worst;
  c.pass = worst >= -tolerance;
  c.samples = static_cast<long>(tr.times.size());
  c.worst_point = x;
  rep.checks.push_back(c);
  return rep;
}

CVector product_formula(const ResolventFamily& fam, double t, int n, const CVector& x) {
  if (!(t > 0.0)) throw DomainViolation("product_formula: t must be positive");
  if (n < 1) throw DomainViolation("product_formula: n must be at least 1");
  if (!(norm(x) < 1.0)) throw DomainViolation("product_formula: point outside the open ball");
  CVector w = x;
  const double step = t / n;
  for (int k = 0; k < n; ++k) {
    const SolveResult res = fam.solve(step, w);
    if (!res.converged)
      throw ConvergenceFailure("product_formula: resolvent solve failed at iterate " +
                               std::to_string(k));
    w = res.w;
  }
  return w;
}

Table product_formula_errors(const ResolventFamily& fam, double t, const CVector& x,
                             const std::vector<int>& n_list, double ode_tol) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw DomainViolation("product_formula_errors: n_list must increase");
  const Trajectory tr = integrate_cauchy(fam.generator(), x, t, ode_tol);
  const CVector& reference = tr.states.back();
  Table out{{"n", "error"}, {}};
  for (int n : n_list) {
    const CVector w = product_formula(fam, t, n, x);
    out.add_row({static_cast<double>(n), norm(w - reference)});
  }
  return out;
}

}  // namespace nres
