#include "nres/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nres/numrange.hpp"

namespace nres {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0)) throw DomainViolation("lambda must be positive");
}

}  // namespace

void BoundsProfile::validate() const {
  if (!(a >= 0.0)) throw DomainViolation("profile: a must be non-negative");
  if (!(k_pi < 0.0)) throw DomainViolation("profile: K(pi) must be negative");
  if (!(k_pi + a <= 0.0)) throw DomainViolation("profile: K(pi) + a must be non-positive");
  if (!(k_zero >= a)) throw DomainViolation("profile: K(0) must dominate a");
}

BoundsProfile profile_from_generator(const GeneratorMap& f, double a,
                                     const SphereSampler& sampler) {
  BoundsProfile p;
  p.a = a;
  const CMatrix lin = f.linear_part();
  p.k_pi = support_function(lin, std::numbers::pi);
  p.k_zero = support_function(lin, 0.0);
  p.dim = f.dim();
  p.sup_norm_fn = [f, sampler](double r) { return sup_norm(f, r, sampler); };
  p.validate();
  return p;
}

double alpha(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  return std::min(3.0 / (1.0 - lambda * p.k_pi), 1.0 / (1.0 + lambda * p.a));
}

BetaValue beta(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  if (!p.sup_norm_fn) throw DomainViolation("profile carries no sup-norm access");
  const double al = alpha(p, lambda);
  if (al >= 1.0 - 1e-12) {
    const double near_boundary = p.sup_norm_fn(1.0 - 1e-7);
    if (near_boundary > 1e6) return {0.0, true};
    return {1.0 / (1.0 + lambda * near_boundary), false};
  }
  const double m = p.sup_norm_fn(al);
  return {al / (al + lambda * m), false};
}

RadiusPair resolvent_radii(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  p.validate();
  const double three_a_plus_k = 3.0 * p.a + p.k_pi;
  const bool second_branch = three_a_plus_k < 0.0 && lambda > 2.0 / std::abs(three_a_plus_k);
  if (!second_branch) return {1.0 + lambda * p.a, 1.0};
  const double outer = -2.0 * lambda * (p.a + p.k_pi);
  const double inner = -(2.0 * lambda * p.a + lambda * p.k_pi + 1.0);
  const double rho = std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0);
  const double image = std::sqrt(outer / inner) - 1.0;
  return {rho, image};
}

RadiusPair inverse_radii(double c, double k_theta) {
  if (!(c >= 0.0)) throw DomainViolation("inverse_radii: c must be non-negative");
  if (!(k_theta <= -c)) throw DomainViolation("inverse_radii: requires K(theta) <= -c");
  if (k_theta > -3.0 * c) return {c, 1.0};
  const double outer = std::abs(2.0 * c + 2.0 * k_theta);
  const double inner = std::abs(2.0 * c + k_theta);
  const double rho = std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0);
  const double image = std::sqrt((2.0 * c + 2.0 * k_theta) / (2.0 * c + k_theta)) - 1.0;
  if (c > 0.0) {
    // Same optimum through the critical-point form; the two routes must agree.
    const double b = -k_theta / c;
    const double crosscheck = c * (3.0 * b - 4.0 - 2.0 * std::sqrt(2.0 * (b - 1.0) * (b - 2.0)));
    if (std::abs(crosscheck - rho) > 1e-12 * std::max(1.0, std::abs(rho)))
      throw NumericalError("inverse_radii: branch cross-check failed");
  }
  return {rho, image};
}

double psi(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  const double al = alpha(p, lambda);
  if (!(al < 1.0)) throw DomainViolation("psi: requires alpha(lambda) < 1");
  const double pref = 2.0 * lambda * (p.k_zero - p.a) / (1.0 - lambda * p.k_pi);
  if (pref <= 0.0) return 0.0;
  const double t = al;
  const double full_sq = (1.0 + t) / std::pow(1.0 - t, 3.0);  // sum n^2 t^{n-1}, n >= 1
  double partial_sq = 1.0;
  double sum = 0.0;
  double tn = t;  // t^{n-1}
  for (int n = 2; n < 2000000; ++n) {
    sum += std::pow(static_cast<double>(n), (2.0 * n - 1.0) / (n - 1.0)) * tn;
    partial_sq += static_cast<double>(n) * n * tn;
    const double tail = 2.0 * (full_sq - partial_sq);
    if (tail <= 1e-10 * sum) break;
    if (pref * sum > 1e6) break;  // far above any root of psi = 1; value only compared
    tn *= t;
  }
  return pref * sum;
}

double psi1(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  const double al = alpha(p, lambda);
  if (!(al < 1.0)) throw DomainViolation("psi1: requires alpha(lambda) < 1");
  const double pref = 4.0 * lambda * (p.k_zero - p.a) / (1.0 - lambda * p.k_pi);
  return pref * al * (4.0 - 3.0 * al + al * al) / std::pow(1.0 - al, 3.0);
}

LambdaStar lambda_star(const BoundsProfile& p, double tol) {
  p.validate();
  // Domain of psi: alpha(lambda) < 1, i.e. lambda > 2/|K| when a = 0,
  // every positive lambda otherwise.
  const double domain_inf = p.a > 0.0 ? 0.0 : 2.0 / std::abs(p.k_pi);
  const double lo_probe = domain_inf > 0.0 ? domain_inf * (1.0 + 1e-9) : 1e-9;
  if (psi(p, lo_probe) < 1.0) return {domain_inf, true};
  double lo = lo_probe;
  double hi = std::max(1.0, 2.0 * lo);
  int guard = 0;
  while (psi(p, hi) >= 1.0) {
    hi *= 2.0;
    if (++guard > 200) throw NumericalError("lambda_star: no upper bracket found");
  }
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = psi(p, mid);
    if (std::abs(v - 1.0) <= tol && hi - lo <= 1e-9 * hi) return {mid, false};
    if (v >= 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * hi) break;
  }
  return {0.5 * (lo + hi), false};
}

double a_lambda(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  const double direct =
      std::max(p.a / (1.0 + lambda * p.a), (-2.0 - lambda * p.k_pi) / (lambda * (1.0 - lambda * p.k_pi)));
  const double via_alpha = (1.0 - alpha(p, lambda)) / lambda;
  if (std::abs(direct - via_alpha) > 1e-10 * std::max(1.0, std::abs(direct)))
    throw NumericalError("a_lambda: the two closed forms disagree");
  return direct;
}

double b_lambda(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  const BetaValue be = beta(p, lambda);
  return (1.0 + lambda * p.a) * be.value * be.value;
}

double d_lambda(const BoundsProfile& p, double lambda) {
  require_positive_lambda(lambda);
  return lambda * alpha(p, lambda) / (1.0 - lambda * p.k_pi);
}

DMax d_max(const BoundsProfile& p) {
  p.validate();
  const double k_abs = std::abs(p.k_pi);
  double arg;
  if (9.0 * p.a >= k_abs)
    arg = 1.0 / std::sqrt(p.a * k_abs);
  else
    arg = 2.0 / std::abs(3.0 * p.a + p.k_pi);
  return {d_lambda(p, arg), arg};
}

double gamma_order(double t) {
  const double t_max = 2.0 / (2.0 + std::sqrt(5.0));
  if (!(t > 0.0 && t <= t_max + 1e-15))
    throw DomainViolation("gamma_order: t outside (0, 2/(2+sqrt 5)]");
  if (t < 0.4) return 2.0 * (1.0 - 2.0 * t) / (2.0 - t);
  return (4.0 - 8.0 * t - t * t) / (2.0 * (4.0 - 8.0 * t + 3.0 * t * t));
}

HalfOrderWindow order_half_window(double b) {
  if (!(b > 0.0)) throw DomainViolation("order_half_window: b must be positive");
  const double q = 21.0 * b / 4.0;
  const double s = std::sqrt(q * q + 21.0 * b / 2.0);
  return {1.0 + q - s, 1.0 + q + s};
}

Table BoundsTable::to_table() const {
  Table t{{"lambda", "alpha", "beta", "beta_vacuous", "domain_radius", "image_radius", "a_lambda",
           "b_lambda", "d", "psi", "psi1"},
          {}};
  for (const BoundsRow& r : rows)
    t.add_row({r.lambda, r.alpha, r.beta, r.beta_vacuous ? 1.0 : 0.0, r.domain_radius,
               r.image_radius, r.a_lambda, r.b_lambda, r.d, r.psi, r.psi1});
  return t;
}

BoundsTable bounds_table(const BoundsProfile& p, const std::vector<double>& lambdas) {
  p.validate();
  BoundsTable out;
  out.rows.resize(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l = lambdas[i];
    BoundsRow row;
    row.lambda = l;
    row.alpha = alpha(p, l);
    const BetaValue be = beta(p, l);
    row.beta = be.value;
    row.beta_vacuous = be.vacuous;
    const RadiusPair rad = resolvent_radii(p, l);
    row.domain_radius = rad.domain_radius;
    row.image_radius = rad.image_radius;
    row.a_lambda = a_lambda(p, l);
    row.b_lambda = b_lambda(p, l);
    row.d = d_lambda(p, l);
    if (row.alpha < 1.0) {
      row.psi = psi(p, l);
      row.psi1 = psi1(p, l);
    } else {
      row.psi = kNaN;
      row.psi1 = kNaN;
    }
    out.rows[i] = row;
  }
  out.lstar = lambda_star(p);
  out.dmax = d_max(p);
  return out;
}

}  // namespace nres
