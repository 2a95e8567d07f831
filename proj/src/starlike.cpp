#include "nres/starlike.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nres/parallel.hpp"

namespace nres {

cxd starlike_quantity(const MapFn& h, const JacFn& h_prime, const CVector& x) {
  const double x2 = norm_sq(x);
  if (x2 < 1e-28) throw DomainViolation("starlike_quantity: x must be nonzero");
  const CVector y = lu_solve(h_prime(x), h(x));
  return inner_product(y, x) / x2;
}

cxd resolvent_starlike_quantity(const ResolventFamily& fam, double lambda, const CVector& x) {
  const double x2 = norm_sq(x);
  if (x2 < 1e-28) throw DomainViolation("resolvent_starlike_quantity: x must be nonzero");
  const SolveResult res = fam.solve(lambda, x);
  if (!res.converged)
    throw ConvergenceFailure("resolvent_starlike_quantity: resolvent solve failed");
  const CVector& w = res.w;
  const CVector v = w + lambda * (fam.generator().frechet_extended(w) * w);
  return inner_product(v, x) / x2;
}

OrderEstimate order_estimate(const QuantityFn& quantity, int dim, const SphereSampler& sampler,
                             const std::string& method) {
  auto order_at = [&](const CVector& x) {
    const cxd s = quantity(x);
    if (std::abs(s) < 1e-14) return std::numeric_limits<double>::quiet_NaN();
    return std::real(1.0 / s);
  };

  const auto points = sampler.ball_points(dim);
  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) { values[i] = order_at(points[i]); });

  OrderEstimate est;
  est.method = method;
  est.samples_used = static_cast<long>(points.size());
  double gmin = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      est.degenerate = true;
      continue;
    }
    if (values[i] < gmin) {
      gmin = values[i];
      arg = i;
    }
  }
  if (!std::isfinite(gmin)) {
    est.degenerate = true;
    est.gamma_hat = 0.0;
    return est;
  }
  CVector worst = points[arg];

  // Polish at the worst sample's radius and at the outermost radius; the
  // infimum is typically approached near the boundary.
  auto guarded = [&](const CVector& x) {
    const double v = order_at(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  auto polish = [&](const CVector& start, double radius, std::uint64_t salt) {
    auto [x, v] = refine_on_sphere(guarded, start, radius, /*maximize=*/false,
                                   mix_seed(sampler.seed(), salt));
    if (v < gmin) {
      gmin = v;
      worst = x;
    }
  };
  polish(worst, norm(worst), 0x6f726431ULL);
  const double rmax = sampler.max_radius();
  if (std::abs(norm(worst) - rmax) > 1e-12) polish(worst, rmax, 0x6f726432ULL);

  est.gamma_hat = std::clamp(gmin, 0.0, 1.0);
  est.worst_point = worst;
  return est;
}

OrderEstimate resolvent_order_estimate(const ResolventFamily& fam, double lambda,
                                       const SphereSampler& sampler) {
  QuantityFn q = [&fam, lambda](const CVector& x) {
    return resolvent_starlike_quantity(fam, lambda, x);
  };
  return order_estimate(q, fam.generator().dim(), sampler, "resolvent-identity");
}

DiagnosticsReport order_half_check(const ResolventFamily& fam, double lambda,
                                   const BoundsProfile& profile, const SphereSampler& sampler,
                                   double tolerance) {
  DiagnosticsReport rep;
  CheckRecord c;
  c.name = "starlike.order_half";
  c.threshold = tolerance;
  const LambdaStar ls = lambda_star(profile);
  if (!ls.always_below_one && lambda < ls.value) {
    c.vacuous = true;
    c.note = "not applicable: lambda " + format_double(lambda) + " below threshold " +
             format_double(ls.value);
    rep.checks.push_back(c);
    return rep;
  }
  const OrderEstimate est = resolvent_order_estimate(fam, lambda, sampler);
  c.margin = est.gamma_hat - 0.5;
  c.pass = !est.degenerate && c.margin >= -tolerance;
  c.samples = est.samples_used;
  c.worst_point = est.worst_point;
  c.note = "gamma_hat " + format_double(est.gamma_hat) +
           (ls.always_below_one ? ", applicable for every lambda" : "");
  rep.checks.push_back(c);
  return rep;
}

DiagnosticsReport derivative_bound_order_check(const ResolventFamily& fam, double lambda,
                                               const BoundsProfile& profile,
                                               const SphereSampler& sampler, double tolerance) {
  DiagnosticsReport rep;
  CheckRecord c;
  c.name = "starlike.derivative_bound";
  c.threshold = tolerance;
  const double b = profile.bound_b ? *profile.bound_b
                                   : derivative_deviation_bound(fam.generator(), sampler);
  const double t = b * d_lambda(profile, lambda);
  const double t_max = 2.0 / (2.0 + std::sqrt(5.0));
  if (t > t_max + 1e-12) {
    c.vacuous = true;
    c.note = "not applicable: b*d(lambda) = " + format_double(t) + " beyond " +
             format_double(t_max);
    rep.checks.push_back(c);
    return rep;
  }
  const double required = t <= 1e-15 ? 1.0 : gamma_order(t);
  const OrderEstimate est = resolvent_order_estimate(fam, lambda, sampler);
  c.margin = est.gamma_hat - required;
  c.pass = !est.degenerate && c.margin >= -tolerance;
  c.samples = est.samples_used;
  c.worst_point = est.worst_point;
  c.note = "gamma_hat " + format_double(est.gamma_hat) + ", required " + format_double(required) +
           ", b " + format_double(b);
  rep.checks.push_back(c);
  return rep;
}

double derivative_deviation_bound(const GeneratorMap& f, const SphereSampler& sampler) {
  const CMatrix a = f.linear_part();
  auto ratio = [&](const CVector& x) {
    const double nx = norm(x);
    return (f.frechet(x) - a).operator_norm() / nx;
  };
  const auto dirs = sampler.directions(f.dim());
  const auto& radii = sampler.radial_grid();
  const auto phases = phase_grid(f.dim() == 1 ? 16 : 4);
  double best = 0.0;
  CVector best_x;
  for (const CVector& u : dirs)
    for (double r : radii)
      for (double phi : phases) {
        const cxd s = std::polar(r, phi);
        CVector x = u;
        for (cxd& c : x) c *= s;
        const double v = ratio(x);
        if (v > best) {
          best = v;
          best_x = std::move(x);
        }
      }
  if (best_x.empty()) return 0.0;
  auto [x, v] = refine_on_sphere(ratio, best_x, norm(best_x), /*maximize=*/true,
                                 mix_seed(sampler.seed(), 0x64657662ULL));
  return std::max(best, v);
}

}  // namespace nres
