#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "nres/bounds.hpp"
#include "nres/commands.hpp"
#include "nres/fixtures.hpp"
#include "nres/numrange.hpp"
#include "nres/resolvent.hpp"
#include "nres/semigroup.hpp"
#include "nres/starlike.hpp"

namespace nres {

using nlohmann::json;

namespace {

CheckRecord make_check(std::string name, double margin, double threshold, std::string note = "") {
  CheckRecord c;
  c.name = std::move(name);
  c.margin = margin;
  c.threshold = threshold;
  c.pass = margin >= -threshold;
  c.note = std::move(note);
  return c;
}

// Closed-form solution branch of the extremal rational fixture, continuous in
// lambda with the identity at 0: the root of (1-l)w^2 + (1+l-x)w - x = 0 that
// vanishes at x = 0.
cxd rational_resolvent_oracle(double lambda, cxd x) {
  if (std::abs(lambda - 1.0) < 1e-14) return x / (2.0 - x);
  const cxd b = cxd(1.0 + lambda, 0.0) - x;
  const cxd disc = b * b + 4.0 * (1.0 - lambda) * x;
  return (-b + std::sqrt(disc)) / (2.0 * (1.0 - lambda));
}

BoundsProfile fixture_profile(const Fixture& fx, const SphereSampler& sampler) {
  BoundsProfile p = profile_from_generator(fx.map, fx.a, sampler);
  p.bound_b = fx.bound_b;
  return p;
}

struct Suite {
  std::vector<CheckRecord> checks;
  const SphereSampler sampler;
  const std::vector<Fixture> corpus = fixture_corpus();

  explicit Suite(const SamplerConfig& sc)
      : sampler(sc.seed, std::min(sc.count, 120), sc.radial_grid) {}

  void add(CheckRecord c) { checks.push_back(std::move(c)); }

  void holomap_invariants() {
    // Analytic Jacobians against central finite differences at seeded points.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const SphereSampler fd_sampler(mix_seed(sampler.seed(), 0xfd), 1000,
                                       {0.1, 0.3, 0.5, 0.7, 0.85});
        const double h = 1e-5;
        for (const CVector& x : fd_sampler.ball_points(fx.map.dim())) {
          const CMatrix jac = fx.map.frechet(x);
          for (int k = 0; k < fx.map.dim(); ++k) {
            CVector xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const CVector fp = fx.map.eval_extended(xp);
            const CVector fm = fx.map.eval_extended(xm);
            for (int i = 0; i < fx.map.dim(); ++i) {
              const cxd fd = (fp[i] - fm[i]) / (2.0 * h);
              worst = std::min(worst, 1e-6 - std::abs(fd - jac(i, k)));
            }
          }
        }
      }
      add(make_check("holomap.frechet_fd", worst, 0.0, "analytic vs central differences"));
    }
    // Homogeneity of stored and expanded terms under complex scaling.
    {
      Rng rng(mix_seed(sampler.seed(), 0x686f6d6fULL));
      std::vector<HomogeneousTerm> terms = quadratic_generator().taylor_homogeneous(4);
      for (const HomogeneousTerm& t : rational_generator().taylor_homogeneous(8))
        terms.push_back(t);
      double worst = std::numeric_limits<double>::infinity();
      for (const HomogeneousTerm& t : terms) {
        for (int rep = 0; rep < 40; ++rep) {
          const CVector x = random_unit_vector(rng, t.dim());
          const double mag = rng.uniform();
          const cxd s = std::polar(mag, 6.283185307179586 * rng.uniform());
          cxd spow(1.0, 0.0);
          for (int d = 0; d < t.degree(); ++d) spow *= s;
          const CVector lhs = t.eval(s * x);
          const CVector rhs = spow * t.eval(x);
          worst = std::min(worst, 1e-12 - norm(lhs - rhs));
        }
      }
      add(make_check("holomap.homogeneity", worst, 0.0));
    }
    // Sphere sup-norm estimates grow with the radius.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        double prev = 0.0;
        for (double r : {0.15, 0.3, 0.45, 0.6, 0.75, 0.9}) {
          const double m = sup_norm(fx.map, r, sampler);
          worst = std::min(worst, m - prev);
          prev = m;
        }
      }
      add(make_check("holomap.supnorm_monotone", worst, 1e-12));
    }
    // Rational expansion re-summed to degree 30 reproduces the map.
    {
      const GeneratorMap f = rational_generator();
      const CMatrix lin = f.linear_part();
      const auto terms = f.taylor_homogeneous(30);
      double worst = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 64; ++i) {
        const cxd z = std::polar(0.5 * (i % 8 + 1) / 8.0, 6.283185307179586 * i / 64.0);
        const CVector x{z};
        CVector sum = lin * x;
        for (const HomogeneousTerm& t : terms) sum += t.eval(x);
        worst = std::min(worst, 1e-8 - norm(sum - f.eval(x)));
      }
      add(make_check("holomap.taylor_resum", worst, 0.0));
    }
  }

  void numrange_invariants() {
    std::vector<CMatrix> mats;
    mats.push_back(CMatrix::identity(2));
    mats.push_back(CMatrix::diagonal({cxd(1.0, 0.0), cxd(2.0, 0.0)}));
    CMatrix jordan(2);
    jordan(0, 0) = 1.0;
    jordan(0, 1) = 1.0;
    jordan(1, 1) = 1.0;
    mats.push_back(jordan);
    CMatrix skew(2);
    skew(0, 0) = cxd(0.0, 1.0);
    skew(0, 1) = cxd(0.3, -0.2);
    skew(1, 1) = cxd(-0.5, 0.4);
    mats.push_back(skew);
    // Support-function width is non-negative in every direction.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const CMatrix& m : mats)
        for (int k = 0; k < 36; ++k) {
          const double theta = 6.283185307179586 * k / 36.0;
          worst = std::min(worst,
                           support_function(m, theta) + support_function(m, theta + std::numbers::pi));
        }
      add(make_check("numrange.support_convexity", worst, 1e-11));
    }
    // Positive homogeneity in the operator.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const CMatrix& m : mats)
        for (double c : {0.5, 2.0, 3.7})
          for (double theta : {0.0, 1.1, std::numbers::pi}) {
            const double lhs = support_function(c * m, theta);
            const double rhs = c * support_function(m, theta);
            worst = std::min(worst, 1e-10 - std::abs(lhs - rhs));
          }
      add(make_check("numrange.support_homogeneous", worst, 0.0));
    }
    // Certified fixtures satisfy all pointwise inequality margins.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const DiagnosticsReport rep = equivalence_diagnostics(fx.map, fx.a, sampler);
        for (const CheckRecord& c : rep.checks) worst = std::min(worst, c.margin);
      }
      add(make_check("numrange.margins", worst, 1e-9));
    }
    // The negated identity is decisively non-accretive.
    {
      const AccretivityReport rep = accretivity_constant(negated_identity_generator(), sampler);
      add(make_check("numrange.negative_map", -0.9 - rep.a_star, 0.0,
                     "a_star " + format_double(rep.a_star)));
    }
    // Accretivity constants scale linearly under positive scaling of the map.
    {
      double worst = std::numeric_limits<double>::infinity();
      const double base = accretivity_constant(rational_generator(), sampler).a_star;
      for (double c : {0.5, 2.0}) {
        std::vector<cxd> num{cxd(0.0, 0.0), cxd(c, 0.0), cxd(-c, 0.0)};
        const GeneratorMap scaled =
            GeneratorMap::rational_disk(std::move(num), {cxd(1.0, 0.0), cxd(1.0, 0.0)});
        const double got = accretivity_constant(scaled, sampler).a_star;
        worst = std::min(worst, 1e-9 - std::abs(got - c * base));
      }
      const double ident = accretivity_constant(identity_generator(), sampler).a_star;
      CMatrix half(1);
      half(0, 0) = 0.5;
      const double got = accretivity_constant(GeneratorMap::linear_map(half), sampler).a_star;
      worst = std::min(worst, 1e-9 - std::abs(got - 0.5 * ident));
      add(make_check("numrange.scaling", worst, 0.0));
    }
    // Expansion coefficient bounds hold across the corpus.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const DiagnosticsReport rep = coefficient_bound_check(fx.map, fx.a, 8, sampler);
        for (const CheckRecord& c : rep.checks) worst = std::min(worst, c.margin);
      }
      add(make_check("numrange.coefficient_bounds", worst, 1e-9));
    }
  }

  void resolvent_invariants() {
    // Residuals of converged solves.
    {
      double worst_resid = 0.0;
      long failures = 0;
      for (const Fixture& fx : corpus) {
        const ResolventFamily fam(fx.map, fx.a);
        for (double lambda : {0.5, 4.0})
          for (const CVector& x : sampler.ball_points(fx.map.dim())) {
            const SolveResult res = fam.solve(lambda, x);
            if (!res.converged)
              ++failures;
            else
              worst_resid = std::max(worst_resid, res.residual);
          }
      }
      add(make_check("resolvent.residual", 1e-10 - worst_resid - failures, 0.0,
                     "max residual " + format_double(worst_resid)));
    }
    // The origin is fixed.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const ResolventFamily fam(fx.map, fx.a);
        for (double lambda : {0.5, 3.0}) {
          const SolveResult res = fam.solve(lambda, CVector(fx.map.dim(), cxd(0.0, 0.0)));
          worst = std::min(worst, 1e-15 - norm(res.w));
        }
      }
      add(make_check("resolvent.zero_fixed", worst, 0.0));
    }
    // Linear and geometric continuation schedules agree.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        SolverOptions linear_opts, geometric_opts;
        geometric_opts.geometric_schedule = true;
        const ResolventFamily fam_lin(fx.map, fx.a, linear_opts);
        const ResolventFamily fam_geo(fx.map, fx.a, geometric_opts);
        CVector x = sampler.directions(fx.map.dim()).front();
        for (cxd& c : x) c *= 0.7;
        const SolveResult r1 = fam_lin.solve(2.5, x);
        const SolveResult r2 = fam_geo.solve(2.5, x);
        worst = std::min(worst, 1e-8 - norm(r1.w - r2.w) - (r1.converged && r2.converged ? 0 : 1));
      }
      add(make_check("resolvent.path_independence", worst, 0.0));
    }
    // Contraction under the upper distortion factor, vanishing as lambda grows.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const BoundsProfile profile = fixture_profile(fx, sampler);
        const ResolventFamily fam(fx.map, fx.a);
        CVector x = sampler.directions(fx.map.dim()).front();
        for (cxd& c : x) c *= 0.8;
        double prev = std::numeric_limits<double>::infinity();
        for (double lambda : {1.0, 10.0, 100.0}) {
          const SolveResult res = fam.solve(lambda, x);
          const double bound = alpha(profile, lambda) * norm(x);
          worst = std::min(worst, bound + 1e-9 - norm(res.w));
          worst = std::min(worst, prev - norm(res.w) + 1e-12);
          prev = norm(res.w);
        }
        const SolveResult far = fam.solve(1e4, x);
        worst = std::min(worst, 1e-3 - norm(far.w));
      }
      add(make_check("resolvent.contraction", worst, 0.0));
    }
    // Closed-form oracles.
    {
      double worst = std::numeric_limits<double>::infinity();
      const ResolventFamily ident(identity_generator(), 1.0);
      const ResolventFamily rational(rational_generator(), 0.0);
      const ResolventFamily diag(diag_generator(), 1.0);
      for (double lambda : {0.5, 1.0, 4.0}) {
        for (double xr : {0.2, 0.5, -0.6}) {
          const cxd x(xr, 0.15);
          const SolveResult ri = ident.solve(lambda, {x});
          worst = std::min(worst, 1e-10 - std::abs(ri.w[0] - x / (1.0 + lambda)));
          const SolveResult rr = rational.solve(lambda, {x});
          worst = std::min(worst, 1e-10 - std::abs(rr.w[0] - rational_resolvent_oracle(lambda, x)));
        }
        const CVector x2{cxd(0.4, 0.0), cxd(0.2, -0.1)};
        const SolveResult rd = diag.solve(lambda, x2);
        worst = std::min(worst, 1e-10 - std::abs(rd.w[0] - x2[0] / (1.0 + lambda)));
        worst = std::min(worst, 1e-10 - std::abs(rd.w[1] - x2[1] / (1.0 + 2.0 * lambda)));
      }
      add(make_check("resolvent.closed_form", worst, 0.0));
    }
  }

  void bounds_invariants() {
    std::vector<BoundsProfile> profiles;
    for (const Fixture& fx : corpus) profiles.push_back(fixture_profile(fx, sampler));
    // alpha is non-increasing and vanishes at infinity.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const BoundsProfile& p : profiles) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 60; ++i) {
          const double lambda = 0.05 * std::pow(1.2, i);
          const double a = alpha(p, lambda);
          worst = std::min(worst, prev - a);
          prev = a;
        }
        worst = std::min(worst, 1e-4 - alpha(p, 1e6));
      }
      add(make_check("bounds.alpha_monotone", worst, 1e-14));
    }
    // Branch continuity of the extension radii at the crossover.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (BoundsProfile p : profiles) {
        if (!(3.0 * p.a + p.k_pi < 0.0)) continue;
        const double lb = 2.0 / std::abs(3.0 * p.a + p.k_pi);
        const double outer = -2.0 * lb * (p.a + p.k_pi);
        const double inner = -(2.0 * lb * p.a + lb * p.k_pi + 1.0);
        const double rho2 = std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0);
        const double image2 = std::sqrt(outer / inner) - 1.0;
        worst = std::min(worst, 1e-10 - std::abs(rho2 - (1.0 + lb * p.a)));
        worst = std::min(worst, 1e-10 - std::abs(image2 - 1.0));
        const RadiusPair just_below = resolvent_radii(p, lb * (1.0 - 1e-12));
        worst = std::min(worst, 1e-10 - std::abs(just_below.domain_radius - (1.0 + lb * p.a)));
      }
      // Synthetic profile with a strict second branch.
      BoundsProfile synth;
      synth.a = 0.1;
      synth.k_pi = -1.0;
      synth.k_zero = 1.0;
      const double lb = 2.0 / std::abs(3.0 * synth.a + synth.k_pi);
      const RadiusPair below = resolvent_radii(synth, lb);
      const double outer = -2.0 * (lb * (synth.a + synth.k_pi));
      const double inner = -(2.0 * lb * synth.a + lb * synth.k_pi + 1.0);
      const double rho2 = std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0);
      worst = std::min(worst, 1e-10 - std::abs(below.domain_radius - rho2));
      add(make_check("bounds.branch_continuity", worst, 0.0));
    }
    // Inverse radii agree with the critical-point closed form.
    {
      double worst = std::numeric_limits<double>::infinity();
      const RadiusPair pair = inverse_radii(1.0, -4.0);
      worst = std::min(worst, 1e-12 - std::abs(pair.domain_radius - (8.0 - 4.0 * std::sqrt(3.0))));
      worst = std::min(worst, 1e-12 - std::abs(pair.image_radius - (std::sqrt(3.0) - 1.0)));
      const RadiusPair boundary = inverse_radii(1.0, -3.0);
      worst = std::min(worst, 1e-12 - std::abs(boundary.domain_radius - 1.0));
      worst = std::min(worst, 1e-12 - std::abs(boundary.image_radius - 1.0));
      add(make_check("bounds.radii_crosscheck", worst, 0.0));
    }
    // psi decreases strictly and stays below psi1 on a 100-point domain grid.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const BoundsProfile& p : profiles) {
        if (!(p.k_zero > p.a)) continue;  // psi identically zero
        const double lo = p.a > 0.0 ? 0.5 : 2.0 / std::abs(p.k_pi) * 1.05;
        const double hi = 80.0;
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
          const double lambda = lo * std::pow(hi / lo, i / 99.0);
          const double v = psi(p, lambda);
          worst = std::min(worst, prev - v);
          worst = std::min(worst, psi1(p, lambda) - v);
          prev = v;
        }
      }
      add(make_check("bounds.psi_monotone", worst, 1e-12));
    }
    // gamma is continuous across its branch point and exact at the corner values:
    // the 1e-3 grid scan bounds every step by the Lipschitz scale, and the
    // branch mismatch at t = 2/5 stays below 1e-6 (it is zero in exact arithmetic).
    {
      double worst = std::numeric_limits<double>::infinity();
      const double t_max = 2.0 / (2.0 + std::sqrt(5.0));
      double prev = gamma_order(1e-3);
      for (double t = 2e-3; t <= t_max; t += 1e-3) {
        const double g = gamma_order(std::min(t, t_max));
        worst = std::min(worst, 0.02 - std::abs(g - prev));
        prev = g;
      }
      const double left = 2.0 * (1.0 - 2.0 * 0.4) / (2.0 - 0.4);
      const double right = (4.0 - 8.0 * 0.4 - 0.16) / (2.0 * (4.0 - 8.0 * 0.4 + 3.0 * 0.16));
      worst = std::min(worst, 1e-6 - std::abs(left - right));
      worst = std::min(worst, 1e-15 - std::abs(gamma_order(0.4) - 0.25));
      worst = std::min(worst, 1e-12 - std::abs(gamma_order(t_max)));
      add(make_check("bounds.gamma_continuity", worst, 0.0));
    }
    // The two closed forms of a_lambda agree.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const BoundsProfile& p : profiles)
        for (int i = 0; i <= 60; ++i) {
          const double lambda = 0.05 * std::pow(1.2, i);
          const double direct = a_lambda(p, lambda);
          const double via_alpha = (1.0 - alpha(p, lambda)) / lambda;
          worst = std::min(worst, 1e-12 - std::abs(direct - via_alpha));
        }
      add(make_check("bounds.alambda_consistency", worst, 0.0));
    }
  }

  void semigroup_invariants() {
    // Halving the tolerance at least halves the deviation from the exact flow.
    {
      const GeneratorMap f = identity_generator();
      const CVector x{cxd(0.5, 0.0)};
      auto deviation = [&](double tol) {
        const Trajectory tr = integrate_cauchy(f, x, 2.0, tol);
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i)
          worst = std::max(worst, std::abs(tr.norms[i] - 0.5 * std::exp(-tr.times[i])));
        return worst;
      };
      double worst = std::numeric_limits<double>::infinity();
      double prev = deviation(1e-5);
      for (double tol : {5e-6, 2.5e-6, 1.25e-6}) {
        const double dev = deviation(tol);
        worst = std::min(worst, 0.5 * prev - dev);
        prev = dev;
      }
      add(make_check("semigroup.tol_scaling", worst, 0.0));
    }
    // Norms never increase along accretive flows.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        CVector x = sampler.directions(fx.map.dim()).front();
        for (cxd& c : x) c *= 0.8;
        const Trajectory tr = integrate_cauchy(fx.map, x, 2.0, 1e-10);
        for (std::size_t i = 1; i < tr.norms.size(); ++i)
          worst = std::min(worst, tr.norms[i - 1] - tr.norms[i]);
      }
      add(make_check("semigroup.norm_monotone", worst, 1e-9));
    }
    // Flow composition property at (t, s) = (0.3, 0.7).
    {
      const double tol = 1e-10;
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        CVector x = sampler.directions(fx.map.dim()).front();
        for (cxd& c : x) c *= 0.6;
        const Trajectory full = integrate_cauchy(fx.map, x, 1.0, tol);
        const Trajectory first = integrate_cauchy(fx.map, x, 0.7, tol);
        const Trajectory second = integrate_cauchy(fx.map, first.states.back(), 0.3, tol);
        worst = std::min(worst, 10.0 * tol - norm(full.states.back() - second.states.back()));
      }
      add(make_check("semigroup.composition", worst, 0.0));
    }
    // Product-formula errors decrease along the iterate ladder.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const ResolventFamily fam(fx.map, fx.a);
        CVector x = sampler.directions(fx.map.dim()).front();
        for (cxd& c : x) c *= 0.4;
        const Table errors = product_formula_errors(fam, 1.0, x, {4, 16, 64, 256});
        for (std::size_t i = 1; i < errors.rows.size(); ++i)
          worst = std::min(worst, errors.rows[i - 1][1] - errors.rows[i][1]);
      }
      add(make_check("semigroup.product_decreasing", worst, 0.0));
    }
  }

  void starlike_invariants() {
    // The starlikeness quantity is invariant under invertible linear factors.
    {
      const GeneratorMap h = quadratic_generator();
      CMatrix b(2);
      b(0, 0) = cxd(1.0, 0.3);
      b(0, 1) = cxd(2.0, 0.0);
      b(1, 0) = cxd(0.5, 0.0);
      b(1, 1) = cxd(-1.0, 1.0);
      MapFn h_fn = [&](const CVector& x) { return h.eval_extended(x); };
      JacFn hp_fn = [&](const CVector& x) { return h.frechet_extended(x); };
      MapFn bh_fn = [&](const CVector& x) { return b * h.eval_extended(x); };
      JacFn bhp_fn = [&](const CVector& x) { return b * h.frechet_extended(x); };
      double worst = std::numeric_limits<double>::infinity();
      for (const CVector& x : SphereSampler(mix_seed(sampler.seed(), 0xb), 50, {0.3, 0.6, 0.9})
                                  .ball_points(2)) {
        const cxd s1 = starlike_quantity(h_fn, hp_fn, x);
        const cxd s2 = starlike_quantity(bh_fn, bhp_fn, x);
        worst = std::min(worst, 1e-10 - std::abs(s1 - s2));
      }
      add(make_check("starlike.scaling_invariance", worst, 0.0));
    }
    // Identity route against a finite-difference model of the resolvent.
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        if (fx.name == "diag12") continue;  // covered by the identity fixture shape
        const ResolventFamily fam(fx.map, fx.a);
        const double lambda = fx.name == "quadratic" ? 1.0 : 4.0;
        MapFn g_fn = [&](const CVector& x) {
          const SolveResult r = fam.solve(lambda, x);
          if (!r.converged) throw ConvergenceFailure("finite-difference model solve failed");
          return r.w;
        };
        JacFn gp_fn = [&](const CVector& x) {
          const double h = 1e-5;
          CMatrix j(fam.generator().dim());
          for (int k = 0; k < j.dim(); ++k) {
            CVector xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const CVector fp = g_fn(xp);
            const CVector fm = g_fn(xm);
            for (int i = 0; i < j.dim(); ++i) j(i, k) = (fp[i] - fm[i]) / (2.0 * h);
          }
          return j;
        };
        for (const CVector& x :
             SphereSampler(mix_seed(sampler.seed(), 0x2b), 12, {0.3, 0.6}).ball_points(fx.map.dim())) {
          const cxd direct = resolvent_starlike_quantity(fam, lambda, x);
          const cxd generic = starlike_quantity(g_fn, gp_fn, x);
          worst = std::min(worst, 1e-6 - std::abs(direct - generic));
        }
      }
      add(make_check("starlike.two_paths", worst, 0.0));
    }
    // Sampled orders stay positive across the corpus (recorded, not a theorem).
    {
      double worst = std::numeric_limits<double>::infinity();
      for (const Fixture& fx : corpus) {
        const ResolventFamily fam(fx.map, fx.a);
        for (double lambda : {0.5, 2.0, 10.0}) {
          const OrderEstimate est = resolvent_order_estimate(fam, lambda, sampler);
          worst = std::min(worst, est.gamma_hat);
        }
      }
      CheckRecord c = make_check("starlike.positive_order", worst, 0.0,
                                 "empirical support only; smallest sampled order");
      c.informational = true;
      c.pass = worst > 0.0;
      add(std::move(c));
    }
    // Disk condition and reciprocal-part condition agree exactly.
    {
      Rng rng(mix_seed(sampler.seed(), 0x646973ULL));
      long disagreements = 0;
      for (int i = 0; i < 10000; ++i) {
        const cxd s = std::polar(0.01 + 3.0 * rng.uniform(), 6.283185307179586 * rng.uniform());
        const double gamma = 1e-3 + (1.0 - 1e-3) * rng.uniform();
        const bool disk = std::abs(s - 0.5 / gamma) <= 0.5 / gamma;
        const bool reciprocal = std::real(1.0 / s) >= gamma;
        if (disk != reciprocal) ++disagreements;
      }
      add(make_check("starlike.disk_equivalence", -static_cast<double>(disagreements), 0.0));
    }
  }

  void cli_invariants(const ExperimentConfig& cfg) {
    // Config round trip is the identity.
    {
      const std::string once = cfg.serialize();
      const std::string twice = ExperimentConfig::parse_text(once).serialize();
      add(make_check("cli.roundtrip", once == twice ? 0.0 : -1.0, 0.0));
    }
    // Identical seeds reproduce byte-identical tables.
    {
      auto render = [&]() {
        const SphereSampler s(cfg.sampler.seed, 64, {0.3, 0.7, 0.95});
        const BoundsProfile p = profile_from_generator(rational_generator(), 0.0, s);
        std::string text = to_csv(bounds_table(p, {2.5, 4.0, 10.0}).to_table());
        const ResolventFamily fam(rational_generator(), 0.0);
        text += to_csv(distortion_check(fam, 4.0, s, p).samples);
        return text;
      };
      add(make_check("cli.determinism", render() == render() ? 0.0 : -1.0, 0.0));
    }
    // Usage and schema errors surface as typed config failures (exit code 2).
    {
      bool ok = true;
      try {
        ExperimentConfig::parse_text("{\"sampler\":{\"seed\":1},\"alpha_override\":2}");
        ok = false;
      } catch (const ConfigError&) {
      }
      try {
        ExperimentConfig::parse_text("{\"sampler\":{\"count\":5}}");
        ok = false;
      } catch (const ConfigError&) {
      }
      try {
        ExperimentConfig cfg2 = cfg;
        cfg2.lambdas.clear();
        run_command("resolve", cfg2);
        ok = false;
      } catch (const ConfigError&) {
      }
      add(make_check("cli.error_mapping", ok ? 0.0 : -1.0, 0.0));
    }
  }
};

}  // namespace

int cmd_verify(const ExperimentConfig& cfg) {
  Suite suite(cfg.sampler);
  suite.holomap_invariants();
  suite.numrange_invariants();
  suite.resolvent_invariants();
  suite.bounds_invariants();
  suite.semigroup_invariants();
  suite.starlike_invariants();
  suite.cli_invariants(cfg);

  json entries = json::array();
  bool pass = true;
  for (const CheckRecord& c : suite.checks) {
    json e{{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}, {"threshold", c.threshold}};
    if (c.informational) e["informational"] = true;
    if (!c.note.empty()) e["note"] = c.note;
    entries.push_back(e);
    if (!c.informational && !c.pass) pass = false;
  }
  json summary{{"command", "verify"},
               {"pass", pass},
               {"invariants", entries},
               {"count", entries.size()},
               {"seed", cfg.sampler.seed}};
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(std::filesystem::path(cfg.out_dir) / "summary.json", std::ios::binary);
  out << summary.dump(2) << "\n";
  for (const CheckRecord& c : suite.checks)
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " (margin " << format_double(c.margin)
              << ")\n";
  std::cout << "verify: " << (pass ? "pass" : "FAIL") << " (" << entries.size()
            << " invariants)\n";
  return pass ? 0 : 1;
}

}  // namespace nres
