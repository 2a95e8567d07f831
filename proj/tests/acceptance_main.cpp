// Acceptance suite: every release criterion runs at its stated tolerance and
// prints one pass/fail line. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nres/bounds.hpp"
#include "nres/commands.hpp"
#include "nres/fixtures.hpp"
#include "nres/numrange.hpp"
#include "nres/resolvent.hpp"
#include "nres/semigroup.hpp"
#include "nres/starlike.hpp"

using namespace nres;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

const std::vector<double> kRadialGrid{0.1, 0.3, 0.5, 0.7, 0.85, 0.95, 0.99, 0.9999};

SphereSampler sampler(int count, std::uint64_t salt = 0) {
  return SphereSampler(20260811 + salt, count, kRadialGrid);
}

BoundsProfile fixture_profile(const Fixture& fx, const SphereSampler& s) {
  BoundsProfile p = profile_from_generator(fx.map, fx.a, s);
  p.bound_b = fx.bound_b;
  return p;
}

cxd rational_oracle(double lambda, cxd x) {
  if (std::abs(lambda - 1.0) < 1e-14) return x / (2.0 - x);
  const cxd b = cxd(1.0 + lambda, 0.0) - x;
  return (-b + std::sqrt(b * b + 4.0 * (1.0 - lambda) * x)) / (2.0 * (1.0 - lambda));
}

Outcome criterion_sharpness() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const SphereSampler s = sampler(100, 1);
  const ResolventFamily fam(rational_generator(), 0.0);
  const BoundsProfile profile = profile_from_generator(rational_generator(), 0.0, s);
  for (double lambda : {3.0, 4.0, 10.0}) {
    const double reached = singularity_radius_1d(fam, lambda, cxd(1.0, 0.0));
    const double oracle = 3.0 * lambda - 1.0 - 2.0 * std::sqrt(2.0 * lambda * (lambda - 1.0));
    const double rho = resolvent_radii(profile, lambda).domain_radius;
    out.require(std::abs(reached - oracle) < 1e-6,
                "march vs discriminant oracle at lambda " + format_double(lambda) + ": " +
                    format_double(reached) + " vs " + format_double(oracle));
    out.require(std::abs(reached - rho) < 1e-6,
                "march vs extension radius at lambda " + format_double(lambda));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 5.0, "runtime " + format_double(secs) + " s exceeds 5 s");
  return out;
}

Outcome criterion_distortion() {
  Outcome out;
  const SphereSampler s = sampler(500, 2);
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(0.25 * std::pow(16.0 / 0.25, i / 19.0));
  for (const Fixture& fx : fixture_corpus()) {
    const BoundsProfile profile = fixture_profile(fx, s);
    const ResolventFamily fam(fx.map, fx.a);
    for (double lambda : grid) {
      const DiagnosticsReport rep = distortion_check(fam, lambda, s, profile, 1e-9);
      out.require(rep.all_pass(), fx.name + " distortion at lambda " + format_double(lambda));
    }
  }
  // Linear fixtures attain the upper bound along the slowest eigendirection.
  const ResolventFamily ident(identity_generator(), 1.0);
  const BoundsProfile iprof = fixture_profile(fixture_corpus()[0], s);
  const ResolventFamily diag(diag_generator(), 1.0);
  const BoundsProfile dprof = fixture_profile(fixture_corpus()[1], s);
  for (double lambda : grid) {
    const SolveResult ri = ident.solve(lambda, {cxd(0.5, 0.0)});
    out.require(std::abs(norm(ri.w) / 0.5 - alpha(iprof, lambda)) < 1e-10,
                "identity attainment at lambda " + format_double(lambda));
    const SolveResult rd = diag.solve(lambda, {cxd(0.5, 0.0), cxd(0.0, 0.0)});
    out.require(std::abs(norm(rd.w) / 0.5 - alpha(dprof, lambda)) < 1e-10,
                "diag attainment at lambda " + format_double(lambda));
  }
  return out;
}

Outcome criterion_residuals() {
  Outcome out;
  const SphereSampler s = sampler(200, 3);
  for (const Fixture& fx : fixture_corpus()) {
    const ResolventFamily fam(fx.map, fx.a);
    for (double lambda : {0.5, 1.0, 4.0}) {
      for (const CVector& x : s.ball_points(fx.map.dim())) {
        const SolveResult res = fam.solve(lambda, x);
        out.require(res.converged, fx.name + ": solve failed");
        if (!res.converged) return out;
        out.require(res.residual < 1e-10, fx.name + ": residual " + format_double(res.residual));
      }
    }
  }
  const ResolventFamily ident(identity_generator(), 1.0);
  const ResolventFamily rational(rational_generator(), 0.0);
  const ResolventFamily diag(diag_generator(), 1.0);
  for (const CVector& x : s.ball_points(1)) {
    const SolveResult ri = ident.solve(2.5, x);
    out.require(std::abs(ri.w[0] - x[0] / 3.5) < 1e-10, "identity closed form");
    const SolveResult rr = rational.solve(1.0, x);
    out.require(std::abs(rr.w[0] - x[0] / (2.0 - x[0])) < 1e-10, "mobius closed form");
  }
  for (const CVector& x : s.ball_points(2)) {
    const SolveResult rd = diag.solve(2.0, x);
    out.require(std::abs(rd.w[0] - x[0] / 3.0) < 1e-10 && std::abs(rd.w[1] - x[1] / 5.0) < 1e-10,
                "diagonal closed form");
  }
  return out;
}

Outcome criterion_squeezing() {
  Outcome out;
  const Trajectory tr = integrate_cauchy(identity_generator(), {cxd(0.5, 0.0)}, 3.0, 1e-11);
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    out.require(std::abs(tr.norms[i] - 0.5 * std::exp(-tr.times[i])) < 1e-8,
                "identity flow deviates at t " + format_double(tr.times[i]));
  for (const Fixture& fx : fixture_corpus()) {
    CVector x(fx.map.dim(), cxd(0.0, 0.0));
    x[0] = cxd(0.62, 0.21);
    const DiagnosticsReport rep = squeezing_check(fx.map, fx.a, x, 3.0, 1e-11, 1e-8);
    out.require(rep.all_pass(), fx.name + " squeezing margin " +
                                    format_double(rep.checks.front().margin));
  }
  return out;
}

Outcome criterion_product_formula() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const ResolventFamily ident(identity_generator(), 1.0);
  const CVector x{cxd(0.5, 0.0)};
  const double limit = 0.5 * std::exp(-1.0);
  for (int n : {10, 100}) {
    const CVector w = product_formula(ident, 1.0, n, x);
    const double err = norm(w - CVector{cxd(limit, 0.0)});
    const double oracle = std::abs(std::pow(1.0 + 1.0 / n, -n) - std::exp(-1.0)) * 0.5;
    out.require(std::abs(err - oracle) < 1e-9,
                "iterate error at n " + std::to_string(n) + ": " + format_double(err) + " vs " +
                    format_double(oracle));
  }
  for (const Fixture& fx : fixture_corpus()) {
    const ResolventFamily fam(fx.map, fx.a);
    CVector x0(fx.map.dim(), cxd(0.0, 0.0));
    x0[0] = cxd(0.4, 0.1);
    const Table ladder = product_formula_errors(fam, 1.0, x0, {4, 16, 64, 256});
    for (std::size_t i = 1; i < ladder.rows.size(); ++i)
      out.require(ladder.rows[i][1] < ladder.rows[i - 1][1],
                  fx.name + " errors not strictly decreasing");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 30.0, "runtime " + format_double(secs) + " s exceeds 30 s");
  return out;
}

Outcome criterion_bounds_crosschecks() {
  Outcome out;
  // Branch continuity of the extension radii at the crossover parameter.
  for (auto [a, k] : {std::pair{0.0, -1.0}, std::pair{0.1, -1.0}, std::pair{0.2, -2.0}}) {
    BoundsProfile p;
    p.a = a;
    p.k_pi = k;
    p.k_zero = std::max(a, 1.0);
    const double lb = 2.0 / std::abs(3.0 * a + k);
    const double outer = -2.0 * lb * (a + k);
    const double inner = -(2.0 * lb * a + lb * k + 1.0);
    const double rho2 = std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0);
    const double image2 = std::sqrt(outer / inner) - 1.0;
    out.require(std::abs(rho2 - (1.0 + lb * a)) < 1e-10, "domain radius branch mismatch");
    out.require(std::abs(image2 - 1.0) < 1e-10, "image radius branch mismatch");
  }
  // Inverse radii: branch boundary and the critical-point closed form.
  for (double c : {0.5, 1.0, 2.0}) {
    const RadiusPair boundary = inverse_radii(c, -3.0 * c);
    out.require(std::abs(boundary.domain_radius - c) < 1e-10, "inverse radii boundary rho");
    out.require(std::abs(boundary.image_radius - 1.0) < 1e-10, "inverse radii boundary image");
    for (double factor : {4.0, 6.5, 11.0}) {
      const double k_theta = -factor * c;
      const RadiusPair pair = inverse_radii(c, k_theta);
      const double b = -k_theta / c;
      const double crosscheck =
          c * (3.0 * b - 4.0 - 2.0 * std::sqrt(2.0 * (b - 1.0) * (b - 2.0)));
      out.require(std::abs(pair.domain_radius - crosscheck) < 1e-12,
                  "critical-point cross-check at c " + format_double(c));
    }
  }
  // Order-function corner values: both branch formulas agree at t = 2/5 and
  // equal 1/4 (exact rational arithmetic: 2(1/5)/(8/5) = 16/64 = 1/4).
  const double t = 2.0 / 5.0;
  const double left = 2.0 * (1.0 - 2.0 * t) / (2.0 - t);
  const double right = (4.0 - 8.0 * t - t * t) / (2.0 * (4.0 - 8.0 * t + 3.0 * t * t));
  out.require(left == right, "gamma branches disagree at the crossover");
  out.require(std::abs(left - 0.25) <= 1e-15 && std::abs(right - 0.25) <= 1e-15,
              "gamma(2/5) differs from 1/4 beyond float evaluation error");
  const double t_max = 2.0 / (2.0 + std::sqrt(5.0));
  out.require(std::abs(gamma_order(t_max)) < 1e-12, "gamma does not vanish at the domain end");
  // psi monotone and dominated by psi1 on its domain grid.
  for (auto [a, k1] : {std::pair{0.0, 1.0}, std::pair{0.5, 1.0}}) {
    BoundsProfile p;
    p.a = a;
    p.k_pi = -1.0;
    p.k_zero = k1;
    const double lo = a > 0.0 ? 0.3 : 2.05;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
      const double lambda = lo * std::pow(90.0 / lo, i / 99.0);
      const double v = psi(p, lambda);
      out.require(v < prev, "psi not strictly decreasing");
      out.require(v <= psi1(p, lambda) + 1e-12, "psi exceeds psi1");
      prev = v;
    }
  }
  return out;
}

Outcome criterion_starlike() {
  Outcome out;
  const SphereSampler s = sampler(150, 7);
  // Linear resolvents have order one.
  const ResolventFamily ident(identity_generator(), 1.0);
  const OrderEstimate lin = resolvent_order_estimate(ident, 2.0, s);
  out.require(std::abs(lin.gamma_hat - 1.0) < 1e-9,
              "linear order " + format_double(lin.gamma_hat));
  // Mobius factor x/(2-x): order 2/3.
  MapFn mob = [](const CVector& x) { return CVector{x[0] / (2.0 - x[0])}; };
  JacFn mobp = [](const CVector& x) {
    CMatrix j(1);
    j(0, 0) = 2.0 / ((2.0 - x[0]) * (2.0 - x[0]));
    return j;
  };
  QuantityFn mob_q = [&](const CVector& x) { return starlike_quantity(mob, mobp, x); };
  const OrderEstimate m = order_estimate(mob_q, 1, s);
  out.require(std::abs(m.gamma_hat - 2.0 / 3.0) < 1e-3,
              "mobius order " + format_double(m.gamma_hat));
  // Koebe map: order zero.
  MapFn koebe = [](const CVector& x) {
    const cxd z = x[0];
    return CVector{z / ((1.0 - z) * (1.0 - z))};
  };
  JacFn koebep = [](const CVector& x) {
    const cxd z = x[0];
    CMatrix j(1);
    j(0, 0) = (1.0 + z) / ((1.0 - z) * (1.0 - z) * (1.0 - z));
    return j;
  };
  QuantityFn koebe_q = [&](const CVector& x) { return starlike_quantity(koebe, koebep, x); };
  const OrderEstimate kb = order_estimate(koebe_q, 1, s);
  out.require(kb.gamma_hat < 1e-3, "koebe order " + format_double(kb.gamma_hat));
  // Threshold parameter of the extremal profile and the order at lambda = 60.
  const BoundsProfile rprof = profile_from_generator(rational_generator(), 0.0, s);
  const LambdaStar ls = lambda_star(rprof, 1e-9);
  out.require(!ls.always_below_one && ls.value > 50.0 && ls.value < 53.0,
              "threshold " + format_double(ls.value) + " outside (50, 53)");
  out.require(std::abs(psi(rprof, ls.value) - 1.0) < 1e-6, "psi at the threshold");
  const ResolventFamily rational(rational_generator(), 0.0);
  const OrderEstimate at60 = resolvent_order_estimate(rational, 60.0, s);
  out.require(at60.gamma_hat >= 0.5 - 1e-3, "order at lambda 60: " + format_double(at60.gamma_hat));
  // Quadratic perturbation at lambda = 1 reaches gamma(1/3) = 0.4.
  const ResolventFamily quad(quadratic_generator(), 0.5);
  const OrderEstimate q = resolvent_order_estimate(quad, 1.0, s);
  out.require(q.gamma_hat >= 0.4 - 1e-3, "quadratic order " + format_double(q.gamma_hat));
  return out;
}

Outcome criterion_equivalence() {
  Outcome out;
  const SphereSampler s = sampler(150, 8);
  for (const Fixture& fx : fixture_corpus()) {
    const DiagnosticsReport rep = equivalence_diagnostics(fx.map, fx.a, s, 1e-9);
    for (const CheckRecord& c : rep.checks)
      out.require(c.margin >= -1e-9,
                  fx.name + " " + c.name + " margin " + format_double(c.margin));
  }
  // Identity equality case: the radial inequality is an identity.
  const DiagnosticsReport ident = equivalence_diagnostics(identity_generator(), 1.0, s, 1e-9);
  out.require(std::abs(ident.find("equivalence.radial")->margin) < 1e-10,
              "identity radial margin not an equality");
  out.require(std::abs(ident.find("equivalence.disk")->margin) < 1e-10,
              "identity disk margin not an equality");
  const AccretivityReport neg = accretivity_constant(negated_identity_generator(), s);
  out.require(neg.a_star < -0.9, "negated identity a_star " + format_double(neg.a_star));
  return out;
}

Outcome criterion_coefficient_bounds() {
  Outcome out;
  const SphereSampler s = sampler(150, 9);
  for (const Fixture& fx : fixture_corpus()) {
    const DiagnosticsReport rep = coefficient_bound_check(fx.map, fx.a, 8, s, 1e-9);
    out.require(rep.all_pass(), fx.name + " coefficient bound failed");
  }
  return out;
}

Outcome criterion_determinism() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto tmp = std::filesystem::temp_directory_path() / "nres_acceptance_verify";
  std::filesystem::remove_all(tmp);
  ExperimentConfig cfg = ExperimentConfig::parse_text(
      "{\"sampler\":{\"seed\":2026,\"count\":96,"
      "\"radial_grid\":[0.1,0.3,0.5,0.7,0.85,0.95,0.99,0.9999]}}");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  cfg.out_dir = (tmp / "run1").string();
  const int rc1 = run_command("verify", cfg);
  cfg.out_dir = (tmp / "run2").string();
  const int rc2 = run_command("verify", cfg);
  out.require(rc1 == 0, "first verify run failed");
  out.require(rc2 == 0, "second verify run failed");
  out.require(slurp(tmp / "run1" / "summary.json") == slurp(tmp / "run2" / "summary.json"),
              "verify outputs differ between identical runs");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 300.0, "runtime " + format_double(secs) + " s exceeds 5 minutes");
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "extension-radius sharpness on the extremal map", criterion_sharpness},
      {2, "two-sided distortion with tight linear attainment", criterion_distortion},
      {3, "solver residuals and closed-form oracles", criterion_residuals},
      {4, "exponential squeezing along the flow", criterion_squeezing},
      {5, "product-formula errors and monotone convergence", criterion_product_formula},
      {6, "closed-form bound cross-checks", criterion_bounds_crosschecks},
      {7, "starlikeness orders and thresholds", criterion_starlike},
      {8, "pointwise inequality margins", criterion_equivalence},
      {9, "expansion coefficient bounds", criterion_coefficient_bounds},
      {10, "deterministic full verification", criterion_determinism},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", e.id, e.name,
                secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures;
}
