#include "nres/numrange.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nres/parallel.hpp"

namespace nres {

namespace {

// Exact unit phase at multiples of pi/2, std::polar otherwise. Keeps the
// support function free of the sin(pi) ~ 1e-16 residue at theta = 0, pi.
cxd unit_phase(double t) {
  constexpr double pi = std::numbers::pi;
  for (int k = -4; k <= 4; ++k) {
    if (t == k * (pi / 2)) {
      switch (((k % 4) + 4) % 4) {
        case 0:
          return {1.0, 0.0};
        case 1:
          return {0.0, 1.0};
        case 2:
          return {-1.0, 0.0};
        default:
          return {0.0, -1.0};
      }
    }
  }
  return std::polar(1.0, t);
}

struct BallScan {
  std::vector<CVector> points;
};

// Deterministic product grid: directions x radial grid x phases.
BallScan ball_scan(const SphereSampler& sampler, int dim, int phases) {
  BallScan scan;
  const auto dirs = sampler.directions(dim);
  const auto& radii = sampler.radial_grid();
  const auto phis = phase_grid(phases);
  scan.points.reserve(dirs.size() * radii.size() * phis.size());
  for (const CVector& u : dirs)
    for (double r : radii)
      for (double phi : phis) {
        const cxd s = std::polar(r, phi);
        CVector x = u;
        for (cxd& c : x) c *= s;
        scan.points.push_back(std::move(x));
      }
  return scan;
}

}  // namespace

double support_function(const CMatrix& a, double theta) {
  const CMatrix rotated = unit_phase(-theta) * a;
  return hermitian_max_eigenvalue(rotated.hermitian_part(), 1e-12);
}

AccretivityReport accretivity_constant(const GeneratorMap& f, const SphereSampler& sampler) {
  auto quotient = [&](const CVector& x) {
    return std::real(inner_product(f.eval(x), x)) / norm_sq(x);
  };
  const int phases = f.dim() == 1 ? 32 : 8;
  const auto scan = ball_scan(sampler, f.dim(), phases);
  std::vector<double> values(scan.points.size());
  parallel_for(scan.points.size(), [&](std::size_t i) { values[i] = quotient(scan.points[i]); });

  AccretivityReport rep;
  rep.samples_used = static_cast<long>(scan.points.size());
  double amin = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < amin) {
      amin = values[i];
      arg = i;
    }
  CVector worst = scan.points[arg];

  // Polish on the sphere of the worst sample's radius and on the outermost
  // radius; the infimum of an accretive map is typically approached there.
  auto polish = [&](const CVector& start, double radius, std::uint64_t salt) {
    auto [x, v] =
        refine_on_sphere(quotient, start, radius, /*maximize=*/false, mix_seed(sampler.seed(), salt));
    if (v < amin) {
      amin = v;
      worst = x;
    }
  };
  polish(worst, norm(worst), 0x61637231ULL);
  const double rmax = sampler.max_radius();
  if (std::abs(norm(worst) - rmax) > 1e-12) polish(worst, rmax, 0x61637232ULL);

  rep.a_star = amin;
  rep.worst_point = worst;

  // Linear extrapolation of the per-radius minima toward the boundary; the
  // extrapolated value is reported, never used for certification.
  {
    const auto& radii = sampler.radial_grid();
    if (radii.size() >= 2) {
      const double r1 = radii[radii.size() - 2];
      const double r2 = radii[radii.size() - 1];
      double m1 = std::numeric_limits<double>::infinity();
      double m2 = std::numeric_limits<double>::infinity();
      const std::size_t block = phase_grid(phases).size();
      const std::size_t per_dir = radii.size() * block;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const std::size_t radius_idx = (i % per_dir) / block;
        if (radius_idx == radii.size() - 2) m1 = std::min(m1, values[i]);
        if (radius_idx == radii.size() - 1) m2 = std::min(m2, values[i]);
      }
      const double t1 = 1.0 - r1, t2 = 1.0 - r2;
      rep.a_star_boundary_extrapolated = m2 + (m2 - m1) * (0.0 - t2) / (t2 - t1);
    } else {
      rep.a_star_boundary_extrapolated = amin;
    }
  }

  const CMatrix a = f.linear_part();
  rep.k_pi = support_function(a, std::numbers::pi);
  rep.k_zero = support_function(a, 0.0);
  rep.linear_part_strongly_accretive = rep.k_pi < 0.0 && rep.k_pi + rep.a_star <= 0.0;
  return rep;
}

bool strongly_accretive_linear_part(const GeneratorMap& f, double a) {
  const double k = support_function(f.linear_part(), std::numbers::pi);
  return k < 0.0 && k + a <= 0.0;
}

DiagnosticsReport equivalence_diagnostics(const GeneratorMap& f, double a,
                                          const SphereSampler& sampler, double tolerance) {
  const int phases = f.dim() == 1 ? 32 : 8;
  const auto scan = ball_scan(sampler, f.dim(), phases);
  const CMatrix lin = f.linear_part();

  struct Row {
    double r, value_re, value_im, center_re, center_im, disk_radius;
    double m_disk, m_radial, m_derivative;
  };
  std::vector<Row> rows(scan.points.size());
  parallel_for(scan.points.size(), [&](std::size_t i) {
    const CVector& x = scan.points[i];
    const double r2 = norm_sq(x);
    const double r = std::sqrt(r2);
    const cxd v = inner_product(f.eval(x), x);
    const cxd w = inner_product(lin * x, x);
    const cxd center = (w + r2 * std::conj(w) - 2.0 * a * r2 * r2) / (1.0 - r2);
    const double disk_radius = 2.0 * r / (1.0 - r2) * (std::real(w) - a * r2);
    const double m_disk = disk_radius - std::abs(v - center);
    const double m_radial =
        std::real(v) - (std::real(w) * (1.0 - r) / (1.0 + r) + 2.0 * a * r2 * r / (1.0 + r));
    const cxd dform = inner_product(f.frechet(x) * x, x);
    const double m_derivative =
        std::real(2.0 * v + (1.0 - r2) * dform) - a * r2 * (1.0 + r2);
    rows[i] = {r,      v.real(),  v.imag(),    center.real(), center.imag(),
               disk_radius, m_disk, m_radial, m_derivative};
  });

  DiagnosticsReport rep;
  rep.samples = Table{{"r", "value_re", "value_im", "center_re", "center_im", "disk_radius",
                       "margin_disk", "margin_radial", "margin_derivative"},
                      {}};
  for (const Row& row : rows)
    rep.samples.add_row({row.r, row.value_re, row.value_im, row.center_re, row.center_im,
                         row.disk_radius, row.m_disk, row.m_radial, row.m_derivative});

  auto record = [&](const std::string& name, auto member) {
    CheckRecord c;
    c.name = name;
    c.threshold = tolerance;
    c.samples = static_cast<long>(rows.size());
    double worst = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double m = rows[i].*member;
      if (m < worst) {
        worst = m;
        arg = i;
      }
    }
    c.margin = worst;
    c.pass = worst >= -tolerance;
    c.worst_point = scan.points[arg];
    rep.checks.push_back(std::move(c));
  };
  record("equivalence.disk", &Row::m_disk);
  record("equivalence.radial", &Row::m_radial);
  record("equivalence.derivative", &Row::m_derivative);
  return rep;
}

DiagnosticsReport coefficient_bound_check(const GeneratorMap& f, double a, int max_degree,
                                          const SphereSampler& sampler, double tolerance) {
  if (max_degree < 2) throw DomainViolation("coefficient_bound_check: max_degree must be >= 2");
  const double k_zero = support_function(f.linear_part(), 0.0);
  const auto terms = f.taylor_homogeneous(max_degree);

  DiagnosticsReport rep;
  rep.samples = Table{{"degree", "term_norm", "bound", "margin"}, {}};
  for (int n = 2; n <= max_degree; ++n) {
    double est = 0.0;
    for (const HomogeneousTerm& t : terms)
      if (t.degree() == n) est = std::max(est, poly_term_norm(t, sampler));
    const double bound = 2.0 * std::pow(static_cast<double>(n), n / (n - 1.0)) * (k_zero - a);
    const double margin = bound - est;
    rep.samples.add_row({static_cast<double>(n), est, bound, margin});
    CheckRecord c;
    c.name = "coefficient_bound.n" + std::to_string(n);
    c.threshold = tolerance * std::max(1.0, std::abs(bound));
    c.margin = margin;
    c.pass = margin >= -c.threshold;
    c.samples = sampler.count();
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace nres
