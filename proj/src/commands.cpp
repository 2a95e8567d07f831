#include "nres/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <utility>

#include <json.hpp>

#include "nres/bounds.hpp"
#include "nres/fixtures.hpp"
#include "nres/numrange.hpp"
#include "nres/resolvent.hpp"
#include "nres/semigroup.hpp"
#include "nres/starlike.hpp"

namespace nres {

using nlohmann::json;

namespace {

// All file writes happen here, once the command has finished computing.
class OutputCollector {
 public:
  explicit OutputCollector(std::string dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  std::vector<std::string> flush() {
    std::filesystem::create_directories(dir_);
    std::vector<std::string> names;
    for (const auto& [name, content] : files_) {
      std::ofstream out(std::filesystem::path(dir_) / name, std::ios::binary);
      if (!out) throw Error("cannot write output file " + name);
      out << content;
      names.push_back(name);
    }
    return names;
  }

 private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

json check_to_json(const CheckRecord& c) {
  json j{{"name", c.name},
         {"pass", c.pass},
         {"margin", c.margin},
         {"threshold", c.threshold},
         {"samples", c.samples}};
  if (c.vacuous) j["vacuous"] = true;
  if (c.informational) j["informational"] = true;
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.worst_point.empty()) {
    json wp = json::array();
    for (const cxd& v : c.worst_point) wp.push_back(json::array({v.real(), v.imag()}));
    j["worst_point"] = wp;
  }
  return j;
}

bool gate(const std::vector<CheckRecord>& checks) {
  for (const CheckRecord& c : checks)
    if (!c.informational && !c.pass) return false;
  return true;
}

json checks_to_json(const std::vector<CheckRecord>& checks) {
  json arr = json::array();
  for (const CheckRecord& c : checks) arr.push_back(check_to_json(c));
  return arr;
}

const GeneratorMap& require_generator(const ExperimentConfig& cfg) {
  if (!cfg.generator) throw ConfigError("this command requires a generator block");
  return *cfg.generator;
}

void require_lambdas(const ExperimentConfig& cfg) {
  if (cfg.lambdas.empty()) throw ConfigError("this command requires a non-empty lambda list");
}

json parse_options(const ExperimentConfig& cfg, const std::set<std::string>& allowed) {
  json j = json::parse(cfg.options_json);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("options: unknown key '" + it.key() + "'");
  return j;
}

int finish(const std::string& command, const ExperimentConfig& cfg,
           std::vector<CheckRecord> checks, OutputCollector& out, json extra = json::object()) {
  const bool pass = gate(checks);
  json report{{"command", command},
              {"pass", pass},
              {"checks", checks_to_json(checks)},
              {"seed", cfg.sampler.seed}};
  for (auto it = extra.begin(); it != extra.end(); ++it) report[it.key()] = it.value();
  out.add("report.json", report.dump(2) + "\n");
  const auto names = out.flush();
  std::cout << command << ": " << (pass ? "pass" : "FAIL") << " (" << names.size()
            << " files in " << cfg.out_dir << ")\n";
  return pass ? 0 : 1;
}

}  // namespace

int cmd_analyze(const ExperimentConfig& cfg) {
  const GeneratorMap& f = require_generator(cfg);
  const json opts = parse_options(cfg, {"max_degree"});
  const int max_degree = opts.contains("max_degree") ? opts.at("max_degree").get<int>() : 6;
  if (max_degree < 2) throw ConfigError("options.max_degree must be at least 2");
  const SphereSampler sampler = cfg.sampler.make();
  OutputCollector out(cfg.out_dir);
  std::vector<CheckRecord> checks;

  const AccretivityReport acc = accretivity_constant(f, sampler);
  {
    CheckRecord c;
    c.name = "accretivity.certified";
    c.threshold = 0.0;
    c.margin = acc.a_star - 1e-6 - cfg.a;
    c.pass = c.margin >= 0.0;
    c.samples = acc.samples_used;
    c.worst_point = acc.worst_point;
    c.note = "a_star " + format_double(acc.a_star) + ", certified a " + format_double(cfg.a);
    checks.push_back(c);
  }
  {
    CheckRecord c;
    c.name = "accretivity.linear_part";
    c.threshold = 0.0;
    c.margin = -(acc.k_pi + cfg.a);
    c.pass = strongly_accretive_linear_part(f, cfg.a);
    c.note = "K(pi) " + format_double(acc.k_pi) + ", K(0) " + format_double(acc.k_zero);
    checks.push_back(c);
  }

  DiagnosticsReport equiv = equivalence_diagnostics(f, cfg.a, sampler, cfg.tolerances.check);
  for (CheckRecord& c : equiv.checks) checks.push_back(std::move(c));
  out.add("equivalence.csv", to_csv(equiv.samples));

  DiagnosticsReport coeff =
      coefficient_bound_check(f, cfg.a, max_degree, sampler, cfg.tolerances.check);
  for (CheckRecord& c : coeff.checks) checks.push_back(std::move(c));
  out.add("coefficient_bounds.csv", to_csv(coeff.samples));

  json acc_json{{"a_star", acc.a_star},
                {"a_star_boundary_extrapolated", acc.a_star_boundary_extrapolated},
                {"k_pi", acc.k_pi},
                {"k_zero", acc.k_zero},
                {"linear_part_strongly_accretive", acc.linear_part_strongly_accretive},
                {"samples_used", acc.samples_used}};
  out.add("accretivity.json", acc_json.dump(2) + "\n");
  return finish("analyze", cfg, std::move(checks), out,
                json{{"a_star", acc.a_star}, {"certified_a", cfg.a}});
}

int cmd_bounds(const ExperimentConfig& cfg) {
  const GeneratorMap& f = require_generator(cfg);
  require_lambdas(cfg);
  parse_options(cfg, {});
  const SphereSampler sampler = cfg.sampler.make();
  OutputCollector out(cfg.out_dir);
  std::vector<CheckRecord> checks;

  BoundsProfile profile;
  try {
    profile = profile_from_generator(f, cfg.a, sampler);
  } catch (const DomainViolation& e) {
    CheckRecord c;
    c.name = "profile.valid";
    c.pass = false;
    c.note = e.what();
    checks.push_back(c);
    return finish("bounds", cfg, std::move(checks), out);
  }

  const BoundsTable table = bounds_table(profile, cfg.lambdas);
  out.add("bounds.csv", to_csv(table.to_table()));

  // Branch continuity of the extension radii at the crossover parameter.
  if (3.0 * profile.a + profile.k_pi < 0.0) {
    const double lb = 2.0 / std::abs(3.0 * profile.a + profile.k_pi);
    const double outer = -2.0 * lb * (profile.a + profile.k_pi);
    const double inner = -(2.0 * lb * profile.a + lb * profile.k_pi + 1.0);
    const double rho2 = std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0);
    const double image2 = std::sqrt(outer / inner) - 1.0;
    CheckRecord c;
    c.name = "bounds.branch_continuity";
    c.threshold = 1e-10;
    c.margin = c.threshold - std::max(std::abs(rho2 - (1.0 + lb * profile.a)),
                                      std::abs(image2 - 1.0));
    c.pass = c.margin >= 0.0;
    c.note = "crossover lambda " + format_double(lb);
    checks.push_back(c);
  }

  {
    // The inverse-radii branches must meet at k_theta = -3c, and the second
    // branch is cross-checked internally against the critical-point form.
    CheckRecord c;
    c.name = "bounds.inverse_radii";
    c.threshold = 1e-10;
    double worst = std::numeric_limits<double>::infinity();
    try {
      for (double cc : {0.5, 1.0, 2.0}) {
        const RadiusPair at_boundary = inverse_radii(cc, -3.0 * cc);
        worst = std::min(worst, c.threshold - std::abs(at_boundary.domain_radius - cc));
        worst = std::min(worst, c.threshold - std::abs(at_boundary.image_radius - 1.0));
        (void)inverse_radii(cc, -4.0 * cc);
        (void)inverse_radii(cc, -8.0 * cc);
      }
      c.margin = worst;
      c.pass = worst >= 0.0;
    } catch (const NumericalError& e) {
      c.pass = false;
      c.note = e.what();
    }
    checks.push_back(c);
  }

  {
    CheckRecord c;
    c.name = "bounds.psi_le_psi1";
    c.threshold = 1e-12;
    double worst = std::numeric_limits<double>::infinity();
    for (const BoundsRow& r : table.rows)
      if (r.alpha < 1.0) worst = std::min(worst, r.psi1 - r.psi);
    c.margin = std::isfinite(worst) ? worst : 0.0;
    c.pass = c.margin >= -c.threshold;
    c.samples = static_cast<long>(table.rows.size());
    checks.push_back(c);
  }

  json extra{{"lambda_star", table.lstar.value},
             {"lambda_star_always_below_one", table.lstar.always_below_one},
             {"d_max", table.dmax.value},
             {"d_argmax", table.dmax.argmax},
             {"k_pi", profile.k_pi},
             {"k_zero", profile.k_zero}};
  return finish("bounds", cfg, std::move(checks), out, extra);
}

int cmd_resolve(const ExperimentConfig& cfg) {
  const GeneratorMap& f = require_generator(cfg);
  require_lambdas(cfg);
  const json opts = parse_options(cfg, {"singularity", "trace"});
  bool singularity_enabled = false;
  bool assert_sharp = false;
  cxd direction(1.0, 0.0);
  if (opts.contains("singularity")) {
    const json& s = opts.at("singularity");
    for (auto it = s.begin(); it != s.end(); ++it)
      if (it.key() != "enabled" && it.key() != "assert_sharp" && it.key() != "direction")
        throw ConfigError("options.singularity: unknown key '" + it.key() + "'");
    singularity_enabled = s.value("enabled", true);
    assert_sharp = s.value("assert_sharp", false);
    if (s.contains("direction")) {
      const auto& d = s.at("direction");
      if (!d.is_array() || d.size() != 2)
        throw ConfigError("options.singularity.direction: expected [re, im]");
      direction = cxd(d[0].get<double>(), d[1].get<double>());
    }
    if (singularity_enabled && f.dim() != 1)
      throw ConfigError("options.singularity: one-dimensional generators only");
  }
  const bool want_trace = opts.value("trace", false);

  const SphereSampler sampler = cfg.sampler.make();
  OutputCollector out(cfg.out_dir);
  std::vector<CheckRecord> checks;
  BoundsProfile profile;
  try {
    profile = profile_from_generator(f, cfg.a, sampler);
  } catch (const DomainViolation& e) {
    CheckRecord c;
    c.name = "profile.valid";
    c.pass = false;
    c.note = e.what();
    checks.push_back(c);
    return finish("resolve", cfg, std::move(checks), out);
  }

  SolverOptions sopts;
  sopts.tolerance = cfg.tolerances.solver;
  const ResolventFamily fam(f, cfg.a, sopts);

  Table distortion_all;
  Table singularity{{"lambda", "radius", "domain_radius", "difference"}, {}};
  Table trace;
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    const double lambda = cfg.lambdas[li];
    const std::string tag = ".l" + std::to_string(li);
    DiagnosticsReport dist = distortion_check(fam, lambda, sampler, profile, cfg.tolerances.check);
    if (distortion_all.columns.empty()) {
      distortion_all.columns = dist.samples.columns;
      distortion_all.columns.insert(distortion_all.columns.begin(), "lambda");
    }
    for (auto& row : dist.samples.rows) {
      row.insert(row.begin(), lambda);
      distortion_all.rows.push_back(row);
    }
    for (CheckRecord& c : dist.checks) {
      c.name += tag;
      checks.push_back(std::move(c));
    }
    DiagnosticsReport push = boundary_pushout_check(fam, lambda, sampler, profile,
                                                    cfg.tolerances.check);
    for (CheckRecord& c : push.checks) {
      c.name += tag;
      checks.push_back(std::move(c));
    }
    DiagnosticsReport comp =
        composed_accretivity_check(fam, lambda, sampler, profile, cfg.tolerances.check);
    for (CheckRecord& c : comp.checks) {
      c.name += tag;
      checks.push_back(std::move(c));
    }
    if (singularity_enabled) {
      const double radius = singularity_radius_1d(fam, lambda, direction);
      const RadiusPair rad = resolvent_radii(profile, lambda);
      singularity.add_row({lambda, radius, rad.domain_radius, radius - rad.domain_radius});
      if (assert_sharp) {
        CheckRecord c;
        c.name = "singularity.sharp" + tag;
        c.threshold = 1e-6;
        c.margin = c.threshold - std::abs(radius - rad.domain_radius);
        c.pass = c.margin >= 0.0;
        c.note = "radius " + format_double(radius) + " vs " + format_double(rad.domain_radius);
        checks.push_back(c);
      }
    }
    if (want_trace && li == 0) {
      const auto points = sampler.ball_points(f.dim());
      (void)fam.solve(lambda, points.front(), &trace);
    }
  }
  out.add("distortion.csv", to_csv(distortion_all));
  if (singularity_enabled) out.add("singularity.csv", to_csv(singularity));
  if (want_trace) out.add("trace.csv", to_csv(trace));
  return finish("resolve", cfg, std::move(checks), out);
}

int cmd_semigroup(const ExperimentConfig& cfg) {
  const GeneratorMap& f = require_generator(cfg);
  const json opts = parse_options(cfg, {"horizon", "product_t", "n_list", "initial"});
  const double horizon = opts.value("horizon", 3.0);
  const double product_t = opts.value("product_t", 1.0);
  if (!(horizon > 0.0) || !(product_t > 0.0))
    throw ConfigError("options: horizon and product_t must be positive");
  std::vector<int> n_list{4, 16, 64, 256};
  if (opts.contains("n_list")) {
    n_list.clear();
    for (const auto& e : opts.at("n_list")) n_list.push_back(e.get<int>());
    if (n_list.empty()) throw ConfigError("options.n_list must be non-empty");
  }
  const SphereSampler sampler = cfg.sampler.make();
  CVector x0;
  if (opts.contains("initial")) {
    for (const auto& e : opts.at("initial")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("options.initial: [re,im] pairs");
      x0.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (static_cast<int>(x0.size()) != f.dim())
      throw ConfigError("options.initial: dimension mismatch");
    if (!(norm(x0) < 1.0)) throw ConfigError("options.initial: must lie in the open ball");
  } else {
    x0 = sampler.directions(f.dim()).front();
    for (cxd& c : x0) c *= 0.5;
  }

  OutputCollector out(cfg.out_dir);
  std::vector<CheckRecord> checks;

  DiagnosticsReport squeeze = squeezing_check(f, cfg.a, x0, horizon, cfg.tolerances.ode);
  const Trajectory traj = integrate_cauchy(f, x0, horizon, cfg.tolerances.ode);
  out.add("trajectory.csv", to_csv(traj.to_table()));
  for (CheckRecord& c : squeeze.checks) checks.push_back(std::move(c));

  SolverOptions sopts;
  sopts.tolerance = cfg.tolerances.solver;
  const ResolventFamily fam(f, cfg.a, sopts);
  const Table errors = product_formula_errors(fam, product_t, x0, n_list,
                                              std::min(1e-12, cfg.tolerances.ode));
  out.add("product_errors.csv", to_csv(errors));
  {
    CheckRecord c;
    c.name = "product.decreasing";
    c.threshold = 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < errors.rows.size(); ++i)
      worst = std::min(worst, errors.rows[i - 1][1] - errors.rows[i][1]);
    c.margin = std::isfinite(worst) ? worst : 0.0;
    c.pass = c.margin > 0.0;
    c.samples = static_cast<long>(errors.rows.size());
    checks.push_back(c);
  }
  return finish("semigroup", cfg, std::move(checks), out);
}

int cmd_starlike(const ExperimentConfig& cfg) {
  const GeneratorMap& f = require_generator(cfg);
  require_lambdas(cfg);
  parse_options(cfg, {});
  const SphereSampler sampler = cfg.sampler.make();
  OutputCollector out(cfg.out_dir);
  std::vector<CheckRecord> checks;
  BoundsProfile profile;
  try {
    profile = profile_from_generator(f, cfg.a, sampler);
  } catch (const DomainViolation& e) {
    CheckRecord c;
    c.name = "profile.valid";
    c.pass = false;
    c.note = e.what();
    checks.push_back(c);
    return finish("starlike", cfg, std::move(checks), out);
  }
  SolverOptions sopts;
  sopts.tolerance = cfg.tolerances.solver;
  const ResolventFamily fam(f, cfg.a, sopts);

  Table orders{{"lambda", "gamma_hat", "samples", "degenerate"}, {}};
  Table samples;
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    const double lambda = cfg.lambdas[li];
    const std::string tag = ".l" + std::to_string(li);
    const OrderEstimate est = resolvent_order_estimate(fam, lambda, sampler);
    orders.add_row({lambda, est.gamma_hat, static_cast<double>(est.samples_used),
                    est.degenerate ? 1.0 : 0.0});
    DiagnosticsReport half = order_half_check(fam, lambda, profile, sampler);
    for (CheckRecord& c : half.checks) {
      c.name += tag;
      checks.push_back(std::move(c));
    }
    DiagnosticsReport deriv = derivative_bound_order_check(fam, lambda, profile, sampler);
    for (CheckRecord& c : deriv.checks) {
      c.name += tag;
      checks.push_back(std::move(c));
    }
    if (li == 0) {
      samples.columns.clear();
      for (int i = 0; i < f.dim(); ++i) {
        samples.columns.push_back("x" + std::to_string(i) + "_re");
        samples.columns.push_back("x" + std::to_string(i) + "_im");
      }
      samples.columns.push_back("s_re");
      samples.columns.push_back("s_im");
      for (const CVector& x : sampler.ball_points(f.dim())) {
        const cxd s = resolvent_starlike_quantity(fam, lambda, x);
        std::vector<double> row;
        for (const cxd& c : x) {
          row.push_back(c.real());
          row.push_back(c.imag());
        }
        row.push_back(s.real());
        row.push_back(s.imag());
        samples.add_row(std::move(row));
      }
    }
  }
  out.add("order.csv", to_csv(orders));
  out.add("starlike_samples.csv", to_csv(samples));
  return finish("starlike", cfg, std::move(checks), out);
}

int run_command(const std::string& name, const ExperimentConfig& cfg) {
  try {
    if (name == "analyze") return cmd_analyze(cfg);
    if (name == "resolve") return cmd_resolve(cfg);
    if (name == "bounds") return cmd_bounds(cfg);
    if (name == "semigroup") return cmd_semigroup(cfg);
    if (name == "starlike") return cmd_starlike(cfg);
    if (name == "verify") return cmd_verify(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 1;
  }
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace nres
