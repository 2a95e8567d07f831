#include "nres/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nres {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(ctx + ": unknown key '" + it.key() + "'");
}

cxd parse_complex(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(ctx + ": complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cxd> parse_complex_list(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ConfigError(ctx + ": expected an array");
  std::vector<cxd> out;
  for (const auto& e : j) out.push_back(parse_complex(e, ctx));
  return out;
}

GeneratorMap parse_generator(const json& j) {
  if (!j.is_object()) throw ConfigError("generator: expected an object");
  if (j.contains("rational")) {
    check_keys(j, {"rational"}, "generator");
    const json& r = j.at("rational");
    check_keys(r, {"num", "den"}, "generator.rational");
    if (!r.contains("num") || !r.contains("den"))
      throw ConfigError("generator.rational: requires num and den");
    try {
      return GeneratorMap::rational_disk(parse_complex_list(r.at("num"), "generator.rational.num"),
                                         parse_complex_list(r.at("den"), "generator.rational.den"));
    } catch (const InvalidGenerator& e) {
      throw ConfigError(std::string("generator: ") + e.what());
    }
  }
  check_keys(j, {"dim", "matrix", "terms"}, "generator");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw ConfigError("generator: integer dim required");
  const int dim = j.at("dim").get<int>();
  if (dim <= 0 || dim > 64) throw ConfigError("generator: dim out of range");
  if (!j.contains("matrix")) throw ConfigError("generator: matrix required");
  const auto flat = parse_complex_list(j.at("matrix"), "generator.matrix");
  if (static_cast<int>(flat.size()) != dim * dim)
    throw ConfigError("generator.matrix: expected dim*dim row-major complex pairs");
  CMatrix lin(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) lin(i, k) = flat[static_cast<std::size_t>(i) * dim + k];
  std::vector<HomogeneousTerm> terms;
  if (j.contains("terms")) {
    if (!j.at("terms").is_array()) throw ConfigError("generator.terms: expected an array");
    for (const auto& tj : j.at("terms")) {
      check_keys(tj, {"degree", "monomials"}, "generator.terms[]");
      if (!tj.contains("degree") || !tj.contains("monomials"))
        throw ConfigError("generator.terms[]: degree and monomials required");
      const int degree = tj.at("degree").get<int>();
      std::vector<Monomial> monomials;
      for (const auto& mj : tj.at("monomials")) {
        check_keys(mj, {"component", "exponents", "coeff"}, "generator.terms[].monomials[]");
        Monomial m;
        m.component = mj.at("component").get<int>();
        if (!mj.at("exponents").is_array())
          throw ConfigError("generator monomial: exponents must be an array");
        for (const auto& e : mj.at("exponents")) m.exponents.push_back(e.get<int>());
        m.coeff = parse_complex(mj.at("coeff"), "generator monomial coeff");
        monomials.push_back(std::move(m));
      }
      try {
        terms.emplace_back(dim, degree, std::move(monomials));
      } catch (const InvalidGenerator& e) {
        throw ConfigError(std::string("generator: ") + e.what());
      }
    }
  }
  try {
    return GeneratorMap::polynomial(std::move(lin), std::move(terms));
  } catch (const InvalidGenerator& e) {
    throw ConfigError(std::string("generator: ") + e.what());
  }
}

json serialize_generator(const GeneratorMap& g) {
  json j;
  auto pack = [](cxd c) { return json::array({c.real(), c.imag()}); };
  if (g.kind() == GeneratorMap::Kind::RationalDisk) {
    json num = json::array(), den = json::array();
    for (cxd c : g.numerator()) num.push_back(pack(c));
    for (cxd c : g.denominator()) den.push_back(pack(c));
    j["rational"] = {{"num", num}, {"den", den}};
    return j;
  }
  j["dim"] = g.dim();
  json flat = json::array();
  const CMatrix lin = g.linear_part();
  for (int i = 0; i < g.dim(); ++i)
    for (int k = 0; k < g.dim(); ++k) flat.push_back(pack(lin(i, k)));
  j["matrix"] = flat;
  json terms = json::array();
  for (const HomogeneousTerm& t : g.stored_terms()) {
    json monos = json::array();
    for (const Monomial& m : t.monomials())
      monos.push_back({{"component", m.component}, {"exponents", m.exponents}, {"coeff", pack(m.coeff)}});
    terms.push_back({{"degree", t.degree()}, {"monomials", monos}});
  }
  j["terms"] = terms;
  return j;
}

std::vector<double> parse_lambdas(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_number()) throw ConfigError("lambdas: entries must be numbers");
      out.push_back(e.get<double>());
    }
  } else if (j.is_object()) {
    check_keys(j, {"min", "max", "count"}, "lambdas");
    if (!j.contains("min") || !j.contains("max") || !j.contains("count"))
      throw ConfigError("lambdas: grid form requires min, max, count");
    const double lo = j.at("min").get<double>();
    const double hi = j.at("max").get<double>();
    const int n = j.at("count").get<int>();
    if (n < 1 || hi < lo) throw ConfigError("lambdas: malformed grid");
    for (int i = 0; i < n; ++i)
      out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  } else {
    throw ConfigError("lambdas: expected an array or a {min,max,count} grid");
  }
  for (double l : out)
    if (!(l > 0.0)) throw ConfigError("lambdas: all values must be positive");
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  check_keys(j, {"generator", "a", "lambdas", "sampler", "tolerances", "out_dir", "options"},
             "config");

  ExperimentConfig cfg;
  if (j.contains("generator")) {
    cfg.generator = parse_generator(j.at("generator"));
    cfg.generator_json = serialize_generator(*cfg.generator).dump();
  }
  if (j.contains("a")) {
    if (!j.at("a").is_number()) throw ConfigError("a: expected a number");
    cfg.a = j.at("a").get<double>();
    if (cfg.a < 0.0) throw ConfigError("a: must be non-negative");
  }
  if (j.contains("lambdas")) cfg.lambdas = parse_lambdas(j.at("lambdas"));

  if (!j.contains("sampler")) throw ConfigError("config: sampler block required");
  const json& s = j.at("sampler");
  check_keys(s, {"seed", "count", "radial_grid"}, "sampler");
  if (!s.contains("seed")) throw ConfigError("sampler: seed required, no entropy defaults");
  if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer())
    throw ConfigError("sampler: seed must be an integer");
  cfg.sampler.seed = s.at("seed").get<std::uint64_t>();
  cfg.sampler.count = s.contains("count") ? s.at("count").get<int>() : 200;
  if (s.contains("radial_grid")) {
    for (const auto& e : s.at("radial_grid")) cfg.sampler.radial_grid.push_back(e.get<double>());
  } else {
    cfg.sampler.radial_grid = {0.1, 0.3, 0.5, 0.7, 0.85, 0.95, 0.99, 0.9999};
  }
  if (cfg.sampler.count <= 0) throw ConfigError("sampler: count must be positive");
  for (double r : cfg.sampler.radial_grid)
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("sampler: radii must lie in (0,1)");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    check_keys(t, {"solver", "ode", "check"}, "tolerances");
    if (t.contains("solver")) cfg.tolerances.solver = t.at("solver").get<double>();
    if (t.contains("ode")) cfg.tolerances.ode = t.at("ode").get<double>();
    if (t.contains("check")) cfg.tolerances.check = t.at("check").get<double>();
    for (double v : {cfg.tolerances.solver, cfg.tolerances.ode, cfg.tolerances.check})
      if (!(v > 0.0)) throw ConfigError("tolerances: must be positive");
  }
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("options")) {
    if (!j.at("options").is_object()) throw ConfigError("options: expected an object");
    cfg.options_json = j.at("options").dump();
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string ExperimentConfig::serialize() const {
  json j;
  if (generator) j["generator"] = json::parse(generator_json);
  j["a"] = a;
  if (!lambdas.empty()) j["lambdas"] = lambdas;
  j["sampler"] = {{"seed", sampler.seed}, {"count", sampler.count}, {"radial_grid", sampler.radial_grid}};
  j["tolerances"] = {{"solver", tolerances.solver}, {"ode", tolerances.ode}, {"check", tolerances.check}};
  j["out_dir"] = out_dir;
  j["options"] = json::parse(options_json);
  return j.dump(2);
}

}  // namespace nres
