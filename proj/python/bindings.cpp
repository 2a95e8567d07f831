#include <map>
#include <optional>
#include <tuple>

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nres/bounds.hpp"
#include "nres/commands.hpp"
#include "nres/fixtures.hpp"
#include "nres/numrange.hpp"
#include "nres/resolvent.hpp"
#include "nres/semigroup.hpp"
#include "nres/starlike.hpp"

namespace py = pybind11;
using namespace nres;

namespace {

CMatrix matrix_from_rows(const std::vector<std::vector<cxd>>& rows) {
  const int n = static_cast<int>(rows.size());
  CMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw DimensionMismatch("matrix rows must be square");
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<cxd>> matrix_to_rows(const CMatrix& m) {
  std::vector<std::vector<cxd>> rows(m.dim(), std::vector<cxd>(m.dim()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(nres, m) {
  m.doc() = "non-linear resolvents of accretive holomorphic maps on the complex unit ball";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<Error>(m, "NresError");

  py::class_<GeneratorMap>(m, "GeneratorMap")
      .def_static(
          "linear",
          [](const std::vector<std::vector<cxd>>& rows) {
            return GeneratorMap::linear_map(matrix_from_rows(rows));
          },
          py::arg("matrix"))
      .def_static(
          "rational",
          [](const std::vector<cxd>& num, const std::vector<cxd>& den) {
            return GeneratorMap::rational_disk(num, den);
          },
          py::arg("num"), py::arg("den"))
      .def_static(
          "polynomial",
          [](const std::vector<std::vector<cxd>>& rows,
             const std::vector<std::tuple<int, int, std::vector<int>, cxd>>& monomials) {
            std::vector<HomogeneousTerm> terms;
            std::map<int, std::vector<Monomial>> by_degree;
            for (const auto& [degree, component, exponents, coeff] : monomials)
              by_degree[degree].push_back(Monomial{component, exponents, coeff});
            const int dim = static_cast<int>(rows.size());
            for (auto& [degree, monos] : by_degree)
              terms.emplace_back(dim, degree, std::move(monos));
            return GeneratorMap::polynomial(matrix_from_rows(rows), std::move(terms));
          },
          py::arg("matrix"), py::arg("monomials"),
          "monomials: list of (degree, component, exponents, coeff)")
      .def_property_readonly("dim", &GeneratorMap::dim)
      .def("eval", &GeneratorMap::eval, py::arg("x"))
      .def("frechet",
           [](const GeneratorMap& g, const CVector& x) { return matrix_to_rows(g.frechet(x)); })
      .def("linear_part", [](const GeneratorMap& g) { return matrix_to_rows(g.linear_part()); });

  m.def("identity_generator", &identity_generator);
  m.def("rational_generator", &rational_generator);
  m.def("quadratic_generator", &quadratic_generator);
  m.def("diag_generator", &diag_generator);

  py::class_<SphereSampler>(m, "SphereSampler")
      .def(py::init<std::uint64_t, int, std::vector<double>>(), py::arg("seed"), py::arg("count"),
           py::arg("radial_grid"))
      .def_property_readonly("seed", &SphereSampler::seed)
      .def_property_readonly("count", &SphereSampler::count)
      .def("directions", &SphereSampler::directions, py::arg("dim"))
      .def("ball_points", &SphereSampler::ball_points, py::arg("dim"));

  m.def("inner_product", &inner_product, py::arg("x"), py::arg("y"));
  m.def("sup_norm", &sup_norm, py::arg("f"), py::arg("r"), py::arg("sampler"));
  m.def(
      "support_function",
      [](const std::vector<std::vector<cxd>>& rows, double theta) {
        return support_function(matrix_from_rows(rows), theta);
      },
      py::arg("matrix"), py::arg("theta"));

  py::class_<AccretivityReport>(m, "AccretivityReport")
      .def_readonly("a_star", &AccretivityReport::a_star)
      .def_readonly("a_star_boundary_extrapolated",
                    &AccretivityReport::a_star_boundary_extrapolated)
      .def_readonly("k_pi", &AccretivityReport::k_pi)
      .def_readonly("k_zero", &AccretivityReport::k_zero)
      .def_readonly("linear_part_strongly_accretive",
                    &AccretivityReport::linear_part_strongly_accretive)
      .def_readonly("worst_point", &AccretivityReport::worst_point)
      .def_readonly("samples_used", &AccretivityReport::samples_used);
  m.def("accretivity_constant", &accretivity_constant, py::arg("f"), py::arg("sampler"));
  m.def("strongly_accretive_linear_part", &strongly_accretive_linear_part, py::arg("f"),
        py::arg("a"));

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("w", &SolveResult::w)
      .def_readonly("residual", &SolveResult::residual)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("continuation_steps", &SolveResult::continuation_steps);

  py::class_<ResolventFamily>(m, "ResolventFamily")
      .def(py::init([](GeneratorMap f, double a) { return ResolventFamily(std::move(f), a); }),
           py::arg("generator"), py::arg("a"))
      .def("solve",
           [](const ResolventFamily& fam, double lambda, const CVector& x) {
             return fam.solve(lambda, x);
           },
           py::arg("lam"), py::arg("x"));

  m.def("singularity_radius_1d", &singularity_radius_1d, py::arg("family"), py::arg("lam"),
        py::arg("direction") = cxd(1.0, 0.0), py::arg("cap") = 10.0);

  py::class_<BoundsProfile>(m, "BoundsProfile")
      .def(py::init([](double a, double k_pi, double k_zero, int dim,
                       std::optional<double> bound_b,
                       std::optional<std::function<double(double)>> sup_norm_fn) {
             BoundsProfile p;
             p.a = a;
             p.k_pi = k_pi;
             p.k_zero = k_zero;
             p.dim = dim;
             p.bound_b = bound_b;
             if (sup_norm_fn) p.sup_norm_fn = *sup_norm_fn;
             p.validate();
             return p;
           }),
           py::arg("a"), py::arg("k_pi"), py::arg("k_zero"), py::arg("dim") = 1,
           py::arg("bound_b") = std::nullopt, py::arg("sup_norm_fn") = std::nullopt)
      .def_readonly("a", &BoundsProfile::a)
      .def_readonly("k_pi", &BoundsProfile::k_pi)
      .def_readonly("k_zero", &BoundsProfile::k_zero);
  m.def("profile_from_generator", &profile_from_generator, py::arg("f"), py::arg("a"),
        py::arg("sampler"));

  m.def("alpha", &alpha, py::arg("profile"), py::arg("lam"));
  m.def(
      "beta",
      [](const BoundsProfile& p, double lam) {
        const BetaValue b = beta(p, lam);
        return py::make_tuple(b.value, b.vacuous);
      },
      py::arg("profile"), py::arg("lam"));
  m.def(
      "resolvent_radii",
      [](const BoundsProfile& p, double lam) {
        const RadiusPair r = resolvent_radii(p, lam);
        return py::make_tuple(r.domain_radius, r.image_radius);
      },
      py::arg("profile"), py::arg("lam"));
  m.def(
      "inverse_radii",
      [](double c, double k_theta) {
        const RadiusPair r = inverse_radii(c, k_theta);
        return py::make_tuple(r.domain_radius, r.image_radius);
      },
      py::arg("c"), py::arg("k_theta"));
  m.def("psi", &psi, py::arg("profile"), py::arg("lam"));
  m.def("psi1", &psi1, py::arg("profile"), py::arg("lam"));
  m.def(
      "lambda_star",
      [](const BoundsProfile& p, double tol) {
        const LambdaStar l = lambda_star(p, tol);
        return py::make_tuple(l.value, l.always_below_one);
      },
      py::arg("profile"), py::arg("tol") = 1e-9);
  m.def("a_lambda", &a_lambda, py::arg("profile"), py::arg("lam"));
  m.def("b_lambda", &b_lambda, py::arg("profile"), py::arg("lam"));
  m.def("d_lambda", &d_lambda, py::arg("profile"), py::arg("lam"));
  m.def(
      "d_max",
      [](const BoundsProfile& p) {
        const DMax d = d_max(p);
        return py::make_tuple(d.value, d.argmax);
      },
      py::arg("profile"));
  m.def("gamma_order", &gamma_order, py::arg("t"));
  m.def(
      "order_half_window",
      [](double b) {
        const HalfOrderWindow w = order_half_window(b);
        return py::make_tuple(w.lower, w.upper);
      },
      py::arg("b"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("norms", &Trajectory::norms)
      .def_readonly("steps", &Trajectory::steps)
      .def_readonly("rejected", &Trajectory::rejected);
  m.def("integrate_cauchy", &integrate_cauchy, py::arg("f"), py::arg("x"), py::arg("T"),
        py::arg("tol") = 1e-10);
  m.def("product_formula", &product_formula, py::arg("family"), py::arg("t"), py::arg("n"),
        py::arg("x"));

  py::class_<OrderEstimate>(m, "OrderEstimate")
      .def_readonly("gamma_hat", &OrderEstimate::gamma_hat)
      .def_readonly("worst_point", &OrderEstimate::worst_point)
      .def_readonly("samples_used", &OrderEstimate::samples_used)
      .def_readonly("method", &OrderEstimate::method)
      .def_readonly("degenerate", &OrderEstimate::degenerate);
  m.def("resolvent_starlike_quantity", &resolvent_starlike_quantity, py::arg("family"),
        py::arg("lam"), py::arg("x"));
  m.def("resolvent_order_estimate", &resolvent_order_estimate, py::arg("family"), py::arg("lam"),
        py::arg("sampler"));
  m.def("derivative_deviation_bound", &derivative_deviation_bound, py::arg("f"),
        py::arg("sampler"));

  m.def(
      "run_command",
      [](const std::string& name, const std::string& config_path,
         const std::string& out_dir, std::optional<std::uint64_t> seed) {
        ExperimentConfig cfg = ExperimentConfig::parse_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed) cfg.sampler.seed = *seed;
        return run_command(name, cfg);
      },
      py::arg("name"), py::arg("config_path"), py::arg("out_dir") = "",
      py::arg("seed") = std::nullopt);
}
