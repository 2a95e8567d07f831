#include <doctest.h>

#include <cmath>

#include "nres/fixtures.hpp"
#include "nres/semigroup.hpp"

using namespace nres;

TEST_CASE("linear flows have closed forms") {
  const Trajectory tr = integrate_cauchy(identity_generator(), {cxd(0.5, 0.0)}, 1.0, 1e-11);
  CHECK(std::abs(tr.states.back()[0] - cxd(0.5 * std::exp(-1.0), 0.0)) < 1e-9);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.states.front()[0] == cxd(0.5, 0.0));

  const Trajectory d =
      integrate_cauchy(diag_generator(), {cxd(0.3, 0.1), cxd(0.0, 0.25)}, 0.8, 1e-11);
  CHECK(std::abs(d.states.back()[0] - cxd(0.3, 0.1) * std::exp(-0.8)) < 1e-9);
  CHECK(std::abs(d.states.back()[1] - cxd(0.0, 0.25) * std::exp(-1.6)) < 1e-9);
}

TEST_CASE("integration preconditions") {
  CHECK_THROWS_AS(integrate_cauchy(identity_generator(), {cxd(1.0, 0.0)}, 1.0, 1e-10),
                  DomainViolation);
  CHECK_THROWS_AS(integrate_cauchy(identity_generator(), {cxd(0.5, 0.0)}, 0.0, 1e-10),
                  DomainViolation);
  CHECK_THROWS_AS(integrate_cauchy(identity_generator(), {cxd(0.5, 0.0)}, 1.0, 0.0),
                  DomainViolation);
  // A repelling flow escapes the ball and must abort.
  CHECK_THROWS_AS(integrate_cauchy(negated_identity_generator(), {cxd(0.9, 0.0)}, 3.0, 1e-10),
                  NumericalError);
}

TEST_CASE("squeezing bound along the flow") {
  // Exact equality for the identity generator.
  const DiagnosticsReport ident =
      squeezing_check(identity_generator(), 1.0, {cxd(0.5, 0.0)}, 3.0, 1e-11);
  CHECK(ident.all_pass());
  CHECK(std::abs(ident.checks.front().margin) < 1e-8);

  // Strict inequality along the fast eigendirection of diag(1,2).
  const DiagnosticsReport fast =
      squeezing_check(diag_generator(), 1.0, {cxd(0.0, 0.0), cxd(0.3, 0.0)}, 1.0, 1e-11);
  CHECK(fast.all_pass());
  CHECK(fast.checks.front().margin > 1e-3);

  // Norm decay for the non-strongly-accretive extremal map (a = 0).
  const DiagnosticsReport flat =
      squeezing_check(rational_generator(), 0.0, {cxd(0.7, 0.1)}, 2.0, 1e-11);
  CHECK(flat.all_pass());

  for (const Fixture& fx : fixture_corpus()) {
    CVector x(fx.map.dim(), cxd(0.0, 0.0));
    x[0] = cxd(0.55, 0.2);
    const DiagnosticsReport rep = squeezing_check(fx.map, fx.a, x, 2.0, 1e-11);
    INFO(fx.name);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("norms never increase along accretive flows") {
  for (const Fixture& fx : fixture_corpus()) {
    CVector x(fx.map.dim(), cxd(0.0, 0.0));
    x[0] = cxd(0.8, 0.0);
    const Trajectory tr = integrate_cauchy(fx.map, x, 2.0, 1e-10);
    for (std::size_t i = 1; i < tr.norms.size(); ++i)
      CHECK(tr.norms[i] <= tr.norms[i - 1] + 1e-9);
  }
}

TEST_CASE("halving the tolerance halves the deviation or better") {
  auto deviation = [](double tol) {
    const Trajectory tr = integrate_cauchy(identity_generator(), {cxd(0.5, 0.0)}, 2.0, tol);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i)
      worst = std::max(worst, std::abs(tr.norms[i] - 0.5 * std::exp(-tr.times[i])));
    return worst;
  };
  double prev = deviation(1e-5);
  for (double tol : {5e-6, 2.5e-6, 1.25e-6}) {
    const double dev = deviation(tol);
    CHECK(dev <= 0.5 * prev);
    prev = dev;
  }
}

TEST_CASE("flow composition") {
  for (const Fixture& fx : fixture_corpus()) {
    CVector x(fx.map.dim(), cxd(0.0, 0.0));
    x[0] = cxd(0.6, -0.1);
    const double tol = 1e-10;
    const Trajectory full = integrate_cauchy(fx.map, x, 1.0, tol);
    const Trajectory part = integrate_cauchy(fx.map, x, 0.7, tol);
    const Trajectory rest = integrate_cauchy(fx.map, part.states.back(), 0.3, tol);
    INFO(fx.name);
    CHECK(norm(full.states.back() - rest.states.back()) < 10.0 * tol);
  }
}

TEST_CASE("product formula closed forms for the identity") {
  const ResolventFamily fam(identity_generator(), 1.0);
  const CVector x{cxd(0.5, 0.0)};
  const CVector ten = product_formula(fam, 1.0, 10, x);
  CHECK(std::abs(ten[0] - cxd(0.19277164471476571, 0.0)) < 1e-11);
  const CVector hundred = product_formula(fam, 1.0, 100, x);
  CHECK(std::abs(hundred[0] - cxd(0.18485560616455946, 0.0)) < 1e-10);
  // One step is a single resolvent application.
  const CVector one = product_formula(fam, 1.0, 1, x);
  CHECK(std::abs(one[0] - cxd(0.25, 0.0)) < 1e-12);
}

TEST_CASE("product formula error ladder") {
  const ResolventFamily fam(identity_generator(), 1.0);
  const CVector x{cxd(0.5, 0.0)};
  const Table errors = product_formula_errors(fam, 1.0, x, {10, 100});
  CHECK(errors.rows[0][1] == doctest::Approx(0.0088319241290445438).epsilon(1e-6));
  CHECK(errors.rows[1][1] == doctest::Approx(0.00091588557883828803).epsilon(1e-5));
  CHECK(errors.rows[0][1] / errors.rows[1][1] == doctest::Approx(9.643).epsilon(1e-2));

  for (const Fixture& fx : fixture_corpus()) {
    const ResolventFamily f(fx.map, fx.a);
    CVector x0(fx.map.dim(), cxd(0.0, 0.0));
    x0[0] = cxd(0.4, 0.0);
    const Table ladder = product_formula_errors(f, 1.0, x0, {4, 16, 64, 256});
    for (std::size_t i = 1; i < ladder.rows.size(); ++i) {
      INFO(fx.name);
      CHECK(ladder.rows[i][1] < ladder.rows[i - 1][1]);
    }
  }
  CHECK_THROWS_AS(product_formula_errors(fam, 1.0, x, {4, 4}), DomainViolation);
}
