#include <doctest.h>

#include <cmath>

#include "nres/fixtures.hpp"
#include "nres/generator.hpp"

using namespace nres;

namespace {
const SphereSampler kSampler(2024, 120, {0.1, 0.3, 0.5, 0.7, 0.85, 0.95});
}

TEST_CASE("evaluation of the shipped maps") {
  const GeneratorMap rational = rational_generator();
  CHECK(std::abs(rational.eval({cxd(0.5, 0.0)})[0] - cxd(0.25 / 1.5, 0.0)) < 1e-15);
  CHECK(norm(rational.eval({cxd(0.0, 0.0)})) == 0.0);

  const GeneratorMap ident = identity_generator();
  CHECK(std::abs(ident.eval({cxd(0.3, -0.2)})[0] - cxd(0.3, -0.2)) == 0.0);

  const GeneratorMap quad = quadratic_generator();
  const CVector v = quad.eval({cxd(0.0, 0.0), cxd(0.4, 0.0)});
  CHECK(std::abs(v[0] - cxd(0.08, 0.0)) < 1e-15);
  CHECK(std::abs(v[1] - cxd(0.4, 0.0)) < 1e-15);

  CHECK_THROWS_AS(ident.eval({cxd(1.0, 0.0)}), DomainViolation);
  CHECK_THROWS_AS(quad.eval({cxd(0.9, 0.0), cxd(0.9, 0.0)}), DomainViolation);
}

TEST_CASE("analytic jacobians") {
  CHECK(identity_generator().frechet({cxd(0.2, 0.1)})(0, 0) == cxd(1.0, 0.0));
  CHECK(std::abs(rational_generator().frechet({cxd(0.0, 0.0)})(0, 0) - cxd(1.0, 0.0)) < 1e-15);
  const CMatrix j = quadratic_generator().frechet({cxd(0.0, 0.0), cxd(0.4, 0.0)});
  CHECK(std::abs(j(0, 0) - cxd(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(j(0, 1) - cxd(0.4, 0.0)) < 1e-15);
  CHECK(std::abs(j(1, 0)) == 0.0);
  CHECK(std::abs(j(1, 1) - cxd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("jacobians match central differences") {
  const double h = 1e-5;
  for (const Fixture& fx : fixture_corpus()) {
    const SphereSampler pts(99, 40, {0.2, 0.5, 0.8});
    for (const CVector& x : pts.ball_points(fx.map.dim())) {
      const CMatrix jac = fx.map.frechet(x);
      for (int k = 0; k < fx.map.dim(); ++k) {
        CVector xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const CVector fp = fx.map.eval_extended(xp);
        const CVector fm = fx.map.eval_extended(xm);
        for (int i = 0; i < fx.map.dim(); ++i)
          CHECK(std::abs((fp[i] - fm[i]) / (2.0 * h) - jac(i, k)) < 1e-6);
      }
    }
  }
}

TEST_CASE("sup norm estimates") {
  CHECK(sup_norm(rational_generator(), 0.6, kSampler) == doctest::Approx(2.4).epsilon(1e-9));
  CHECK(sup_norm(identity_generator(), 0.37, kSampler) == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(sup_norm(diag_generator(), 0.5, kSampler) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(sup_norm(identity_generator(), 1.0, kSampler), DomainViolation);
  CHECK_THROWS_AS(sup_norm(identity_generator(), 0.0, kSampler), DomainViolation);

  // Monotone in the radius for the same sampler.
  for (const Fixture& fx : fixture_corpus()) {
    double prev = 0.0;
    for (double r : {0.2, 0.4, 0.6, 0.8}) {
      const double m = sup_norm(fx.map, r, kSampler);
      CHECK(m >= prev - 1e-12);
      prev = m;
    }
  }
}

TEST_CASE("homogeneous term norms") {
  const HomogeneousTerm half_sq(2, 2, {Monomial{0, {0, 2}, cxd(0.5, 0.0)}});
  CHECK(poly_term_norm(half_sq, kSampler) == doctest::Approx(0.5).epsilon(1e-7));
  const HomogeneousTerm zero(2, 2, {});
  CHECK(poly_term_norm(zero, kSampler) == 0.0);
  const HomogeneousTerm cross(2, 2, {Monomial{0, {1, 1}, cxd(1.0, 0.0)}});
  CHECK(poly_term_norm(cross, kSampler) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("homogeneity under complex scaling") {
  Rng rng(5);
  const HomogeneousTerm term(2, 3, {Monomial{0, {1, 2}, cxd(0.7, -0.3)},
                                    Monomial{1, {3, 0}, cxd(-0.2, 0.1)}});
  for (int rep = 0; rep < 100; ++rep) {
    const CVector x = random_unit_vector(rng, 2);
    const cxd s = std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
    const CVector lhs = term.eval(s * x);
    const CVector rhs = (s * s * s) * term.eval(x);
    CHECK(norm(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("taylor expansion of the rational map") {
  const GeneratorMap f = rational_generator();
  CHECK(std::abs(f.linear_part()(0, 0) - cxd(1.0, 0.0)) < 1e-15);
  const auto terms = f.taylor_homogeneous(6);
  REQUIRE(terms.size() == 5);
  for (const HomogeneousTerm& t : terms) {
    REQUIRE(t.monomials().size() == 1);
    const double sign = t.degree() % 2 == 0 ? -1.0 : 1.0;
    CHECK(std::abs(t.monomials()[0].coeff - cxd(sign * 2.0, 0.0)) < 1e-13);
  }

  // Re-summation reproduces the map on the half-radius disk.
  const auto deep = f.taylor_homogeneous(30);
  for (int k = 0; k < 32; ++k) {
    const cxd z = std::polar(0.5, 6.283185307179586 * k / 32.0);
    CVector sum = f.linear_part() * CVector{z};
    for (const HomogeneousTerm& t : deep) sum += t.eval({z});
    CHECK(norm(sum - f.eval({z})) < 1e-8);
  }

  CHECK(identity_generator().taylor_homogeneous(5).empty());
  CHECK(quadratic_generator().taylor_homogeneous(5).size() == 1);
  CHECK_THROWS_AS(f.taylor_homogeneous(1), DomainViolation);
}

TEST_CASE("construction guards") {
  // f(0) = 0 is structural: a nonzero numerator constant is rejected.
  CHECK_THROWS_AS(GeneratorMap::rational_disk({cxd(0.1, 0.0), cxd(1.0, 0.0)}, {cxd(1.0, 0.0)}),
                  InvalidGenerator);
  // Denominator vanishing at 0 is rejected.
  CHECK_THROWS_AS(GeneratorMap::rational_disk({cxd(0.0, 0.0), cxd(1.0, 0.0)},
                                              {cxd(0.0, 0.0), cxd(1.0, 0.0)}),
                  InvalidGenerator);
  // Denominator root strictly inside the disk is rejected: 1 - 2z has root 0.5.
  CHECK_THROWS_AS(GeneratorMap::rational_disk({cxd(0.0, 0.0), cxd(1.0, 0.0)},
                                              {cxd(1.0, 0.0), cxd(-2.0, 0.0)}),
                  InvalidGenerator);
  // A root on the boundary (1 + z at z = -1) is allowed.
  CHECK_NOTHROW(GeneratorMap::rational_disk({cxd(0.0, 0.0), cxd(1.0, 0.0)},
                                            {cxd(1.0, 0.0), cxd(1.0, 0.0)}));
  // Homogeneous terms must be genuinely homogeneous of degree >= 2.
  CHECK_THROWS_AS(HomogeneousTerm(2, 1, {Monomial{0, {1, 0}, cxd(1.0, 0.0)}}), InvalidGenerator);
  CHECK_THROWS_AS(HomogeneousTerm(2, 2, {Monomial{0, {1, 0}, cxd(1.0, 0.0)}}), InvalidGenerator);
  CHECK_THROWS_AS(HomogeneousTerm(2, 2, {Monomial{3, {0, 2}, cxd(1.0, 0.0)}}), InvalidGenerator);
}
