#include <doctest.h>

#include <cmath>
#include <limits>

#include "nres/bounds.hpp"

using namespace nres;

namespace {

BoundsProfile profile(double a, double k_pi, double k_zero) {
  BoundsProfile p;
  p.a = a;
  p.k_pi = k_pi;
  p.k_zero = k_zero;
  p.sup_norm_fn = [](double r) { return r; };  // identity-map sup norm
  return p;
}

}  // namespace

TEST_CASE("alpha branches") {
  CHECK(alpha(profile(0.0, -1.0, 1.0), 4.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(alpha(profile(1.0, -1.0, 1.0), 4.0) == doctest::Approx(0.2).epsilon(1e-15));
  for (double l : {0.5, 1.0, 2.0}) CHECK(alpha(profile(0.0, -1.0, 1.0), l) == 1.0);
  CHECK_THROWS_AS(alpha(profile(0.0, -1.0, 1.0), 0.0), DomainViolation);
}

TEST_CASE("beta values and the vacuous flag") {
  // Identity-style sup norm: beta(4) with a = 1 gives 0.2/(0.2 + 4*0.2) = 0.2.
  const BetaValue ident = beta(profile(1.0, -1.0, 1.0), 4.0);
  CHECK_FALSE(ident.vacuous);
  CHECK(ident.value == doctest::Approx(0.2).epsilon(1e-12));

  // Unbounded boundary sup norm with alpha = 1 is flagged vacuous.
  BoundsProfile blowup = profile(0.0, -1.0, 1.0);
  blowup.sup_norm_fn = [](double r) { return 2.0 / (1.0 - r); };
  const BetaValue v = beta(blowup, 1.0);
  CHECK(v.vacuous);
  CHECK(v.value == 0.0);

  // Rational-map numbers at lambda = 4: alpha 0.6, sup 2.4.
  BoundsProfile rational = profile(0.0, -1.0, 1.0);
  rational.sup_norm_fn = [](double r) { return r * (1.0 + r) / (1.0 - r); };
  CHECK(beta(rational, 4.0).value == doctest::Approx(0.058823529411764705).epsilon(1e-12));
}

TEST_CASE("resolvent extension radii") {
  const BoundsProfile p = profile(0.0, -1.0, 1.0);
  const RadiusPair r4 = resolvent_radii(p, 4.0);
  CHECK(r4.domain_radius == doctest::Approx(1.2020410288672885).epsilon(1e-14));
  CHECK(r4.image_radius == doctest::Approx(0.63299316185545207).epsilon(1e-14));
  const RadiusPair r1 = resolvent_radii(p, 1.0);
  CHECK(r1.domain_radius == 1.0);
  CHECK(r1.image_radius == 1.0);
  // Branch boundary lambda = 2: both forms give (1, 1).
  const RadiusPair r2 = resolvent_radii(p, 2.0);
  CHECK(r2.domain_radius == doctest::Approx(1.0).epsilon(1e-12));
  const double outer = -2.0 * 2.0 * (0.0 - 1.0);
  const double inner = -(0.0 - 2.0 + 1.0);
  CHECK(std::pow(std::sqrt(outer) - std::sqrt(inner), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inverse function radii") {
  const RadiusPair far = inverse_radii(1.0, -4.0);
  CHECK(far.domain_radius == doctest::Approx(8.0 - 4.0 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK(far.image_radius == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-13));
  const RadiusPair near = inverse_radii(1.0, -2.0);
  CHECK(near.domain_radius == 1.0);
  CHECK(near.image_radius == 1.0);
  const RadiusPair boundary = inverse_radii(1.0, -3.0);
  CHECK(boundary.domain_radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(boundary.image_radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(inverse_radii(1.0, -0.5), DomainViolation);
  CHECK_THROWS_AS(inverse_radii(-1.0, -2.0), DomainViolation);
}

TEST_CASE("psi series against a direct truncated oracle") {
  const BoundsProfile p = profile(0.0, -1.0, 1.0);
  // Independent oracle: direct summation to n = 40 plus the 2 n^2 tail majorant.
  const double al = alpha(p, 5.0);
  REQUIRE(al == doctest::Approx(0.5));
  double direct = 0.0;
  double partial_sq = 1.0;
  double tn = al;
  for (int n = 2; n <= 40; ++n) {
    direct += std::pow(double(n), (2.0 * n - 1.0) / (n - 1.0)) * tn;
    partial_sq += double(n) * n * tn;
    tn *= al;
  }
  const double tail = 2.0 * ((1.0 + al) / std::pow(1.0 - al, 3.0) - partial_sq);
  const double pref = 2.0 * 5.0 * 1.0 / 6.0;
  const double value = psi(p, 5.0);
  CHECK(value >= pref * direct - 1e-9);
  CHECK(value <= pref * (direct + tail) + 1e-9);
  CHECK(value == doctest::Approx(29.6255853).epsilon(1e-6));

  CHECK(psi(profile(1.0, -1.0, 1.0), 3.0) == 0.0);  // zero prefactor
  CHECK(psi(p, 1e5) < 1e-3);                        // decays at infinity
  CHECK_THROWS_AS(psi(p, 1.5), DomainViolation);    // alpha = 1 outside the domain
}

TEST_CASE("psi1 dominates psi and decays") {
  const BoundsProfile p = profile(0.0, -1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double lambda = 2.05 + 0.9 * i;
    CHECK(psi1(p, lambda) >= psi(p, lambda) - 1e-12);
  }
  const BoundsProfile q = profile(0.3, -1.0, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double v = psi(q, lambda);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(psi1(profile(1.0, -1.0, 1.0), 2.0) == 0.0);
}

TEST_CASE("largest root of psi = 1") {
  const BoundsProfile p = profile(0.0, -1.0, 1.0);
  const LambdaStar ls = lambda_star(p, 1e-9);
  CHECK_FALSE(ls.always_below_one);
  CHECK(ls.value > 50.0);
  CHECK(ls.value < 53.0);
  CHECK(psi(p, ls.value) == doctest::Approx(1.0).epsilon(1e-6));

  // Zero prefactor: the threshold degenerates to the domain infimum with a flag.
  const LambdaStar flat = lambda_star(profile(1.0, -1.0, 1.0), 1e-9);
  CHECK(flat.always_below_one);
  CHECK(flat.value == 0.0);
}

TEST_CASE("composed accretivity constants") {
  CHECK(a_lambda(profile(0.0, -1.0, 1.0), 4.0) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(a_lambda(profile(1.0, -1.0, 1.0), 4.0) == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(a_lambda(profile(0.0, -1.0, 1.0), 1e6) < 1e-5);
  for (double l : {0.1, 0.7, 3.0, 42.0}) {
    const BoundsProfile p = profile(0.25, -1.0, 1.0);
    CHECK(a_lambda(p, l) == doctest::Approx((1.0 - alpha(p, l)) / l).epsilon(1e-12));
  }
  CHECK(b_lambda(profile(1.0, -1.0, 1.0), 4.0) == doctest::Approx(0.2).epsilon(1e-12));
  BoundsProfile vac = profile(0.0, -1.0, 1.0);
  vac.sup_norm_fn = [](double r) { return 2.0 / (1.0 - r); };
  CHECK(b_lambda(vac, 1.0) == 0.0);
  BoundsProfile rational = profile(0.0, -1.0, 1.0);
  rational.sup_norm_fn = [](double r) { return r * (1.0 + r) / (1.0 - r); };
  CHECK(b_lambda(rational, 4.0) == doctest::Approx(0.0034602076124567475).epsilon(1e-12));
}

TEST_CASE("d and its maximum") {
  const BoundsProfile p0 = profile(0.0, -1.0, 1.0);
  const DMax m0 = d_max(p0);
  CHECK(m0.argmax == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m0.value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const BoundsProfile p1 = profile(1.0, -1.0, 1.0);
  const DMax m1 = d_max(p1);
  CHECK(m1.argmax == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m1.value == doctest::Approx(0.25).epsilon(1e-14));

  CHECK(d_lambda(p0, 1e6) < 1e-5);
  // The returned argmax is a maximum on a surrounding grid.
  for (double l : {0.5 * m1.argmax, 0.9 * m1.argmax, 1.1 * m1.argmax, 2.0 * m1.argmax})
    CHECK(d_lambda(p1, l) <= m1.value + 1e-12);
}

TEST_CASE("starlikeness order from the deviation product") {
  CHECK(gamma_order(0.4) == doctest::Approx(0.25).epsilon(1e-14));
  const double left = 2.0 * (1.0 - 2.0 * 0.4) / (2.0 - 0.4);
  const double right = (4.0 - 8.0 * 0.4 - 0.16) / (2.0 * (4.0 - 8.0 * 0.4 + 3.0 * 0.16));
  CHECK(left == right);  // the branches meet exactly at the crossover
  CHECK(gamma_order(1e-9) == doctest::Approx(1.0).epsilon(1e-6));
  const double t_max = 2.0 / (2.0 + std::sqrt(5.0));
  CHECK(std::abs(gamma_order(t_max)) < 1e-12);
  CHECK_THROWS_AS(gamma_order(0.0), DomainViolation);
  CHECK_THROWS_AS(gamma_order(0.5), DomainViolation);
}

TEST_CASE("order one-half window") {
  const HalfOrderWindow w1 = order_half_window(1.0);
  CHECK(w1.lower == doctest::Approx(0.080518660373466666).epsilon(1e-12));
  CHECK(w1.upper == doctest::Approx(12.419481339626532).epsilon(1e-12));
  const HalfOrderWindow w2 = order_half_window(2.0);
  CHECK(w2.lower == doctest::Approx(0.043560762610400872).epsilon(1e-12));
  CHECK(w2.upper == doctest::Approx(22.956439237389599).epsilon(1e-12));
  // Both thresholds collapse to 1 as b vanishes.
  const HalfOrderWindow tiny = order_half_window(1e-12);
  CHECK(tiny.lower == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(tiny.upper == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(order_half_window(0.0), DomainViolation);
}

TEST_CASE("profile validation") {
  BoundsProfile bad = profile(0.0, 0.5, 1.0);
  CHECK_THROWS_AS(bad.validate(), DomainViolation);
  BoundsProfile bad2 = profile(2.0, -1.0, 1.0);
  CHECK_THROWS_AS(bad2.validate(), DomainViolation);
  CHECK_NOTHROW(profile(1.0, -1.0, 1.0).validate());
}

TEST_CASE("bounds table assembly") {
  BoundsProfile rational = profile(0.0, -1.0, 1.0);
  rational.sup_norm_fn = [](double r) { return r * (1.0 + r) / (1.0 - r); };
  const BoundsTable table = bounds_table(rational, {1.0, 2.0, 4.0, 10.0});
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[2].alpha == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(table.rows[2].domain_radius == doctest::Approx(1.2020410288672885).epsilon(1e-13));
  CHECK(table.rows[0].beta_vacuous);
  CHECK(std::isnan(table.rows[0].psi));
  CHECK_FALSE(std::isnan(table.rows[2].psi));
  CHECK(table.lstar.value > 50.0);
  const Table t = table.to_table();
  CHECK(t.columns.size() == 11);
  CHECK(t.rows.size() == 4);
}
