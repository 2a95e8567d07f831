#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nres/generator.hpp"
#include "nres/reports.hpp"

namespace nres {

/// Scalar constants every closed-form bound is computed from.
///   a       certified accretivity constant (>= 0)
///   k_pi    support function of f'(0) in direction pi (must be < 0)
///   k_zero  support function of f'(0) in direction 0 (>= a)
///   bound_b optional bound with ||f'(x) - f'(0)|| < bound_b on the ball
///   sup_norm_fn  r in (0,1) -> sup of ||f|| on the sphere of radius r
struct BoundsProfile {
  double a = 0.0;
  double k_pi = 0.0;
  double k_zero = 0.0;
  int dim = 1;
  std::optional<double> bound_b;
  std::function<double(double)> sup_norm_fn;

  void validate() const;
};

/// Profile measured from a generator: support functions of the linear part
/// and a sup-norm callback tied to the sampler.
BoundsProfile profile_from_generator(const GeneratorMap& f, double a, const SphereSampler& sampler);

/// Upper distortion factor min(3/(1 - lambda K), 1/(1 + lambda a)).
double alpha(const BoundsProfile& p, double lambda);

struct BetaValue {
  double value = 0.0;
  bool vacuous = false;  // alpha = 1 with unbounded boundary sup-norm
};

/// Lower distortion factor alpha/(alpha + lambda M_f(alpha)).
BetaValue beta(const BoundsProfile& p, double lambda);

struct RadiusPair {
  double domain_radius = 0.0;  // ball the extension is defined on
  double image_radius = 0.0;   // ball it maps into
};

/// Extension radii of the resolvent, branch-dependent on 3a + K and lambda.
RadiusPair resolvent_radii(const BoundsProfile& p, double lambda);

/// Inverse-function radii for a map with a one-sided estimate of strength c
/// and support value k_theta <= -c. The second branch is cross-checked against
/// the equivalent closed form c*(3b - 4 - 2 sqrt(2(b-1)(b-2))), b = -k_theta/c.
RadiusPair inverse_radii(double c, double k_theta);

/// Series bound 2 lambda (K1 - a)/(1 - lambda K) * sum n^{(2n-1)/(n-1)} alpha^{n-1};
/// truncated once the closed-form 2n^2 majorant tail certifies 1e-10 relative error.
double psi(const BoundsProfile& p, double lambda);

/// Closed-form majorant of psi.
double psi1(const BoundsProfile& p, double lambda);

struct LambdaStar {
  double value = 0.0;
  bool always_below_one = false;  // psi < 1 on the whole domain
};

/// Largest solution of psi(lambda) = 1, by bisection on the decreasing psi.
LambdaStar lambda_star(const BoundsProfile& p, double tol = 1e-9);

/// Accretivity constant of f composed with its resolvent.
double a_lambda(const BoundsProfile& p, double lambda);

/// Accretivity constant of the resolvent itself, (1 + lambda a) beta^2.
double b_lambda(const BoundsProfile& p, double lambda);

double d_lambda(const BoundsProfile& p, double lambda);

struct DMax {
  double value = 0.0;
  double argmax = 0.0;
};

DMax d_max(const BoundsProfile& p);

/// Starlikeness order from the derivative-deviation product t = b*d(lambda);
/// piecewise with branch point t = 2/5, domain (0, 2/(2+sqrt 5)].
double gamma_order(double t);

struct HalfOrderWindow {
  double lower = 0.0;
  double upper = 0.0;
};

/// Parameter window outside of which the resolvent of a normalized map with
/// ||f'(x) - I|| < b is starlike of order 1/2.
HalfOrderWindow order_half_window(double b);

struct BoundsRow {
  double lambda = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool beta_vacuous = false;
  double domain_radius = 0.0;
  double image_radius = 0.0;
  double a_lambda = 0.0;
  double b_lambda = 0.0;
  double d = 0.0;
  double psi = 0.0;   // NaN when alpha = 1
  double psi1 = 0.0;  // NaN when alpha = 1
};

struct BoundsTable {
  std::vector<BoundsRow> rows;
  LambdaStar lstar;
  DMax dmax;

  Table to_table() const;
};

BoundsTable bounds_table(const BoundsProfile& p, const std::vector<double>& lambdas);

}  // namespace nres
