#pragma once

#include <vector>

#include "nres/linalg.hpp"
#include "nres/sampler.hpp"

namespace nres {

/// One monomial of a vector-valued homogeneous polynomial: contributes
/// coeff * prod_i x_i^[exponents_i] to the given output component.
struct Monomial {
  int component = 0;
  std::vector<int> exponents;
  cxd coeff{0.0, 0.0};
};

/// Homogeneous polynomial term of degree >= 2 on C^dim.
class HomogeneousTerm {
 public:
  HomogeneousTerm(int dim, int degree, std::vector<Monomial> monomials);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  CVector eval(const CVector& x) const;
  CMatrix jacobian(const CVector& x) const;

 private:
  int dim_;
  int degree_;
  std::vector<Monomial> monomials_;
};

/// Holomorphic map f on the unit ball with f(0) = 0. Either a matrix linear
/// part plus homogeneous polynomial terms on C^n, or a one-variable rational
/// map num(z)/den(z) whose denominator is root-free on the closed disk up to
/// an explicit tolerance band (checked at construction by a refining grid scan).
class GeneratorMap {
 public:
  enum class Kind { Polynomial, RationalDisk };

  static GeneratorMap polynomial(CMatrix linear, std::vector<HomogeneousTerm> terms = {});
  static GeneratorMap linear_map(CMatrix a) { return polynomial(std::move(a)); }
  static GeneratorMap rational_disk(std::vector<cxd> numerator, std::vector<cxd> denominator);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// Value of the map; requires ||x|| < 1.
  CVector eval(const CVector& x) const;
  /// Analytic continuation of the same formula, used by continuation marches
  /// that leave the ball. Rational maps still require the denominator to stay
  /// away from zero.
  CVector eval_extended(const CVector& x) const;

  /// Exact Jacobian at x (term-wise differentiation / quotient rule); ||x|| < 1.
  CMatrix frechet(const CVector& x) const;
  CMatrix frechet_extended(const CVector& x) const;

  /// f'(0).
  CMatrix linear_part() const;

  /// Homogeneous terms of degree 2..max_degree. Polynomial maps return the
  /// stored terms; rational maps expand by power-series division.
  std::vector<HomogeneousTerm> taylor_homogeneous(int max_degree) const;

  const std::vector<cxd>& numerator() const { return num_; }
  const std::vector<cxd>& denominator() const { return den_; }
  const std::vector<HomogeneousTerm>& stored_terms() const { return terms_; }

 private:
  GeneratorMap() = default;

  CVector eval_impl(const CVector& x) const;
  CMatrix frechet_impl(const CVector& x) const;

  Kind kind_ = Kind::Polynomial;
  int dim_ = 0;
  CMatrix linear_;
  std::vector<HomogeneousTerm> terms_;
  std::vector<cxd> num_, den_;
};

/// Estimate of sup over the sphere of radius r of ||f||; maximum-principle
/// boundary search over sampled directions and phases, refined by a
/// golden-section phase search in one dimension and a seeded sphere polish
/// otherwise. Lower-biased by construction.
double sup_norm(const GeneratorMap& f, double r, const SphereSampler& sampler);

/// Estimate of sup over the unit sphere of ||P||.
double poly_term_norm(const HomogeneousTerm& p, const SphereSampler& sampler);

}  // namespace nres
