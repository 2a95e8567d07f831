#include "nres/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace nres {

namespace {

cxd pow_int(cxd z, int m) {
  cxd r(1.0, 0.0);
  while (m-- > 0) r *= z;
  return r;
}

cxd horner(const std::vector<cxd>& coeffs, cxd z) {
  cxd r(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
  return r;
}

std::vector<cxd> poly_derivative(const std::vector<cxd>& coeffs) {
  std::vector<cxd> d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(double(k) * coeffs[k]);
  if (d.empty()) d.push_back(cxd(0.0, 0.0));
  return d;
}

double coeff_scale(const std::vector<cxd>& coeffs) {
  double s = 0.0;
  for (const cxd& c : coeffs) s = std::max(s, std::abs(c));
  return std::max(s, 1e-300);
}

// Minimum modulus of the polynomial over |z| <= rmax, by a polar grid scan
// with local zooming around the running argmin.
double min_abs_on_disk(const std::vector<cxd>& coeffs, double rmax) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double best = std::abs(horner(coeffs, cxd(0.0, 0.0)));
  double best_r = 0.0, best_t = 0.0;
  const int nr = 96, nt = 192;
  for (int i = 0; i <= nr; ++i) {
    const double r = rmax * i / nr;
    for (int j = 0; j < nt; ++j) {
      const double t = kTwoPi * j / nt;
      const double v = std::abs(horner(coeffs, std::polar(r, t)));
      if (v < best) {
        best = v;
        best_r = r;
        best_t = t;
      }
    }
  }
  double dr = rmax / nr, dt = kTwoPi / nt;
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (int i = -4; i <= 4; ++i) {
      for (int j = -4; j <= 4; ++j) {
        const double r = std::clamp(best_r + dr * i / 4.0, 0.0, rmax);
        const double t = best_t + dt * j / 4.0;
        const double v = std::abs(horner(coeffs, std::polar(r, t)));
        if (v < best) {
          best = v;
          best_r = r;
          best_t = t;
          improved = true;
        }
      }
    }
    dr *= 0.5;
    dt *= 0.5;
    if (!improved && dr < 1e-15 * rmax) break;
  }
  return best;
}

}  // namespace

HomogeneousTerm::HomogeneousTerm(int dim, int degree, std::vector<Monomial> monomials)
    : dim_(dim), degree_(degree), monomials_(std::move(monomials)) {
  if (dim_ <= 0) throw InvalidGenerator("homogeneous term: dimension must be positive");
  if (degree_ < 2) throw InvalidGenerator("homogeneous term: degree must be at least 2");
  for (const Monomial& m : monomials_) {
    if (m.component < 0 || m.component >= dim_)
      throw InvalidGenerator("homogeneous term: component index out of range");
    if (static_cast<int>(m.exponents.size()) != dim_)
      throw InvalidGenerator("homogeneous term: exponent list must have one entry per variable");
    int total = 0;
    for (int e : m.exponents) {
      if (e < 0) throw InvalidGenerator("homogeneous term: exponents must be non-negative");
      total += e;
    }
    if (total != degree_)
      throw InvalidGenerator("homogeneous term: exponents must sum to the degree");
  }
}

CVector HomogeneousTerm::eval(const CVector& x) const {
  CVector out(dim_, cxd(0.0, 0.0));
  for (const Monomial& m : monomials_) {
    cxd p = m.coeff;
    for (int i = 0; i < dim_; ++i)
      if (m.exponents[i] > 0) p *= pow_int(x[i], m.exponents[i]);
    out[m.component] += p;
  }
  return out;
}

CMatrix HomogeneousTerm::jacobian(const CVector& x) const {
  CMatrix j(dim_);
  for (const Monomial& m : monomials_) {
    for (int k = 0; k < dim_; ++k) {
      const int ek = m.exponents[k];
      if (ek == 0) continue;
      cxd p = m.coeff * static_cast<double>(ek);
      for (int i = 0; i < dim_; ++i) {
        const int e = (i == k) ? m.exponents[i] - 1 : m.exponents[i];
        if (e > 0) p *= pow_int(x[i], e);
      }
      j(m.component, k) += p;
    }
  }
  return j;
}

GeneratorMap GeneratorMap::polynomial(CMatrix linear, std::vector<HomogeneousTerm> terms) {
  GeneratorMap g;
  g.kind_ = Kind::Polynomial;
  g.dim_ = linear.dim();
  g.linear_ = std::move(linear);
  for (const HomogeneousTerm& t : terms)
    if (t.dim() != g.dim_) throw InvalidGenerator("generator: term dimension mismatch");
  g.terms_ = std::move(terms);
  return g;
}

GeneratorMap GeneratorMap::rational_disk(std::vector<cxd> numerator, std::vector<cxd> denominator) {
  if (numerator.empty() || denominator.empty())
    throw InvalidGenerator("rational generator: empty coefficient list");
  if (numerator[0] != cxd(0.0, 0.0))
    throw InvalidGenerator("rational generator: numerator constant term must vanish (f(0)=0)");
  if (denominator[0] == cxd(0.0, 0.0))
    throw InvalidGenerator("rational generator: denominator constant term must be nonzero");
  const double scale = coeff_scale(denominator);
  const double min_abs = min_abs_on_disk(denominator, 1.0 - 1e-9);
  if (min_abs < 0.5e-9 * scale)
    throw InvalidGenerator("rational generator: denominator has a root inside the unit disk");
  GeneratorMap g;
  g.kind_ = Kind::RationalDisk;
  g.dim_ = 1;
  g.num_ = std::move(numerator);
  g.den_ = std::move(denominator);
  return g;
}

CVector GeneratorMap::eval_impl(const CVector& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionMismatch("generator eval: dimension mismatch");
  if (kind_ == Kind::Polynomial) {
    CVector out = linear_ * x;
    for (const HomogeneousTerm& t : terms_) out += t.eval(x);
    return out;
  }
  const cxd z = x[0];
  const cxd d = horner(den_, z);
  if (std::abs(d) < 1e-12 * coeff_scale(den_))
    throw NumericalError("rational generator: denominator vanishes at the evaluation point");
  return {horner(num_, z) / d};
}

CVector GeneratorMap::eval(const CVector& x) const {
  if (!(norm(x) < 1.0)) throw DomainViolation("generator eval: point outside the open unit ball");
  return eval_impl(x);
}

CVector GeneratorMap::eval_extended(const CVector& x) const { return eval_impl(x); }

CMatrix GeneratorMap::frechet_impl(const CVector& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionMismatch("generator frechet: dimension mismatch");
  if (kind_ == Kind::Polynomial) {
    CMatrix j = linear_;
    for (const HomogeneousTerm& t : terms_) j = j + t.jacobian(x);
    return j;
  }
  const cxd z = x[0];
  const cxd d = horner(den_, z);
  if (std::abs(d) < 1e-12 * coeff_scale(den_))
    throw NumericalError("rational generator: denominator vanishes at the evaluation point");
  const cxd n = horner(num_, z);
  const cxd dn = horner(poly_derivative(num_), z);
  const cxd dd = horner(poly_derivative(den_), z);
  CMatrix j(1);
  j(0, 0) = (dn * d - n * dd) / (d * d);
  return j;
}

CMatrix GeneratorMap::frechet(const CVector& x) const {
  if (!(norm(x) < 1.0))
    throw DomainViolation("generator frechet: point outside the open unit ball");
  return frechet_impl(x);
}

CMatrix GeneratorMap::frechet_extended(const CVector& x) const { return frechet_impl(x); }

CMatrix GeneratorMap::linear_part() const {
  if (kind_ == Kind::Polynomial) return linear_;
  CMatrix a(1);
  a(0, 0) = num_.size() > 1 ? num_[1] / den_[0] : cxd(0.0, 0.0);
  return a;
}

std::vector<HomogeneousTerm> GeneratorMap::taylor_homogeneous(int max_degree) const {
  if (max_degree < 2) throw DomainViolation("taylor expansion: max_degree must be at least 2");
  if (kind_ == Kind::Polynomial) {
    std::vector<HomogeneousTerm> out;
    for (const HomogeneousTerm& t : terms_)
      if (t.degree() <= max_degree) out.push_back(t);
    return out;
  }
  // Power-series division: c_k = (n_k - sum_{j>=1} d_j c_{k-j}) / d_0.
  std::vector<cxd> c(static_cast<std::size_t>(max_degree) + 1, cxd(0.0, 0.0));
  for (int k = 1; k <= max_degree; ++k) {
    cxd s = k < static_cast<int>(num_.size()) ? num_[k] : cxd(0.0, 0.0);
    for (int j = 1; j <= k && j < static_cast<int>(den_.size()); ++j) s -= den_[j] * c[k - j];
    c[k] = s / den_[0];
  }
  std::vector<HomogeneousTerm> out;
  for (int k = 2; k <= max_degree; ++k) {
    if (c[k] == cxd(0.0, 0.0)) continue;
    out.emplace_back(1, k, std::vector<Monomial>{Monomial{0, {k}, c[k]}});
  }
  return out;
}

double sup_norm(const GeneratorMap& f, double r, const SphereSampler& sampler) {
  if (!(r > 0.0 && r < 1.0)) throw DomainViolation("sup_norm: radius must lie in (0,1)");
  if (f.dim() == 1) {
    auto g = [&](double phi) { return norm(f.eval({std::polar(r, phi)})); };
    return golden_extremum_on_circle(g, /*maximize=*/true).second;
  }
  auto value = [&](const CVector& x) { return norm(f.eval(x)); };
  const auto dirs = sampler.directions(f.dim());
  const auto phases = phase_grid(16);
  double best = -1.0;
  CVector best_x;
  for (const CVector& u : dirs) {
    for (double phi : phases) {
      const cxd s = std::polar(r, phi);
      CVector x = u;
      for (cxd& c : x) c *= s;
      const double v = value(x);
      if (v > best) {
        best = v;
        best_x = std::move(x);
      }
    }
  }
  std::uint64_t salt = 0x7375706eULL;
  std::uint64_t bits;
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&bits, &r, sizeof(bits));
  auto [x, v] = refine_on_sphere(value, best_x, r, /*maximize=*/true,
                                 mix_seed(sampler.seed(), salt ^ bits));
  return std::max(best, v);
}

double poly_term_norm(const HomogeneousTerm& p, const SphereSampler& sampler) {
  if (p.monomials().empty()) return 0.0;
  if (p.dim() == 1) {
    auto g = [&](double phi) { return norm(p.eval({std::polar(1.0, phi)})); };
    return golden_extremum_on_circle(g, /*maximize=*/true, 64).second;
  }
  auto value = [&](const CVector& x) { return norm(p.eval(x)); };
  double best = -1.0;
  CVector best_x;
  for (const CVector& u : sampler.directions(p.dim())) {
    const double v = value(u);
    if (v > best) {
      best = v;
      best_x = u;
    }
  }
  auto [x, v] = refine_on_sphere(value, best_x, 1.0, /*maximize=*/true,
                                 mix_seed(sampler.seed(), 0x706e726dULL + p.degree()));
  return std::max(best, v);
}

}  // namespace nres
