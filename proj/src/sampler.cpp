#include "nres/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace nres {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double m = std::sqrt(-2.0 * std::log(u1));
  spare_ = m * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return m * std::cos(kTwoPi * u2);
}

CVector random_unit_vector(Rng& rng, int dim) {
  CVector v(dim);
  double n2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = cxd(rng.gaussian(), rng.gaussian());
    n2 = norm_sq(v);
  } while (n2 < 1e-16);
  const double inv = 1.0 / std::sqrt(n2);
  for (cxd& c : v) c *= inv;
  return v;
}

SphereSampler::SphereSampler(std::uint64_t seed, int count, std::vector<double> radial_grid)
    : seed_(seed), count_(count), radial_(std::move(radial_grid)) {
  if (count_ <= 0) throw DomainViolation("sampler count must be positive");
  if (radial_.empty()) throw DomainViolation("sampler radial grid must be non-empty");
  for (double r : radial_)
    if (!(r > 0.0 && r < 1.0)) throw DomainViolation("sampler radii must lie in (0,1)");
  std::sort(radial_.begin(), radial_.end());
}

std::vector<CVector> SphereSampler::directions(int dim) const {
  Rng rng(mix_seed(seed_, 0x64697273ULL + static_cast<std::uint64_t>(dim)));
  std::vector<CVector> out;
  out.reserve(count_);
  for (int i = 0; i < count_; ++i) out.push_back(random_unit_vector(rng, dim));
  return out;
}

std::vector<CVector> SphereSampler::ball_points(int dim) const {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  auto dirs = directions(dim);
  Rng rng(mix_seed(seed_, 0x62616c6cULL + static_cast<std::uint64_t>(dim)));
  for (int i = 0; i < count_; ++i) {
    const double r = radial_[static_cast<std::size_t>(i) % radial_.size()];
    const cxd scale = std::polar(r, kTwoPi * rng.uniform());
    for (cxd& c : dirs[i]) c *= scale;
  }
  return dirs;
}

std::vector<double> phase_grid(int m) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = kTwoPi * i / m;
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nres
