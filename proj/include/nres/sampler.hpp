#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nres/linalg.hpp"

namespace nres {

/// Deterministic random stream: mt19937_64 words mapped to uniforms,
/// Gaussians via Box-Muller. Same seed, same sequence on every run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double gaussian();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Unit vector of C^dim drawn from the rotation-invariant distribution.
CVector random_unit_vector(Rng& rng, int dim);

/// Seeded sample plan: directions on the unit sphere plus a radial grid in (0,1).
/// Quantifiers over the ball are realized as {radial grid} x {directions} x phases.
class SphereSampler {
 public:
  SphereSampler(std::uint64_t seed, int count, std::vector<double> radial_grid);

  std::uint64_t seed() const { return seed_; }
  int count() const { return count_; }
  const std::vector<double>& radial_grid() const { return radial_; }
  double max_radius() const { return radial_.back(); }

  /// count() unit directions, deterministic in (seed, dim).
  std::vector<CVector> directions(int dim) const;

  /// count() points of the open ball: direction i scaled by a cycling radius
  /// and a seeded phase, so boundary radii are covered.
  std::vector<CVector> ball_points(int dim) const;

 private:
  std::uint64_t seed_;
  int count_;
  std::vector<double> radial_;
};

/// Evenly spaced angles in [0, 2*pi).
std::vector<double> phase_grid(int m);

/// Local hill-climb on the sphere of the given radius: seeded tangential kicks
/// with a shrinking scale. Returns the refined point and objective value.
template <class F>
std::pair<CVector, double> refine_on_sphere(const F& objective, CVector x, double radius,
                                            bool maximize, std::uint64_t seed, int rounds = 110,
                                            int tries = 6) {
  Rng rng(seed);
  const int dim = static_cast<int>(x.size());
  if (norm(x) < 1e-14) x = random_unit_vector(rng, dim);
  {
    const double s = radius / norm(x);
    for (cxd& v : x) v *= s;
  }
  double best = objective(x);
  double step = 0.4;
  for (int r = 0; r < rounds; ++r) {
    bool improved = false;
    for (int t = 0; t < tries; ++t) {
      CVector y = x;
      for (cxd& v : y) v += step * radius * cxd(rng.gaussian(), rng.gaussian());
      const double ny = norm(y);
      if (ny < 1e-14) continue;
      const double s = radius / ny;
      for (cxd& v : y) v *= s;
      const double val = objective(y);
      if (maximize ? (val > best) : (val < best)) {
        x = std::move(y);
        best = val;
        improved = true;
      }
    }
    step *= improved ? 0.95 : 0.7;
    if (step < 1e-10) break;
  }
  return {std::move(x), best};
}

/// Golden-section refinement of phi -> g(phi) on the circle after a coarse grid
/// scan; used by the 1-D extremal searches where the endpoint must be hit tightly.
template <class F>
std::pair<double, double> golden_extremum_on_circle(const F& g, bool maximize, int grid = 256) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double sign = maximize ? 1.0 : -1.0;
  double best_phi = 0.0;
  double best = sign * g(0.0);
  for (int i = 1; i < grid; ++i) {
    const double phi = kTwoPi * i / grid;
    const double v = sign * g(phi);
    if (v > best) {
      best = v;
      best_phi = phi;
    }
  }
  double lo = best_phi - kTwoPi / grid;
  double hi = best_phi + kTwoPi / grid;
  const double invphi = 0.6180339887498948482;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = sign * g(x1);
  double f2 = sign * g(x2);
  for (int it = 0; it < 120 && (hi - lo) > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = sign * g(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = sign * g(x1);
    }
  }
  const double phi = 0.5 * (lo + hi);
  const double value = g(phi);
  if (sign * value >= best) return {phi, value};
  return {best_phi, sign * best};
}

/// Stable mix of a seed with a context salt, for independent derived streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace nres
