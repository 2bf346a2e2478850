#pragma once

#include <random>
#include <vector>

#include "group.hpp"
#include "indices.hpp"
#include "shilov.hpp"

namespace maslov {

inline std::vector<Algebra> reference_algebras() {
  return {Algebra::sym_r(1), Algebra::sym_r(2),  Algebra::sym_r(3), Algebra::herm_c(1),
          Algebra::herm_c(2), Algebra::spin(3), Algebra::spin(5)};
}

inline double uniform_angle(Rng& rng) { return std::uniform_real_distribution<double>(-kPi, kPi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline LiftedPoint random_lift(const ShilovPoint& s, Rng& rng, int spread = 3) {
  return lift(s, uniform_int(rng, -spread, spread));
}

// A point sigma with mu(sigma, tau) = ell: sigma = -P(tau^{1/2}) w where w has
// ell angles equal to pi on a random frame.
inline ShilovPoint point_with_mu(const ShilovPoint& tau, int ell, Rng& rng) {
  const Algebra& alg = tau.alg;
  std::vector<double> a;
  for (int j = 0; j < alg.r; ++j) {
    if (j < ell) {
      a.push_back(kPi);
    } else {
      double x;
      do x = uniform_angle(rng);
      while (circle_dist(x, kPi) < 0.05);
      a.push_back(x);
    }
  }
  const ElementC w = from_angles(random_frame(alg, rng), a);
  return -cquad_rep_apply(sqrt_S(tau), w);
}

// Random point, coincident with `other` in a random number of directions
// about half of the time.
inline ShilovPoint maybe_related(const ShilovPoint& other, Rng& rng) {
  const int pick = uniform_int(rng, 0, 5);
  if (pick <= 2) return random_shilov(other.alg, rng);
  if (pick == 3) return other;
  return point_with_mu(other, uniform_int(rng, 1, other.alg.r), rng);
}

}  // namespace maslov
