// Walks through the main entry points on small examples in Sym(2, R) and
// the spin factor, printing the results.
#include <iostream>

#include "maslov/maslov.hpp"

using namespace maslov;

int main() {
  const Algebra alg = Algebra::sym_r(2);
  const ShilovPoint e = ElementC::unit(alg);

  std::cout << "Sym(2,R): r = " << alg.r << ", n = " << alg.n << "\n";
  for (int k = 0; k <= alg.r; ++k) {
    const ShilovPoint t = minus_i_eps(alg, k);
    std::cout << "  iota(e, -e, -i eps_" << k << ") = " << maslov_iota(e, -e, t).value
              << "   inertia = " << inertia_j(e, -e, t).value << "\n";
  }

  const LiftedPoint te{e, 0.0}, tme{-e, kPi};
  std::cout << "  m((e,0), (-e,pi)) = " << souriau_m(te, tme).value << "\n"
            << "  nu((e,0), (e,0))  = " << arnold_nu(te, te).value << "\n";

  Rng rng(2024);
  const ShilovPoint s = random_shilov(alg, rng);
  const ShilovPoint near = point_with_mu(s, 1, rng);
  std::cout << "  mu(s, s') = " << mu(s, near) << " (constructed with one coincidence)\n";

  // Arnold number of a full phase loop against e.
  const ShilovPoint base = minus_i_eps(alg, 1);
  const BoundaryPath loop([base](double t) { return std::polar(1.0, 2 * kPi * t) * base; }, 32);
  const PathIndexResult res = arnold_number(loop, e);
  std::cout << "  Arnold number of a full loop = " << res.value << " (" << res.crossings.size() << " crossings)\n";

  // Rotation number of a scalar phase rotation by pi/3.
  const GroupWord u(alg, WordMode::Unitary, {Generator::exp_iL((kPi / 3) * ElementJ::unit(alg))});
  for (int K : {8, 64, 512}) {
    const RotationEstimate est = rotation_rho(u, K, default_base_point(alg));
    std::cout << "  rho(u) with K = " << K << ": " << est.rho << " +- " << est.error_bound << "\n";
  }

  const Algebra sp = Algebra::spin(5);
  const GroupWord g = random_mixed_word(sp, rng);
  const LiftedPoint o = default_base_point(sp);
  std::cout << "spin(5): c(g) = " << quasimorphism_c(g, o).value
            << ", tau(g) ~ " << translation_tau(g, 32, o).tau << "\n";
  return 0;
}
