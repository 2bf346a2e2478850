#include "test_util.hpp"

#include <sstream>

using namespace maslov;

namespace {

BoundaryPath phase_path(const ShilovPoint& base, double from, double to, int samples = 32) {
  return BoundaryPath([base, from, to](double t) { return std::polar(1.0, from + (to - from) * t) * base; }, samples);
}

// A base point transverse to sigma0 with every relative angle away from pi.
ShilovPoint transverse_to(const ShilovPoint& sigma0, Rng& rng) {
  for (;;) {
    const ShilovPoint s = random_shilov(sigma0.alg, rng);
    bool ok = true;
    for (double a : relative_angles(s, sigma0)) ok = ok && circle_dist(a, kPi) > 0.1;
    if (ok) return s;
  }
}

}  // namespace

TEST(Dynamics, ConstantPathHasConstantStrands) {
  Rng rng(61);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s = random_shilov(alg, rng), s0 = transverse_to(s, rng);
    const StrandFlow f = eigenangle_flow(BoundaryPath([s](double) { return s; }, 8), s0);
    for (const auto& row : f.angles) {
      ASSERT_EQ(row.size(), static_cast<std::size_t>(alg.r));
      for (int j = 0; j < alg.r; ++j) EXPECT_NEAR(row[j], f.angles.front()[j], 1e-10);
    }
    EXPECT_EQ(arnold_number(BoundaryPath([s](double) { return s; }, 8), transverse_to(s, rng)).value, 0);
  }
}

TEST(Dynamics, FullLoop) {
  Rng rng(62);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s0 = random_shilov(alg, rng), base = transverse_to(s0, rng);
    const BoundaryPath loop = phase_path(base, 0.0, 2 * kPi);
    const StrandFlow f = eigenangle_flow(loop, s0);
    for (int j = 0; j < alg.r; ++j) EXPECT_NEAR(f.angles.back()[j] - f.angles.front()[j], 2 * kPi, 1e-8);
    const PathIndexResult res = arnold_number(loop, s0);
    EXPECT_EQ(res.value, alg.r) << mt::label(alg);
    EXPECT_EQ(res.crossings.size(), static_cast<std::size_t>(alg.r));
    EXPECT_EQ(arnold_number(loop.reversed(), s0).value, -alg.r);
    EXPECT_EQ(arnold_number(loop.refined(), s0).value, alg.r);
  }
}

TEST(Dynamics, TransversePathAndAdditivity) {
  Rng rng(63);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s0 = random_shilov(alg, rng), base = transverse_to(s0, rng);
    double room = kPi;
    for (double a : relative_angles(base, s0)) room = std::min(room, circle_dist(a, kPi));
    EXPECT_EQ(arnold_number(phase_path(base, -0.4 * room, 0.4 * room), s0).value, 0);

    const BoundaryPath path = phase_path(base, 0.0, 3.5 * kPi, 48);
    const long whole = arnold_number(path, s0).value;
    for (double alpha : {0.23, 0.5, 0.81}) {
      const BoundaryPath a = path.restrict(0.0, alpha), b = path.restrict(alpha, 1.0);
      if (mu(a.sigma.back(), s0) != 0) continue;
      EXPECT_EQ(arnold_number(a, s0).value + arnold_number(b, s0).value, whole) << mt::label(alg);
    }
  }
}

TEST(Dynamics, EndpointOnTheCycleIsRejected) {
  const Algebra alg = Algebra::sym_r(2);
  const ShilovPoint e = ElementC::unit(alg);
  EXPECT_THROW(arnold_number(phase_path(e, 0.0, 1.0), e), DomainError);
}

TEST(Dynamics, ArnoldMatchesSouriauOnPhaseLoops) {
  // Along e^{i a t} sigma the lift moves continuously with theta + a t; the
  // count equals the change of n(fixed, .) between the endpoints.
  Rng rng(64);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s0 = random_shilov(alg, rng), base = transverse_to(s0, rng);
    const double a = 2.7 * kPi;
    const PathIndexResult res = arnold_number(phase_path(base, 0.0, a, 64), s0);
    const LiftedPoint fixed = lift(s0);
    const LiftedPoint start = lift(base), end{std::polar(1.0, a) * base, start.theta + a};
    if (mu(end.point, s0) != 0) continue;
    EXPECT_EQ(res.value, alm_n(fixed, end).value - alm_n(fixed, start).value) << mt::label(alg);
  }
}

TEST(Dynamics, PairPaths) {
  Rng rng(65);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s0 = random_shilov(alg, rng), base = transverse_to(s0, rng);
    const BoundaryPath constant([s0](double) { return s0; }, 32);
    const BoundaryPath loop = phase_path(base, 0.0, 2 * kPi);
    EXPECT_EQ(pair_path_index(constant, loop).value, arnold_number(loop, s0).value);

    double room = kPi;
    for (double x : relative_angles(base, s0)) room = std::min(room, circle_dist(x, kPi));
    const BoundaryPath small = phase_path(base, 0.0, 0.4 * room);
    EXPECT_EQ(pair_path_index(constant, small).value, 0);

    // Apply the same family g_t to both components.
    const GroupWord g = random_unitary_word(alg, rng);
    const auto gt = [g](double t, const ShilovPoint& x) {
      return std::polar(1.0, 0.3 * t) * g.apply(x);
    };
    const BoundaryPath p1([&, gt, s0](double t) { return gt(t, s0); }, 32);
    const BoundaryPath p2([&, gt, loop](double t) { return gt(t, loop.eval(t)); }, 32);
    EXPECT_EQ(pair_path_index(p1, p2).value, pair_path_index(constant, loop).value) << mt::label(alg);
  }
}

TEST(Dynamics, PairPathShiftIndependence) {
  Rng rng(66);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s0 = random_shilov(alg, rng);
    // Improper pair: starts and ends coincident.
    const BoundaryPath p1([s0](double) { return s0; }, 32);
    const BoundaryPath p2 = phase_path(s0, 0.0, 2 * kPi);
    const double bound = std::min(kPi / 2, admissible_shift_bound(p1, p2));
    const long ref = pair_path_index(p1, p2).value;
    for (int k = 1; k <= 5; ++k)
      EXPECT_EQ(pair_path_index_shifted(p1, p2, bound * k / 6.0).value, ref) << mt::label(alg);
  }
}

TEST(Dynamics, TangencyIsAnError) {
  const Algebra alg = Algebra::sym_r(1);
  const ShilovPoint e = ElementC::unit(alg);
  // w = -sigma; relative angle touches pi at t = 1/2 and turns back.
  std::vector<double> ts = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<ShilovPoint> pts;
  for (double t : ts) pts.push_back(-diag_point(alg, {kPi - 2.0 * (t - 0.5) * (t - 0.5)}));
  EXPECT_THROW(arnold_number(BoundaryPath(ts, pts), e), AmbiguityError);
}

TEST(Dynamics, CsvOutput) {
  const Algebra alg = Algebra::sym_r(2);
  Rng rng(67);
  const ShilovPoint s0 = random_shilov(alg, rng), base = transverse_to(s0, rng);
  const PathIndexResult res = arnold_number(phase_path(base, 0.0, 2 * kPi, 8), s0);
  std::ostringstream os;
  write_flow_csv(os, res.flow, res.crossings);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,strand_id,angle,crossing_flag,sign");
  int rows = 0, flagged = 0, sign = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 5u);
    flagged += std::stoi(cells[3]);
    sign += std::stoi(cells[4]);
  }
  EXPECT_EQ(rows, static_cast<int>(res.flow.t.size()) * alg.r);
  EXPECT_EQ(flagged, alg.r);
  EXPECT_EQ(sign, alg.r);
}

TEST(Dynamics, Quasimorphism) {
  Rng rng(68);
  for (const auto& alg : reference_algebras()) {
    const LiftedPoint o = default_base_point(alg);
    EXPECT_EQ(quasimorphism_c(GroupWord::identity(alg), o).value, 0);
    // T acts as the deck shift by one sheet.
    EXPECT_EQ(souriau_m(t_shift(o, 1), o).value, -2);
    // Defect of c on products is bounded.
    for (int i = 0; i < 10; ++i) {
      const GroupWord g = random_mixed_word(alg, rng), h = random_mixed_word(alg, rng);
      const long d =
          quasimorphism_c_product(g, h, o).value - quasimorphism_c(g, o).value - quasimorphism_c(h, o).value;
      EXPECT_LE(std::abs(d), alg.r) << mt::label(alg);
    }
  }
}

TEST(Dynamics, TranslationAndRotationNumbers) {
  Rng rng(69);
  for (const auto& alg : reference_algebras()) {
    const LiftedPoint o = default_base_point(alg);
    const int r = alg.r;
    const RotationEstimate id = translation_tau(GroupWord::identity(alg), 16, o);
    EXPECT_EQ(id.tau, 0.0);
    EXPECT_NEAR(id.error_bound, static_cast<double>(r) / 16, 1e-15);

    // Scalar phase: c(u^K) is within r of -K phi0 r / pi.
    const double phi0 = 0.61;
    const GroupWord u(alg, WordMode::Unitary, {Generator::exp_iL(phi0 * ElementJ::unit(alg))});
    for (int K : {4, 8, 16, 32}) {
      const RotationEstimate est = translation_tau(u, K, o);
      EXPECT_LE(std::abs(est.tau + phi0 * r / kPi), est.error_bound + 1e-12) << mt::label(alg) << " K=" << K;
      const RotationEstimate rho = rotation_rho(u, K, o);
      const double target = std::fmod(phi0 * r / (2 * kPi), 1.0);
      EXPECT_LE(dist_to_integer(rho.rho - target), rho.error_bound + 1e-12);
    }
    // Cauchy-type consistency between K and 2K.
    const GroupWord g = random_mixed_word(alg, rng);
    const RotationEstimate a = translation_tau(g, 6, o), b = translation_tau(g, 12, o);
    EXPECT_LE(std::abs(a.tau - b.tau), a.error_bound + b.error_bound + 1e-12);

    // Words fixing -e have tau = 0 from the base point over -e.
    const GroupWord lin(alg, WordMode::Tube, {Generator::linear({{false, 0.3 * random_element(alg, rng), {}}})});
    EXPECT_LE(std::abs(translation_tau(lin, 10, o).tau), static_cast<double>(r) / 10);
    const GroupWord tr(alg, WordMode::Tube, {Generator::translate(random_element(alg, rng))});
    EXPECT_LE(dist_to_integer(rotation_rho(tr, 10, o).rho), static_cast<double>(r) / 20 + 1e-12);
  }
}

TEST(Dynamics, RotationOfUnitaryMatchesCharacter) {
  Rng rng(70);
  for (const auto& alg : reference_algebras()) {
    const GroupWord u = random_unitary_word(alg, rng);
    const RotationEstimate est = rotation_rho(u, 64, default_base_point(alg));
    const cplx chi = u.cocycle(ElementC::zero(alg));
    const double target = std::arg(chi) / (2 * kPi);
    EXPECT_LE(dist_to_integer(est.rho - target), est.error_bound + 1e-9) << mt::label(alg);
  }
}

TEST(Dynamics, RotationIsConjugationInvariant) {
  Rng rng(71);
  for (const auto& alg : reference_algebras()) {
    const GroupWord g = random_unitary_word(alg, rng), h = random_mixed_word(alg, rng);
    const GroupWord hgh = compose(h, compose(g, inverse(h)));
    const LiftedPoint o = default_base_point(alg);
    const RotationEstimate a = rotation_rho(g, 32, o), b = rotation_rho(hgh, 32, o);
    EXPECT_LE(dist_to_integer(a.rho - b.rho), a.error_bound + b.error_bound + 1e-12) << mt::label(alg);
  }
}
