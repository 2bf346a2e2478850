#include "test_util.hpp"

using namespace maslov;
using mt::dist;

namespace {

std::vector<double> random_angles(int r, Rng& rng) {
  std::vector<double> a;
  for (int j = 0; j < r; ++j) a.push_back(uniform_angle(rng));
  return a;
}

// Shared-frame pair: ell angles of the second point coincide with the first.
struct FramePair {
  std::vector<ElementJ> frame;
  std::vector<double> a, b;
};

FramePair frame_pair(const Algebra& alg, int ell, Rng& rng) {
  FramePair p{random_frame(alg, rng), random_angles(alg.r, rng), {}};
  for (int j = 0; j < alg.r; ++j) {
    if (j < ell) {
      p.b.push_back(p.a[j]);
    } else {
      double x;
      do x = uniform_angle(rng);
      while (circle_dist(x, p.a[j]) < 0.05);
      p.b.push_back(x);
    }
  }
  return p;
}

}  // namespace

TEST(Indices, RelativeElement) {
  Rng rng(41);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    const ShilovPoint s = random_shilov(alg, rng);
    EXPECT_LT(dist(relative_element(s, s), -e), 1e-9);
    EXPECT_LT(dist(relative_element(e, -e), e), 1e-9);
    // The angle multiset does not depend on the square-root branch.
    const ShilovPoint t = random_shilov(alg, rng);
    std::vector<bool> other(alg.r, false);
    other[0] = true;
    auto a = shilov_spectral(relative_element(s, t)).angles;
    auto b = shilov_spectral(relative_element(s, t, other)).angles;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int j = 0; j < alg.r; ++j) EXPECT_LT(circle_dist(a[j], b[j]), 1e-8) << mt::label(alg);
  }
}

TEST(Indices, TransversalityIndex) {
  Rng rng(42);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    const ShilovPoint s = random_shilov(alg, rng);
    EXPECT_EQ(mu(s, s), alg.r);
    EXPECT_EQ(mu(e, -e), 0);
    for (int ell = 0; ell <= alg.r; ++ell) {
      const FramePair p = frame_pair(alg, ell, rng);
      const ShilovPoint x = from_angles(p.frame, p.a), y = from_angles(p.frame, p.b);
      EXPECT_EQ(mu(x, y), ell) << mt::label(alg);
      EXPECT_EQ(mu_via_corank(x, y), ell) << mt::label(alg);
      EXPECT_EQ(transversal(x, y), ell == 0);
    }
  }
}

TEST(Indices, GrayZoneIsRefusedInStrictMode) {
  const Algebra alg = Algebra::sym_r(1);
  const ShilovPoint s = diag_point(alg, {0.0});
  const ShilovPoint t = diag_point(alg, {3e-7});  // between transverse and 10 x transverse
  EXPECT_THROW(mu(s, t), AmbiguityError);
  Tolerances perm;
  perm.mode = GrayZonePolicy::Permissive;
  EXPECT_EQ(mu(s, t, perm), 0);
}

TEST(Indices, AngleFunctional) {
  Rng rng(43);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    EXPECT_NEAR(psi(e, -e), 0.0, 1e-10);
    for (int k = 0; k <= alg.r; ++k)
      EXPECT_NEAR(psi(minus_i_eps(alg, k), e), (2 * k - alg.r) * kPi / 2, 1e-9) << mt::label(alg);
    const ShilovPoint s = random_shilov(alg, rng);
    EXPECT_NEAR(psi_hat(s, s), 0.0, 1e-9);
    // Shared frame: sum of wrapped theta_j - phi_j + pi, coincidences dropped.
    for (int ell = 0; ell <= alg.r; ++ell) {
      const FramePair p = frame_pair(alg, ell, rng);
      double expect = 0.0;
      for (int j = ell; j < alg.r; ++j) expect += wrap_angle(p.a[j] - p.b[j] + kPi);
      EXPECT_NEAR(psi_hat(from_angles(p.frame, p.a), from_angles(p.frame, p.b)), expect, 1e-8);
      if (ell == 0) EXPECT_NEAR(psi(from_angles(p.frame, p.a), from_angles(p.frame, p.b)), expect, 1e-8);
    }
  }
}

TEST(Indices, Ord) {
  EXPECT_EQ(ord(0, kPi / 2, kPi), 1);
  EXPECT_EQ(ord(0, 0, kPi), 0);
  EXPECT_EQ(ord(0, -kPi / 2, kPi), -1);
}

TEST(Indices, SouriauExamples) {
  for (const auto& alg : reference_algebras()) {
    const int r = alg.r;
    const ElementC e = ElementC::unit(alg);
    const LiftedPoint te{e, 0.0}, tme{-e, kPi};
    EXPECT_EQ(souriau_m(te, tme).value, r) << mt::label(alg);
    for (int k = 0; k <= r; ++k) {
      const LiftedPoint eps{minus_i_eps(alg, k), (r - 2 * k) * kPi / (2 * r)};
      EXPECT_EQ(souriau_m(tme, eps).value, -r) << mt::label(alg) << " k=" << k;
      EXPECT_EQ(souriau_m(eps, te).value, 2 * k - r) << mt::label(alg) << " k=" << k;
    }
  }
}

TEST(Indices, SouriauSharedFrameFamily) {
  Rng rng(44);
  for (const auto& alg : reference_algebras())
    for (int ell = 0; ell <= alg.r; ++ell) {
      const FramePair p = frame_pair(alg, ell, rng);
      const LiftedPoint s = random_lift(from_angles(p.frame, p.a), rng);
      const LiftedPoint t = random_lift(from_angles(p.frame, p.b), rng);
      const long expect = m_shared_frame(p.a, s.theta, p.b, t.theta);
      EXPECT_EQ(souriau_m(s, t).value, expect) << mt::label(alg) << " ell=" << ell;
    }
}

TEST(Indices, SouriauProperties) {
  Rng rng(45);
  for (const auto& alg : reference_algebras())
    for (int i = 0; i < 10; ++i) {
      const ShilovPoint a = random_shilov(alg, rng);
      const LiftedPoint s = random_lift(a, rng), t = random_lift(maybe_related(a, rng), rng);
      const long m = souriau_m(s, t).value;
      EXPECT_EQ(souriau_m(t, s).value, -m);
      EXPECT_EQ(souriau_m(s, s).value, 0);
      // Deck transformation: shifting a lift by one sheet moves m by 2.
      EXPECT_EQ(souriau_m(t_shift(s, 1), t).value, m - 2);
      // Two different witnesses agree.
      if (mu(s.point, t.point) > 0) {
        const ShilovPoint w1 = default_witness(s.point, t.point);
        const LiftedPoint w2 = lift(std::polar(1.0, 0.37) * w1, 1);
        if (transversal(s.point, w2.point) && transversal(w2.point, t.point))
          EXPECT_EQ(souriau_m_witness(s, t, lift(w1), default_tolerances()).value,
                    souriau_m_witness(s, t, w2, default_tolerances()).value);
      }
    }
}

TEST(Indices, MaslovExamples) {
  Rng rng(46);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    for (int k = 0; k <= alg.r; ++k) {
      EXPECT_EQ(maslov_iota(e, -e, minus_i_eps(alg, k)).value, 2 * k - alg.r) << mt::label(alg);
      EXPECT_EQ(iota_via_cayley(e, minus_i_eps(alg, k), -e).value, -(2 * k - alg.r));
    }
    const ShilovPoint s = random_shilov(alg, rng), t = random_shilov(alg, rng);
    EXPECT_EQ(maslov_iota(s, s, t).value, 0);
  }
}

TEST(Indices, MaslovSharedFrame) {
  Rng rng(47);
  for (const auto& alg : reference_algebras())
    for (int i = 0; i < 20; ++i) {
      const auto frame = random_frame(alg, rng);
      auto a1 = random_angles(alg.r, rng), a2 = random_angles(alg.r, rng), a3 = random_angles(alg.r, rng);
      if (i % 2 == 1) a2[0] = a1[0];  // one coincidence
      const int expect = iota_shared_frame(a1, a2, a3);
      const int got = maslov_iota(from_angles(frame, a1), from_angles(frame, a2), from_angles(frame, a3)).value;
      EXPECT_EQ(got, expect) << mt::label(alg);
    }
}

TEST(Indices, MaslovCocycleAndSymmetry) {
  Rng rng(48);
  for (const auto& alg : reference_algebras())
    for (int i = 0; i < 10; ++i) {
      std::vector<ShilovPoint> p;
      for (int k = 0; k < 4; ++k) p.push_back(k == 0 ? random_shilov(alg, rng) : maybe_related(p[0], rng));
      const auto io = [&](int a, int b, int c) { return maslov_iota(p[a], p[b], p[c]).value; };
      EXPECT_EQ(io(0, 1, 2) - io(0, 1, 3) + io(0, 2, 3) - io(1, 2, 3), 0) << mt::label(alg);
      EXPECT_EQ(io(1, 0, 2), -io(0, 1, 2));
      EXPECT_EQ(io(1, 2, 0), io(0, 1, 2));
      EXPECT_LE(std::abs(io(0, 1, 2)), alg.r);
    }
}

TEST(Indices, InertiaExamplesAndCocycle) {
  Rng rng(49);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    for (int k = 0; k <= alg.r; ++k) EXPECT_EQ(inertia_j(e, -e, minus_i_eps(alg, k)).value, k);
    const ShilovPoint s = random_shilov(alg, rng);
    EXPECT_EQ(inertia_j(s, s, s).value, alg.r);
    std::vector<ShilovPoint> p = {s};
    for (int k = 1; k < 4; ++k) p.push_back(maybe_related(s, rng));
    const auto j = [&](int a, int b, int c) { return inertia_j(p[a], p[b], p[c]).value; };
    EXPECT_EQ(j(0, 1, 2) - j(0, 1, 3) + j(0, 2, 3) - j(1, 2, 3), 0) << mt::label(alg);
  }
}

TEST(Indices, ArnoldAndAlm) {
  Rng rng(50);
  for (const auto& alg : reference_algebras()) {
    const LiftedPoint te{ElementC::unit(alg), 0.0};
    EXPECT_EQ(arnold_nu(te, te).value, -alg.r);
    for (int i = 0; i < 10; ++i) {
      const ShilovPoint a = random_shilov(alg, rng);
      const LiftedPoint s = random_lift(a, rng), t = random_lift(maybe_related(a, rng), rng);
      const long m = souriau_m(s, t).value, u = mu(s.point, t.point);
      EXPECT_EQ(2 * alm_n(s, t).value, m + u + alg.r);
      EXPECT_EQ(2 * arnold_nu(s, t).value, m - u - alg.r);
    }
  }
}

TEST(Indices, ArnoldCoordinateFamily) {
  // sigma, tau on a shared frame with ell coincidences; nu = k - ell where k
  // counts the non-coincident directions that wrap past pi.
  Rng rng(51);
  for (const auto& alg : reference_algebras())
    for (int ell = 0; ell <= alg.r; ++ell) {
      const FramePair p = frame_pair(alg, ell, rng);
      const LiftedPoint s = lift(from_angles(p.frame, p.a), 0), t = lift(from_angles(p.frame, p.b), 0);
      const long m = m_shared_frame(p.a, s.theta, p.b, t.theta);
      EXPECT_EQ(arnold_nu(s, t).value, (m - ell - alg.r) / 2);
    }
}

TEST(Indices, Invariance) {
  Rng rng(52);
  for (const auto& alg : reference_algebras())
    for (int i = 0; i < 5; ++i) {
      const GroupWord g = random_mixed_word(alg, rng);
      std::vector<ShilovPoint> p = {random_shilov(alg, rng)};
      for (int k = 1; k < 3; ++k) p.push_back(maybe_related(p[0], rng));
      std::vector<ShilovPoint> q;
      for (const auto& x : p) q.push_back(g.apply(x));
      EXPECT_EQ(maslov_iota(q[0], q[1], q[2]).value, maslov_iota(p[0], p[1], p[2]).value) << mt::label(alg);
      const LiftedPoint s = random_lift(p[0], rng), t = random_lift(p[1], rng);
      EXPECT_EQ(souriau_m(act_lift(g, s), act_lift(g, t)).value, souriau_m(s, t).value) << mt::label(alg);
    }
}
