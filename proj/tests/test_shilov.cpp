#include "test_util.hpp"

using namespace maslov;
using mt::dist;

namespace {

const cplx I(0.0, 1.0);

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Complex, DeterminantBasics) {
  Rng rng(21);
  for (const auto& alg : reference_algebras()) {
    EXPECT_LT(std::abs(cdet(ElementC::unit(alg)) - 1.0), 1e-14);
    const ShilovPoint s = random_shilov(alg, rng);
    const cplx ir = std::pow(I, alg.r);
    EXPECT_LT(std::abs(cdet(I * s) - ir * cdet(s)), 1e-10) << mt::label(alg);
    const ElementC z(random_element(alg, rng), random_element(alg, rng));
    EXPECT_NEAR(ctrace(cjmul(z, conj(z))).real(), hnorm(z) * hnorm(z), 1e-10);
    EXPECT_NEAR(ctrace(cjmul(z, conj(z))).imag(), 0.0, 1e-10);
  }
}

TEST(Complex, QuasiInverseMatchesClosedForm) {
  // x^y = (x^{-1} - y)^{-1} when x is invertible.
  Rng rng(22);
  for (const auto& alg : reference_algebras()) {
    const ElementC x(random_element(alg, rng), random_element(alg, rng));
    const ElementC y = 0.3 * ElementC(random_element(alg, rng), random_element(alg, rng));
    const ElementC ref = cinverse(cinverse(x) - y);
    EXPECT_LT(dist(quasi_inverse(x, y), ref), 1e-8 * std::max(1.0, hnorm(ref))) << mt::label(alg);
  }
}

TEST(Shilov, SpectralOfSimplePoints) {
  for (const auto& alg : reference_algebras()) {
    for (double a : shilov_spectral(ElementC::unit(alg)).angles) EXPECT_NEAR(a, 0.0, 1e-12);
    for (int k = 0; k <= alg.r; ++k) {
      const auto ang = sorted(shilov_spectral(minus_i_eps(alg, k)).angles);
      for (int j = 0; j < alg.r; ++j) EXPECT_NEAR(ang[j], j < k ? -kPi / 2 : kPi / 2, 1e-12) << mt::label(alg);
    }
  }
}

TEST(Shilov, ExpOfRealElement) {
  Rng rng(23);
  for (const auto& alg : reference_algebras()) {
    const ElementJ x = 2.0 * random_element(alg, rng);
    std::vector<double> expect;
    for (double l : spectral_decompose_real(x).eigenvalues) expect.push_back(wrap_angle(l));
    const UnitSpectrum u = shilov_spectral(exp_iJ(x));
    EXPECT_LT(u.residual, 1e-10);
    const auto got = sorted(u.angles);
    expect = sorted(expect);
    for (int j = 0; j < alg.r; ++j) EXPECT_LT(circle_dist(got[j], expect[j]), 1e-9) << mt::label(alg);
  }
  const ShilovPoint s = exp_iJ(mt::diag2(kPi / 3, -kPi / 4));
  const auto a = sorted(shilov_spectral(s).angles);
  EXPECT_NEAR(a[0], -kPi / 4, 1e-12);
  EXPECT_NEAR(a[1], kPi / 3, 1e-12);
}

TEST(Shilov, RandomPointsAreOnTheBoundary) {
  Rng rng(24);
  for (const auto& alg : reference_algebras())
    for (int i = 0; i < 20; ++i) {
      const ShilovPoint s = random_shilov(alg, rng);
      EXPECT_LT(shilov_residual(s), 1e-10);
      EXPECT_NEAR(std::abs(cdet(s)), 1.0, 1e-10);
      const UnitSpectrum u = shilov_spectral(s);
      EXPECT_LT(dist(from_angles(u.frame, u.angles), s), 1e-9);
    }
  const Algebra alg = Algebra::sym_r(2);
  EXPECT_THROW(require_shilov(2.0 * ElementC::unit(alg), "sigma"), DomainError);
}

TEST(Shilov, Logarithm) {
  Rng rng(25);
  for (const auto& alg : reference_algebras()) {
    EXPECT_LT(hnorm(log_S(ElementC::unit(alg))), 1e-12);
    const ShilovPoint s = exp_iJ(random_element(alg, rng));
    const ElementC l = log_S(s);
    EXPECT_LT(dist(log_S(conj(s)), -l), 1e-9) << mt::label(alg);  // conj(s) = s^{-1} on S
    EXPECT_LT(dist(exp_iJ((-I * l).re()), s), 1e-9);
    EXPECT_THROW(log_S(-ElementC::unit(alg)), DomainError);
  }
}

TEST(Shilov, SquareRoot) {
  Rng rng(26);
  for (const auto& alg : reference_algebras()) {
    const ShilovPoint s = random_shilov(alg, rng);
    const ElementC q = sqrt_S(s);
    EXPECT_LT(dist(cjmul(q, q), s), 1e-9);
    EXPECT_LT(shilov_residual(q), 1e-9);
  }
}

TEST(Shilov, CayleyMaps) {
  Rng rng(27);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    EXPECT_LT(dist(cayley_p(ElementC::zero(alg)), -e), 1e-14);
    EXPECT_LT(hnorm(cayley_p(I * e)), 1e-14);
    for (int i = 0; i < 100; ++i) {
      const ElementC x(random_element(alg, rng));
      const ElementC px = cayley_p(x);
      EXPECT_LT(shilov_residual(px), 1e-9);
      EXPECT_LT(dist(cayley_c(px), x), 1e-8 * std::max(1.0, hnorm(x))) << mt::label(alg);
    }
    EXPECT_THROW(cayley_c(e), DomainError);
  }
}

TEST(Shilov, Lifts) {
  Rng rng(28);
  for (const auto& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    const LiftedPoint l0 = lift(e, 0);
    EXPECT_NEAR(l0.theta, 0.0, 1e-14);
    const LiftedPoint m = lift(-e, 0);
    // Principal branch of Arg det(-e) = Arg (-1)^r.
    EXPECT_NEAR(m.theta, alg.r % 2 ? kPi / alg.r : 0.0, 1e-12);
    EXPECT_NO_THROW(require_lift({-e, kPi}, "lift"));
    const ShilovPoint s = random_shilov(alg, rng);
    const LiftedPoint p = lift(s, 2);
    const LiftedPoint q = t_shift(p, 1);
    EXPECT_NEAR(q.theta - p.theta, 2 * kPi / alg.r, 1e-14);
    EXPECT_LT(lift_residual(q), 1e-10);
    EXPECT_THROW(require_lift({s, p.theta + 0.1}, "lift"), DomainError);
  }
}
