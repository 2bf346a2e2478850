#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "jordan.hpp"
#include "tolerances.hpp"

namespace maslov {

inline constexpr double kPi = std::numbers::pi;

// Reduce to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

// Distance on the circle between two angles.
inline double circle_dist(double a, double b) { return std::abs(wrap_angle(a - b)); }

inline double principal_arg(cplx z) {
  double a = std::arg(z);
  if (a <= -kPi) a = kPi;
  return a;
}

using ShilovPoint = ElementC;

struct UnitSpectrum {
  std::vector<double> angles;   // in (-pi, pi]
  std::vector<ElementJ> frame;  // real Jordan frame
  double residual = 0.0;
};

struct LiftedPoint {
  ShilovPoint point;
  double theta = 0.0;
};

// ||conj(s) - s^{-1}|| (infinite if s is singular)
inline double shilov_residual(const ElementC& s) {
  try {
    return (conj(s) - cinverse(s)).coords.norm();
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline void require_shilov(const ElementC& s, const char* what,
                           const Tolerances& tol = default_tolerances()) {
  const double res = shilov_residual(s);
  if (!(res <= tol.shilov))
    throw DomainError(std::string(what) + ": point is not on the Shilov boundary (residual " +
                      std::to_string(res) + ")");
}

inline ElementC from_frame(const std::vector<ElementJ>& frame, const std::vector<cplx>& zeta) {
  ElementC out = ElementC::zero(frame.at(0).alg);
  for (std::size_t j = 0; j < frame.size(); ++j) out = out + zeta.at(j) * ElementC(frame[j]);
  return out;
}

inline ElementC from_angles(const std::vector<ElementJ>& frame, const std::vector<double>& angles) {
  std::vector<cplx> z;
  for (double a : angles) z.push_back(std::polar(1.0, a));
  return from_frame(frame, z);
}

// Common real frame of Re(s) and Im(s): diagonalize cos(phi) Re s + sin(phi) Im s
// for a few fixed phi and keep the best reconstruction.
inline UnitSpectrum shilov_spectral(const ShilovPoint& s, const Tolerances& tol = default_tolerances()) {
  const ElementJ a = s.re(), b = s.im();
  UnitSpectrum best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 8; ++k) {
    const double phi = 0.3 + k * 1.9416110387254665;  // golden-angle steps
    const Spectrum sp = spectral_decompose_real(std::cos(phi) * a + std::sin(phi) * b);
    UnitSpectrum cand;
    cand.frame = sp.frame;
    for (const ElementJ& c : sp.frame) cand.angles.push_back(principal_arg(ctrace(cjmul(s, ElementC(c)))));
    cand.residual = (from_angles(cand.frame, cand.angles) - s).coords.norm();
    if (cand.residual < best.residual) best = std::move(cand);
    if (best.residual <= tol.spec) break;
  }
  if (!(best.residual <= tol.shilov))
    throw DomainError("shilov_spectral: no common real frame found (point not on S?)");
  return best;
}

inline ShilovPoint spectral_map(const UnitSpectrum& u, const std::function<cplx(double)>& f) {
  std::vector<cplx> z;
  for (double a : u.angles) z.push_back(f(a));
  return from_frame(u.frame, z);
}

inline ShilovPoint exp_iJ(const ElementJ& x) {
  const Spectrum sp = spectral_decompose_real(x);
  std::vector<cplx> z;
  for (double l : sp.eigenvalues) z.push_back(std::polar(1.0, l));
  return from_frame(sp.frame, z);
}

// Square root on S; branch[j] selects the other root on frame member j.
inline ElementC sqrt_S(const ShilovPoint& s, const std::vector<bool>& branch = {}) {
  const UnitSpectrum u = shilov_spectral(s);
  std::vector<cplx> z;
  for (std::size_t j = 0; j < u.angles.size(); ++j) {
    double h = 0.5 * u.angles[j];
    if (j < branch.size() && branch[j]) h += kPi;
    z.push_back(std::polar(1.0, h));
  }
  return from_frame(u.frame, z);
}

inline ElementC log_S(const ShilovPoint& s, const Tolerances& tol = default_tolerances()) {
  const UnitSpectrum u = shilov_spectral(s, tol);
  for (double a : u.angles)
    if (circle_dist(a, kPi) < tol.transverse) throw DomainError("log_S: point is not transverse to -e");
  return spectral_map(u, [](double a) { return cplx(0.0, a); });
}

inline ElementC cayley_p(const ElementC& z) {
  const Algebra& alg = z.alg;
  const ElementC e = ElementC::unit(alg);
  const cplx I(0.0, 1.0);
  ElementC inv;
  try {
    inv = cinverse(z + I * e);
  } catch (const DomainError&) {
    throw DomainError("cayley_p: z + ie is singular");
  }
  return e - (2.0 * I) * inv;
}

inline ElementC cayley_c(const ElementC& w) {
  const Algebra& alg = w.alg;
  const ElementC e = ElementC::unit(alg);
  const cplx I(0.0, 1.0);
  ElementC inv;
  try {
    inv = cinverse(e - w);
  } catch (const DomainError&) {
    throw DomainError("cayley_c: e - w is singular");
  }
  return (2.0 * I) * inv - I * e;
}

inline LiftedPoint lift(const ShilovPoint& s, long k = 0) {
  const double th = (principal_arg(cdet(s)) + 2.0 * kPi * static_cast<double>(k)) / s.alg.r;
  return {s, th};
}

inline LiftedPoint t_shift(const LiftedPoint& p, long n) {
  return {p.point, p.theta + 2.0 * kPi * static_cast<double>(n) / p.point.alg.r};
}

inline double lift_residual(const LiftedPoint& p) {
  return std::abs(cdet(p.point) - std::polar(1.0, p.point.alg.r * p.theta));
}

inline void require_lift(const LiftedPoint& p, const char* what, const Tolerances& tol = default_tolerances()) {
  require_shilov(p.point, what, tol);
  const double res = lift_residual(p);
  if (!(res <= tol.shilov))
    throw DomainError(std::string(what) + ".theta: det(sigma) != exp(i r theta) (residual " +
                      std::to_string(res) + ")");
}

// Point of S with the given angles on the standard frame.
inline ShilovPoint diag_point(const Algebra& alg, const std::vector<double>& angles) {
  return from_angles(standard_frame(alg), angles);
}

// -i eps_k: k angles -pi/2, the others +pi/2.
inline ShilovPoint minus_i_eps(const Algebra& alg, int k) {
  std::vector<double> a(alg.r, kPi / 2);
  for (int j = 0; j < k; ++j) a[j] = -kPi / 2;
  return diag_point(alg, a);
}

inline ShilovPoint random_shilov(const Algebra& alg, Rng& rng) {
  std::uniform_real_distribution<double> U(-kPi, kPi);
  std::vector<double> a;
  for (int j = 0; j < alg.r; ++j) a.push_back(U(rng));
  return from_angles(random_frame(alg, rng), a);
}

}  // namespace maslov
