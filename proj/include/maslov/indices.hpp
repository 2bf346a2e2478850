#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "jacobi.hpp"
#include "shilov.hpp"
#include "tolerances.hpp"

namespace maslov {

struct IndexReport {
  long value = 0;
  double raw = 0.0;
  double residual = 0.0;
  std::vector<LiftedPoint> witnesses;
};

inline IndexReport integral_report(double raw, const char* what, const Tolerances& tol) {
  IndexReport rep;
  rep.raw = raw;
  rep.value = std::lround(raw);
  rep.residual = std::abs(raw - static_cast<double>(rep.value));
  if (!(rep.residual <= tol.integral))
    throw IntegralityError(std::string(what) + ": raw value " + std::to_string(raw) + " is not an integer");
  return rep;
}

// w = -P(tau^{-1/2}) sigma
inline ShilovPoint relative_element(const ShilovPoint& sigma, const ShilovPoint& tau,
                                    const std::vector<bool>& branch = {},
                                    const Tolerances& tol = default_tolerances()) {
  require_same(sigma.alg, tau.alg);
  const ElementC q = conj(sqrt_S(tau, branch));
  const ElementC w = -cquad_rep_apply(q, sigma);
  require_shilov(w, "relative_element", tol);
  return w;
}

// Distance of each angle of w to pi, with the gray-zone policy applied.
// Returns true for a coincidence direction.
inline bool is_coincident(double angle, const Tolerances& tol) {
  const double d = circle_dist(angle, kPi);
  if (d < tol.transverse) return true;
  if (d < tol.gray_zone() && tol.mode == GrayZonePolicy::Strict)
    throw AmbiguityError("transversality undecided: an angle lies " + std::to_string(d) +
                         " from pi (gray zone)");
  return false;
}

inline std::vector<double> relative_angles(const ShilovPoint& sigma, const ShilovPoint& tau,
                                           const Tolerances& tol = default_tolerances()) {
  return shilov_spectral(relative_element(sigma, tau, {}, tol), tol).angles;
}

inline int mu_from_angles(const std::vector<double>& angles, const Tolerances& tol) {
  int k = 0;
  for (double a : angles)
    if (is_coincident(a, tol)) ++k;
  return k;
}

inline int mu(const ShilovPoint& sigma, const ShilovPoint& tau, const Tolerances& tol = default_tolerances()) {
  return mu_from_angles(relative_angles(sigma, tau, tol), tol);
}

inline bool transversal(const ShilovPoint& sigma, const ShilovPoint& tau,
                        const Tolerances& tol = default_tolerances()) {
  return mu(sigma, tau, tol) == 0;
}

// Rank of a complex square matrix from the Hermitian dilation [[0, A], [A^H, 0]];
// singular values at or below `cut` count as zero.
inline int numerical_rank(const Eigen::MatrixXcd& A, double cut) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  H.topRightCorner(n, n) = A;
  H.bottomLeftCorner(n, n) = A.adjoint();
  const auto eig = jacobi_eigen<cplx>(H);
  int count = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (std::abs(eig.values(k)) > cut) ++count;
  return count / 2;
}

// mu from the rank of P(sigma - tau): rank = s + s(s-1)d/2 with s = r - mu.
inline int mu_via_corank(const ShilovPoint& sigma, const ShilovPoint& tau,
                         const Tolerances& tol = default_tolerances()) {
  require_same(sigma.alg, tau.alg);
  const Algebra& alg = sigma.alg;
  // On S the singular values of P(sigma - tau) are at most 4.
  const int rk = numerical_rank(cquad_rep_operator(sigma - tau), 4.0 * tol.rank);
  for (int k = 0; k <= alg.r; ++k) {
    const int s = alg.r - k;
    if (s + s * (s - 1) * alg.d / 2 == rk) return k;
  }
  throw NumericalError("mu_via_corank: rank " + std::to_string(rk) + " of P(sigma - tau) is not admissible");
}

inline double psi_hat_from_angles(const std::vector<double>& angles, const Tolerances& tol) {
  double s = 0.0;
  for (double a : angles)
    if (!is_coincident(a, tol)) s += wrap_angle(a);
  return s;
}

inline double psi(const ShilovPoint& sigma, const ShilovPoint& tau, const Tolerances& tol = default_tolerances()) {
  const auto a = relative_angles(sigma, tau, tol);
  if (mu_from_angles(a, tol) != 0) throw DomainError("psi: points are not transverse");
  return psi_hat_from_angles(a, tol);
}

inline double psi_hat(const ShilovPoint& sigma, const ShilovPoint& tau,
                      const Tolerances& tol = default_tolerances()) {
  return psi_hat_from_angles(relative_angles(sigma, tau, tol), tol);
}

// Souriau index from the angle functional (no witness cross-check).
inline IndexReport souriau_m_spectral(const LiftedPoint& s, const LiftedPoint& t,
                                      const Tolerances& tol = default_tolerances()) {
  const int r = s.point.alg.r;
  const double raw = (psi_hat(s.point, t.point, tol) - r * (s.theta - t.theta)) / kPi;
  return integral_report(raw, "souriau_m", tol);
}

// Maslov index of (s1, s2, tau) with tau transverse to s1 and s2: move tau to e,
// pass to the Cayley chart, take the signature of x2 - x1.
inline IndexReport iota_via_cayley(const ShilovPoint& s1, const ShilovPoint& s2, const ShilovPoint& tau,
                                   const Tolerances& tol = default_tolerances()) {
  require_same(s1.alg, s2.alg);
  require_same(s1.alg, tau.alg);
  if (!transversal(s1, tau, tol) || !transversal(s2, tau, tol))
    throw DomainError("iota_via_cayley: third point must be transverse to the first two");
  const int mu12 = mu(s1, s2, tol);
  const ElementC q = conj(sqrt_S(tau));
  const ElementC x1 = cayley_c(cquad_rep_apply(q, s1));
  const ElementC x2 = cayley_c(cquad_rep_apply(q, s2));
  const ElementJ diff = x2.re() - x1.re();
  const Spectrum sp = spectral_decompose_real(diff);
  std::vector<double> ev = sp.eigenvalues;
  std::sort(ev.begin(), ev.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  long sig = 0;
  for (std::size_t k = static_cast<std::size_t>(mu12); k < ev.size(); ++k) sig += ev[k] > 0 ? 1 : -1;
  IndexReport rep;
  rep.value = sig;
  rep.raw = static_cast<double>(sig);
  return rep;
}

// Transverse to s1 and s2: e^{i alpha} s2 with alpha far from 0 and from the
// coincidence angles of (s1, s2).
inline ShilovPoint default_witness(const ShilovPoint& s1, const ShilovPoint& s2,
                                   const Tolerances& tol = default_tolerances()) {
  const auto beta = relative_angles(s1, s2, tol);
  std::vector<double> bad = {0.0};
  for (double b : beta) bad.push_back(b - kPi);
  double best = 0.0, best_alpha = kPi / 2;
  for (int k = 0; k < 64; ++k) {
    const double alpha = -kPi + (k + 0.5) * 2.0 * kPi / 64;
    double d = kPi;
    for (double b : bad) d = std::min(d, circle_dist(alpha, b));
    if (d > best) {
      best = d;
      best_alpha = alpha;
    }
  }
  return std::polar(1.0, best_alpha) * s2;
}

inline IndexReport souriau_m_witness(const LiftedPoint& s1, const LiftedPoint& s2, const LiftedPoint& w,
                                     const Tolerances& tol = default_tolerances()) {
  if (!transversal(s1.point, w.point, tol) || !transversal(w.point, s2.point, tol))
    throw DomainError("souriau_m_witness: witness is not transverse to both points");
  const IndexReport i = iota_via_cayley(s1.point, s2.point, w.point, tol);
  const IndexReport a = souriau_m_spectral(s1, w, tol);
  const IndexReport b = souriau_m_spectral(w, s2, tol);
  IndexReport rep;
  rep.value = i.value + a.value + b.value;
  rep.raw = static_cast<double>(i.value) + a.raw + b.raw;
  rep.residual = std::abs(rep.raw - static_cast<double>(rep.value));
  rep.witnesses = {w};
  return rep;
}

// Souriau index; on non-transverse pairs the spectral value is checked against
// a witness evaluation and any disagreement is an error.
inline IndexReport souriau_m(const LiftedPoint& s, const LiftedPoint& t, const Tolerances& tol = default_tolerances()) {
  require_same(s.point.alg, t.point.alg);
  IndexReport rep = souriau_m_spectral(s, t, tol);
  if (mu(s.point, t.point, tol) == 0) return rep;
  const LiftedPoint w = lift(default_witness(s.point, t.point, tol), 0);
  const IndexReport wr = souriau_m_witness(s, t, w, tol);
  if (wr.value != rep.value)
    throw NumericalError("souriau_m: spectral value " + std::to_string(rep.value) +
                         " disagrees with witness value " + std::to_string(wr.value));
  rep.witnesses = wr.witnesses;
  return rep;
}

inline IndexReport maslov_iota(const ShilovPoint& s1, const ShilovPoint& s2, const ShilovPoint& s3,
                               const Tolerances& tol = default_tolerances()) {
  require_same(s1.alg, s2.alg);
  require_same(s1.alg, s3.alg);
  const auto a12 = relative_angles(s1, s2, tol);
  const auto a23 = relative_angles(s2, s3, tol);
  const auto a31 = relative_angles(s3, s1, tol);
  IndexReport rep;
  if (mu_from_angles(a12, tol) == 0 && mu_from_angles(a23, tol) == 0 && mu_from_angles(a31, tol) == 0) {
    const double raw =
        (psi_hat_from_angles(a12, tol) + psi_hat_from_angles(a23, tol) + psi_hat_from_angles(a31, tol)) / kPi;
    rep = integral_report(raw, "maslov_iota", tol);
  } else {
    const LiftedPoint l1 = lift(s1), l2 = lift(s2), l3 = lift(s3);
    const IndexReport m12 = souriau_m(l1, l2, tol), m23 = souriau_m(l2, l3, tol), m31 = souriau_m(l3, l1, tol);
    rep.value = m12.value + m23.value + m31.value;
    rep.raw = m12.raw + m23.raw + m31.raw;
    rep.residual = std::abs(rep.raw - static_cast<double>(rep.value));
    for (const auto* m : {&m12, &m23, &m31}) rep.witnesses.insert(rep.witnesses.end(), m->witnesses.begin(), m->witnesses.end());
  }
  if (std::abs(rep.value) > s1.alg.r) throw IntegralityError("maslov_iota: value outside [-r, r]");
  return rep;
}

inline IndexReport half_report(long twice, double twice_raw, const char* what) {
  if (twice % 2 != 0) throw IntegralityError(std::string(what) + ": half-integer result");
  IndexReport rep;
  rep.value = twice / 2;
  rep.raw = 0.5 * twice_raw;
  rep.residual = std::abs(rep.raw - static_cast<double>(rep.value));
  return rep;
}

inline IndexReport inertia_j(const ShilovPoint& s1, const ShilovPoint& s2, const ShilovPoint& s3,
                             const Tolerances& tol = default_tolerances()) {
  const IndexReport i = maslov_iota(s1, s2, s3, tol);
  const long r = s1.alg.r;
  const long mus = mu(s1, s2, tol) - mu(s1, s3, tol) + mu(s2, s3, tol);
  IndexReport rep = half_report(i.value + mus + r, i.raw + static_cast<double>(mus + r), "inertia_j");
  rep.witnesses = i.witnesses;
  return rep;
}

inline IndexReport arnold_nu(const LiftedPoint& s, const LiftedPoint& t, const Tolerances& tol = default_tolerances()) {
  const IndexReport m = souriau_m(s, t, tol);
  const long mu_st = mu(s.point, t.point, tol), r = s.point.alg.r;
  IndexReport rep = half_report(m.value - mu_st - r, m.raw - static_cast<double>(mu_st + r), "arnold_nu");
  rep.witnesses = m.witnesses;
  return rep;
}

inline IndexReport alm_n(const LiftedPoint& s, const LiftedPoint& t, const Tolerances& tol = default_tolerances()) {
  const IndexReport m = souriau_m(s, t, tol);
  const long mu_st = mu(s.point, t.point, tol), r = s.point.alg.r;
  IndexReport rep = half_report(m.value + mu_st + r, m.raw + static_cast<double>(mu_st + r), "alm_n");
  rep.witnesses = m.witnesses;
  return rep;
}

// Closed-form oracles on a shared frame.

// +1 if e^{ib} lies on the open counterclockwise arc from e^{ia} to e^{ic},
// -1 on the other arc, 0 if two points coincide.
inline int ord(double a, double b, double c, double eps = 1e-12) {
  if (circle_dist(a, b) < eps || circle_dist(b, c) < eps || circle_dist(a, c) < eps) return 0;
  const auto ccw = [](double from, double to) {
    double d = std::fmod(to - from, 2.0 * kPi);
    if (d < 0) d += 2.0 * kPi;
    return d;
  };
  return ccw(a, b) < ccw(a, c) ? 1 : -1;
}

inline int iota_shared_frame(const std::vector<double>& a1, const std::vector<double>& a2,
                             const std::vector<double>& a3) {
  int s = 0;
  for (std::size_t j = 0; j < a1.size(); ++j) s += ord(a1[j], a2[j], a3[j]);
  return s;
}

inline long m_shared_frame(const std::vector<double>& thetas, double theta, const std::vector<double>& phis,
                           double phi, double eps = 1e-12) {
  const double r = static_cast<double>(thetas.size());
  double s = 0.0;
  for (std::size_t j = 0; j < thetas.size(); ++j)
    if (circle_dist(thetas[j], phis[j]) >= eps) s += wrap_angle(thetas[j] - phis[j] + kPi);
  return std::lround((s - r * (theta - phi)) / kPi);
}

}  // namespace maslov
