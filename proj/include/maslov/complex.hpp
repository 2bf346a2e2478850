#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "algebra.hpp"
#include "jordan.hpp"

namespace maslov {

// Element of the complexification; coordinates are complex in the real basis.
struct ElementC {
  Algebra alg;
  Eigen::VectorXcd coords;

  ElementC() = default;
  ElementC(const Algebra& a, Eigen::VectorXcd c) : alg(a), coords(std::move(c)) {
    if (coords.size() != alg.n) throw DomainError("coords: expected length " + std::to_string(alg.n));
  }
  explicit ElementC(const ElementJ& x) : alg(x.alg), coords(x.coords.cast<cplx>()) {}
  ElementC(const ElementJ& x, const ElementJ& y) : alg(x.alg) {
    require_same(x.alg, y.alg);
    coords = x.coords.cast<cplx>() + cplx(0.0, 1.0) * y.coords.cast<cplx>();
  }

  static ElementC zero(const Algebra& a) { return {a, Eigen::VectorXcd::Zero(a.n)}; }
  static ElementC unit(const Algebra& a) { return {a, coords::unit(a)}; }

  ElementJ re() const { return {alg, coords.real()}; }
  ElementJ im() const { return {alg, coords.imag()}; }

  friend ElementC operator+(const ElementC& x, const ElementC& y) {
    require_same(x.alg, y.alg);
    return {x.alg, x.coords + y.coords};
  }
  friend ElementC operator-(const ElementC& x, const ElementC& y) {
    require_same(x.alg, y.alg);
    return {x.alg, x.coords - y.coords};
  }
  friend ElementC operator-(const ElementC& x) { return {x.alg, -x.coords}; }
  friend ElementC operator*(cplx s, const ElementC& x) { return {x.alg, s * x.coords}; }
  friend ElementC operator*(double s, const ElementC& x) { return {x.alg, s * x.coords}; }
};

inline ElementC conj(const ElementC& z) { return {z.alg, z.coords.conjugate()}; }

inline ElementC cjmul(const ElementC& x, const ElementC& y) {
  require_same(x.alg, y.alg);
  return {x.alg, coords::jmul(x.alg, x.coords, y.coords)};
}

inline cplx ctrace(const ElementC& z) { return coords::trace(z.alg, z.coords); }
inline cplx cdet(const ElementC& z) { return coords::det(z.alg, z.coords); }

// <z|w> = tr(z conj(w))
inline cplx hinner(const ElementC& z, const ElementC& w) { return ctrace(cjmul(z, conj(w))); }
inline double hnorm(const ElementC& z) { return std::sqrt(std::max(0.0, hinner(z, z).real())); }

inline ElementC cinverse(const ElementC& z, double tol = 1e-13) {
  const cplx dt = cdet(z);
  const double scale = std::pow(std::max(1.0, z.coords.norm()), z.alg.r);
  if (!(std::abs(dt) > tol * scale)) throw DomainError("cinverse: singular element");
  if (z.alg.kind == Kind::Spin) {
    Eigen::VectorXcd v = -z.coords;
    v(0) = z.coords(0);
    return {z.alg, v / dt};
  }
  const Eigen::MatrixXcd M = coords::to_matrix<cplx>(z.alg, z.coords);
  return {z.alg, coords::from_matrix(z.alg, M.inverse())};
}

inline ElementC cquad_rep_apply(const ElementC& x, const ElementC& y) {
  return 2.0 * cjmul(x, cjmul(x, y)) - cjmul(cjmul(x, x), y);
}

inline Eigen::MatrixXcd clmul_operator(const ElementC& z) {
  const int n = z.alg.n;
  Eigen::MatrixXcd L(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b(k) = 1.0;
    L.col(k) = coords::jmul(z.alg, z.coords, b);
  }
  return L;
}

inline Eigen::MatrixXcd cquad_rep_operator(const ElementC& z) {
  const Eigen::MatrixXcd L = clmul_operator(z);
  return 2.0 * L * L - clmul_operator(cjmul(z, z));
}

// x box y = L(xy) + [L(x), L(y)]
inline Eigen::MatrixXcd cbox_operator(const ElementC& x, const ElementC& y) {
  const Eigen::MatrixXcd Lx = clmul_operator(x), Ly = clmul_operator(y);
  return clmul_operator(cjmul(x, y)) + Lx * Ly - Ly * Lx;
}

// Bergman operator B(x, y) = I - 2 x box y + P(x) P(y)
inline Eigen::MatrixXcd bergman_operator(const ElementC& x, const ElementC& y) {
  const Eigen::Index n = x.alg.n;
  return Eigen::MatrixXcd::Identity(n, n) - 2.0 * cbox_operator(x, y) +
         cquad_rep_operator(x) * cquad_rep_operator(y);
}

// Quasi-inverse x^y = B(x, y)^{-1}(x - P(x) y); equals (x^{-1} - y)^{-1} when x is invertible.
inline ElementC quasi_inverse(const ElementC& x, const ElementC& y) {
  require_same(x.alg, y.alg);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(bergman_operator(x, y));
  if (!(std::abs(lu.determinant()) > 1e-13)) throw DomainError("quasi_inverse: B(x, y) is singular");
  return {x.alg, lu.solve((x - cquad_rep_apply(x, y)).coords)};
}

}  // namespace maslov
