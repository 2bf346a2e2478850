#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "jacobi.hpp"
#include "tolerances.hpp"

namespace maslov {

struct ElementJ {
  Algebra alg;
  Eigen::VectorXd coords;

  ElementJ() = default;
  ElementJ(const Algebra& a, Eigen::VectorXd c) : alg(a), coords(std::move(c)) {
    if (coords.size() != alg.n) throw DomainError("coords: expected length " + std::to_string(alg.n));
  }

  static ElementJ zero(const Algebra& a) { return {a, Eigen::VectorXd::Zero(a.n)}; }
  static ElementJ unit(const Algebra& a) { return {a, coords::unit(a).real()}; }
  static ElementJ basis(const Algebra& a, int k) {
    ElementJ x = zero(a);
    x.coords(k) = 1.0;
    return x;
  }

  double norm() const;  // sqrt(inner(x, x))

  friend ElementJ operator+(const ElementJ& x, const ElementJ& y) {
    require_same(x.alg, y.alg);
    return {x.alg, x.coords + y.coords};
  }
  friend ElementJ operator-(const ElementJ& x, const ElementJ& y) {
    require_same(x.alg, y.alg);
    return {x.alg, x.coords - y.coords};
  }
  friend ElementJ operator-(const ElementJ& x) { return {x.alg, -x.coords}; }
  friend ElementJ operator*(double s, const ElementJ& x) { return {x.alg, s * x.coords}; }
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  std::vector<ElementJ> frame;
};

struct PeirceSplit {
  ElementJ c, x1, xhalf, x0;
};

// Matrix realization of a real element (Hermitian m x m).
inline Eigen::MatrixXcd to_matrix(const ElementJ& x) {
  return coords::to_matrix<double>(x.alg, x.coords);
}

inline ElementJ from_matrix(const Algebra& alg, const Eigen::MatrixXcd& M) {
  return {alg, coords::from_matrix(alg, M).real()};
}

inline ElementJ jmul(const ElementJ& x, const ElementJ& y) {
  require_same(x.alg, y.alg);
  if (x.alg.kind == Kind::Spin) {
    const int n = x.alg.n;
    Eigen::VectorXd out(n);
    out(0) = x.coords(0) * y.coords(0) + x.coords.tail(n - 1).dot(y.coords.tail(n - 1));
    out.tail(n - 1) = x.coords(0) * y.coords.tail(n - 1) + y.coords(0) * x.coords.tail(n - 1);
    return {x.alg, out};
  }
  const Eigen::MatrixXcd X = to_matrix(x), Y = to_matrix(y);
  return from_matrix(x.alg, (X * Y + Y * X) * 0.5);
}

inline double trace(const ElementJ& x) {
  if (x.alg.kind == Kind::Spin) return 2.0 * x.coords(0);
  double t = 0.0;
  for (int i = 0; i < x.alg.param; ++i) t += x.coords(coords::sym_index(x.alg.param, i, i));
  return t;
}

inline double inner(const ElementJ& x, const ElementJ& y) { return trace(jmul(x, y)); }

inline double ElementJ::norm() const { return std::sqrt(std::max(0.0, inner(*this, *this))); }

inline double det_real(const ElementJ& x) {
  if (x.alg.kind == Kind::Spin) {
    const int n = x.alg.n;
    return x.coords(0) * x.coords(0) - x.coords.tail(n - 1).squaredNorm();
  }
  return to_matrix(x).determinant().real();
}

// Matrix of L(x) on coordinates: column k is x o basis_k.
inline Eigen::MatrixXd lmul_operator(const ElementJ& x) {
  const int n = x.alg.n;
  Eigen::MatrixXd L(n, n);
  for (int k = 0; k < n; ++k) L.col(k) = jmul(x, ElementJ::basis(x.alg, k)).coords;
  return L;
}

inline ElementJ quad_rep_apply(const ElementJ& x, const ElementJ& y) {
  require_same(x.alg, y.alg);
  return 2.0 * jmul(x, jmul(x, y)) - jmul(jmul(x, x), y);
}

inline Eigen::MatrixXd quad_rep_operator(const ElementJ& x) {
  const Eigen::MatrixXd L = lmul_operator(x);
  return 2.0 * L * L - lmul_operator(jmul(x, x));
}

inline Spectrum spectral_decompose_real(const ElementJ& x) {
  const Algebra& alg = x.alg;
  Spectrum s;
  if (alg.kind == Kind::Spin) {
    const int n = alg.n;
    const Eigen::VectorXd v = x.coords.tail(n - 1);
    const double len = v.norm();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n - 1);
    if (len > 0.0) u = v / len;
    else u(0) = 1.0;
    Eigen::VectorXd c1(n), c2(n);
    c1 << 0.5, 0.5 * u;
    c2 << 0.5, -0.5 * u;
    s.eigenvalues = {x.coords(0) + len, x.coords(0) - len};
    s.frame = {ElementJ(alg, c1), ElementJ(alg, c2)};
    return s;
  }
  const Eigen::MatrixXcd H = to_matrix(x);
  if (alg.kind == Kind::SymR) {
    const auto eig = jacobi_eigen<double>(H.real());
    for (int j = 0; j < alg.r; ++j) {
      const Eigen::VectorXd v = eig.vectors.col(j);
      s.eigenvalues.push_back(eig.values(j));
      s.frame.push_back(from_matrix(alg, (v * v.transpose()).cast<cplx>()));
    }
  } else {
    const auto eig = jacobi_eigen<cplx>(H);
    for (int j = 0; j < alg.r; ++j) {
      const Eigen::VectorXcd v = eig.vectors.col(j);
      s.eigenvalues.push_back(eig.values(j));
      s.frame.push_back(from_matrix(alg, v * v.adjoint()));
    }
  }
  return s;
}

inline ElementJ reconstruct(const Spectrum& s) {
  ElementJ out = ElementJ::zero(s.frame.at(0).alg);
  for (std::size_t j = 0; j < s.frame.size(); ++j) out = out + s.eigenvalues[j] * s.frame[j];
  return out;
}

namespace detail {
inline double spectral_scale(const Spectrum& s) {
  double mx = 0.0;
  for (double l : s.eigenvalues) mx = std::max(mx, std::abs(l));
  return mx;
}
}  // namespace detail

inline int rank_real(const ElementJ& x, double tol = default_tolerances().rank) {
  const Spectrum s = spectral_decompose_real(x);
  const double cut = tol * detail::spectral_scale(s);
  int k = 0;
  for (double l : s.eigenvalues)
    if (std::abs(l) > cut && l != 0.0) ++k;
  return k;
}

inline bool in_cone(const ElementJ& x, double tol = default_tolerances().rank) {
  const Spectrum s = spectral_decompose_real(x);
  return std::all_of(s.eigenvalues.begin(), s.eigenvalues.end(), [&](double l) { return l > tol; });
}

inline ElementJ inverse_real(const ElementJ& x, double tol = default_tolerances().rank) {
  Spectrum s = spectral_decompose_real(x);
  const double scale = detail::spectral_scale(s);
  for (double& l : s.eigenvalues) {
    if (!(std::abs(l) > tol * std::max(scale, 1.0))) throw DomainError("inverse_real: singular element");
    l = 1.0 / l;
  }
  return reconstruct(s);
}

inline bool is_idempotent(const ElementJ& c, double tol = default_tolerances().spec) {
  return (jmul(c, c) - c).coords.norm() <= tol * std::max(1.0, c.coords.norm()) * 10.0;
}

// Eigenprojections of L(c) for the eigenvalues 1, 1/2, 0.
struct PeirceProjectors {
  Eigen::MatrixXd p1, phalf, p0;
};

inline PeirceProjectors peirce_projectors(const ElementJ& c) {
  const Eigen::MatrixXd L = lmul_operator(c);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(L.rows(), L.cols());
  return {L * (2.0 * L - I), 4.0 * L * (I - L), (I - L) * (I - 2.0 * L)};
}

inline PeirceSplit peirce_decompose(const ElementJ& c, const ElementJ& x) {
  require_same(c.alg, x.alg);
  if (!is_idempotent(c)) throw DomainError("peirce_decompose: c is not an idempotent");
  const auto P = peirce_projectors(c);
  return {c, ElementJ(x.alg, P.p1 * x.coords), ElementJ(x.alg, P.phalf * x.coords),
          ElementJ(x.alg, P.p0 * x.coords)};
}

// tau_c(z) x via the Peirce components.
inline ElementJ frobenius_apply(const ElementJ& c, const ElementJ& z, const ElementJ& x) {
  require_same(c.alg, z.alg);
  require_same(c.alg, x.alg);
  const PeirceSplit zs = peirce_decompose(c, z);
  if ((zs.x1.coords.norm() + zs.x0.coords.norm()) >
      default_tolerances().spec * 10.0 * std::max(1.0, z.coords.norm()))
    throw DomainError("frobenius_apply: z is not in J(c,1/2)");
  const PeirceSplit xs = peirce_decompose(c, x);
  const ElementJ e = ElementJ::unit(c.alg);
  const ElementJ y_half = 2.0 * jmul(z, xs.x1) + xs.xhalf;
  const ElementJ inner_part = jmul(z, jmul(z, xs.x1)) + jmul(z, xs.xhalf);
  const ElementJ y0 = 2.0 * jmul(e - c, inner_part) + xs.x0;
  return xs.x1 + y_half + y0;
}

// Operator z box c = L(zc) + [L(z), L(c)].
inline Eigen::MatrixXd box_operator(const ElementJ& z, const ElementJ& c) {
  const Eigen::MatrixXd Lz = lmul_operator(z), Lc = lmul_operator(c);
  return lmul_operator(jmul(z, c)) + Lz * Lc - Lc * Lz;
}

inline std::vector<ElementJ> standard_frame(const Algebra& alg) {
  std::vector<ElementJ> f;
  if (alg.kind == Kind::Spin) {
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(alg.n), c2 = c1;
    c1(0) = c2(0) = 0.5;
    c1(1) = 0.5;
    c2(1) = -0.5;
    f = {ElementJ(alg, c1), ElementJ(alg, c2)};
  } else {
    for (int j = 0; j < alg.r; ++j) f.push_back(ElementJ::basis(alg, coords::sym_index(alg.param, j, j)));
  }
  return f;
}

inline ElementJ combine(const std::vector<ElementJ>& frame, const std::vector<double>& w) {
  ElementJ out = ElementJ::zero(frame.at(0).alg);
  for (std::size_t j = 0; j < frame.size(); ++j) out = out + w.at(j) * frame[j];
  return out;
}

inline ElementJ epq(const Algebra& alg, int p, int q, const std::vector<ElementJ>& frame) {
  if (p < 0 || q < 0 || p + q > alg.r) throw DomainError("epq: need p, q >= 0 and p + q <= r");
  std::vector<double> w(alg.r, 0.0);
  for (int j = 0; j < p; ++j) w[j] = 1.0;
  for (int j = p; j < p + q; ++j) w[j] = -1.0;
  return combine(frame, w);
}

inline ElementJ epq(const Algebra& alg, int p, int q) { return epq(alg, p, q, standard_frame(alg)); }

using Rng = std::mt19937_64;

inline ElementJ random_element(const Algebra& alg, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(alg.n);
  for (int k = 0; k < alg.n; ++k) v(k) = g(rng);
  return {alg, v};
}

inline std::vector<ElementJ> random_frame(const Algebra& alg, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ElementJ> f;
  if (alg.kind == Kind::Spin) {
    Eigen::VectorXd u(alg.n - 1);
    do {
      for (int k = 0; k < u.size(); ++k) u(k) = g(rng);
    } while (u.norm() < 1e-3);
    u.normalize();
    Eigen::VectorXd c1(alg.n), c2(alg.n);
    c1 << 0.5, 0.5 * u;
    c2 << 0.5, -0.5 * u;
    return {ElementJ(alg, c1), ElementJ(alg, c2)};
  }
  const int m = alg.param;
  Eigen::MatrixXcd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      G(i, j) = alg.kind == Kind::HermC ? cplx(g(rng), g(rng)) : cplx(g(rng), 0.0);
  const Eigen::MatrixXcd Q = Eigen::HouseholderQR<Eigen::MatrixXcd>(G).householderQ();
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXcd v = Q.col(j);
    f.push_back(from_matrix(alg, v * v.adjoint()));
  }
  return f;
}

}  // namespace maslov
