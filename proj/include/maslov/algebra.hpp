#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"

namespace maslov {

using cplx = std::complex<double>;

enum class Kind { SymR, HermC, Spin };

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::SymR: return "sym-r";
    case Kind::HermC: return "herm-c";
    case Kind::Spin: return "spin";
  }
  return "?";
}

inline Kind parse_kind(const std::string& s) {
  if (s == "sym-r") return Kind::SymR;
  if (s == "herm-c") return Kind::HermC;
  if (s == "spin") return Kind::Spin;
  throw DomainError("algebra.kind: unknown kind '" + s + "'");
}

struct Algebra {
  Kind kind = Kind::SymR;
  int param = 1;
  int n = 1;
  int r = 1;
  int d = 1;

  static Algebra make(Kind kind, int param) {
    Algebra a;
    a.kind = kind;
    a.param = param;
    switch (kind) {
      case Kind::SymR:
        if (param < 1) throw DomainError("algebra.param: sym-r needs m >= 1");
        a.n = param * (param + 1) / 2;
        a.r = param;
        a.d = 1;
        break;
      case Kind::HermC:
        if (param < 1) throw DomainError("algebra.param: herm-c needs m >= 1");
        a.n = param * param;
        a.r = param;
        a.d = 2;
        break;
      case Kind::Spin:
        if (param < 3) throw DomainError("algebra.param: spin needs q >= 3");
        a.n = param;
        a.r = 2;
        a.d = param - 2;
        break;
    }
    return a;
  }
  static Algebra sym_r(int m) { return make(Kind::SymR, m); }
  static Algebra herm_c(int m) { return make(Kind::HermC, m); }
  static Algebra spin(int q) { return make(Kind::Spin, q); }

  bool is_matrix() const { return kind != Kind::Spin; }
  std::string name() const { return kind_name(kind) + "(" + std::to_string(param) + ")"; }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.kind == b.kind && a.param == b.param;
  }
};

inline void require_same(const Algebra& a, const Algebra& b) {
  if (!(a == b)) throw AlgebraMismatch();
}

namespace coords {

// Position of the symmetric basis vector for (i, j), i <= j, upper triangle
// row-major.
inline int sym_index(int m, int i, int j) {
  return i * m - i * (i - 1) / 2 + (j - i);
}

// Position of the antisymmetric (imaginary) basis vector for i < j.
inline int skew_index(int m, int i, int j) {
  return m * (m + 1) / 2 + i * (m - 1) - i * (i - 1) / 2 + (j - i - 1);
}

// Coordinates (complex-linear) -> m x m complex matrix.
template <typename Scalar>
Eigen::MatrixXcd to_matrix(const Algebra& alg,
                           const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  const int m = alg.param;
  const double h = 1.0 / std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    M(i, i) = v(sym_index(m, i, i));
    for (int j = i + 1; j < m; ++j) {
      const cplx a = v(sym_index(m, i, j));
      M(i, j) = a * h;
      M(j, i) = a * h;
      if (alg.kind == Kind::HermC) {
        const cplx b = v(skew_index(m, i, j));
        M(i, j) += I * b * h;
        M(j, i) -= I * b * h;
      }
    }
  }
  return M;
}

inline Eigen::VectorXcd from_matrix(const Algebra& alg, const Eigen::MatrixXcd& M) {
  const int m = alg.param;
  const double h = 1.0 / std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(alg.n);
  for (int i = 0; i < m; ++i) {
    v(sym_index(m, i, i)) = M(i, i);
    for (int j = i + 1; j < m; ++j) {
      v(sym_index(m, i, j)) = (M(i, j) + M(j, i)) * h;
      if (alg.kind == Kind::HermC) v(skew_index(m, i, j)) = -I * (M(i, j) - M(j, i)) * h;
    }
  }
  return v;
}

// Complex-bilinear Jordan product on coordinates.
inline Eigen::VectorXcd jmul(const Algebra& alg, const Eigen::VectorXcd& a,
                             const Eigen::VectorXcd& b) {
  if (alg.kind == Kind::Spin) {
    Eigen::VectorXcd out(alg.n);
    const auto av = a.tail(alg.n - 1);
    const auto bv = b.tail(alg.n - 1);
    out(0) = a(0) * b(0) + (av.array() * bv.array()).sum();
    out.tail(alg.n - 1) = a(0) * bv + b(0) * av;
    return out;
  }
  const Eigen::MatrixXcd A = to_matrix(alg, a);
  const Eigen::MatrixXcd B = to_matrix(alg, b);
  return from_matrix(alg, (A * B + B * A) * 0.5);
}

inline cplx trace(const Algebra& alg, const Eigen::VectorXcd& a) {
  if (alg.kind == Kind::Spin) return 2.0 * a(0);
  return to_matrix(alg, a).trace();
}

inline cplx det(const Algebra& alg, const Eigen::VectorXcd& a) {
  if (alg.kind == Kind::Spin) {
    const auto av = a.tail(alg.n - 1);
    return a(0) * a(0) - (av.array() * av.array()).sum();
  }
  return to_matrix(alg, a).determinant();
}

inline Eigen::VectorXcd unit(const Algebra& alg) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(alg.n);
  if (alg.kind == Kind::Spin) {
    v(0) = 1.0;
  } else {
    for (int i = 0; i < alg.param; ++i) v(sym_index(alg.param, i, i)) = 1.0;
  }
  return v;
}

}  // namespace coords
}  // namespace maslov
