#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace maslov {

namespace detail {

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(std::complex<double> x) {
  return std::conj(x);
}

inline double real_of(double x) { return x; }
inline double real_of(std::complex<double> x) { return x.real(); }

}  // namespace detail

template <typename Scalar>
struct HermitianEigen {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // columns, orthonormal
  int sweeps = 0;
};

// Cyclic Jacobi for real-symmetric / complex-Hermitian input (symmetrized first).
template <typename Scalar>
HermitianEigen<Scalar> jacobi_eigen(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& input,
    double rel_threshold = 1e-13, int max_sweeps = 100) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index m = input.rows();
  Matrix a = (input + input.adjoint()) * 0.5;
  Matrix v = Matrix::Identity(m, m);

  const double norm = a.norm();
  const double target = rel_threshold * norm;

  auto off_norm = [&]() {
    double s = 0.0;
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = 0; q < m; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep <= max_sweeps; ++sweep) {
    if (norm == 0.0 || off_norm() <= target) break;
    if (sweep == max_sweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge");
    for (Eigen::Index p = 0; p + 1 < m; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        const Scalar apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        // Phase making the (p,q) entry real and positive.
        const Scalar phase = apq / b;
        const double app = detail::real_of(a(p, p));
        const double aqq = detail::real_of(a(q, q));
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
        const Scalar gpp = c;
        const Scalar gpq = s;
        const Scalar gqp = -s * detail::conj_of(phase);
        const Scalar gqq = c * detail::conj_of(phase);

        for (Eigen::Index k = 0; k < m; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = detail::conj_of(gpp) * apk + detail::conj_of(gqp) * aqk;
          a(q, k) = detail::conj_of(gpq) * apk + detail::conj_of(gqq) * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = detail::real_of(a(p, p));
        a(q, q) = detail::real_of(a(q, q));

        for (Eigen::Index k = 0; k < m; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return detail::real_of(a(i, i)) > detail::real_of(a(j, j));
  });

  HermitianEigen<Scalar> out;
  out.values.resize(m);
  out.vectors.resize(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    out.values(k) = detail::real_of(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace maslov
