#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "indices.hpp"
#include "shilov.hpp"
#include "tolerances.hpp"

namespace maslov {

struct BoundaryPath {
  std::vector<double> t;
  std::vector<ShilovPoint> sigma;
  std::function<ShilovPoint(double)> eval;  // optional, enables refinement

  BoundaryPath() = default;
  BoundaryPath(std::vector<double> ts, std::vector<ShilovPoint> ss) : t(std::move(ts)), sigma(std::move(ss)) {
    validate();
  }
  BoundaryPath(std::function<ShilovPoint(double)> f, int samples = 32) : eval(std::move(f)) {
    if (samples < 1) samples = 1;
    for (int k = 0; k <= samples; ++k) {
      t.push_back(static_cast<double>(k) / samples);
      sigma.push_back(eval(t.back()));
    }
  }

  void validate() const {
    if (t.size() < 2 || t.size() != sigma.size()) throw DomainError("path.samples: need at least two samples");
    if (t.front() != 0.0 || t.back() != 1.0) throw DomainError("path.samples: t must start at 0 and end at 1");
    for (std::size_t k = 1; k < t.size(); ++k)
      if (!(t[k] > t[k - 1])) throw DomainError("path.samples: t must be strictly increasing");
  }

  const Algebra& algebra() const { return sigma.front().alg; }
  bool refinable() const { return static_cast<bool>(eval); }

  ShilovPoint at(double s) const {
    auto it = std::lower_bound(t.begin(), t.end(), s);
    if (it != t.end() && *it == s) return sigma[static_cast<std::size_t>(it - t.begin())];
    if (eval) return eval(s);
    throw DomainError("path: no sample at t = " + std::to_string(s) + " and no evaluator to refine with");
  }

  // Restriction to [a, b], reparametrized over [0, 1].
  BoundaryPath restrict(double a, double b) const {
    BoundaryPath out;
    if (eval) {
      auto f = eval;
      out.eval = [f, a, b](double s) { return f(a + (b - a) * s); };
    }
    out.t.push_back(0.0);
    out.sigma.push_back(at(a));
    for (std::size_t k = 0; k < t.size(); ++k)
      if (t[k] > a && t[k] < b) {
        out.t.push_back((t[k] - a) / (b - a));
        out.sigma.push_back(sigma[k]);
      }
    out.t.push_back(1.0);
    out.sigma.push_back(at(b));
    return out;
  }

  BoundaryPath reversed() const {
    BoundaryPath out;
    if (eval) {
      auto f = eval;
      out.eval = [f](double s) { return f(1.0 - s); };
    }
    for (std::size_t k = t.size(); k-- > 0;) {
      out.t.push_back(1.0 - t[k]);
      out.sigma.push_back(sigma[k]);
    }
    out.t.front() = 0.0;
    out.t.back() = 1.0;
    return out;
  }

  BoundaryPath refined() const {  // doubled grid
    if (!eval) throw DomainError("path: refinement needs an evaluator");
    return BoundaryPath(eval, static_cast<int>(2 * (t.size() - 1)));
  }
};

struct StrandFlow {
  std::vector<double> t;
  std::vector<std::vector<double>> angles;  // angles[sample][strand], unwrapped
};

struct CrossingRecord {
  double t = 0.0;
  int strand = 0;
  int sign = 0;
  std::size_t interval = 0;  // index of the sample ending the interval
};

namespace detail {

inline std::vector<double> match_strands(const std::vector<double>& prev, const std::vector<double>& next,
                                         double& max_move) {
  const std::size_t r = prev.size();
  std::vector<std::size_t> perm(r), best;
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t j = 0; j < r; ++j) cost += circle_dist(prev[j], next[perm[j]]);
    if (cost < best_cost - 1e-15) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<double> out(r);
  max_move = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    const double d = wrap_angle(next[best[j]] - prev[j]);
    max_move = std::max(max_move, std::abs(d));
    out[j] = prev[j] + d;
  }
  return out;
}

// Strands of the angles of w(t), with bisection wherever a strand moves by
// pi/4 or more between samples.
inline StrandFlow flow_of(const std::vector<double>& grid, const std::function<ShilovPoint(double)>& w_of_t,
                          bool refinable, const Tolerances& tol, int max_depth = 16) {
  StrandFlow flow;
  const auto angles_at = [&](double s) {
    std::vector<double> a = shilov_spectral(w_of_t(s), tol).angles;
    std::sort(a.begin(), a.end());
    return a;
  };
  flow.t.push_back(grid.front());
  flow.angles.push_back(angles_at(grid.front()));

  struct Seg {
    double t0, t1;
    int depth;
  };
  for (std::size_t k = 1; k < grid.size(); ++k) {
    std::vector<Seg> stack{{grid[k - 1], grid[k], 0}};
    while (!stack.empty()) {
      const Seg s = stack.back();
      stack.pop_back();
      double move = 0.0;
      const auto next = match_strands(flow.angles.back(), angles_at(s.t1), move);
      if (move < kPi / 4) {
        flow.t.push_back(s.t1);
        flow.angles.push_back(next);
        continue;
      }
      if (!refinable || s.depth >= max_depth)
        throw AmbiguityError("eigenangle_flow: strands move too far between samples (t = " + std::to_string(s.t0) +
                             ")");
      const double tm = 0.5 * (s.t0 + s.t1);
      stack.push_back({tm, s.t1, s.depth + 1});
      stack.push_back({s.t0, tm, s.depth + 1});
    }
  }
  return flow;
}

// Number of odd multiples of pi at or below a (floor convention).
inline long pi_level(double a) { return static_cast<long>(std::floor((a - kPi) / (2.0 * kPi))); }

}  // namespace detail

// Signed crossings of the strands through pi; increasing strands count +1.
inline std::vector<CrossingRecord> crossings_of(const StrandFlow& f, const Tolerances& tol = default_tolerances()) {
  std::vector<CrossingRecord> out;
  const std::size_t n = f.t.size();
  if (n == 0) return out;
  const std::size_t r = f.angles.front().size();
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 1; k < n; ++k) {
      const double a0 = f.angles[k - 1][j], a1 = f.angles[k][j];
      const long jump = detail::pi_level(a1) - detail::pi_level(a0);
      const double slope = (a1 - a0) / (f.t[k] - f.t[k - 1]);
      if (jump != 0) {
        if (std::abs(slope) < tol.tangency_slope)
          throw AmbiguityError("crossing: tangential contact with the Maslov cycle at t = " + std::to_string(f.t[k]));
        const double target = kPi + 2.0 * kPi * static_cast<double>(std::max(detail::pi_level(a0), detail::pi_level(a1)));
        const double frac = (target - a0) / (a1 - a0);
        out.push_back({f.t[k - 1] + frac * (f.t[k] - f.t[k - 1]), static_cast<int>(j), jump > 0 ? 1 : -1, k});
      }
      // Interior sample sitting on pi: needs a clearly nonzero slope.
      if (k + 1 < n && circle_dist(a1, kPi) < tol.transverse) {
        const double s2 = (f.angles[k + 1][j] - a0) / (f.t[k + 1] - f.t[k - 1]);
        if (std::abs(s2) < tol.tangency_slope || (f.angles[k + 1][j] - a1) * (a1 - a0) <= 0.0)
          throw AmbiguityError("crossing: tangential contact with the Maslov cycle at t = " + std::to_string(f.t[k]));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CrossingRecord& a, const CrossingRecord& b) {
    return a.t < b.t || (a.t == b.t && a.strand < b.strand);
  });
  return out;
}

inline StrandFlow eigenangle_flow(const BoundaryPath& path, const ShilovPoint& reference,
                                  const Tolerances& tol = default_tolerances()) {
  path.validate();
  require_same(path.algebra(), reference.alg);
  return detail::flow_of(
      path.t, [&](double s) { return relative_element(path.at(s), reference, {}, tol); }, path.refinable(), tol);
}

// Strands of w(t) = relative_element(sigma2(t), sigma1(t)), sigma2 rotated by e^{i shift}.
inline StrandFlow eigenangle_flow(const BoundaryPath& p1, const BoundaryPath& p2, double shift = 0.0,
                                  const Tolerances& tol = default_tolerances()) {
  p1.validate();
  p2.validate();
  require_same(p1.algebra(), p2.algebra());
  std::vector<double> grid = p1.t;
  grid.insert(grid.end(), p2.t.begin(), p2.t.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const cplx rot = std::polar(1.0, shift);
  return detail::flow_of(
      grid, [&](double s) { return relative_element(rot * p2.at(s), p1.at(s), {}, tol); },
      p1.refinable() && p2.refinable(), tol);
}

struct PathIndexResult {
  long value = 0;
  std::vector<CrossingRecord> crossings;
  StrandFlow flow;
  double shift = 0.0;  // perturbation used (pair paths)
};

inline long sum_signs(const std::vector<CrossingRecord>& c) {
  long s = 0;
  for (const auto& x : c) s += x.sign;
  return s;
}

inline PathIndexResult arnold_number(const BoundaryPath& path, const ShilovPoint& sigma0,
                                     const Tolerances& tol = default_tolerances()) {
  for (const auto& end : {path.sigma.front(), path.sigma.back()})
    if (mu(end, sigma0, tol) != 0) throw DomainError("arnold_number: path endpoint lies on the Maslov cycle");
  PathIndexResult res;
  try {
    res.flow = eigenangle_flow(path, sigma0, tol);
    res.crossings = crossings_of(res.flow, tol);
  } catch (const AmbiguityError&) {
    if (tol.mode == GrayZonePolicy::Strict || !path.refinable()) throw;
    // Rotate the whole path slightly; endpoints stay transverse.
    double dmin = kPi;
    for (const auto& end : {path.sigma.front(), path.sigma.back()})
      for (double a : relative_angles(end, sigma0, tol)) dmin = std::min(dmin, circle_dist(a, kPi));
    const double th = std::min(1e-3, 0.5 * dmin);
    const auto f = path.eval;
    BoundaryPath moved([f, th](double s) { return std::polar(1.0, th) * f(s); },
                       static_cast<int>(path.t.size() - 1));
    res.flow = eigenangle_flow(moved, sigma0, tol);
    res.crossings = crossings_of(res.flow, tol);
    res.shift = th;
  }
  res.value = sum_signs(res.crossings);
  return res;
}

// Largest shift keeping the non-coincident endpoint angles away from pi.
inline double admissible_shift_bound(const BoundaryPath& p1, const BoundaryPath& p2,
                                     const Tolerances& tol = default_tolerances()) {
  double dmin = kPi;
  for (int end = 0; end < 2; ++end) {
    const ShilovPoint& a = end == 0 ? p1.sigma.front() : p1.sigma.back();
    const ShilovPoint& b = end == 0 ? p2.sigma.front() : p2.sigma.back();
    for (double x : relative_angles(b, a, tol))
      if (!is_coincident(x, tol)) dmin = std::min(dmin, circle_dist(x, kPi));
  }
  return dmin;
}

inline PathIndexResult pair_path_index_shifted(const BoundaryPath& p1, const BoundaryPath& p2, double shift,
                                               const Tolerances& tol = default_tolerances()) {
  PathIndexResult res;
  res.shift = shift;
  res.flow = eigenangle_flow(p1, p2, shift, tol);
  res.crossings = crossings_of(res.flow, tol);
  res.value = sum_signs(res.crossings);
  return res;
}

inline PathIndexResult pair_path_index(const BoundaryPath& p1, const BoundaryPath& p2,
                                       const Tolerances& tol = default_tolerances()) {
  const auto proper = [&](const ShilovPoint& a, const ShilovPoint& b) { return mu(b, a, tol) == 0; };
  double shift = 0.0;
  if (!proper(p1.sigma.front(), p2.sigma.front()) || !proper(p1.sigma.back(), p2.sigma.back()))
    shift = std::min(kPi / 2, 0.5 * admissible_shift_bound(p1, p2, tol));
  return pair_path_index_shifted(p1, p2, shift, tol);
}

inline IndexReport quasimorphism_c(const GroupWord& g, const LiftedPoint& o,
                                   const Tolerances& tol = default_tolerances()) {
  return souriau_m(act_lift(g, o), o, tol);
}

// c for the product g1 g2 (g2 applied first), lifted as the product of lifts.
inline IndexReport quasimorphism_c_product(const GroupWord& g1, const GroupWord& g2, const LiftedPoint& o,
                                           const Tolerances& tol = default_tolerances()) {
  return souriau_m(act_lift(g1, act_lift(g2, o)), o, tol);
}

struct RotationEstimate {
  double tau = 0.0;
  double rho = 0.0;  // in [0, 1)
  double error_bound = 0.0;
  long c_K = 0;
  int K = 0;
};

inline LiftedPoint default_base_point(const Algebra& alg) { return lift(-ElementC::unit(alg), 0); }

inline RotationEstimate translation_tau(const GroupWord& g, int K, const LiftedPoint& o,
                                        const Tolerances& tol = default_tolerances()) {
  if (K < 1) throw DomainError("translation_tau: K must be >= 1");
  RotationEstimate est;
  est.K = K;
  est.c_K = souriau_m(act_lift_power(g, o, K), o, tol).value;
  est.tau = static_cast<double>(est.c_K) / K;
  est.error_bound = static_cast<double>(o.point.alg.r) / K;
  double rho = -0.5 * est.tau;
  rho -= std::floor(rho);
  if (rho >= 1.0) rho -= 1.0;
  est.rho = rho;
  return est;
}

inline RotationEstimate rotation_rho(const GroupWord& g, int K, const LiftedPoint& o,
                                     const Tolerances& tol = default_tolerances()) {
  RotationEstimate est = translation_tau(g, K, o, tol);
  est.error_bound = static_cast<double>(o.point.alg.r) / (2.0 * K);
  return est;
}

// Distance from x to the nearest integer.
inline double dist_to_integer(double x) { return std::abs(x - std::round(x)); }

inline void write_flow_csv(std::ostream& os, const StrandFlow& f, const std::vector<CrossingRecord>& crossings) {
  std::map<std::pair<std::size_t, int>, int> sign_at;
  for (const auto& c : crossings) sign_at[{c.interval, c.strand}] += c.sign;
  os << "t,strand_id,angle,crossing_flag,sign\n";
  os.precision(17);
  for (std::size_t k = 0; k < f.t.size(); ++k)
    for (std::size_t j = 0; j < f.angles[k].size(); ++j) {
      auto it = sign_at.find({k, static_cast<int>(j)});
      const int s = it == sign_at.end() ? 0 : it->second;
      os << f.t[k] << ',' << j << ',' << f.angles[k][j] << ',' << (it == sign_at.end() ? 0 : 1) << ',' << s << '\n';
    }
}

}  // namespace maslov
