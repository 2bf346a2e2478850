#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dynamics.hpp"
#include "group.hpp"
#include "indices.hpp"
#include "jordan.hpp"
#include "sampling.hpp"
#include "shilov.hpp"

namespace maslov::acceptance {

enum class Level { Quick, Full };

struct Options {
  Level level = Level::Full;
  std::uint64_t seed = 20240611;
  unsigned threads = 1;
};

struct Result {
  int id = 0;
  std::string name;
  long checks = 0;
  long failures = 0;
  std::string first_failure;
  bool passed() const { return checks > 0 && failures == 0; }
};

// Collects checks for one criterion; exceptions count as failures.
class Tally {
 public:
  explicit Tally(Result& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) fail(what);
  }
  template <typename F>
  void guarded(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      ++r_.checks;
      fail(what + ": " + e.what());
    }
  }

 private:
  Result& r_;
  void fail(const std::string& what) {
    if (r_.failures++ == 0) r_.first_failure = what;
  }
};

namespace detail {

inline int count(Level l, int full) { return l == Level::Full ? full : std::max(1, full / 10); }

inline std::string tag(const Algebra& a, int i) { return a.name() + " #" + std::to_string(i); }

inline void orbit_values(Tally& t, const Options&, Rng&) {
  for (const Algebra& alg : reference_algebras()) {
    const ElementC e = ElementC::unit(alg);
    for (int k = 0; k <= alg.r; ++k)
      t.guarded(tag(alg, k), [&] {
        const IndexReport rep = maslov_iota(e, -e, minus_i_eps(alg, k));
        t.check(rep.value == 2 * k - alg.r && rep.residual < 1e-6, tag(alg, k) + " iota(e,-e,-i eps_k)");
      });
  }
}

inline void leray(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras())
    for (int i = 0; i < count(o.level, 200); ++i)
      t.guarded(tag(alg, i), [&] {
        const ShilovPoint a = random_shilov(alg, rng);
        const ShilovPoint b = maybe_related(a, rng);
        const ShilovPoint c = maybe_related(i % 2 ? a : b, rng);
        const LiftedPoint la = random_lift(a, rng), lb = random_lift(b, rng), lc = random_lift(c, rng);
        const long sum = souriau_m(la, lb).value + souriau_m(lb, lc).value + souriau_m(lc, la).value;
        t.check(sum == maslov_iota(a, b, c).value, tag(alg, i) + " m12+m23+m31 != iota");
      });
}

inline void cocycle(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras()) {
    const int n = count(o.level, 200);
    for (int i = 0; i < n; ++i)
      t.guarded(tag(alg, i), [&] {
        std::vector<ShilovPoint> s{random_shilov(alg, rng)};
        const bool forced = i % 2 == 0;  // at least half of the tuples
        for (int k = 1; k < 4; ++k)
          s.push_back(forced ? maybe_related(s[uniform_int(rng, 0, k - 1)], rng) : random_shilov(alg, rng));
        if (forced && mu(s[0], s[1]) == 0 && mu(s[1], s[2]) == 0 && mu(s[2], s[3]) == 0)
          s[3] = point_with_mu(s[1], uniform_int(rng, 1, alg.r), rng);
        const long v = maslov_iota(s[0], s[1], s[2]).value - maslov_iota(s[0], s[1], s[3]).value +
                       maslov_iota(s[0], s[2], s[3]).value - maslov_iota(s[1], s[2], s[3]).value;
        t.check(v == 0, tag(alg, i) + " cocycle relation");
      });
  }
}

inline void souriau_integrality(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras())
    for (int i = 0; i < count(o.level, 500); ++i)
      t.guarded(tag(alg, i), [&] {
        const ShilovPoint a = random_shilov(alg, rng);
        const ShilovPoint b = maybe_related(a, rng);
        const LiftedPoint la = random_lift(a, rng), lb = random_lift(b, rng);
        const IndexReport ab = souriau_m(la, lb), ba = souriau_m(lb, la);
        t.check(ab.residual <= 1e-6 && ba.residual <= 1e-6, tag(alg, i) + " integrality");
        t.check(ab.value + ba.value == 0, tag(alg, i) + " antisymmetry");
        t.check(souriau_m(la, t_shift(lb, 1)).value == ab.value + 2, tag(alg, i) + " m(s, T t) = m + 2");
      });
}

inline void witness_independence(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras())
    for (int i = 0; i < count(o.level, 100); ++i)
      t.guarded(tag(alg, i), [&] {
        const ShilovPoint a = random_shilov(alg, rng);
        const ShilovPoint b = i % 2 ? point_with_mu(a, uniform_int(rng, 1, alg.r), rng) : maybe_related(a, rng);
        const LiftedPoint la = random_lift(a, rng), lb = random_lift(b, rng);
        const long ref = souriau_m(la, lb).value;
        int used = 0;
        for (int tries = 0; used < 10 && tries < 100; ++tries) {
          const ShilovPoint w = random_shilov(alg, rng);
          if (!transversal(a, w) || !transversal(w, b)) continue;
          ++used;
          t.check(souriau_m_witness(la, lb, random_lift(w, rng)).value == ref, tag(alg, i) + " witness value");
        }
        t.check(used == 10, tag(alg, i) + " witnesses available");
      });
}

inline void invariance(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras())
    for (int i = 0; i < count(o.level, 50); ++i)
      t.guarded(tag(alg, i), [&] {
        const GroupWord g = random_mixed_word(alg, rng, 4);
        const ShilovPoint a = random_shilov(alg, rng);
        const ShilovPoint b = maybe_related(a, rng);
        const ShilovPoint c = maybe_related(b, rng);
        const LiftedPoint la = random_lift(a, rng), lb = random_lift(b, rng);
        const LiftedPoint ga = act_lift(g, la), gb = act_lift(g, lb);
        t.check(souriau_m(ga, gb).value == souriau_m(la, lb).value, tag(alg, i) + " m invariance");
        t.check(maslov_iota(ga.point, gb.point, g.apply(c)).value == maslov_iota(a, b, c).value,
                tag(alg, i) + " iota invariance");
        t.check(mu(ga.point, gb.point) == mu(a, b), tag(alg, i) + " mu invariance");
      });
}

inline void coordinate_oracles(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras()) {
    for (int i = 0; i < count(o.level, 200); ++i)
      t.guarded(tag(alg, i), [&] {
        const auto frame = random_frame(alg, rng);
        std::vector<std::vector<double>> ang(3, std::vector<double>(alg.r));
        for (int j = 0; j < alg.r; ++j) {
          ang[0][j] = uniform_angle(rng);
          for (int p = 1; p < 3; ++p) ang[p][j] = uniform_int(rng, 0, 2) == 0 ? ang[uniform_int(rng, 0, p - 1)][j] : uniform_angle(rng);
        }
        std::vector<ShilovPoint> s;
        std::vector<LiftedPoint> l;
        for (int p = 0; p < 3; ++p) {
          s.push_back(from_angles(frame, ang[p]));
          double sum = 0.0;
          for (double x : ang[p]) sum += x;
          l.push_back({s.back(), (sum + 2.0 * kPi * uniform_int(rng, -2, 2)) / alg.r});
        }
        t.check(maslov_iota(s[0], s[1], s[2]).value == iota_shared_frame(ang[0], ang[1], ang[2]),
                tag(alg, i) + " iota vs ord formula");
        t.check(souriau_m(l[0], l[1]).value == m_shared_frame(ang[0], l[0].theta, ang[1], l[1].theta),
                tag(alg, i) + " m vs coordinate formula");
      });
    // (-e, -pi) against -sum_{j<=l} c_j + sum e^{i phi_j} c_j: m = 2k + r - l.
    const auto frame = standard_frame(alg);
    for (int ell = 0; ell <= alg.r; ++ell)
      for (int k = -2; k <= 2; ++k)
        t.guarded(tag(alg, ell), [&] {
          std::vector<double> a(alg.r, kPi);
          double sum = 0.0;
          for (int j = ell; j < alg.r; ++j) {
            do a[j] = uniform_angle(rng);
            while (circle_dist(a[j], kPi) < 0.05);
            sum += a[j];
          }
          const double phi = (-ell * kPi + sum + 2.0 * kPi * k) / alg.r;
          const LiftedPoint s1{-ElementC::unit(alg), -kPi}, s2{from_angles(frame, a), phi};
          t.check(souriau_m(s1, s2).value == 2 * k + alg.r - ell, tag(alg, ell) + " m = 2k + r - l");
        });
  }
}

inline void mu_consistency(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras())
    for (int i = 0; i < count(o.level, 200); ++i)
      t.guarded(tag(alg, i), [&] {
        const ShilovPoint tau = random_shilov(alg, rng);
        const int ell = uniform_int(rng, 0, alg.r);
        const ShilovPoint s = point_with_mu(tau, ell, rng);
        const int m1 = mu(s, tau), m2 = mu_via_corank(s, tau);
        t.check(m1 == m2 && m1 == ell, tag(alg, i) + " mu vs corank");
      });
}

inline void arnold_coordinates(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras()) {
    const auto frame = standard_frame(alg);
    const LiftedPoint s0{-ElementC::unit(alg), -kPi};
    for (int ell = 0; ell <= alg.r; ++ell)
      for (int k = -2; k <= 2; ++k)
        t.guarded(tag(alg, ell), [&] {
          std::vector<double> a(alg.r, kPi);
          double sum = 0.0;
          for (int j = ell; j < alg.r; ++j) {
            do a[j] = uniform_angle(rng);
            while (circle_dist(a[j], kPi) < 0.05);
            sum += a[j];
          }
          const LiftedPoint t0{from_angles(frame, a), (-ell * kPi + sum + 2.0 * kPi * k) / alg.r};
          t.check(arnold_nu(s0, t0).value == k - mu(s0.point, t0.point) && mu(s0.point, t0.point) == ell,
                  tag(alg, ell) + " nu = k - mu");
        });
    for (int i = 0; i < count(o.level, 200); ++i)
      t.guarded(tag(alg, i), [&] {
        const ShilovPoint a = random_shilov(alg, rng);
        const ShilovPoint b = maybe_related(a, rng);
        const ShilovPoint c = maybe_related(i % 2 ? a : b, rng);
        const LiftedPoint la = random_lift(a, rng), lb = random_lift(b, rng), lc = random_lift(c, rng);
        const long rhs = alm_n(la, lb).value - alm_n(la, lc).value + alm_n(lb, lc).value;
        t.check(inertia_j(a, b, c).value == rhs, tag(alg, i) + " j = n12 - n13 + n23");
      });
  }
}

inline cplx chi_of(const GroupWord& u) {
  const Algebra& alg = u.algebra();
  return cdet(ElementC(alg, u.differential(ElementC::zero(alg)) * ElementC::unit(alg).coords));
}

inline void rotation(Tally& t, const Options& o, Rng& rng) {
  const int K = 32;
  for (const Algebra& alg : reference_algebras()) {
    const LiftedPoint base = default_base_point(alg);
    for (int i = 0; i < count(o.level, 20); ++i)
      t.guarded(tag(alg, i), [&] {
        const GroupWord u = random_unitary_word(alg, rng, 3);
        const RotationEstimate est = rotation_rho(u, K, base);
        const double err = std::abs(std::polar(1.0, 2.0 * kPi * est.rho) - chi_of(u));
        t.check(err < 2.0 * kPi * alg.r / (2.0 * K), tag(alg, i) + " e^{2 i pi rho} vs chi(u)");
      });
    for (int i = 0; i < count(o.level, 10); ++i)
      t.guarded(tag(alg, i), [&] {
        const GroupWord g = random_parabolic_word(alg, rng, 3);
        const RotationEstimate est = rotation_rho(g, K, base);
        t.check(dist_to_integer(est.rho) <= est.error_bound, tag(alg, i) + " rho of a word with a fixed point");
      });
  }
}

inline void quasimorphism(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras()) {
    const LiftedPoint base = default_base_point(alg);
    for (int i = 0; i < count(o.level, 100); ++i)
      t.guarded(tag(alg, i), [&] {
        const GroupWord g1 = random_mixed_word(alg, rng, 3), g2 = random_mixed_word(alg, rng, 3);
        const long d = quasimorphism_c_product(g1, g2, base).value - quasimorphism_c(g1, base).value -
                       quasimorphism_c(g2, base).value;
        t.check(std::abs(d) <= alg.r, tag(alg, i) + " |c(g1 g2) - c(g1) - c(g2)| <= r");
      });
  }
}

inline void path_indices(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras()) {
    t.guarded(tag(alg, 0), [&] {
      const ShilovPoint s = random_shilov(alg, rng), s0 = random_shilov(alg, rng);
      const BoundaryPath loop([s](double x) { return std::polar(1.0, 2.0 * kPi * x) * s; }, 16);
      t.check(arnold_number(loop, s0).value == alg.r, tag(alg, 0) + " full loop");
    });
    t.guarded(tag(alg, 0), [&] {
      const ShilovPoint s = random_shilov(alg, rng);
      ShilovPoint tau = random_shilov(alg, rng);
      while (!transversal(s, tau)) tau = random_shilov(alg, rng);
      const ElementJ v = random_element(alg, rng);
      const auto u = [alg, v](double x) { return GroupWord(alg, WordMode::Unitary, {Generator::exp_iL(x * v)}); };
      const BoundaryPath p1([u, s](double x) { return u(x).apply(s); }, 16);
      const BoundaryPath p2([u, tau](double x) { return u(x).apply(tau); }, 16);
      t.check(pair_path_index(p1, p2).value == 0, tag(alg, 0) + " transverse pair path");
    });
    const ShilovPoint s0 = random_shilov(alg, rng);
    const ElementJ x = random_element(alg, rng), y = random_element(alg, rng);
    const BoundaryPath gamma([x, y](double s) { return exp_iJ(x + (2.0 * s) * y); }, 32);
    long total = 0;
    t.guarded(tag(alg, 0), [&] { total = arnold_number(gamma, s0).value; });
    for (int i = 0; i < count(o.level, 50); ++i)
      t.guarded(tag(alg, i), [&] {
        const double a = std::uniform_real_distribution<double>(0.02, 0.98)(rng);
        const long left = arnold_number(gamma.restrict(0.0, a), s0).value;
        const long right = arnold_number(gamma.restrict(a, 1.0), s0).value;
        t.check(left + right == total, tag(alg, i) + " concatenation additivity");
      });
  }
}

inline void kernel_health(Tally& t, const Options& o, Rng& rng) {
  for (const Algebra& alg : reference_algebras())
    for (int i = 0; i < count(o.level, 100); ++i)
      t.guarded(tag(alg, i), [&] {
        const ElementJ x = random_element(alg, rng), y = random_element(alg, rng);
        const ElementJ x2 = jmul(x, x);
        t.check((jmul(x, jmul(x2, y)) - jmul(x2, jmul(x, y))).coords.norm() <= 1e-10, tag(alg, i) + " Jordan identity");
        t.check((jmul(x, jmul(x, x2)) - jmul(x2, x2)).coords.norm() <= 1e-10, tag(alg, i) + " power associativity");
        const Spectrum sp = spectral_decompose_real(x);
        t.check((reconstruct(sp) - x).norm() <= 1e-9 * (1.0 + x.norm()), tag(alg, i) + " spectral round-trip");
        for (std::size_t a = 0; a < sp.frame.size(); ++a)
          for (std::size_t b = 0; b < sp.frame.size(); ++b)
            t.check(std::abs(inner(sp.frame[a], sp.frame[b]) - (a == b ? 1.0 : 0.0)) <= 1e-9,
                    tag(alg, i) + " frame orthonormality");
        const double lhs = det_real(quad_rep_apply(y, x));
        const double rhs = det_real(y) * det_real(y) * det_real(x);
        t.check(std::abs(lhs - rhs) <= 1e-8 * std::max({1.0, std::abs(lhs), std::abs(rhs)}),
                tag(alg, i) + " det(P(y)x) = det(y)^2 det(x)");
      });
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Tally&, const Options&, Rng&);
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "orbit values iota(e,-e,-i eps_k) = 2k - r", orbit_values},
      {2, "Leray formula on random lifted triples", leray},
      {3, "cocycle relation on 4-tuples", cocycle},
      {4, "integrality, antisymmetry and T-shift of m", souriau_integrality},
      {5, "witness independence of extended m", witness_independence},
      {6, "invariance of m, iota, mu under group words", invariance},
      {7, "shared-frame coordinate oracles", coordinate_oracles},
      {8, "mu equals corank-of-P inversion", mu_consistency},
      {9, "Arnold coordinates and n primitive of j", arnold_coordinates},
      {10, "rotation number of unitary and fixed-point words", rotation},
      {11, "quasimorphism defect bound", quasimorphism},
      {12, "path indices: loop, transverse pair, additivity", path_indices},
      {13, "kernel health of the Jordan algebras", kernel_health},
  };
  return c;
}

}  // namespace detail

inline Result run_one(const detail::Criterion& c, const Options& o) {
  Result r;
  r.id = c.id;
  r.name = c.name;
  Rng rng(o.seed * 1000003ULL + static_cast<std::uint64_t>(c.id));
  Tally t(r);
  c.run(t, o, rng);
  return r;
}

inline std::vector<Result> run(const Options& o, const std::vector<int>& only = {}) {
  std::vector<detail::Criterion> todo;
  for (const auto& c : detail::criteria())
    if (only.empty() || std::find(only.begin(), only.end(), c.id) != only.end()) todo.push_back(c);
  std::vector<Result> out(todo.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) out[k] = run_one(todo[k], o);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(todo.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

inline std::string format_line(const Result& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << r.id << "  " << r.name << "  ("
     << r.checks - r.failures << "/" << r.checks << " checks)";
  if (!r.passed() && !r.first_failure.empty()) os << "  first failure: " << r.first_failure;
  return os.str();
}

}  // namespace maslov::acceptance
