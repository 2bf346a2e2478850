#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "shilov.hpp"

namespace maslov {

// One factor exp(X) of a structure-group element: X = L(a), or X = [L(a), L(b)]
// when `derivation` is set.
struct LinearFactor {
  bool derivation = false;
  ElementJ a, b;
};

enum class GenType { Translate, Linear, Inversion, ExpIL, Derivation };

inline std::string gen_name(GenType t) {
  switch (t) {
    case GenType::Translate: return "translate";
    case GenType::Linear: return "linear";
    case GenType::Inversion: return "inversion";
    case GenType::ExpIL: return "exp-iL";
    case GenType::Derivation: return "derivation";
  }
  return "?";
}

inline bool is_tube(GenType t) {
  return t == GenType::Translate || t == GenType::Linear || t == GenType::Inversion;
}

// Generators acting through the Cayley chart; p o s o c is w -> -w, so the
// inversion acts linearly on the boundary picture.
inline bool needs_chart(GenType t) { return t == GenType::Translate || t == GenType::Linear; }

struct Generator {
  GenType type = GenType::Inversion;
  ElementJ u;                          // translate: u; exp-iL: v; derivation: a
  ElementJ b;                          // derivation: b
  std::vector<LinearFactor> exponents;  // linear

  static Generator translate(const ElementJ& u) { return {GenType::Translate, u, {}, {}}; }
  static Generator inversion() { return {GenType::Inversion, {}, {}, {}}; }
  static Generator linear(std::vector<LinearFactor> ex) { return {GenType::Linear, {}, {}, std::move(ex)}; }
  static Generator exp_iL(const ElementJ& v) { return {GenType::ExpIL, v, {}, {}}; }
  static Generator derivation(const ElementJ& a, const ElementJ& b) { return {GenType::Derivation, a, b, {}}; }
};

inline Generator inverse(const Generator& g) {
  switch (g.type) {
    case GenType::Translate: return Generator::translate(-g.u);
    case GenType::Inversion: return g;
    case GenType::ExpIL: return Generator::exp_iL(-g.u);
    case GenType::Derivation: return Generator::derivation(g.b, g.u);
    case GenType::Linear: {
      std::vector<LinearFactor> ex(g.exponents.rbegin(), g.exponents.rend());
      for (auto& f : ex) {
        if (f.derivation) std::swap(f.a, f.b);
        else f.a = -f.a;
      }
      return Generator::linear(std::move(ex));
    }
  }
  return g;
}

enum class WordMode { Tube, Unitary };

// Generators are applied in listed order: word [g1, g2] maps z to g2(g1(z)).
class GroupWord {
 public:
  GroupWord() = default;
  GroupWord(const Algebra& alg, WordMode mode, std::vector<Generator> gens,
            std::optional<double> base_arg = std::nullopt)
      : alg_(alg), mode_(mode), gens_(std::move(gens)), base_arg_(base_arg) {
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      const Generator& g = gens_[k];
      if (mode_ == WordMode::Unitary && is_tube(g.type))
        throw DomainError("generators[" + std::to_string(k) + "]: " + gen_name(g.type) +
                          " is not allowed in a unitary word");
      mats_.push_back(build(g, k));
    }
  }

  static GroupWord identity(const Algebra& alg) { return GroupWord(alg, WordMode::Unitary, {}); }

  const Algebra& algebra() const { return alg_; }
  WordMode mode() const { return mode_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::optional<double>& base_arg() const { return base_arg_; }
  std::size_t size() const { return gens_.size(); }

  GroupWord with_base_arg(std::optional<double> b) const {
    GroupWord w = *this;
    w.base_arg_ = b;
    return w;
  }

  // One step of the word: image of z under generator k.
  ElementC apply_step(std::size_t k, const ElementC& z) const {
    const Generator& g = gens_[k];
    try {
      if (!needs_chart(g.type)) return {alg_, mats_[k] * z.coords};
      const Chart ch = chart_eval(k, z);
      return ch.at_infinity ? -cayley_p(ch.zeta2) : cayley_p(ch.zeta2);
    } catch (const DomainError& ex) {
      throw DomainError(where(k) + ex.what());
    }
  }

  ElementC apply(const ElementC& z) const {
    require_same(alg_, z.alg);
    ElementC cur = z;
    for (std::size_t k = 0; k < gens_.size(); ++k) cur = apply_step(k, cur);
    return cur;
  }

  // Differential of the whole word at z, as a complex n x n matrix.
  Eigen::MatrixXcd differential(const ElementC& z) const {
    require_same(alg_, z.alg);
    const cplx I(0.0, 1.0);
    const ElementC e = ElementC::unit(alg_);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Identity(alg_.n, alg_.n);
    ElementC cur = z;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      const Generator& g = gens_[k];
      Eigen::MatrixXcd Dk;
      try {
        if (!needs_chart(g.type)) {
          Dk = mats_[k];
        } else {
          // Both charts: D = Dp(zeta2) Dq(zeta) Dc(+-w); the two sign flips of
          // the chart at infinity cancel.
          const Chart ch = chart_eval(k, cur);
          const ElementC wc = ch.at_infinity ? -cur : cur;
          const Eigen::MatrixXcd Dc = 2.0 * I * cquad_rep_operator(cinverse(e - wc));
          Eigen::MatrixXcd Dq;
          if (!ch.at_infinity) Dq = mats_[k];
          else if (g.type == GenType::Linear) Dq = inf_mats_[k];
          else Dq = bergman_operator(ch.zeta, ElementC(g.u)).inverse();
          const Eigen::MatrixXcd Dp = 2.0 * I * cquad_rep_operator(cinverse(ch.zeta2 + I * e));
          Dk = Dp * Dq * Dc;
        }
      } catch (const DomainError& ex) {
        throw DomainError(where(k) + ex.what());
      }
      D = Dk * D;
      cur = apply_step(k, cur);
    }
    return D;
  }

  // j(g, z) = chi(Dg(z)), with chi(A) = det(A e); evaluated factor by factor.
  cplx cocycle(const ElementC& z) const {
    require_same(alg_, z.alg);
    const cplx I(0.0, 1.0);
    const ElementC e = ElementC::unit(alg_);
    const cplx two_i_r = std::pow(2.0 * I, alg_.r);
    cplx j = 1.0;
    ElementC cur = z;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      const Generator& g = gens_[k];
      try {
        if (!needs_chart(g.type)) {
          j *= chis_[k];
          cur = ElementC(alg_, mats_[k] * cur.coords);
          continue;
        }
        const Chart ch = chart_eval(k, cur);
        const cplx dc = ch.at_infinity ? cdet(e + cur) : cdet(e - cur);
        const cplx dp = cdet(ch.zeta2 + I * e);
        cplx chi_q;
        if (!ch.at_infinity) chi_q = chis_[k];
        else if (g.type == GenType::Linear) chi_q = inf_chis_[k];
        else chi_q = 1.0 / cdet(ElementC(alg_, bergman_operator(ch.zeta, ElementC(g.u)) * e.coords));
        j *= two_i_r / (dc * dc) * chi_q * two_i_r / (dp * dp);
        cur = ch.at_infinity ? -cayley_p(ch.zeta2) : cayley_p(ch.zeta2);
      } catch (const DomainError& ex) {
        throw DomainError(where(k) + ex.what());
      }
    }
    return j;
  }

 private:
  Algebra alg_;
  WordMode mode_ = WordMode::Unitary;
  std::vector<Generator> gens_;
  std::optional<double> base_arg_;
  std::vector<Eigen::MatrixXcd> mats_;      // linear part of each generator (if any)
  std::vector<Eigen::MatrixXcd> inf_mats_;  // linear maps seen from the chart at infinity
  std::vector<cplx> chis_, inf_chis_;

  // Translations and structure maps are evaluated in the Cayley chart c(w), or,
  // when w is closer to e than to -e, in the chart at infinity c(-w) = s(c(w)),
  // where t_u becomes x -> x^u and A becomes (A^T)^{-1}.
  struct Chart {
    bool at_infinity = false;
    ElementC zeta, zeta2;
  };

  Chart chart_eval(std::size_t k, const ElementC& w) const {
    const ElementC e = ElementC::unit(alg_);
    const Generator& g = gens_[k];
    Chart ch;
    ch.at_infinity = std::abs(cdet(e + w)) > std::abs(cdet(e - w));
    if (!ch.at_infinity) {
      ch.zeta = cayley_c(w);
      ch.zeta2 = tube_map(k, ch.zeta);
    } else {
      ch.zeta = cayley_c(-w);
      ch.zeta2 = g.type == GenType::Translate ? quasi_inverse(ch.zeta, ElementC(g.u))
                                              : ElementC(alg_, inf_mats_[k] * ch.zeta.coords);
    }
    return ch;
  }

  std::string where(std::size_t k) const {
    return "generators[" + std::to_string(k) + "] (" + gen_name(gens_[k].type) + "): ";
  }

  ElementC tube_map(std::size_t k, const ElementC& zeta) const {
    const Generator& g = gens_[k];
    switch (g.type) {
      case GenType::Translate: return zeta + ElementC(g.u);
      case GenType::Linear: return {alg_, mats_[k] * zeta.coords};
      default: return zeta;
    }
  }

  void check_elem(const ElementJ& x, std::size_t k, const char* field) const {
    if (!(x.alg == alg_) || x.coords.size() != alg_.n)
      throw DomainError("generators[" + std::to_string(k) + "]." + field + ": wrong algebra or length");
  }

  Eigen::MatrixXcd build(const Generator& g, std::size_t k) {
    const int n = alg_.n;
    const ElementC e = ElementC::unit(alg_);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n);
    switch (g.type) {
      case GenType::Translate:
        check_elem(g.u, k, "u");
        break;
      case GenType::Inversion:
        M = -M;
        break;
      case GenType::Linear: {
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
        for (const auto& f : g.exponents) {
          check_elem(f.a, k, "exponents.a");
          Eigen::MatrixXd X = lmul_operator(f.a);
          if (f.derivation) {
            check_elem(f.b, k, "exponents.b");
            const Eigen::MatrixXd Lb = lmul_operator(f.b);
            X = X * Lb - Lb * X;
          }
          A = A * Eigen::MatrixXd(X.exp());
        }
        M = A.cast<cplx>();
        break;
      }
      case GenType::ExpIL: {
        check_elem(g.u, k, "v");
        const Eigen::MatrixXcd X = cplx(0.0, 1.0) * lmul_operator(g.u).cast<cplx>();
        M = X.exp();
        break;
      }
      case GenType::Derivation: {
        check_elem(g.u, k, "a");
        check_elem(g.b, k, "b");
        const Eigen::MatrixXd La = lmul_operator(g.u), Lb = lmul_operator(g.b);
        const Eigen::MatrixXd X = La * Lb - Lb * La;
        M = Eigen::MatrixXd(X.exp()).cast<cplx>();
        break;
      }
    }
    chis_.push_back(cdet(ElementC(alg_, M * e.coords)));
    inf_mats_.push_back(g.type == GenType::Linear ? Eigen::MatrixXcd(M.transpose().inverse()) : M);
    inf_chis_.push_back(cdet(ElementC(alg_, inf_mats_.back() * e.coords)));
    return M;
  }
};

inline GroupWord compose(const GroupWord& g, const GroupWord& h) {  // g after h
  require_same(g.algebra(), h.algebra());
  std::vector<Generator> gens = h.generators();
  gens.insert(gens.end(), g.generators().begin(), g.generators().end());
  const WordMode mode =
      g.mode() == WordMode::Unitary && h.mode() == WordMode::Unitary ? WordMode::Unitary : WordMode::Tube;
  return GroupWord(g.algebra(), mode, std::move(gens));
}

inline GroupWord inverse(const GroupWord& g) {
  std::vector<Generator> gens;
  for (auto it = g.generators().rbegin(); it != g.generators().rend(); ++it) gens.push_back(inverse(*it));
  return GroupWord(g.algebra(), g.mode(), std::move(gens));
}

inline ElementC apply_word(const GroupWord& g, const ElementC& z) { return g.apply(z); }
inline Eigen::MatrixXcd differential_word(const GroupWord& g, const ElementC& z) { return g.differential(z); }
inline cplx cocycle_j(const GroupWord& g, const ElementC& z) { return g.cocycle(z); }

// Continuous argument of j(g, t sigma), t in [0, 1], seeded at phi(g, 0).
inline double determination_phi(const GroupWord& g, const ElementC& sigma, int steps = 64,
                                int max_steps = 1 << 14) {
  const auto arg_at = [&](double t) { return std::arg(g.cocycle(t * sigma)); };
  const double a0 = arg_at(0.0);
  double phi = g.base_arg() ? *g.base_arg() + wrap_angle(a0 - *g.base_arg()) : principal_arg(g.cocycle(0.0 * sigma));
  const double min_width = 1.0 / max_steps;

  // Walk the grid, bisecting any interval whose phase jump exceeds pi/2.
  struct Seg {
    double t0, t1, a0, a1;
  };
  std::vector<Seg> stack;
  double prev_t = 0.0, prev_a = a0;
  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const double a = arg_at(t);
    stack.push_back({prev_t, t, prev_a, a});
    while (!stack.empty()) {
      Seg s = stack.back();
      stack.pop_back();
      const double d = wrap_angle(s.a1 - s.a0);
      if (std::abs(d) <= kPi / 2) {
        phi += d;
        continue;
      }
      if (s.t1 - s.t0 <= min_width)
        throw AmbiguityError("determination_phi: phase jump persists at maximal refinement");
      const double tm = 0.5 * (s.t0 + s.t1);
      const double am = arg_at(tm);
      stack.push_back({tm, s.t1, am, s.a1});  // processed second
      stack.push_back({s.t0, tm, s.a0, am});
    }
    prev_t = t;
    prev_a = a;
  }
  return phi;
}

inline LiftedPoint act_lift(const GroupWord& g, const LiftedPoint& p) {
  const double phi = determination_phi(g, p.point);
  return {g.apply(p.point), p.theta + phi / p.point.alg.r};
}

inline LiftedPoint act_lift_power(const GroupWord& g, const LiftedPoint& p, int k) {
  LiftedPoint cur = p;
  for (int i = 0; i < k; ++i) cur = act_lift(g, cur);
  return cur;
}

// Random generators (Gaussian coordinates scaled by `scale`).
inline ElementJ scaled_random(const Algebra& alg, Rng& rng, double scale) { return scale * random_element(alg, rng); }

inline Generator random_tube_generator(const Algebra& alg, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0: return Generator::translate(scaled_random(alg, rng, 0.7));
    case 1: {
      std::vector<LinearFactor> ex;
      ex.push_back({false, scaled_random(alg, rng, 0.3), {}});
      ex.push_back({true, scaled_random(alg, rng, 0.5), scaled_random(alg, rng, 0.5)});
      return Generator::linear(std::move(ex));
    }
    default: return Generator::inversion();
  }
}

inline Generator random_unitary_generator(const Algebra& alg, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 1);
  if (pick(rng) == 0) return Generator::exp_iL(scaled_random(alg, rng, 1.0));
  return Generator::derivation(scaled_random(alg, rng, 0.6), scaled_random(alg, rng, 0.6));
}

inline GroupWord random_unitary_word(const Algebra& alg, Rng& rng, int len = 3) {
  std::vector<Generator> gens;
  for (int k = 0; k < len; ++k) gens.push_back(random_unitary_generator(alg, rng));
  return GroupWord(alg, WordMode::Unitary, std::move(gens));
}

inline GroupWord random_mixed_word(const Algebra& alg, Rng& rng, int len = 4) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Generator> gens;
  for (int k = 0; k < len; ++k)
    gens.push_back(coin(rng) ? random_tube_generator(alg, rng) : random_unitary_generator(alg, rng));
  return GroupWord(alg, WordMode::Tube, std::move(gens));
}

// Words built from translations and structure-group maps: all fix e on S.
inline GroupWord random_parabolic_word(const Algebra& alg, Rng& rng, int len = 3) {
  std::vector<Generator> gens;
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < len; ++k) {
    if (coin(rng)) {
      gens.push_back(Generator::translate(scaled_random(alg, rng, 0.7)));
    } else {
      std::vector<LinearFactor> ex;
      ex.push_back({false, scaled_random(alg, rng, 0.3), {}});
      ex.push_back({true, scaled_random(alg, rng, 0.5), scaled_random(alg, rng, 0.5)});
      gens.push_back(Generator::linear(std::move(ex)));
    }
  }
  return GroupWord(alg, WordMode::Tube, std::move(gens));
}

}  // namespace maslov
