#pragma once

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "indices.hpp"
#include "tolerances.hpp"

namespace maslov::io {

using json = nlohmann::json;

struct JsonElement {
  ElementC value;
  std::optional<double> theta;

  LiftedPoint lifted(const std::string& field) const {
    if (!theta) throw DomainError(field + ".theta: a lift is required for this operation");
    return {value, *theta};
  }
};

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw DomainError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DomainError(where + "." + key + ": missing field");
  return *it;
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw DomainError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw DomainError(where + ": not finite");
  return v;
}

inline Eigen::VectorXd vector(const json& j, int n, const std::string& where) {
  if (!j.is_array()) throw DomainError(where + ": expected an array");
  if (static_cast<int>(j.size()) != n)
    throw DomainError(where + ": expected " + std::to_string(n) + " values, got " + std::to_string(j.size()));
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v(k) = number(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

inline json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

}  // namespace detail

inline json to_json(const Algebra& a) { return {{"kind", kind_name(a.kind)}, {"param", a.param}}; }

inline Algebra algebra_from_json(const json& j, const std::string& where = "algebra") {
  const json& k = detail::field(j, "kind", where);
  if (!k.is_string()) throw DomainError(where + ".kind: expected a string");
  const json& p = detail::field(j, "param", where);
  if (!p.is_number_integer()) throw DomainError(where + ".param: expected an integer");
  Kind kind;
  try {
    kind = parse_kind(k.get<std::string>());
  } catch (const DomainError&) {
    throw DomainError(where + ".kind: unknown kind '" + k.get<std::string>() + "'");
  }
  try {
    return Algebra::make(kind, p.get<int>());
  } catch (const DomainError& e) {
    throw DomainError(where + ".param: " + e.what());
  }
}

inline ElementJ real_from_json(const Algebra& alg, const json& j, const std::string& where) {
  return {alg, detail::vector(j, alg.n, where)};
}

inline json to_json(const ElementJ& x) { return detail::vec_json(x.coords); }

inline json to_json(const ElementC& z, std::optional<double> theta = std::nullopt) {
  json j = {{"algebra", to_json(z.alg)},
            {"coords_re", detail::vec_json(z.coords.real())},
            {"coords_im", detail::vec_json(z.coords.imag())}};
  if (theta) j["theta"] = *theta;
  return j;
}

inline json to_json(const LiftedPoint& p) { return to_json(p.point, p.theta); }

inline JsonElement element_from_json(const json& j, const std::string& where = "element",
                                     const Tolerances& tol = default_tolerances()) {
  const Algebra alg = algebra_from_json(detail::field(j, "algebra", where), where + ".algebra");
  const Eigen::VectorXd re = detail::vector(detail::field(j, "coords_re", where), alg.n, where + ".coords_re");
  Eigen::VectorXd im = Eigen::VectorXd::Zero(alg.n);
  if (j.contains("coords_im")) im = detail::vector(j["coords_im"], alg.n, where + ".coords_im");
  JsonElement out{ElementC(ElementJ(alg, re), ElementJ(alg, im)), std::nullopt};
  if (j.contains("theta")) {
    out.theta = detail::number(j["theta"], where + ".theta");
    require_lift({out.value, *out.theta}, where.c_str(), tol);
  }
  return out;
}

inline json to_json(const Generator& g) {
  json j = {{"type", gen_name(g.type)}};
  switch (g.type) {
    case GenType::Translate: j["u"] = to_json(g.u); break;
    case GenType::Inversion: break;
    case GenType::ExpIL: j["v"] = to_json(g.u); break;
    case GenType::Derivation:
      j["a"] = to_json(g.u);
      j["b"] = to_json(g.b);
      break;
    case GenType::Linear: {
      json ex = json::array();
      for (const auto& f : g.exponents) {
        if (f.derivation) ex.push_back({{"a", to_json(f.a)}, {"b", to_json(f.b)}});
        else ex.push_back({{"v", to_json(f.a)}});
      }
      j["exponents"] = ex;
      break;
    }
  }
  return j;
}

inline json to_json(const GroupWord& w) {
  json gens = json::array();
  for (const auto& g : w.generators()) gens.push_back(to_json(g));
  json j = {{"algebra", to_json(w.algebra())},
            {"mode", w.mode() == WordMode::Unitary ? "unitary" : "tube"},
            {"generators", gens}};
  if (w.base_arg()) j["base_arg"] = *w.base_arg();
  return j;
}

inline Generator generator_from_json(const Algebra& alg, const json& j, const std::string& where) {
  const json& t = detail::field(j, "type", where);
  if (!t.is_string()) throw DomainError(where + ".type: expected a string");
  const std::string type = t.get<std::string>();
  if (type == "translate") return Generator::translate(real_from_json(alg, detail::field(j, "u", where), where + ".u"));
  if (type == "inversion") return Generator::inversion();
  if (type == "exp-iL") return Generator::exp_iL(real_from_json(alg, detail::field(j, "v", where), where + ".v"));
  if (type == "derivation")
    return Generator::derivation(real_from_json(alg, detail::field(j, "a", where), where + ".a"),
                                 real_from_json(alg, detail::field(j, "b", where), where + ".b"));
  if (type == "linear") {
    const json& ex = detail::field(j, "exponents", where);
    if (!ex.is_array()) throw DomainError(where + ".exponents: expected an array");
    std::vector<LinearFactor> fs;
    for (std::size_t k = 0; k < ex.size(); ++k) {
      const std::string w = where + ".exponents[" + std::to_string(k) + "]";
      if (ex[k].contains("v")) {
        fs.push_back({false, real_from_json(alg, ex[k]["v"], w + ".v"), {}});
      } else {
        fs.push_back({true, real_from_json(alg, detail::field(ex[k], "a", w), w + ".a"),
                      real_from_json(alg, detail::field(ex[k], "b", w), w + ".b")});
      }
    }
    return Generator::linear(std::move(fs));
  }
  throw DomainError(where + ".type: unknown generator type '" + type + "'");
}

inline GroupWord word_from_json(const json& j, const std::string& where = "word") {
  const Algebra alg = algebra_from_json(detail::field(j, "algebra", where), where + ".algebra");
  const json& m = detail::field(j, "mode", where);
  if (!m.is_string() || (m != "tube" && m != "unitary"))
    throw DomainError(where + ".mode: expected \"tube\" or \"unitary\"");
  const json& gs = detail::field(j, "generators", where);
  if (!gs.is_array()) throw DomainError(where + ".generators: expected an array");
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < gs.size(); ++k)
    gens.push_back(generator_from_json(alg, gs[k], where + ".generators[" + std::to_string(k) + "]"));
  std::optional<double> base;
  if (j.contains("base_arg")) base = detail::number(j["base_arg"], where + ".base_arg");
  return GroupWord(alg, m == "unitary" ? WordMode::Unitary : WordMode::Tube, std::move(gens), base);
}

// Paths: either explicit samples, or a phase family e^{i(from + (to - from) t)} base.
inline BoundaryPath path_from_json(const json& j, const std::string& where = "path",
                                   const Tolerances& tol = default_tolerances()) {
  const Algebra alg = algebra_from_json(detail::field(j, "algebra", where), where + ".algebra");
  const std::string kind = j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "samples";
  if (kind == "phase") {
    json b = detail::field(j, "base", where);
    b["algebra"] = to_json(alg);
    const ElementC base = element_from_json(b, where + ".base", tol).value;
    require_shilov(base, (where + ".base").c_str(), tol);
    const double from = detail::number(detail::field(j, "from", where), where + ".from");
    const double to = detail::number(detail::field(j, "to", where), where + ".to");
    int n = 32;
    if (j.contains("samples")) {
      if (!j["samples"].is_number_integer() || j["samples"].get<int>() < 1)
        throw DomainError(where + ".samples: expected a positive integer");
      n = j["samples"].get<int>();
    }
    return BoundaryPath([base, from, to](double t) { return std::polar(1.0, from + (to - from) * t) * base; }, n);
  }
  if (kind != "samples") throw DomainError(where + ".kind: expected \"samples\" or \"phase\"");
  const json& ss = detail::field(j, "samples", where);
  if (!ss.is_array()) throw DomainError(where + ".samples: expected an array");
  std::vector<double> ts;
  std::vector<ShilovPoint> pts;
  for (std::size_t k = 0; k < ss.size(); ++k) {
    const std::string w = where + ".samples[" + std::to_string(k) + "]";
    ts.push_back(detail::number(detail::field(ss[k], "t", w), w + ".t"));
    json e = ss[k];
    e["algebra"] = to_json(alg);
    e.erase("t");
    pts.push_back(element_from_json(e, w, tol).value);
    require_shilov(pts.back(), w.c_str(), tol);
  }
  return BoundaryPath(std::move(ts), std::move(pts));
}

inline json path_to_json(const BoundaryPath& p) {
  json ss = json::array();
  for (std::size_t k = 0; k < p.t.size(); ++k) {
    json e = to_json(p.sigma[k]);
    e.erase("algebra");
    e["t"] = p.t[k];
    ss.push_back(e);
  }
  return {{"algebra", to_json(p.algebra())}, {"kind", "samples"}, {"samples", ss}};
}

inline json to_json(const Tolerances& t) {
  return {{"spec", t.spec},
          {"rank", t.rank},
          {"shilov", t.shilov},
          {"transverse", t.transverse},
          {"integral", t.integral},
          {"tangency_slope", t.tangency_slope},
          {"mode", t.mode == GrayZonePolicy::Strict ? "strict" : "permissive"}};
}

inline json to_json(const IndexReport& r, const Tolerances& tol) {
  json j = {{"value", r.value}, {"raw", r.raw}, {"residual", r.residual}, {"tolerances", to_json(tol)}};
  if (!r.witnesses.empty()) {
    json w = json::array();
    for (const auto& p : r.witnesses) w.push_back(to_json(p));
    j["witnesses"] = w;
  }
  return j;
}

inline json to_json(const CrossingRecord& c) { return {{"t", c.t}, {"strand", c.strand}, {"sign", c.sign}}; }

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": invalid JSON (" + std::string(e.what()) + ")");
  }
}

}  // namespace maslov::io
