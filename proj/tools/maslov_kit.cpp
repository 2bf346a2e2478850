// maslov-kit: command-line front end for the index library.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "maslov/acceptance.hpp"
#include "maslov/io.hpp"
#include "maslov/maslov.hpp"

using namespace maslov;
using io::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MASLOV_KIT_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

struct TolFlags {
  double transverse = default_tolerances().transverse;
  double integral = default_tolerances().integral;
  std::string mode = "strict";

  void attach(CLI::App* app) {
    app->add_option("--tol-transverse", transverse, "angle distance to pi counted as a coincidence")->check(CLI::PositiveNumber);
    app->add_option("--tol-int", integral, "maximal distance of a raw index to an integer")->check(CLI::PositiveNumber);
    app->add_option("--mode", mode, "gray-zone policy")->check(CLI::IsMember({"strict", "permissive"}));
  }
  Tolerances get() const {
    Tolerances t;
    t.transverse = transverse;
    t.integral = integral;
    t.mode = mode == "strict" ? GrayZonePolicy::Strict : GrayZonePolicy::Permissive;
    return t;
  }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json mu_report(int v, const Tolerances& tol) {
  IndexReport r;
  r.value = v;
  r.raw = v;
  return io::to_json(r, tol);
}

int cmd_compute(const std::string& op, const std::vector<std::string>& files, const Tolerances& tol) {
  static const std::map<std::string, std::size_t> arity = {{"mu", 2},      {"iota", 3},   {"souriau", 2},
                                                           {"inertia", 3}, {"arnold", 2}, {"alm", 2}};
  const std::size_t need = arity.at(op);
  if (files.size() != need)
    throw DomainError("compute --op " + op + ": expected " + std::to_string(need) + " input files, got " +
                      std::to_string(files.size()));
  std::vector<io::JsonElement> in;
  for (std::size_t k = 0; k < files.size(); ++k) {
    in.push_back(io::element_from_json(io::read_file(files[k]), files[k], tol));
    require_shilov(in.back().value, files[k].c_str(), tol);
    if (k > 0) require_same(in[0].value.alg, in[k].value.alg);
  }
  if (op == "mu") return emit(mu_report(mu(in[0].value, in[1].value, tol), tol)), 0;
  if (op == "iota") return emit(io::to_json(maslov_iota(in[0].value, in[1].value, in[2].value, tol), tol)), 0;
  if (op == "inertia") return emit(io::to_json(inertia_j(in[0].value, in[1].value, in[2].value, tol), tol)), 0;
  const LiftedPoint a = in[0].lifted(files[0]), b = in[1].lifted(files[1]);
  if (op == "souriau") return emit(io::to_json(souriau_m(a, b, tol), tol)), 0;
  if (op == "arnold") return emit(io::to_json(arnold_nu(a, b, tol), tol)), 0;
  return emit(io::to_json(alm_n(a, b, tol), tol)), 0;
}

int cmd_rotation(const std::string& word_file, int K, const std::string& base_file, const Tolerances& tol) {
  const GroupWord g = io::word_from_json(io::read_file(word_file), word_file);
  LiftedPoint base = default_base_point(g.algebra());
  if (!base_file.empty()) {
    const io::JsonElement b = io::element_from_json(io::read_file(base_file), base_file, tol);
    require_same(b.value.alg, g.algebra());
    base = b.theta ? b.lifted(base_file) : lift(b.value, 0);
  }
  const RotationEstimate est = rotation_rho(g, K, base, tol);
  emit({{"tau_estimate", est.tau},
        {"tau_error_bound", static_cast<double>(g.algebra().r) / K},
        {"rho_mod1", est.rho},
        {"error_bound", est.error_bound},
        {"K", K},
        {"c_K", est.c_K},
        {"base", io::to_json(base)},
        {"tolerances", io::to_json(tol)}});
  return 0;
}

int cmd_path(const std::string& op, const std::vector<std::string>& files, const std::string& csv,
             const Tolerances& tol) {
  if (files.size() != 2)
    throw DomainError("path --op " + op + ": expected two input files (path and reference, or two paths)");
  const BoundaryPath p1 = io::path_from_json(io::read_file(files[0]), files[0], tol);
  PathIndexResult res;
  if (op == "arnold") {
    const io::JsonElement ref = io::element_from_json(io::read_file(files[1]), files[1], tol);
    require_shilov(ref.value, files[1].c_str(), tol);
    require_same(ref.value.alg, p1.algebra());
    res = arnold_number(p1, ref.value, tol);
  } else {
    const BoundaryPath p2 = io::path_from_json(io::read_file(files[1]), files[1], tol);
    res = pair_path_index(p1, p2, tol);
  }
  json cr = json::array();
  for (const auto& c : res.crossings) cr.push_back(io::to_json(c));
  emit({{"value", res.value}, {"crossings", cr}, {"shift", res.shift}, {"tolerances", io::to_json(tol)}});
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw DomainError("--csv: cannot open '" + csv + "' for writing");
    write_flow_csv(out, res.flow, res.crossings);
  }
  return 0;
}

struct GenFlags {
  std::string what = "point";
  std::string kind = "sym-r";
  int param = 2;
  std::uint64_t seed = 1;
  std::string preset;
  int k = 0;
  int mu_target = -1;
  std::string relative_to;
  int length = 3;
  std::string mode = "tube";
  long lift_k = 0;
  int samples = 32;
};

int cmd_gen(const GenFlags& f, const Tolerances& tol) {
  const Algebra alg = Algebra::make(parse_kind(f.kind), f.param);
  Rng rng(f.seed);
  const auto point = [&]() -> ShilovPoint {
    const ElementC e = ElementC::unit(alg);
    if (f.preset == "e") return e;
    if (f.preset == "minus-e") return -e;
    if (f.preset == "minus-i-eps") {
      if (f.k < 0 || f.k > alg.r) throw DomainError("--k: must lie in [0, r]");
      return minus_i_eps(alg, f.k);
    }
    if (!f.preset.empty()) throw DomainError("--preset: unknown preset '" + f.preset + "'");
    if (!f.relative_to.empty()) {
      const io::JsonElement other = io::element_from_json(io::read_file(f.relative_to), f.relative_to, tol);
      require_same(other.value.alg, alg);
      const int ell = f.mu_target < 0 ? 0 : f.mu_target;
      if (ell > alg.r) throw DomainError("--mu: must lie in [0, r]");
      return point_with_mu(other.value, ell, rng);
    }
    return random_shilov(alg, rng);
  };
  if (f.what == "point") return emit(io::to_json(point())), 0;
  if (f.what == "lift") return emit(io::to_json(lift(point(), f.lift_k))), 0;
  if (f.what == "word") {
    const GroupWord w = f.mode == "unitary" ? random_unitary_word(alg, rng, f.length)
                        : f.mode == "parabolic" ? random_parabolic_word(alg, rng, f.length)
                                                : random_mixed_word(alg, rng, f.length);
    return emit(io::to_json(w)), 0;
  }
  if (f.what == "loop") {
    const ShilovPoint s = point();
    json base = io::to_json(s);
    base.erase("algebra");
    return emit({{"algebra", io::to_json(alg)}, {"kind", "phase"}, {"base", base}, {"from", 0.0},
                 {"to", 2.0 * kPi}, {"samples", f.samples}}),
           0;
  }
  throw DomainError("--what: expected point, lift, word or loop");
}

int cmd_selftest(const std::string& level, std::uint64_t seed) {
  acceptance::Options opt;
  opt.level = level == "full" ? acceptance::Level::Full : acceptance::Level::Quick;
  opt.seed = seed;
  opt.threads = thread_cap();
  const auto results = acceptance::run(opt);
  int passed = 0;
  long checks = 0;
  for (const auto& r : results) {
    std::cout << acceptance::format_line(r) << "\n";
    passed += r.passed();
    checks += r.checks;
  }
  std::cout << "selftest " << level << " seed " << seed << ": " << passed << "/" << results.size()
            << " criteria passed, " << checks << " checks\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maslov, Souriau, Arnold and rotation indices on Shilov boundaries"};
  app.require_subcommand(1);

  std::string op;
  std::vector<std::string> files;
  TolFlags tf;

  auto* compute = app.add_subcommand("compute", "pointwise indices of elements given as JSON files");
  compute->add_option("--op", op, "index to compute")
      ->required()
      ->check(CLI::IsMember({"mu", "iota", "souriau", "inertia", "arnold", "alm"}));
  compute->add_option("inputs", files, "element files")->required();
  tf.attach(compute);

  std::string word_file, base_file;
  int K = 32;
  auto* rotation = app.add_subcommand("rotation", "translation and rotation number of a group word");
  rotation->add_option("word", word_file, "word file")->required();
  rotation->add_option("--k", K, "number of iterations")->check(CLI::PositiveNumber);
  rotation->add_option("--base", base_file, "base point (element or lift)");
  tf.attach(rotation);

  std::string path_op = "arnold", csv;
  std::vector<std::string> path_files;
  auto* path = app.add_subcommand("path", "Arnold number of a path, or index of a pair of paths");
  path->add_option("--op", path_op, "arnold: path + reference point; pair: two paths")
      ->check(CLI::IsMember({"arnold", "pair"}));
  path->add_option("inputs", path_files, "input files")->required();
  path->add_option("--csv", csv, "write strands and crossings as CSV");
  tf.attach(path);

  GenFlags gf;
  auto* gen = app.add_subcommand("gen", "generate seeded inputs as JSON");
  gen->add_option("--what", gf.what, "point, lift, word or loop")->check(CLI::IsMember({"point", "lift", "word", "loop"}));
  gen->add_option("--algebra", gf.kind, "sym-r, herm-c or spin")->check(CLI::IsMember({"sym-r", "herm-c", "spin"}));
  gen->add_option("--param", gf.param, "m for matrix algebras, q for spin");
  gen->add_option("--seed", gf.seed, "random seed");
  gen->add_option("--preset", gf.preset, "e, minus-e or minus-i-eps");
  gen->add_option("--k", gf.k, "k for minus-i-eps");
  gen->add_option("--relative-to", gf.relative_to, "element file; generate a point with prescribed mu to it");
  gen->add_option("--mu", gf.mu_target, "transversality index to the --relative-to point");
  gen->add_option("--length", gf.length, "number of generators in a word");
  gen->add_option("--mode", gf.mode, "tube, unitary or parabolic words")->check(CLI::IsMember({"tube", "unitary", "parabolic"}));
  gen->add_option("--lift-k", gf.lift_k, "sheet of the lift");
  gen->add_option("--samples", gf.samples, "samples of a generated loop");

  std::string level = "quick";
  std::uint64_t seed = 20240611;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
  selftest->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  try {
    const Tolerances tol = tf.get();
    if (*compute) return cmd_compute(op, files, tol);
    if (*rotation) return cmd_rotation(word_file, K, base_file, tol);
    if (*path) return cmd_path(path_op, path_files, csv, tol);
    if (*gen) return cmd_gen(gf, tol);
    if (*selftest) return cmd_selftest(level, seed);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
