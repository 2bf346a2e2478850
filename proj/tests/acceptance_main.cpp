// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "maslov/acceptance.hpp"

int main(int argc, char** argv) {
  maslov::acceptance::Options opt;
  opt.threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MASLOV_KIT_THREADS")) opt.threads = std::max(1, std::atoi(env));
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") opt.level = maslov::acceptance::Level::Quick;
    else if (a.rfind("--seed=", 0) == 0) opt.seed = std::stoull(a.substr(7));
  }
  bool ok = true;
  for (const auto& r : maslov::acceptance::run(opt)) {
    std::cout << maslov::acceptance::format_line(r) << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}
