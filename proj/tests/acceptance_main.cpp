// Acceptance runner: executes every criterion at full size and prints one
// pass/fail line each. Exit status is the number of failing criteria.
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "resit/selftest.hpp"

int main(int argc, char** argv) {
  bool quick = false;
  std::uint64_t seed = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--quick") {
      quick = true;
    } else if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "usage: " << argv[0] << " [--quick] [--seed N]\n";
      return 2;
    }
  }

  auto results = resit::run_acceptance(quick, seed);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << resit::format_criterion(r) << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed;
}
