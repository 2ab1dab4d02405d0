#include <cstdlib>
#include <iostream>
#include <string>

#include "radlab/acceptance.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240601;
  const auto rs = radlab::acceptance::run_all(seed, [](const radlab::acceptance::CriterionResult& r) {
    std::cout << radlab::acceptance::format_line(r) << std::endl;
  });
  const bool ok = radlab::acceptance::acceptable(rs);
  std::cout << (ok ? "ACCEPTED" : "REJECTED") << std::endl;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
