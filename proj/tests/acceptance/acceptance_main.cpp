// Acceptance runner: `wcsl_acceptance [id ...]`, all criteria when no ids.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "wcsl/cli/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > wcsl::cli::kCriterionCount) {
      std::cerr << "unknown criterion " << argv[i] << '\n';
      return 2;
    }
    ids.push_back(id);
  }
  return wcsl::cli::run_acceptance(ids, std::cout) == 0 ? 0 : 1;
}
