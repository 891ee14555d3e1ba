#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wcsl::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

// Runs one acceptance criterion (1..kCriterionCount). Exceptions raised by the
// library are caught and reported as a failure.
CriterionResult run_criterion(int id);

// Runs the listed criteria (all when empty), printing one line per criterion
// and a summary. Returns the number of failures.
int run_acceptance(const std::vector<int>& ids, std::ostream& out);

}  // namespace wcsl::cli
