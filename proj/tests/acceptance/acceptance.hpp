#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mlwb::acceptance {

struct Result {
  std::string id;
  std::string title;
  bool passed = false;
  // Fails by design: the literal vector cannot be met together with locality.
  bool known_gap = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  std::string scenario_dir;
  // Run only criteria whose id starts with this prefix.
  std::string only;
};

std::string default_scenario_dir();

std::vector<Result> run_all(const Options& options);

// One PASS/FAIL line per criterion. Returns the number of failures that are
// not known gaps.
int print_results(const std::vector<Result>& results, std::ostream& os);

}  // namespace mlwb::acceptance
