#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "mlwb/syntax.hpp"

namespace mlwb {

using Rng = std::mt19937_64;

struct PropGenOptions {
  std::vector<std::string> letters{"p", "q"};
  int max_modal_depth = 3;
  int max_size = 12;
  int modalities = 1;
};

// Random propositional formula, built with derived connectives as well.
Formula random_prop(Rng& rng, const PropGenOptions& options = {});

struct PredGenOptions {
  std::map<std::string, int> predicates{{"P", 1}, {"Q", 2}};
  std::vector<std::string> variables{"x", "y", "z"};
  std::vector<std::string> constants;
  int max_modal_depth = 2;
  int max_size = 10;
  // When false, atoms only use bound variables and constants.
  bool allow_free = true;
};

// Random predicate formula with no shadowed binders.
Formula random_pred(Rng& rng, const PredGenOptions& options = {});

}  // namespace mlwb
