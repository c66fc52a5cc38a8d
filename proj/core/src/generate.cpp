#include "mlwb/generate.hpp"

#include <algorithm>

#include "mlwb/error.hpp"

namespace mlwb {

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

Formula prop(Rng& rng, const PropGenOptions& o, int depth, int size) {
  if (size <= 1 || pick(rng, 5) == 0) {
    const int r = pick(rng, static_cast<int>(o.letters.size()) + 1);
    if (r == static_cast<int>(o.letters.size())) return pick(rng, 2) ? Formula::falsum() : Formula::verum();
    return Formula::atom(o.letters[static_cast<std::size_t>(r)]);
  }
  const bool modal_ok = depth > 0;
  const int choice = pick(rng, modal_ok ? 7 : 4);
  const int half = (size - 1) / 2;
  const int m = 1 + pick(rng, o.modalities);
  switch (choice) {
    case 0: return Formula::implies(prop(rng, o, depth, half), prop(rng, o, depth, half));
    case 1: return Formula::conjunction(prop(rng, o, depth, half), prop(rng, o, depth, half));
    case 2: return Formula::disjunction(prop(rng, o, depth, half), prop(rng, o, depth, half));
    case 3: return Formula::negation(prop(rng, o, depth, size - 1));
    case 4:
    case 5: return Formula::box(prop(rng, o, depth - 1, size - 1), m);
    default: return Formula::diamond(prop(rng, o, depth - 1, size - 1), m);
  }
}

struct PredGen {
  Rng& rng;
  const PredGenOptions& o;
  std::vector<std::string> bound;

  Term term() {
    std::vector<Term> pool;
    for (const auto& v : o.variables) {
      const bool is_bound = std::find(bound.begin(), bound.end(), v) != bound.end();
      if (is_bound || o.allow_free) pool.push_back(Term::variable(v));
    }
    for (const auto& c : o.constants) pool.push_back(Term::constant(c));
    if (pool.empty()) throw InputError("no terms available for a closed random formula");
    return pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))];
  }

  Formula atom() {
    std::vector<std::pair<std::string, int>> preds(o.predicates.begin(), o.predicates.end());
    std::vector<std::pair<std::string, int>> usable;
    bool have_terms = o.allow_free || !bound.empty() || !o.constants.empty();
    for (const auto& p : preds)
      if (p.second == 0 || have_terms) usable.push_back(p);
    if (usable.empty()) return Formula::falsum();
    const auto& [name, arity] = usable[static_cast<std::size_t>(pick(rng, static_cast<int>(usable.size())))];
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(term());
    return Formula::atom(name, std::move(args));
  }

  Formula gen(int depth, int size) {
    if (size <= 1 || pick(rng, 6) == 0) return pick(rng, 8) == 0 ? Formula::falsum() : atom();
    std::vector<std::string> free_binders;
    for (const auto& v : o.variables)
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) free_binders.push_back(v);
    const int half = (size - 1) / 2;
    const int choice = pick(rng, 9);
    switch (choice) {
      case 0: return Formula::implies(gen(depth, half), gen(depth, half));
      case 1: return Formula::conjunction(gen(depth, half), gen(depth, half));
      case 2: return Formula::disjunction(gen(depth, half), gen(depth, half));
      case 3: return Formula::negation(gen(depth, size - 1));
      case 4:
      case 5:
        if (depth > 0) {
          if (choice == 4) return Formula::box(gen(depth - 1, size - 1));
          return Formula::diamond(gen(depth - 1, size - 1));
        }
        return gen(depth, size - 1);
      default: {
        if (free_binders.empty()) return gen(depth, size - 1);
        const std::string v =
            free_binders[static_cast<std::size_t>(pick(rng, static_cast<int>(free_binders.size())))];
        bound.push_back(v);
        Formula body = gen(depth, size - 1);
        bound.pop_back();
        return choice == 8 ? Formula::exists(v, body) : Formula::forall(v, body);
      }
    }
  }
};

}  // namespace

Formula random_prop(Rng& rng, const PropGenOptions& options) {
  if (options.letters.empty()) throw InputError("random_prop needs at least one letter");
  return prop(rng, options, options.max_modal_depth, options.max_size);
}

Formula random_pred(Rng& rng, const PredGenOptions& options) {
  if (options.predicates.empty()) throw InputError("random_pred needs a predicate letter");
  PredGen g{rng, options, {}};
  return g.gen(options.max_modal_depth, options.max_size);
}

}  // namespace mlwb
