#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mlwb/error.hpp"
#include "mlwb/syntax.hpp"

namespace mlwb {

using World = int;
using WorldSet = boost::dynamic_bitset<>;
using Edge = std::pair<World, World>;

WorldSet empty_set(std::size_t n);
WorldSet full_set(std::size_t n);
std::vector<World> members(const WorldSet& s);
bool is_subset(const WorldSet& a, const WorldSet& b);

// Finite frame (W, R) with named worlds. Worlds are dense indices 0..n-1.
class KripkeFrame {
 public:
  KripkeFrame() = default;
  // Throws InputError on duplicate names, out-of-range edges, or a root from
  // which some world is unreachable.
  KripkeFrame(std::vector<std::string> names, const std::vector<Edge>& edges,
              std::optional<World> root = std::nullopt);

  static KripkeFrame from_names(std::vector<std::string> names,
                                const std::vector<std::pair<std::string, std::string>>& edges,
                                std::optional<std::string> root = std::nullopt);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(World w) const { return names_.at(static_cast<std::size_t>(w)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<World> find(std::string_view name) const;
  // Throws InputError for an unknown name.
  World index(std::string_view name) const;

  bool related(World a, World b) const { return succ_[a].test(static_cast<std::size_t>(b)); }
  const WorldSet& successors(World w) const { return succ_.at(static_cast<std::size_t>(w)); }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  std::optional<World> root() const { return root_; }
  bool rooted() const { return root_.has_value(); }

  // Same worlds and root, relation replaced.
  KripkeFrame with_edges(const std::vector<Edge>& edges) const;
  KripkeFrame with_root(std::optional<World> root) const;

  // Image of a set under R.
  WorldSet image(const WorldSet& s) const;
  // R^k(w), with R^0(w) = {w}.
  WorldSet power_image(World w, int k) const;
  WorldSet reachable(World w) const;

  friend bool operator==(const KripkeFrame& a, const KripkeFrame& b) {
    return a.names_ == b.names_ && a.succ_ == b.succ_ && a.root_ == b.root_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<WorldSet> succ_;
  std::optional<World> root_;
};

class KripkeModel {
 public:
  // Every valuation set must have frame.size() bits.
  KripkeModel(KripkeFrame frame, std::map<std::string, WorldSet> valuation);

  const KripkeFrame& frame() const { return frame_; }
  const std::map<std::string, WorldSet>& valuation() const { return valuation_; }
  // Throws InputError when the letter has no entry.
  const WorldSet& value(const std::string& letter) const;

 private:
  KripkeFrame frame_;
  std::map<std::string, WorldSet> valuation_;
};

// Truth set of a propositional formula. Throws InputError on a predicate
// formula, a missing valuation entry, or a modality other than 1.
WorldSet extension(const KripkeModel& m, const Formula& a);
bool eval_kripke(const KripkeModel& m, World w, const Formula& a);
bool eval_kripke(const KripkeModel& m, std::string_view world, const Formula& a);

namespace detail {

// Shared recursion for evaluators that differ only in the box clause.
template <typename Letter, typename Box>
WorldSet extension_with(std::size_t n, const Formula& a, const Letter& letter, const Box& box) {
  switch (a.kind()) {
    case Formula::Kind::Falsum:
      return WorldSet(n);
    case Formula::Kind::Atom:
      if (!a.args().empty()) throw InputError("predicate atom in a propositional evaluation");
      return letter(a.name());
    case Formula::Kind::Implies: {
      WorldSet out = ~extension_with(n, a.lhs(), letter, box);
      out |= extension_with(n, a.rhs(), letter, box);
      return out;
    }
    case Formula::Kind::Box:
      if (a.modality() != 1) throw InputError("frame has a single relation; modality index must be 1");
      return box(extension_with(n, a.body(), letter, box));
    case Formula::Kind::Forall:
      throw InputError("quantifier in a propositional evaluation");
  }
  return WorldSet(n);
}

}  // namespace detail

// Frame generated by w: worlds R*-reachable from w, rooted at w.
KripkeFrame generated_subframe(const KripkeFrame& f, World w);

struct MorphismVerdict {
  bool verified = true;
  // Empty when verified; otherwise "totality", "surjectivity", "monotonicity",
  // "lifting", "zig", "zag", "domain" or "locality".
  std::string condition;
  std::string witness;

  explicit operator bool() const { return verified; }
  static MorphismVerdict ok() { return {}; }
  static MorphismVerdict fail(std::string condition, std::string witness) {
    return {false, std::move(condition), std::move(witness)};
  }
};

// Checks that `map` is a p-morphism F -> G. With `lifting_domain` set, the
// lifting condition is only required at the marked worlds of F.
MorphismVerdict check_pmorphism(const std::vector<World>& map, const KripkeFrame& f,
                                const KripkeFrame& g, const WorldSet* lifting_domain = nullptr);

struct KripkeMorphism {
  KripkeFrame source;
  KripkeFrame target;
  std::vector<World> map;
  MorphismVerdict verdict;

  static KripkeMorphism make(KripkeFrame source, KripkeFrame target, std::vector<World> map);
  bool verified() const { return verdict.verified; }
};

inline constexpr std::uint64_t kDefaultBruteCap = std::uint64_t{1} << 20;

// A falsifying valuation and world, if any. Throws CapExceeded when the
// number of valuations 2^(|W| * |letters|) exceeds `cap`.
struct Countermodel {
  std::map<std::string, WorldSet> valuation;
  World world = 0;
};
std::optional<Countermodel> brute_countermodel(const KripkeFrame& f, const Formula& a,
                                               std::uint64_t cap = kDefaultBruteCap);
bool brute_validity(const KripkeFrame& f, const Formula& a,
                    std::uint64_t cap = kDefaultBruteCap);

struct InclusionVerdict {
  bool holds = true;
  // (w, v) with v reached by the longer power but not the shorter ones.
  std::optional<Edge> witness;
  explicit operator bool() const { return holds; }
};

// R^k(w) ⊆ R(w) for every w.
InclusionVerdict check_axiom_inclusion(const KripkeFrame& f, int k);
// R^{k+1}(w) ⊆ R^0(w) ∪ ... ∪ R^k(w) for every w.
InclusionVerdict check_pretransitive(const KripkeFrame& f, int k);

// □p → □^k p
Formula ptc_axiom(int k);
// p ∧ □p ∧ ... ∧ □^k p → □^{k+1} p
Formula pretransitivity_axiom(int k);

struct Unravelling {
  KripkeFrame frame;
  std::vector<std::vector<World>> paths;
  std::vector<World> projection;
  // Paths shorter than the depth bound; lifting holds for π exactly here.
  WorldSet interior;
};

inline constexpr std::size_t kDefaultPathCap = std::size_t{1} << 20;

// Rooted paths with at most `depth` worlds. Path names join world names with '.'.
Unravelling unravel(const KripkeFrame& f, int depth, std::size_t cap = kDefaultPathCap);

struct PreservationReport {
  int samples = 0;
  int passed = 0;
  std::optional<std::string> first_failure;
  bool all_passed() const { return samples == passed; }
};

// Random valuations on the target over {p, q}, random formulas of modal depth
// at most 3, random points; compares truth at x and at f(x).
PreservationReport truth_preservation_test(const KripkeMorphism& f, int samples,
                                           std::uint64_t seed = 1);

std::string describe(const KripkeFrame& f);

}  // namespace mlwb
