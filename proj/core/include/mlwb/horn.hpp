#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlwb/kripke.hpp"
#include "mlwb/syntax.hpp"

namespace mlwb {

struct HornTheory {
  std::vector<HornSentence> sentences;

  // One sentence per line; blank lines and `#` comments are skipped.
  static HornTheory parse(std::string_view text);
  bool empty() const { return sentences.empty(); }
};

// Assignment (indexed like s.variables()) that satisfies the body but not the
// head, if one exists.
std::optional<std::vector<World>> horn_violation(const KripkeFrame& f, const HornSentence& s);
bool eval_horn(const KripkeFrame& f, const HornSentence& s);
bool eval_horn(const KripkeFrame& f, const HornTheory& g);

// Least Γ-satisfying relation containing R. `rounds`, if given, receives the
// number of passes that added at least one pair.
KripkeFrame gamma_close(const KripkeFrame& f, const HornTheory& g, int* rounds = nullptr);

struct MinimalityReport {
  int added = 0;
  int supersets_tried = 0;
  int supersets_satisfying = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// For each added pair e, R^Γ \ {e} must violate Γ. Also samples random
// supersets of R: every Γ-satisfying one must contain R^Γ.
MinimalityReport closure_minimality_check(const KripkeFrame& f, const HornTheory& g,
                                          int trials = 100, std::uint64_t seed = 1);

struct LiftVerdict {
  enum class Outcome { Verified, Violated, PreconditionFailed };
  Outcome outcome = Outcome::Verified;
  MorphismVerdict detail;
  std::string message;
};

// With f : F -> G a p-morphism and G ⊨ Γ, checks f : F^Γ -> G.
LiftVerdict closure_pmorphism_lift_check(const KripkeMorphism& f, const HornTheory& g);

// Horn sentence for □p → □^k p; nullopt for the trivial k = 1.
std::optional<HornSentence> axiom_to_horn(int k);
HornTheory axioms_to_theory(const std::vector<int>& ks);

// Recognizes the sentences produced by axiom_to_horn (up to variable names)
// and returns their k.
std::optional<int> chain_sentence_k(const HornSentence& s);

}  // namespace mlwb
