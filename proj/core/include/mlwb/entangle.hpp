#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlwb/dense.hpp"
#include "mlwb/predicate.hpp"

namespace mlwb {

// Finite S5 element alphabet Σ₂. Label i is the letter -(i + 1); the S5 root
// y0 is implicit.
class DomainAlphabet {
 public:
  explicit DomainAlphabet(std::vector<std::string> labels);
  // Labels "1".."n".
  static DomainAlphabet standard(int n = 8);

  int size() const { return static_cast<int>(labels_.size()); }
  Letter letter(int i) const { return -(i + 1); }
  int index(Letter l) const { return -l - 1; }
  const std::string& label(Letter l) const;
  std::optional<Letter> find(std::string_view label) const;
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

inline bool is_domain_letter(Letter l) { return l < 0; }

// Word over W ⊎ Σ₂: positive letters are worlds (w + 1), negative ones Σ₂.
using EntangledWord = std::vector<Letter>;

// Rooted path of F: root followed by the W letters.
std::vector<World> p1(const EntangledWord& x, const KripkeFrame& f);
// Σ₂ letters in order; y0 is implicit.
std::vector<Letter> p2(const EntangledWord& x);
// Last letter; throws InputError on ε.
Letter pi(const EntangledWord& x);

bool is_entangled(const KripkeFrame& f, const EntangledWord& x);
std::vector<EntangledWord> entangle_enumerate(const KripkeFrame& f, const DomainAlphabet& s, int max_len);
// Entangled words of length <= max_len whose p1 is the given rooted path.
std::vector<EntangledWord> fiber(const std::vector<World>& path, const DomainAlphabet& s, int max_len);

// Strips trailing W letters.
EntangledWord canonicalize(const EntangledWord& x);
bool equiv(const EntangledWord& x, const EntangledWord& y);
// Direct search for t entangled and c, d ∈ W* with x = t·c, y = t·d.
bool equiv_oracle(const KripkeFrame& f, const EntangledWord& x, const EntangledWord& y);

// D♯ of a rooted path, truncated to representatives with at most sigma_max Σ₂
// letters.
std::set<EntangledWord> dsharp(const std::vector<World>& path, const DomainAlphabet& s, int sigma_max);
// [c] ∈ D♯_path for a canonical c.
bool in_dsharp(const EntangledWord& c, const std::vector<World>& path);

struct MonotonicityReport {
  bool included = true;
  std::optional<EntangledWord> missing;
  std::optional<EntangledWord> strict_witness;
};

// Requires `to` to extend `from`.
MonotonicityReport domain_monotonicity_check(const std::vector<World>& from, const std::vector<World>& to,
                                             const DomainAlphabet& s, int sigma_max);

std::string word_text(const EntangledWord& x, const KripkeFrame& f, const DomainAlphabet& s,
                      std::string_view sep = ".");
std::string class_text(const EntangledWord& c, const KripkeFrame& f, const DomainAlphabet& s,
                       std::string_view sep = ".");
// `a.1.b`; world names win over Σ₂ labels; `eps` or "" is ε.
EntangledWord parse_entangled(std::string_view text, const KripkeFrame& f, const DomainAlphabet& s);

// Stop-words mixing W and Σ₂ letters, `a.0.1`.
StopWord parse_mixed_stopword(std::string_view text, const KripkeFrame& f, const DomainAlphabet& s);
std::string mixed_text(const StopWord& w, const KripkeFrame& f, const DomainAlphabet& s,
                       std::string_view sep = ".");

// Replaces the zeros of α by the Σ₂ letters of γ.
EntangledWord h(const StopWord& alpha, const StopWord& gamma);
// α′ with zero-dropped α′ = y; throws InputError unless the W letters of y are
// the nonzero letters of α.
StopWord t(const StopWord& alpha, const EntangledWord& y);
// W letters become stops.
StopWord zero_pattern(const StopWord& mixed);

EntangledWord xi(const StopWord& alpha, const StopWord& gamma);

// Every truncated class of D♯_{f0(α)} is hit through a γ built by t.
CheckReport xi_surjectivity_check(const StopWord& alpha, const KripkeFrame& f, const DomainAlphabet& s,
                                  int sigma_max);
// ξ_β(γ) = ξ_α(γ) for enumerated β ∈ U_m(α), m = st γ + st α.
CheckReport xi_locality_check(const StopWord& alpha, const StopWord& gamma, const DenseFrame& d, int j_max);

// ψ on classes. A class first appears at the path root·(its W letters); there
// fresh classes a⃗·σ_i take the i-th new element and all others the
// designated (least) element of the parent's domain.
class PsiFamily {
 public:
  PsiFamily(PredKripkeFrame target, DomainAlphabet alphabet);
  // Throws PreconditionError when Σ₂ cannot cover some domain growth.
  void check_capacity(int sigma_max) const;
  Element operator()(const std::vector<World>& path, const EntangledWord& c) const;
  const PredKripkeFrame& target() const { return target_; }
  const DomainAlphabet& alphabet() const { return alphabet_; }

 private:
  PredKripkeFrame target_;
  DomainAlphabet alphabet_;
};

struct PsiMorphism {
  PredKKMorphism morphism;
  // Interior paths of the truncation; lifting is only required there.
  WorldSet lifting_domain;
};

// (π, ψ) from the truncated (F♯ or F♯Γ, D♯) onto the predicate frame over d's
// base. Domain elements are class texts.
PsiMorphism build_psi(const PredKripkeFrame& pf, const DenseFrame& d, const DomainAlphabet& s, int sigma_max);

}  // namespace mlwb
