#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlwb/generate.hpp"
#include "mlwb/horn.hpp"
#include "mlwb/kripke.hpp"

namespace mlwb {

// Letters of pseudo-infinite words: 0 is a stop, w + 1 names world w.
// Negative letters are reserved for the element alphabet of `entangle`.
using Letter = int;
inline constexpr Letter kStop = 0;
inline Letter world_letter(World w) { return w + 1; }
inline World letter_world(Letter l) { return l - 1; }
inline bool is_world_letter(Letter l) { return l > 0; }

// Canonical finite word; the 0^ω tail is implicit.
class StopWord {
 public:
  StopWord() = default;
  // Drops trailing stops.
  explicit StopWord(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  int st() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  // 0-based; positions at or beyond st() are stops.
  Letter at(int i) const { return i < st() ? letters_[static_cast<std::size_t>(i)] : kStop; }
  // Raw α|_k, zero-padded when k > st().
  std::vector<Letter> restrict(int k) const;
  // Nonzero letters in order.
  std::vector<Letter> nonzero() const;

  StopWord then(int zeros, const std::vector<Letter>& tail) const;

  friend auto operator<=>(const StopWord&, const StopWord&) = default;
  friend bool operator==(const StopWord&, const StopWord&) = default;

 private:
  std::vector<Letter> letters_;
};

// `a.0.b` with `0` for stops; `eps` or the empty string for ε.
StopWord parse_stopword(std::string_view text, const KripkeFrame& f);
std::string to_string(const StopWord& w, const KripkeFrame& f);

struct WordCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};
WordCheck validate_stopword(const StopWord& w, const KripkeFrame& f);

// Rooted path: root followed by the stop-free letters. Throws InputError for
// an invalid word.
std::vector<World> f0(const StopWord& w, const KripkeFrame& f);
std::string path_text(const std::vector<World>& path, const KripkeFrame& f);

struct DenseBounds {
  int k_max = 12;
  int j_max = 8;
  int depth = 6;
};

// N_ω(F), or N_ω^Γ(F) when a chain-class theory is given. Γ-closure of the
// unravelling is taken on its depth-bounded truncation.
class DenseFrame {
 public:
  DenseFrame(KripkeFrame base, DenseBounds bounds = {}, std::optional<HornTheory> gamma = std::nullopt);

  const KripkeFrame& base() const { return base_; }
  const DenseBounds& bounds() const { return bounds_; }
  bool has_gamma() const { return gamma_.has_value(); }
  const HornTheory* gamma() const { return gamma_ ? &*gamma_ : nullptr; }
  const Unravelling& unravelling() const { return unravel_; }
  // Truncated F♯, Γ-closed when Γ is present.
  const KripkeFrame& sharp() const { return sharp_; }
  std::optional<int> path_index(const std::vector<World>& path) const;

  // Extensions e with f0(α) R f0(α)·e in F♯ (or (R♯)^Γ). The empty extension
  // stands for a reflexive closure edge. `complete` is false when the
  // truncation may hide further extensions.
  std::vector<std::vector<World>> steps(const std::vector<World>& path, bool* complete = nullptr) const;
  bool related(const std::vector<World>& from, const std::vector<World>& to) const;

 private:
  KripkeFrame base_;
  DenseBounds bounds_;
  std::optional<HornTheory> gamma_;
  Unravelling unravel_;
  KripkeFrame sharp_;
  std::map<std::vector<World>, int> index_;
};

// β ∈ U_k(α) (or U^Γ_k(α)).
bool is_member_uk(const StopWord& beta, const StopWord& alpha, int k, const DenseFrame& d);

// Members of U_k(α) of the form α|_m 0^{j1} e1 ... 0^{jr} er with
// j1 + ... + jr <= j_max, grouped by extension e.
struct TailFamily {
  std::vector<Letter> prefix;  // raw α|_m
  std::vector<World> extension;
  // β for the given gaps (one gap per extension letter).
  StopWord member(const std::vector<int>& gaps) const;
};

struct UkEnumeration {
  std::vector<StopWord> members;
  std::vector<TailFamily> families;
  bool complete = true;
};

UkEnumeration uk_members(const StopWord& alpha, int k, const DenseFrame& d, int j_max);

// k = st(β), verified by β ∉ U_{k+1}(α). Throws PreconditionError unless
// β ∈ U_n(α) and β ≠ α.
int density_witness(const StopWord& alpha, int n, const StopWord& beta, const DenseFrame& d);

// ---------------------------------------------------------------------------
// Valuations with decidable tails

struct FiniteSet {
  std::set<StopWord> words;
};
// Words whose canonical form is 0^i ℓ with i ≡ parity (mod 2).
struct ZeroParity {
  World letter = 0;
  int parity = 0;
};
// Words whose f0-image lies in the set.
struct PathFactored {
  std::set<std::vector<World>> paths;
};

using LetterPattern = std::variant<FiniteSet, ZeroParity, PathFactored>;
using PatternValuation = std::map<std::string, LetterPattern>;

bool pattern_member(const LetterPattern& p, const StopWord& w, const DenseFrame& d);

// Truth of a formula along one tail family as a function of the total gap i:
// for i >= threshold it depends only on the parity of i.
struct TailPattern {
  int threshold = 0;
  bool even = false;
  bool odd = false;
  bool eventually(bool v) const { return even == v && odd == v; }
};

struct DenseModel {
  DenseFrame frame;
  PatternValuation valuation;
};

bool eval_dense_atom(const DenseModel& m, const StopWord& w, const std::string& letter);

struct Verdict {
  bool value = false;
  bool certified = false;
  std::string witness;
};

// Three-valued evaluation at α. □ with a modal-free body is decided exactly by
// the tail patterns; nested boxes fall back to the bounds and are uncertified.
Verdict bounded_eval(const DenseModel& m, const StopWord& alpha, const Formula& a);

// "next" frame on e, 1, 11, ... with `worlds` points.
KripkeFrame next_frame(int worlds);

struct CounterexampleReport {
  Verdict dia_p_and_dia_not_p;
  Verdict dia_p_implies_box_p;
  Verdict box_p;
  // Per k <= k_max: (member of U_k(ε) satisfying p, member refuting p).
  std::vector<std::pair<StopWord, StopWord>> witnesses;
  bool kripke_valid = false;
  bool ok = false;
  KripkeFrame frame;
};

CounterexampleReport counterexample_g(int k_max);

struct CheckReport {
  int checked = 0;
  int passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && checked == passed; }
};

// f0(U_k(α)) = R♯(f0(α)).
CheckReport f0_image_check(const StopWord& alpha, int k, const DenseFrame& d);

// Surjectivity onto the truncated unravelling, plus the image equality at
// sampled interior α with random k.
CheckReport f0_pmorphism_check(const DenseFrame& d, int samples, std::uint64_t seed = 1);

// Sampled chains α_1 ∈ U^Γ_m(α), ..., α_n ∈ U^Γ_m(α_{n-1}) must satisfy
// α_n ∈ U^Γ_m(α). Throws PreconditionError when the truncated closed
// unravelling fails R^n ⊆ R.
CheckReport chain_collapse_check(const StopWord& alpha, int m, int n, const DenseFrame& d,
                                 int samples, std::uint64_t seed = 1);

// Random valid word whose path stays inside the truncation interior.
StopWord random_stopword(const DenseFrame& d, Rng& rng, int max_zeros = 3);

}  // namespace mlwb
