#pragma once

// Object language: propositional and predicate modal formulas, and universal
// strict Horn sentences over a single binary relation R.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlwb {

// Argument of a predicate atom. Constants name domain elements of a model;
// in text they carry a `$` prefix (`P($d, x)`).
struct Term {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;

  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  bool is_variable() const { return kind == Kind::Variable; }
  friend bool operator==(const Term&, const Term&) = default;
};

// Immutable formula tree with four primitive cases plus the quantifier.
// Propositional letters are 0-ary atoms, so one type serves both the
// propositional and the predicate language; `is_propositional` tells them
// apart. Derived connectives are constructed directly in primitive form.
class Formula {
 public:
  enum class Kind { Falsum, Atom, Implies, Box, Forall };

  static Formula falsum();
  static Formula atom(std::string letter, std::vector<Term> args = {});
  static Formula implies(Formula lhs, Formula rhs);
  static Formula box(Formula body, int modality = 1);
  static Formula forall(std::string variable, Formula body);

  static Formula verum();
  static Formula negation(Formula a);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula diamond(Formula a, int modality = 1);
  static Formula exists(std::string variable, Formula body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  // Atom letter, or the bound variable of a Forall.
  const std::string& name() const;
  std::span<const Term> args() const;
  Formula lhs() const;
  Formula rhs() const;
  // Operand of Box and Forall.
  Formula body() const;
  int modality() const;

  friend bool operator==(const Formula& a, const Formula& b);

  struct Node;  // opaque

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ParseOptions {
  int modalities = 1;
};

Formula parse_prop(std::string_view text, ParseOptions options = {});
Formula parse_pred(std::string_view text, ParseOptions options = {});

// Prints with derived connectives recovered, so the output is readable and
// re-parses to an equal tree.
std::string to_string(const Formula& f);

bool is_propositional(const Formula& f);
int modal_depth(const Formula& f);
// Largest modality index used (0 if none).
int max_modality(const Formula& f);
// Propositional letters (0-ary atoms).
std::set<std::string> letters(const Formula& f);
// Predicate letter -> arity for every atom; throws InputError on a clash.
std::map<std::string, int> signature(const Formula& f);
std::set<std::string> constants(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
// Free variables in order of first occurrence (left to right).
std::vector<std::string> free_vars_ordered(const Formula& f);
bool is_closed(const Formula& f);
// Binds free variables outermost-first in first-occurrence order.
Formula universal_closure(const Formula& f);

Formula box_power(const Formula& f, int k, int modality = 1);

// Replaces free occurrences of the mapped variables by constants. Throws
// PreconditionError when a mapped variable is bound anywhere in `f`.
Formula substitute_constants(const Formula& f,
                             const std::map<std::string, std::string>& assignment);

// ---------------------------------------------------------------------------
// Universal strict Horn sentences

struct HornAtom {
  int from = 0;  // variable indices into HornSentence::variables()
  int to = 0;
  friend bool operator==(const HornAtom&, const HornAtom&) = default;
};

// Positive body: true, a relation atom, or an and/or of sub-bodies.
struct HornBody {
  enum class Kind { True, Atom, And, Or };
  Kind kind = Kind::True;
  HornAtom atom;
  std::vector<HornBody> children;

  friend bool operator==(const HornBody&, const HornBody&) = default;
};

class HornSentence {
 public:
  // variables()[0] is x and variables()[1] is y; the rest are body-only.
  HornSentence(std::vector<std::string> variables, HornBody body, HornAtom head);

  std::span<const std::string> variables() const { return variables_; }
  const HornBody& body() const { return body_; }
  const HornAtom& head() const { return head_; }

  friend bool operator==(const HornSentence&, const HornSentence&) = default;

 private:
  std::vector<std::string> variables_;
  HornBody body_;
  HornAtom head_;
};

HornSentence parse_horn(std::string_view text);
std::string to_string(const HornSentence& s);

}  // namespace mlwb
