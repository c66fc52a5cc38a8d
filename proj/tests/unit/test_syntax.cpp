#include "doctest.h"

#include "mlwb/error.hpp"
#include "mlwb/generate.hpp"
#include "mlwb/horn.hpp"
#include "mlwb/predicate.hpp"
#include "mlwb/syntax.hpp"

using namespace mlwb;

namespace {
const Formula p = Formula::atom("p");
Formula pred(const char* letter, std::initializer_list<const char*> vars) {
  std::vector<Term> args;
  for (const char* v : vars) args.push_back(Term::variable(v));
  return Formula::atom(letter, args);
}
}  // namespace

TEST_CASE("propositional parsing") {
  CHECK(parse_prop("box p -> box box p") == Formula::implies(Formula::box(p), Formula::box(Formula::box(p))));
  CHECK(parse_prop("false") == Formula::falsum());
  CHECK(parse_prop("~p") == Formula::implies(p, Formula::falsum()));
  CHECK(parse_prop("dia p") == Formula::negation(Formula::box(Formula::negation(p))));
  CHECK(parse_prop("box[2] p", {2}) == Formula::box(p, 2));
  // -> is right associative, & binds tighter than | and ->
  const Formula q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(parse_prop("p -> q -> r") == Formula::implies(p, Formula::implies(q, r)));
  CHECK(parse_prop("p & q | r") == Formula::disjunction(Formula::conjunction(p, q), r));
  CHECK_THROWS_AS(parse_prop("p ->"), ParseError);
  CHECK_THROWS_AS(parse_prop("box[2] p"), ParseError);
  CHECK_THROWS_AS(parse_prop("P(x)"), ParseError);
}

TEST_CASE("printing re-parses to the same tree") {
  Rng rng(3);
  PropGenOptions o;
  o.modalities = 2;
  for (int i = 0; i < 1000; ++i) {
    const Formula a = random_prop(rng, o);
    CHECK(parse_prop(to_string(a), {2}) == a);
  }
  PredGenOptions po;
  po.constants = {"d"};
  for (int i = 0; i < 300; ++i) {
    const Formula a = random_pred(rng, po);
    CHECK(parse_pred(to_string(a)) == a);
  }
}

TEST_CASE("predicate parsing") {
  const Formula px = pred("P", {"x"}), py = pred("P", {"y"});
  // quantifiers bind tighter than ->
  CHECK(parse_pred("forall x. P(x) -> P(y)") == Formula::implies(Formula::forall("x", px), py));
  CHECK(parse_pred("forall x. (P(x) -> P(y))") == Formula::forall("x", Formula::implies(px, py)));
  const Formula barcan = Formula::implies(Formula::forall("x", Formula::box(px)), Formula::box(Formula::forall("x", px)));
  CHECK(parse_pred("forall x. (box P(x)) -> box forall x. P(x)") == barcan);
  CHECK(barcan == barcan_formula());
  CHECK(parse_pred("box forall x. P(x) -> forall x. box P(x)") == converse_barcan_formula());
  CHECK(parse_pred("exists x. P(x)") == Formula::exists("x", px));
  CHECK(parse_pred("P($d)") == Formula::atom("P", {Term::constant("d")}));
  CHECK_THROWS_AS(parse_pred("forall . P(x)"), ParseError);
}

TEST_CASE("box powers and depth") {
  CHECK(box_power(p, 0) == p);
  CHECK(box_power(p, 2) == Formula::box(Formula::box(p)));
  for (int k = 0; k <= 10; ++k) CHECK(modal_depth(box_power(p, k)) == k);
  CHECK(modal_depth(parse_prop("p -> q")) == 0);
  CHECK(modal_depth(parse_prop("box (p -> dia box q)")) == 3);
  CHECK(max_modality(parse_prop("box[3] p & box p", {3})) == 3);
}

TEST_CASE("free variables and closure") {
  const Formula a = parse_pred("forall x. Q(x, y)");
  CHECK(free_vars(a) == std::set<std::string>{"y"});
  const Formula closed = parse_pred("forall x. P(x)");
  CHECK(universal_closure(closed) == closed);
  CHECK(universal_closure(parse_pred("P(x)")) == closed);
  CHECK(universal_closure(parse_pred("Q(x, y) -> P(y)")) == parse_pred("forall x. forall y. (Q(x, y) -> P(y))"));
  const Formula s = substitute_constants(parse_pred("P(x)"), {{"x", "d"}});
  CHECK(s == parse_pred("P($d)"));
  CHECK(is_closed(s));
  CHECK(constants(s) == std::set<std::string>{"d"});
  CHECK_THROWS_AS(substitute_constants(parse_pred("P(x) & forall x. P(x)"), {{"x", "d"}}), PreconditionError);
  CHECK_THROWS_AS(parse_pred("P(x) & P(x, y)"), ParseError);
  const Formula clash = Formula::conjunction(pred("P", {"x"}), pred("P", {"x", "y"}));
  CHECK_THROWS_AS(signature(clash), InputError);
}

TEST_CASE("horn sentences") {
  const HornSentence trans = parse_horn("x R z1 & z1 R y => x R y");
  CHECK(trans == *axiom_to_horn(2));
  CHECK(chain_sentence_k(trans) == 2);
  const HornSentence refl = parse_horn("true => x R x");
  CHECK(refl.body().kind == HornBody::Kind::True);
  CHECK(chain_sentence_k(refl) == 0);
  CHECK(parse_horn(to_string(trans)) == trans);
  CHECK_FALSE(axiom_to_horn(1).has_value());
  CHECK(parse_horn("x R y | y R x => y R x").body().kind == HornBody::Kind::Or);
  CHECK_THROWS_AS(parse_horn("x R y"), ParseError);
}
