#include "doctest.h"

#include "mlwb/constant_domain.hpp"
#include "mlwb/entangle.hpp"
#include "mlwb/error.hpp"

using namespace mlwb;

namespace {
KripkeFrame worked() {
  return KripkeFrame::from_names({"x0", "a", "b", "c"}, {{"x0", "a"}, {"a", "b"}, {"b", "c"}}, "x0");
}
KripkeFrame chain2() { return KripkeFrame::from_names({"u", "v"}, {{"u", "v"}}, "u"); }
const DomainAlphabet s8 = DomainAlphabet::standard(8);
const DomainAlphabet s2 = DomainAlphabet::standard(2);
StopWord mixed(const char* text) { return parse_mixed_stopword(text, worked(), s8); }
EntangledWord ent(const char* text) { return parse_entangled(text, worked(), s8); }
}  // namespace

TEST_CASE("projections") {
  const auto f = worked();
  CHECK(p1({}, f) == std::vector<World>{0});
  const auto x = ent("a.1.b");
  CHECK(p1(x, f) == std::vector<World>{0, 1, 2});
  CHECK(p2(x) == std::vector<Letter>{s8.letter(0)});
  CHECK(pi(x) == world_letter(2));
  CHECK_THROWS_AS(pi({}), InputError);
}

TEST_CASE("entangled words") {
  const auto f = chain2();
  CHECK(is_entangled(f, {}));
  CHECK_FALSE(is_entangled(f, {world_letter(0)}));
  // brute-force filter over all words of length <= 3
  std::vector<Letter> alphabet{world_letter(0), world_letter(1), s2.letter(0), s2.letter(1)};
  std::size_t brute = 0;
  std::vector<EntangledWord> words{{}};
  for (int len = 0; len <= 3; ++len) {
    std::vector<EntangledWord> next;
    for (const auto& w : words) {
      if (is_entangled(f, w)) ++brute;
      for (Letter l : alphabet) {
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    }
    words = next;
  }
  CHECK(entangle_enumerate(f, s2, 3).size() == brute);
  const auto fib = fiber({0}, s2, 3);
  CHECK(fib.size() == 1 + 2 + 4 + 8);
  for (const auto& w : fib) CHECK(p2(w).size() == w.size());
}

TEST_CASE("equivalence") {
  const auto f = chain2();
  const auto t = parse_entangled("1.v.2", f, s2);
  auto x = t, y = t;
  x.push_back(world_letter(1));
  CHECK(equiv(x, y));
  CHECK(equiv_oracle(f, x, y));
  CHECK(canonicalize(x) == t);
  const auto z = parse_entangled("1.v.1", f, s2);
  CHECK_FALSE(equiv(t, z));
  CHECK_FALSE(equiv_oracle(f, t, z));
}

TEST_CASE("domains D#") {
  const auto f = chain2();
  const auto root = dsharp({0}, s2, 2);
  for (const auto& c : root) CHECK(p2(c).size() == c.size());
  CHECK(root.size() == 1 + 2 + 4);
  const auto r = domain_monotonicity_check({0}, {0, 1}, s2, 2);
  CHECK(r.included);
  CHECK(r.strict_witness.has_value());
  CHECK(in_dsharp(parse_entangled("v.1", f, s2), {0, 1}));
  CHECK_FALSE(in_dsharp(parse_entangled("v.1", f, s2), {0}));
}

TEST_CASE("h and t") {
  const auto f = worked();
  CHECK(word_text(h(mixed("a.0.b.0.0.c"), mixed("1.0.3.4")), f, s8, "") == "1a34bc");
  CHECK(word_text(h(StopWord(), mixed("1.0.3.4")), f, s8, "") == "134");
  CHECK(word_text(h(mixed("a.0.b.0.0.c"), StopWord()), f, s8, "") == "abc");
  CHECK(mixed_text(t(mixed("a.b.0.0.c"), ent("a.1.2.b.c.3")), f, s8, "") == "a12b00c3");
  CHECK(mixed_text(t(StopWord(), ent("1.2")), f, s8, "") == "12");
  CHECK_THROWS_AS(t(mixed("a.b"), ent("a.1.c")), InputError);
}

TEST_CASE("h inverts t on random pairs") {
  const auto f = worked();
  Rng rng(17);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < 200; ++i) {
    std::vector<Letter> alpha, y;
    for (World w = 1; w <= 3; ++w) {
      for (int z = coin(rng); z > 0; --z) alpha.push_back(kStop);
      alpha.push_back(world_letter(w));
      for (int z = coin(rng); z > 0; --z) y.push_back(s8.letter(coin(rng)));
      y.push_back(world_letter(w));
    }
    y.push_back(s8.letter(coin(rng)));
    const StopWord a(alpha);
    const auto g = zero_pattern(t(a, y));
    CHECK(canonicalize(h(a, g)) == canonicalize(y));
  }
}

TEST_CASE("xi") {
  const auto f = worked();
  const auto gamma = zero_pattern(t(mixed("a.b.0.0.c"), ent("a.1.2.b.c.3")));
  CHECK(mixed_text(gamma, f, s8, "") == "01200003");
  CHECK(class_text(xi(mixed("a.b.0.0.c"), gamma), f, s8, "") == "[a12bc3]");
  // the gamma 01200030 puts the 3 ahead of c
  CHECK(class_text(xi(mixed("a.b.0.0.c"), mixed("0.1.2.0.0.0.3")), f, s8, "") == "[a12b3]");
  CHECK(xi(mixed("a.0.b"), StopWord()).empty());
  CHECK(xi_surjectivity_check(mixed("a.0.b"), f, s2, 2).ok());
  DenseBounds b;
  b.depth = 4;
  const DenseFrame d(f, b);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto alpha = random_stopword(d, rng, 2);
    const auto g = random_individual(s2, rng, 2, 2);
    CHECK(xi_locality_check(alpha, g, d, 2).ok());
  }
}

TEST_CASE("psi") {
  const PredKripkeFrame pf(chain2(), {{"d"}, {"d", "e"}});
  const PsiFamily psi(pf, s2);
  psi.check_capacity(1);
  CHECK(psi({0}, {}) == "d");
  CHECK(psi({0, 1}, parse_entangled("v.1", chain2(), s2)) == "e");
  CHECK(psi({0, 1}, parse_entangled("v.2", chain2(), s2)) == "d");
  const PsiFamily tiny(PredKripkeFrame(chain2(), {{"d"}, {"d", "e", "f", "g"}}), s2);
  CHECK_THROWS_AS(tiny.check_capacity(1), PreconditionError);
  DenseBounds b;
  b.depth = 3;
  const DenseFrame d(chain2(), b);
  const auto m = build_psi(pf, d, s2, 1);
  CHECK(check_kk_morphism(m.morphism, &m.lifting_domain).verified);
}

TEST_CASE("psi on random trees") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto kk = random_kk_instance(rng, 3, 3);
    const auto& pf = kk.target;
    DenseBounds b;
    b.depth = 3;
    const DenseFrame d(pf.frame(), b);
    const auto m = build_psi(pf, d, DomainAlphabet::standard(3), 1);
    CHECK(check_kk_morphism(m.morphism, &m.lifting_domain).verified);
  }
}
