#include "doctest.h"

#include "mlwb/error.hpp"
#include "mlwb/generate.hpp"
#include "mlwb/neighbourhood.hpp"

using namespace mlwb;

namespace {
PointSet pts(int n, std::initializer_list<int> xs) {
  PointSet s(static_cast<std::size_t>(n));
  for (int x : xs) s.set(static_cast<std::size_t>(x));
  return s;
}
}  // namespace

TEST_CASE("filter bases") {
  const NFrame one({"x"}, {{pts(1, {0})}});
  CHECK(eval_nbhd(NModel(one, {{"p", pts(1, {0})}}), 0, parse_prop("box p")));
  CHECK(one.in_filter(0, pts(1, {0})));
  CHECK_FALSE(one.in_filter(0, pts(1, {})));
  CHECK_THROWS_AS(NFrame({"x"}, {{}}), InputError);
  // {x} and {y} have no base member below their intersection
  CHECK_THROWS_AS(NFrame({"x", "y"}, {{pts(2, {0}), pts(2, {1})}, {pts(2, {1})}}), InputError);
  const NFrame improper({"x"}, {{pts(1, {})}});
  CHECK(eval_nbhd(NModel(improper, {}), 0, parse_prop("box false")));
}

TEST_CASE("neighbourhood frame of a Kripke frame") {
  const auto f = KripkeFrame::from_names({"a", "b"}, {{"a", "a"}, {"a", "b"}});
  const auto n = nf_from_kripke(f);
  REQUIRE(n.base(0).size() == 1);
  CHECK(n.base(0)[0] == pts(2, {0, 1}));
  CHECK(n.base(1)[0] == pts(2, {}));
  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    const Formula a = random_prop(rng);
    const std::map<std::string, WorldSet> v{{"p", pts(2, {static_cast<int>(i % 2)})}, {"q", pts(2, {0, 1})}};
    CHECK(extension(KripkeModel(f, v), a) == extension_nbhd(NModel(n, v), a));
  }
}

TEST_CASE("neighbourhood p-morphisms") {
  const auto f = KripkeFrame::from_names({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  const auto loop = KripkeFrame::from_names({"r"}, {{"r", "r"}});
  const auto nf = nf_from_kripke(f);
  CHECK(check_n_pmorphism({0, 1}, nf, nf).verified);
  REQUIRE(check_pmorphism({0, 0}, f, loop).verified);
  CHECK(check_n_pmorphism({0, 0}, nf, nf_from_kripke(loop)).verified);

  const NFrame split({"x", "y"}, {{pts(2, {0})}, {pts(2, {1})}});
  const NFrame star({"s"}, {{pts(1, {0})}});
  const auto v = check_n_pmorphism({0, 0}, split, star);
  // both preimages are base members here, so the constant map is fine
  CHECK(v.verified);
  const NFrame empty_star({"s"}, {{pts(1, {})}});
  const auto w = check_n_pmorphism({0, 0}, split, empty_star);
  CHECK_FALSE(w.verified);
  CHECK_FALSE(w.witness.empty());
}

TEST_CASE("neighbourhood truth preservation") {
  const auto f = KripkeFrame::from_names({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  const auto loop = KripkeFrame::from_names({"r"}, {{"r", "r"}});
  const auto id = NMorphism::make(nf_from_kripke(f), nf_from_kripke(f), {0, 1});
  CHECK(n_truth_preservation_test(id, 200).all_passed());
  const auto m = NMorphism::make(nf_from_kripke(f), nf_from_kripke(loop), {0, 0});
  REQUIRE(m.verified());
  const auto r = n_truth_preservation_test(m, 1000, 4);
  CHECK(r.samples == 1000);
  CHECK(r.all_passed());
}
