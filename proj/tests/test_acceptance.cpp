#include <catch_amalgamated.hpp>

#include <random>

#include "hoa/acceptance.hpp"
#include "hoa/generators.hpp"

using namespace hoa;

namespace {
ColorSet cs(std::initializer_list<Color> l) {
  ColorSet s = 0;
  for (Color c : l) s |= color_bit(c);
  return s;
}
}  // namespace

TEST_CASE("normalization merges sibling primitives") {
  auto f = AccFormula::disj(AccFormula::inf(cs({1})), AccFormula::inf(cs({2})));
  CHECK(f == AccFormula::inf(cs({1, 2})));
  auto g = AccFormula::conj(AccFormula::fin(cs({1})), AccFormula::conj(AccFormula::fin(cs({3})), AccFormula::inf(cs({2}))));
  REQUIRE(g.kind() == AccFormula::Kind::And);
  CHECK(g.children().size() == 2);
  CHECK(AccFormula::conj({}).is_true());
  CHECK(AccFormula::disj({}).is_false());
}

TEST_CASE("families evaluate through their defining formulas") {
  CHECK(eval_acceptance(Acceptance::buchi(cs({2})), {cs({1, 2}), cs({2})}));
  CHECK_FALSE(eval_acceptance(Acceptance::buchi(cs({2})), {cs({1, 2}), cs({1})}));
  CHECK(eval_acceptance(Acceptance::co_buchi(cs({2})), {cs({1, 2}), cs({1})}));
  CHECK(eval_acceptance(Acceptance::reachability(cs({2})), {cs({1, 2}), cs({1})}));
  CHECK_FALSE(eval_acceptance(Acceptance::safety(cs({1})), {cs({1, 2}), cs({1})}));
  // Max-even parity.
  auto par = Acceptance::parity(4);
  CHECK(eval_acceptance(par, {cs({1, 2}), cs({1, 2})}));
  CHECK_FALSE(eval_acceptance(par, {cs({2, 3}), cs({2, 3})}));
  CHECK(eval_acceptance(par, {cs({4, 3}), cs({4, 3})}));
  // Muller sets are read as conjunctions of Inf atoms.
  auto mul = Acceptance::muller({cs({1, 2})});
  CHECK(eval_acceptance(mul, {cs({1, 2, 3}), cs({1, 2, 3})}));
  CHECK_FALSE(eval_acceptance(mul, {cs({1}), cs({1})}));
  auto rab = Acceptance::rabin({{cs({1}), cs({2})}});
  CHECK(eval_acceptance(rab, {cs({1, 2}), cs({1})}));
  CHECK_FALSE(eval_acceptance(rab, {cs({1, 2}), cs({1, 2})}));
  auto str = Acceptance::streett({{cs({1}), cs({2})}});
  CHECK(eval_acceptance(str, {cs({1, 2}), cs({1, 2})}));
  CHECK_FALSE(eval_acceptance(str, {cs({1, 2}), cs({1})}));
  CHECK_THROWS_AS(eval_acceptance(Acceptance::buchi(cs({1})), {cs({5}), cs({5})}, 3), ColorError);
}

TEST_CASE("DNF is equivalent to the formula") {
  gen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto f = gen::random_el(rng, 4, 3);
    if (rng() % 2) f = AccFormula::neg(f);
    auto terms = dnf(f);
    for (ColorSet k = 0; k < 32; k += 2) {
      bool via_dnf = false;
      for (const auto& t : terms) {
        bool ok = (k & t.fin) == 0;
        for (ColorSet s : t.infs) ok = ok && (k & s) != 0;
        via_dnf = via_dnf || ok;
      }
      CHECK(via_dnf == f.eval(k));
    }
  }
}

TEST_CASE("negation complements every family") {
  gen::Rng rng(5);
  for (auto fam : kAllFamilies) {
    if (fam == Acceptance::Family::Reachability || fam == Acceptance::Family::Safety) continue;
    auto acc = gen::random_acceptance(rng, fam, 4);
    auto neg = negate(acc);
    for (ColorSet k = 0; k < 32; k += 2) CHECK(eval_acceptance(acc, {k, k}) != eval_acceptance(neg, {k, k}));
  }
}
