#include <catch_amalgamated.hpp>

#include "hoa/automaton.hpp"
#include "hoa/generators.hpp"
#include "support/oracles.hpp"

using namespace hoa;

TEST_CASE("validation rejects malformed automata") {
  Hoa a;
  a.num_states = 1;
  a.initial = {0};
  a.aps = {"p"};
  a.add_transition(0, Formula::atom(0), 0, 1);
  CHECK_NOTHROW(a.validate());
  a.transitions[0].dst = 3;
  CHECK_THROWS_AS(a.validate(), MalformedAutomaton);
  a.transitions[0].dst = 0;
  a.transitions[0].guard = Formula::atom(2);
  CHECK_THROWS_AS(a.validate(), MalformedAutomaton);
}

TEST_CASE("completeness and determinism") {
  Hoa a;
  a.num_states = 1;
  a.initial = {0};
  a.aps = {"p"};
  a.add_transition(0, Formula::atom(0), 0, 1);
  CHECK_FALSE(is_complete(a));
  CHECK(is_deterministic(a));
  a.add_transition(0, Formula::neg(Formula::atom(0)), 0, 1);
  CHECK(is_complete(a));
  a.add_transition(0, Formula::top(), 0, 1);
  CHECK_FALSE(is_deterministic(a));
}

TEST_CASE("graph lasso search agrees with the color-set oracle") {
  gen::Rng rng(17);
  int nonempty = 0, total = 0;
  for (int i = 0; i < 150; ++i) {
    gen::AutomatonParams p{1 + gen::uniform(rng, 5), 0, 1 + gen::uniform(rng, 4), 2};
    Hoa a = gen::random_automaton(rng, p);
    auto g = color_graph(a);
    for (auto fam : kAllFamilies) {
      auto acc = gen::random_acceptance(rng, fam, a.d);
      auto l = graph_lasso(g, {0}, acc);
      const bool expect = oracle::graph_nonempty(g, {0}, acc);
      INFO("family " << family_name(fam));
      REQUIRE(l.has_value() == expect);
      ++total;
      if (!l) continue;
      ++nonempty;
      // Structural check of the witness.
      unsigned cur = 0;
      for (std::size_t e : l->prefix) {
        REQUIRE(g.edges[e].src == cur);
        cur = g.edges[e].dst;
      }
      const unsigned anchor = cur;
      REQUIRE_FALSE(l->cycle.empty());
      for (std::size_t e : l->cycle) {
        REQUIRE(g.edges[e].src == cur);
        cur = g.edges[e].dst;
      }
      REQUIRE(cur == anchor);
      CHECK(eval_acceptance(acc, lasso_trace(g, *l)));
    }
  }
  CHECK(nonempty > total / 5);
  CHECK(nonempty < total);
}
