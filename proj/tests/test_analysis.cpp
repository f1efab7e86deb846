#include <catch_amalgamated.hpp>

#include "hoa/analysis.hpp"
#include "hoa/generators.hpp"
#include "hoa/hoa_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hoa;
using fixture::request_grant;

namespace {

bool word_accepted(const Hoa& a, const Acceptance& acc, const WordLasso& w) {
  return oracle::accepts(oracle::prefix_profile(a, acc, w.prefix), oracle::period_profile(a, acc, w.cycle));
}

WordLasso word_of(const Lasso& l) {
  WordLasso w;
  for (const auto& s : l.prefix) w.prefix.push_back(s.val.bits);
  for (const auto& s : l.cycle) w.cycle.push_back(s.val.bits);
  return w;
}

Hoa random_small(gen::Rng& rng, unsigned max_states, unsigned aps, unsigned max_colors) {
  gen::AutomatonParams p{1 + gen::uniform(rng, max_states), aps, 1 + gen::uniform(rng, max_colors), 3};
  return gen::random_automaton(rng, p);
}

}  // namespace

TEST_CASE("emptiness agrees with the explicit oracle and witnesses are accepted") {
  gen::Rng rng(11);
  for (auto family : kAllFamilies)
    for (int i = 0; i < 120; ++i) {
      auto a = random_small(rng, 5, 2, 3);
      auto acc = gen::random_acceptance(rng, family, a.d);
      auto x = expand_explicit(a);
      const bool oracle_nonempty = oracle::graph_nonempty(x.graph(), x.initial, acc);
      auto e = is_empty(a, acc);
      INFO(family_name(family) << " #" << i << "\n" << print_hoa(a, acc));
      REQUIRE(e.empty == !oracle_nonempty);
      if (e.empty) continue;
      REQUIRE(e.witness);
      REQUIRE_NOTHROW(validate_lasso(a, *e.witness));
      if (family != Acceptance::Family::Reachability && family != Acceptance::Family::Safety)
        REQUIRE(eval_acceptance(acc, lasso_trace(a, *e.witness), a.d));
      REQUIRE(word_accepted(a, acc, word_of(*e.witness)));
      for (const auto& s : e.witness->cycle) REQUIRE(s.val.domain == a.ap_mask());
    }
}

TEST_CASE("emptiness ignores unsatisfiable guards") {
  Hoa a;
  a.num_states = 1;
  a.initial = {0};
  a.aps = {"p"};
  a.add_transition(0, Formula::conj(Formula::atom(0), Formula::neg(Formula::atom(0))), 0, 1);
  REQUIRE(is_empty(a, Acceptance::buchi(color_bit(1))).empty);
  REQUIRE(is_empty(a, Acceptance::safety(color_bit(1))).empty);
}

TEST_CASE("request-grant automaton witness") {
  auto a = request_grant();
  auto e = is_empty(a, Acceptance::buchi(color_bit(1)));
  REQUIRE_FALSE(e.empty);
  REQUIRE(e.witness->prefix.empty());
  REQUIRE(e.witness->cycle.size() == 1);
  REQUIRE(e.witness->cycle[0].transition == 0);
  REQUIRE(e.witness->cycle[0].val.domain == 0b11);
  REQUIRE(e.witness->cycle[0].val.bits == 0);
  REQUIRE(format_lasso(a, *e.witness) == "| (0,00,1)");
}

TEST_CASE("reachability witnesses through the sink continue inside the input") {
  // Complete automaton: the reach surgery uses a sink.
  Hoa a;
  a.num_states = 2;
  a.initial = {0};
  a.aps = {"p"};
  auto p = Formula::atom(0);
  a.add_transition(0, p, 1, 2);
  a.add_transition(0, Formula::neg(p), 0, 1);
  a.add_transition(1, Formula::top(), 1, 1);
  auto acc = Acceptance::reachability(color_bit(2));
  auto e = is_empty(a, acc);
  REQUIRE_FALSE(e.empty);
  REQUIRE_NOTHROW(validate_lasso(a, *e.witness));
  REQUIRE(lasso_trace(a, *e.witness).elem & color_bit(2));
}

TEST_CASE("lasso validation") {
  auto a = request_grant();
  Lasso bad;
  REQUIRE_THROWS_AS(validate_lasso(a, bad), InvalidLasso);
  bad.cycle = {{1, Valuation{0b11, 0b10}}};  // 0 -> 1 does not close
  REQUIRE_THROWS_AS(validate_lasso(a, bad), InvalidLasso);
  bad.cycle = {{0, Valuation{0b11, 0b01}}};  // r violates !r & !g
  REQUIRE_THROWS_AS(validate_lasso(a, bad), InvalidLasso);
  bad.cycle = {{6, Valuation{0b11, 0}}};  // does not start initially
  REQUIRE_THROWS_AS(validate_lasso(a, bad), InvalidLasso);
}

TEST_CASE("shrinking keeps color sets and meets the quadratic bound") {
  auto rg = request_grant();
  SECTION("non-state-based input is rejected") {
    Hoa a = rg;
    a.transitions[1].color = 2;
    Lasso l{{}, {{0, Valuation{0b11, 0}}}};
    REQUIRE_THROWS_AS(shrink_lasso(a, l), InvalidLasso);
  }
  SECTION("inflated lassos") {
    gen::Rng rng(5);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
      auto raw = random_small(rng, 4, 1, 3);
      auto a = to_state_based(raw).aut;
      auto acc = gen::random_acceptance(rng, Acceptance::Family::EmersonLei, a.d);
      auto e = is_empty(a, acc);
      if (e.empty) continue;
      // Inflate by repeating the cycle and unrolling it into the prefix.
      Lasso big = *e.witness;
      for (int k = 0; k < 3; ++k) big.prefix.insert(big.prefix.end(), e.witness->cycle.begin(), e.witness->cycle.end());
      for (int k = 0; k < 2; ++k) big.cycle.insert(big.cycle.end(), e.witness->cycle.begin(), e.witness->cycle.end());
      auto small = shrink_lasso(a, big);
      REQUIRE_NOTHROW(validate_lasso(a, small));
      auto t0 = lasso_trace(a, big), t1 = lasso_trace(a, small);
      REQUIRE(t0.elem == t1.elem);
      REQUIRE(t0.occ_inf == t1.occ_inf);
      const std::size_t bound = std::size_t{a.num_states} * a.num_states;
      REQUIRE(small.prefix.size() <= bound);
      REQUIRE(small.cycle.size() <= bound);
      REQUIRE(small.prefix.size() + small.cycle.size() <= big.prefix.size() + big.cycle.size());
      ++checked;
    }
    REQUIRE(checked > 50);
  }
}

TEST_CASE("lasso bound") {
  auto r = check_lasso_bound(request_grant(), Acceptance::buchi(color_bit(1)));
  REQUIRE(r.prefix_length == 0);
  REQUIRE(r.cycle_length == 1);
  REQUIRE(r.bound == 64);
  REQUIRE(r.holds);

  Hoa dead;
  dead.num_states = 1;
  dead.initial = {0};
  dead.add_transition(0, Formula::top(), 0, 1);
  REQUIRE_THROWS_AS(check_lasso_bound(dead, Acceptance::buchi(color_bit(2))), EmptyLanguage);

  gen::Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    auto a = random_small(rng, 4, 2, 3);
    auto acc = gen::random_acceptance(rng, Acceptance::Family::EmersonLei, a.d);
    if (is_empty(a, acc).empty) continue;
    REQUIRE(check_lasso_bound(a, acc).holds);
  }
}

TEST_CASE("accepting runs on lasso words") {
  auto a = request_grant();
  auto acc = Acceptance::buchi(color_bit(2));
  REQUIRE(accepting_run(a, acc, WordLasso{{}, {0b01}}));   // r forever, never granted
  REQUIRE_FALSE(accepting_run(a, acc, WordLasso{{}, {0}}));  // idle forever
  auto run = accepting_run(a, acc, WordLasso{{0b01}, {0b00}});
  REQUIRE(run);
  REQUIRE_NOTHROW(validate_lasso(a, *run));
}

TEST_CASE("inclusion") {
  auto rg = request_grant();
  SECTION("request-grant automaton is in the universal Buchi language") {
    Hoa u;
    u.num_states = 1;
    u.initial = {0};
    u.aps = rg.aps;
    u.add_transition(0, Formula::top(), 0, 1);
    REQUIRE(included(rg, Acceptance::buchi(color_bit(1)), u, Acceptance::buchi(color_bit(1))).included);
    auto r = included(u, Acceptance::buchi(color_bit(1)), rg, Acceptance::buchi(color_bit(1)));
    REQUIRE_FALSE(r.included);
    REQUIRE(word_accepted(u, Acceptance::buchi(color_bit(1)), *r.word));
    REQUIRE_FALSE(word_accepted(rg, Acceptance::buchi(color_bit(1)), *r.word));
  }
  SECTION("bounds name the dimension") {
    Hoa wide;
    wide.num_states = 1;
    wide.initial = {0};
    for (int i = 0; i < 7; ++i) wide.aps.push_back("p" + std::to_string(i));
    wide.add_transition(0, Formula::top(), 0, 1);
    try {
      included(wide, Acceptance::buchi(color_bit(1)), wide, Acceptance::buchi(color_bit(1)));
      FAIL("expected a bound violation");
    } catch (const BoundExceeded& e) {
      REQUIRE(std::string(e.what()).find("atomic propositions") != std::string::npos);
    }
  }
  SECTION("reflexive on random Buchi automata") {
    gen::Rng rng(21);
    for (int i = 0; i < 50; ++i) {
      auto a = random_small(rng, 3, 2, 2);
      auto acc = Acceptance::buchi(gen::nonempty_colors(rng, a.d));
      REQUIRE(included(a, acc, a, acc).included);
    }
  }
  SECTION("verdicts agree with lasso words") {
    gen::Rng rng(33);
    int differ = 0, same = 0;
    for (int i = 0; i < 200; ++i) {
      auto a = random_small(rng, 3, 1, 2);
      auto b = random_small(rng, 3, 1, 2);
      auto acc_a = gen::random_acceptance(rng, i % 2 ? Acceptance::Family::Parity : Acceptance::Family::Buchi, a.d);
      auto acc_b = Acceptance::buchi(gen::nonempty_colors(rng, b.d));
      Inclusion r;
      try {
        r = included(a, acc_a, b, acc_b);
      } catch (const BoundExceeded&) {
        continue;
      }
      if (r.included) {
        ++same;
        // No short word separates them.
        auto words_u = oracle::all_words(1, 0, 3), words_v = oracle::all_words(1, 1, 3);
        for (const auto& u : words_u)
          for (const auto& v : words_v)
            if (word_accepted(a, acc_a, {u, v})) REQUIRE(word_accepted(b, acc_b, {u, v}));
      } else {
        ++differ;
        REQUIRE(word_accepted(a, acc_a, *r.word));
        REQUIRE_FALSE(word_accepted(b, acc_b, *r.word));
        REQUIRE_NOTHROW(validate_lasso(a, *r.run));
      }
    }
    REQUIRE(differ > 0);
    REQUIRE(same > 0);
  }
  SECTION("all left families, two propositions") {
    gen::Rng rng(77);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
      auto a = random_small(rng, 3, 2, 3);
      auto b = random_small(rng, 2, 2, 2);
      auto acc_a = gen::random_acceptance(rng, kAllFamilies[static_cast<std::size_t>(i) % 9], a.d);
      auto acc_b = gen::random_acceptance(rng, i % 3 ? Acceptance::Family::Buchi : Acceptance::Family::Reachability, b.d);
      Inclusion r;
      try {
        r = included(a, acc_a, b, acc_b);
      } catch (const BoundExceeded&) {
        continue;
      }
      ++checked;
      if (r.included) {
        for (const auto& u : oracle::all_words(2, 0, 2))
          for (const auto& v : oracle::all_words(2, 1, 2))
            if (word_accepted(a, acc_a, {u, v})) REQUIRE(word_accepted(b, acc_b, {u, v}));
      } else {
        REQUIRE(word_accepted(a, acc_a, *r.word));
        REQUIRE_FALSE(word_accepted(b, acc_b, *r.word));
      }
    }
    REQUIRE(checked > 100);
  }
}
