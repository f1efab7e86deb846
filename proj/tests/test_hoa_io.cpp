#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "hoa/generators.hpp"
#include "hoa/hoa_io.hpp"

using namespace hoa;

namespace {

std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(HOA_SAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_automaton(const Hoa& a, const Hoa& b) {
  if (a.num_states != b.num_states || a.initial != b.initial || a.aps != b.aps || a.d != b.d || a.name != b.name)
    return false;
  if (a.transitions.size() != b.transitions.size()) return false;
  // Printing groups edges by source state, so compare per-state lists.
  auto oa = a.outgoing(), ob = b.outgoing();
  for (StateId q = 0; q < a.num_states; ++q) {
    if (oa[q].size() != ob[q].size()) return false;
    for (std::size_t i = 0; i < oa[q].size(); ++i) {
      const auto& x = a.transitions[oa[q][i]];
      const auto& y = b.transitions[ob[q][i]];
      if (!(x.guard == y.guard) || x.dst != y.dst || x.color != y.color) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("minimal Buchi document") {
  const std::string text =
      "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 0 {0}\n--END--\n";
  auto doc = parse_hoa(text);
  CHECK(doc.automaton.num_states == 1);
  CHECK(doc.acc.family() == Acceptance::Family::Buchi);
  CHECK(doc.acc.set() == color_bit(1));
  CHECK_FALSE(doc.is_game);
  const std::string printed = print_hoa(doc.automaton, doc.acc);
  CHECK(printed == text);
  CHECK(std::count(printed.begin(), printed.end(), '\n') == 9);
}

TEST_CASE("request-grant automaton parses as a game") {
  auto doc = parse_hoa(read_sample("request-grant.hoa"));
  REQUIRE(doc.is_game);
  auto g = doc.game();
  CHECK(g.out_mask == prop_bit(1));
  CHECK(g.in_mask == prop_bit(0));
  CHECK(g.arena.num_states == 4);
  CHECK(g.arena.transitions.size() == 9);
  CHECK(g.acc.family() == Acceptance::Family::Buchi);
  CHECK(is_deterministic(g.arena));
  CHECK(is_complete(g.arena));
  CHECK(print_hoa(g).find("controllable-AP: 1\n") != std::string::npos);
}

TEST_CASE("unmarked edges get a neutral color, multi-marks are split") {
  const std::string text =
      "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"p\"\nAcceptance: 2 Inf(0) & Fin(1)\n--BODY--\n"
      "State: 0\n[0] 0\n[!0] 0 {0 1}\n--END--\n";
  auto doc = parse_hoa(text);
  const auto& a = doc.automaton;
  CHECK(a.d == 3);
  REQUIRE(a.transitions.size() == 3);
  CHECK(a.transitions[0].color == 3);
  CHECK(a.transitions[1].color == 1);
  CHECK(a.transitions[2].color == 2);
  CHECK_FALSE(has_color(doc.acc.colors(), 3));
}

TEST_CASE("state-level marks are inherited") {
  auto doc = parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Fin(0)\n--BODY--\nState: 0 {0}\n[t] 0\n--END--\n");
  REQUIRE(doc.automaton.transitions.size() == 1);
  CHECK(doc.automaton.transitions[0].color == 1);
  CHECK(doc.acc.family() == Acceptance::Family::CoBuchi);
}

TEST_CASE("unsupported features and bad indices are rejected with positions") {
  const std::string head = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"p\"\nAcceptance: 1 Inf(0)\n";
  auto rejects = [](const std::string& text, const char* what) {
    INFO(what);
    try {
      parse_hoa(text);
      FAIL("accepted");
    } catch (const ParseError& e) {
      CHECK(e.line >= 1);
      CHECK(e.column >= 1);
    }
  };
  rejects(head + "Alias: @a 0\n--BODY--\n--END--\n", "alias");
  rejects(head + "--BODY--\nState: 0\n1 {0}\n--END--\n", "implicit label");
  rejects(head + "--BODY--\nState: [0] 0\n[t] 1\n--END--\n", "state label");
  rejects(head + "--BODY--\nState: 0\n[t] 0&1 {0}\n--END--\n", "universal branching");
  rejects(head + "--BODY--\nState: 0\n[1] 1 {0}\n--END--\n", "ap index");
  rejects(head + "--BODY--\nState: 0\n[t] 5 {0}\n--END--\n", "state index");
  rejects(head + "--BODY--\nState: 0\n[t] 1 {3}\n--END--\n", "mark index");
  rejects(head + "--BODY--\nState: 0\n[t & ] 1 {0}\n--END--\n", "label syntax");
  rejects(head + "Frobnicate: 1\n--BODY--\n--END--\n", "unknown header");
  rejects("HOA: v2\n", "version");
  rejects(head + "--BODY--\nState: 0\n[t] 1 {0}\n", "missing end");
  try {
    parse_hoa(head + "--BODY--\nState: 0\n[0 | ] 1 {0}\n--END--\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 8);
  }
  CHECK_NOTHROW(parse_hoa(head + "tool: \"x\" \"1.0\"\nproperties: deterministic\n--BODY--\n--END--\n"));
}

TEST_CASE("acceptance constants map to trivial primitives") {
  auto t = parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 0\n--END--\n");
  CHECK(t.acc.to_el().is_true());
  auto f = parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 0 f\n--BODY--\nState: 0\n[t] 0\n--END--\n");
  CHECK(f.acc.to_el().is_false());
}

TEST_CASE("named families survive a round trip") {
  gen::Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    gen::AutomatonParams p{1 + gen::uniform(rng, 5), gen::uniform(rng, 4), 1 + gen::uniform(rng, 5), 3};
    Hoa a = gen::random_automaton(rng, p);
    if (i % 3 == 0) a.name = "aut" + std::to_string(i);
    auto fam = kAllFamilies[static_cast<std::size_t>(i) % std::size(kAllFamilies)];
    Acceptance acc = gen::random_acceptance(rng, fam, a.d);
    const std::string text = print_hoa(a, acc);
    auto doc = parse_hoa(text);
    INFO(text);
    CHECK(same_automaton(a, doc.automaton));
    if (fam == Acceptance::Family::EmersonLei) {
      CHECK(detail::canonical_key(doc.acc.to_el()) == detail::canonical_key(acc.to_el()));
    } else {
      CHECK(doc.acc == acc);
    }
    // A bare Inf or Fin formula is recognized as Buchi or co-Buchi, so plain
    // Emerson-Lei input may change family once; after that printing is a fixpoint.
    const std::string again = print_hoa(doc.automaton, doc.acc);
    if (fam != Acceptance::Family::EmersonLei) CHECK(again == text);
    CHECK(print_hoa(parse_hoa(again).automaton, parse_hoa(again).acc) == again);
    CHECK(print_hoa(a, acc) == text);
  }
}

TEST_CASE("game round trip keeps the partition") {
  gen::Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    Hog g = gen::random_hog(rng, {3, 2, 2, 3, 5}, Acceptance::parity(3));
    auto doc = parse_hoa(print_hoa(g));
    auto h = doc.game();
    CHECK(h.in_mask == g.in_mask);
    CHECK(h.out_mask == g.out_mask);
    CHECK(same_automaton(g.arena, h.arena));
    CHECK(h.acc == g.acc);
  }
}
