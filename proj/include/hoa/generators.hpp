#pragma once

// Seeded random instances for tests and benchmarks. Output depends only on
// the seed and the parameters.

#include <random>

#include "automaton.hpp"

namespace hoa::gen {

using Rng = std::mt19937_64;

inline unsigned uniform(Rng& rng, unsigned n) { return n ? static_cast<unsigned>(rng() % n) : 0; }
inline bool coin(Rng& rng, unsigned percent) { return uniform(rng, 100) < percent; }

inline ColorSet random_colors(Rng& rng, unsigned d, unsigned percent = 40) {
  ColorSet s = 0;
  for (Color c = 1; c <= d; ++c)
    if (coin(rng, percent)) s |= color_bit(c);
  return s;
}

inline ColorSet nonempty_colors(Rng& rng, unsigned d, unsigned percent = 40) {
  ColorSet s = random_colors(rng, d, percent);
  return s ? s : color_bit(1 + uniform(rng, d));
}

inline Formula random_guard(Rng& rng, unsigned aps, int depth = 2) {
  if (aps == 0) return Formula::top();
  if (depth <= 0 || coin(rng, 35)) {
    if (coin(rng, 10)) return Formula::top();
    return Formula::literal(uniform(rng, aps), coin(rng, 50));
  }
  switch (uniform(rng, 3)) {
    case 0: return Formula::neg(random_guard(rng, aps, depth - 1));
    case 1: return Formula::conj(random_guard(rng, aps, depth - 1), random_guard(rng, aps, depth - 1));
    default: return Formula::disj(random_guard(rng, aps, depth - 1), random_guard(rng, aps, depth - 1));
  }
}

struct AutomatonParams {
  unsigned states = 3;
  unsigned aps = 2;
  unsigned colors = 3;
  unsigned max_out = 3;  // outgoing transitions per state: 1..max_out
};

inline Hoa random_automaton(Rng& rng, const AutomatonParams& p) {
  Hoa a;
  a.num_states = p.states;
  for (unsigned i = 0; i < p.aps; ++i) a.aps.push_back("p" + std::to_string(i));
  a.initial = {0};
  a.d = p.colors;
  for (StateId q = 0; q < p.states; ++q) {
    const unsigned k = 1 + uniform(rng, p.max_out);
    for (unsigned i = 0; i < k; ++i)
      a.add_transition(q, random_guard(rng, p.aps), uniform(rng, p.states), 1 + uniform(rng, p.colors));
  }
  return a;
}

inline AccFormula random_el(Rng& rng, unsigned d, int depth = 2) {
  if (depth <= 0 || coin(rng, 30)) {
    ColorSet s = nonempty_colors(rng, d, 30);
    return coin(rng, 50) ? AccFormula::inf(s) : AccFormula::fin(s);
  }
  std::vector<AccFormula> kids;
  const unsigned k = 2 + uniform(rng, 2);
  for (unsigned i = 0; i < k; ++i) kids.push_back(random_el(rng, d, depth - 1));
  return coin(rng, 50) ? AccFormula::conj(std::move(kids)) : AccFormula::disj(std::move(kids));
}

inline Acceptance random_acceptance(Rng& rng, Acceptance::Family f, unsigned d) {
  using F = Acceptance::Family;
  switch (f) {
    case F::Reachability: return Acceptance::reachability(random_colors(rng, d));
    case F::Safety: return Acceptance::safety(random_colors(rng, d, 60));
    case F::Buchi: return Acceptance::buchi(random_colors(rng, d));
    case F::CoBuchi: return Acceptance::co_buchi(random_colors(rng, d));
    case F::Parity: return Acceptance::parity(d);
    case F::Rabin:
    case F::Streett: {
      std::vector<Acceptance::Pair> pairs;
      const unsigned k = 1 + uniform(rng, 2);
      for (unsigned i = 0; i < k; ++i) pairs.emplace_back(random_colors(rng, d), random_colors(rng, d, 30));
      return f == F::Rabin ? Acceptance::rabin(std::move(pairs)) : Acceptance::streett(std::move(pairs));
    }
    case F::Muller: {
      std::vector<ColorSet> sets;
      const unsigned k = 1 + uniform(rng, 2);
      for (unsigned i = 0; i < k; ++i) sets.push_back(random_colors(rng, d));
      return Acceptance::muller(std::move(sets));
    }
    case F::EmersonLei: return Acceptance::emerson_lei(random_el(rng, d));
  }
  return {};
}

// A game arena where every state's outgoing transitions form a decision tree:
// guards partition the alphabet, so the arena is deterministic and complete.
struct GameParams {
  unsigned states = 3;
  unsigned inputs = 1;
  unsigned outputs = 1;
  unsigned colors = 3;
  unsigned leaves = 4;  // rough number of leaves per state
};

namespace detail {
inline void decision_tree(Rng& rng, unsigned aps, PropMask dom, PropMask bits, unsigned budget,
                          std::vector<std::pair<Formula, std::pair<StateId, Color>>>& leaves, unsigned states,
                          unsigned colors) {
  const PropMask free = low_mask(aps) & ~dom;
  if (budget <= 1 || free == 0) {
    leaves.push_back({Formula::cube(dom, bits), {uniform(rng, states), 1 + uniform(rng, colors)}});
    return;
  }
  std::vector<PropId> cand;
  for (PropMask m = free; m; m &= m - 1) cand.push_back(static_cast<PropId>(std::countr_zero(m)));
  PropId p = cand[uniform(rng, static_cast<unsigned>(cand.size()))];
  const unsigned left = 1 + uniform(rng, budget - 1);
  decision_tree(rng, aps, dom | prop_bit(p), bits, left, leaves, states, colors);
  decision_tree(rng, aps, dom | prop_bit(p), bits | prop_bit(p), budget - left, leaves, states, colors);
}
}  // namespace detail

inline Hog random_hog(Rng& rng, const GameParams& p, Acceptance acc) {
  Hog g;
  const unsigned aps = p.inputs + p.outputs;
  g.arena.num_states = p.states;
  for (unsigned i = 0; i < p.inputs; ++i) g.arena.aps.push_back("i" + std::to_string(i));
  for (unsigned i = 0; i < p.outputs; ++i) g.arena.aps.push_back("o" + std::to_string(i));
  g.in_mask = low_mask(p.inputs);
  g.out_mask = low_mask(aps) & ~g.in_mask;
  g.arena.initial = {0};
  g.arena.d = p.colors;
  for (StateId q = 0; q < p.states; ++q) {
    std::vector<std::pair<Formula, std::pair<StateId, Color>>> leaves;
    detail::decision_tree(rng, aps, 0, 0, std::max(1u, p.leaves), leaves, p.states, p.colors);
    // Leaves sharing a target and color merge into one disjunctive guard.
    std::vector<std::pair<std::pair<StateId, Color>, std::vector<Formula>>> merged;
    for (auto& [f, key] : leaves) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first == key; });
      if (it == merged.end()) merged.push_back({key, {f}});
      else it->second.push_back(f);
    }
    for (auto& [key, fs] : merged) g.arena.add_transition(q, Formula::disj(std::move(fs)), key.first, key.second);
  }
  g.acc = std::move(acc);
  return g;
}

}  // namespace hoa::gen
