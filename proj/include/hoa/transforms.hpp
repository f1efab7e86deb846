#pragma once

// Structural and acceptance transformations. Every result records, for each
// output transition, the input transition it copies (kNoTransition for
// transitions that exist only in the output).

#include <map>
#include <stdexcept>

#include "automaton.hpp"

namespace hoa {

struct Transformed {
  Hoa aut;
  Acceptance acc;
  std::vector<std::size_t> origin;
};

struct StateBased {
  Hoa aut;
  std::vector<StateId> state_of;  // output state -> input state
  std::vector<Color> color_of;    // output state -> its color
  std::vector<std::size_t> origin;
};

inline bool is_state_based(const Hoa& a) {
  std::vector<Color> seen(a.num_states, 0);
  for (const auto& t : a.transitions) {
    if (seen[t.src] && seen[t.src] != t.color) return false;
    seen[t.src] = t.color;
  }
  return true;
}

// States without outgoing transitions get a self-loop guarded False.
inline Hoa pad_dead_states(const Hoa& a) {
  Hoa out = a;
  std::vector<char> live(a.num_states, 0);
  for (const auto& t : a.transitions) live[t.src] = 1;
  for (StateId q = 0; q < a.num_states; ++q)
    if (!live[q]) out.add_transition(q, Formula::bottom(), q, 1);
  return out;
}

// States (q, c) for every color c leaving q; all edges out of (q, c) carry c.
inline StateBased to_state_based(const Hoa& input) {
  const Hoa a = pad_dead_states(input);
  StateBased r;
  r.aut.aps = a.aps;
  r.aut.name = a.name;
  r.aut.d = a.d;
  std::vector<ColorSet> leaving(a.num_states, 0);
  for (const auto& t : a.transitions) leaving[t.src] |= color_bit(t.color);
  std::vector<std::map<Color, StateId>> id(a.num_states);
  for (StateId q = 0; q < a.num_states; ++q)
    for (Color c : colors_of(leaving[q])) {
      id[q][c] = r.aut.add_state();
      r.state_of.push_back(q);
      r.color_of.push_back(c);
    }
  for (StateId q : a.initial)
    for (const auto& [c, s] : id[q]) r.aut.initial.push_back(s);
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    for (const auto& [c, s] : id[t.dst]) {
      r.aut.transitions.push_back({id[t.src].at(t.color), t.guard, s, t.color});
      r.origin.push_back(i < input.transitions.size() ? i : kNoTransition);
    }
  }
  return r;
}

// Reachability(R) as Büchi(R). A complete automaton gets an accepting sink
// that copies of R-colored transitions lead to. Otherwise a run must be able
// to continue after its R-transition, so the construction keeps a second copy
// of the automaton, entered by R-colored transitions, whose edges are all
// recolored with a color of R.
inline Transformed reach_to_buchi(const Hoa& a, ColorSet reach) {
  Transformed r;
  r.aut = a;
  r.acc = Acceptance::buchi(reach);
  for (std::size_t i = 0; i < a.transitions.size(); ++i) r.origin.push_back(i);
  if (reach == 0) return r;
  const Color some_r = static_cast<Color>(std::countr_zero(reach));
  r.aut.d = std::max(a.d, max_color(reach));
  if (is_complete(a)) {
    const StateId sink = r.aut.add_state();
    for (Color c : colors_of(reach)) {
      r.aut.transitions.push_back({sink, Formula::top(), sink, c});
      r.origin.push_back(kNoTransition);
    }
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& t = a.transitions[i];
      if (!has_color(reach, t.color)) continue;
      r.aut.transitions.push_back({t.src, t.guard, sink, t.color});
      r.origin.push_back(i);
    }
    return r;
  }
  const unsigned n = a.num_states;
  r.aut.num_states = 2 * n;
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    r.aut.transitions.push_back({t.src + n, t.guard, t.dst + n, some_r});
    r.origin.push_back(i);
    if (has_color(reach, t.color)) {
      r.aut.transitions.push_back({t.src, t.guard, t.dst + n, t.color});
      r.origin.push_back(i);
    }
  }
  return r;
}

// Safety(S) as co-Büchi([d] \ S): unsafe transitions lead into a sink that
// loops on unsafe colors.
inline Transformed safety_to_cobuchi(const Hoa& a, ColorSet safe) {
  Transformed r;
  r.aut = a;
  const ColorSet unsafe = all_colors(a.d) & ~safe;
  r.acc = Acceptance::co_buchi(unsafe);
  for (std::size_t i = 0; i < a.transitions.size(); ++i) r.origin.push_back(i);
  if (unsafe == 0) return r;
  const StateId sink = r.aut.add_state();
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    if (!has_color(safe, a.transitions[i].color)) {
      r.aut.transitions[i].dst = sink;
      r.origin[i] = kNoTransition;
    }
  for (Color c : colors_of(unsafe)) {
    r.aut.transitions.push_back({sink, Formula::top(), sink, c});
    r.origin.push_back(kNoTransition);
  }
  return r;
}

namespace detail {

inline Color fresh_color(Hoa& a) {
  if (a.d >= kMaxColor) throw std::length_error("transformation needs more than 63 colors");
  return ++a.d;
}

// Automaton with a single initial state and no transitions.
inline Transformed empty_language(const Hoa& a, Acceptance acc) {
  Transformed r;
  r.aut.aps = a.aps;
  r.aut.name = a.name;
  r.aut.num_states = 1;
  r.aut.initial = {0};
  r.aut.d = std::max(1u, a.d);
  r.acc = std::move(acc);
  return r;
}

}  // namespace detail

// Muller (Inf-conjunction reading) as Streett. Per set E_i the state-based
// automaton is copied twice. Copy 1 is colored a_i and may jump into copy 2
// at any step; copy 2 has no way back. A copy-2 state whose color c lies in
// E_i gets a fresh color f_{i,c}, every other copy-2 state a fresh color g_i.
// With D_i the copy-2 colors of component i, the pairs are (a_i, ∅),
// (D_i, f_{i,c1}) and (f_{i,cj}, f_{i,cj+1}).
inline Transformed muller_to_streett(const Hoa& a, const std::vector<ColorSet>& sets) {
  if (sets.empty()) return detail::empty_language(a, Acceptance::streett({}));
  const StateBased sb = to_state_based(a);
  const unsigned n = sb.aut.num_states;
  Transformed r;
  r.aut.aps = a.aps;
  r.aut.name = a.name;
  r.aut.d = sb.aut.d;
  std::vector<Acceptance::Pair> pairs;
  for (ColorSet e : sets) {
    const Color first_color = detail::fresh_color(r.aut);
    const Color other = detail::fresh_color(r.aut);
    std::map<Color, Color> fresh;
    ColorSet copy2 = color_bit(other);
    for (Color c : colors_of(e)) {
      fresh[c] = detail::fresh_color(r.aut);
      copy2 |= color_bit(fresh[c]);
    }
    const StateId base = r.aut.num_states;
    r.aut.num_states += 2 * n;
    for (StateId q : sb.aut.initial) r.aut.initial.push_back(base + q);
    auto copy2_color = [&](StateId q) {
      auto it = fresh.find(sb.color_of[q]);
      return it == fresh.end() ? other : it->second;
    };
    for (std::size_t i = 0; i < sb.aut.transitions.size(); ++i) {
      const auto& t = sb.aut.transitions[i];
      r.aut.transitions.push_back({base + t.src, t.guard, base + t.dst, first_color});
      r.aut.transitions.push_back({base + t.src, t.guard, base + n + t.dst, first_color});
      r.aut.transitions.push_back({base + n + t.src, t.guard, base + n + t.dst, copy2_color(t.src)});
      for (int k = 0; k < 3; ++k) r.origin.push_back(sb.origin[i]);
    }
    pairs.emplace_back(color_bit(first_color), 0);
    Color prev = 0;
    for (const auto& [c, f] : fresh) {
      pairs.emplace_back(prev ? color_bit(prev) : copy2, color_bit(f));
      prev = f;
    }
  }
  r.acc = Acceptance::streett(std::move(pairs));
  return r;
}

// Rabin as Büchi. Per pair (E, F): copy 1 is the state-based automaton, copy 2
// keeps only states whose color avoids F, and copy-2 states colored in E carry
// a shared fresh accepting color.
inline Transformed rabin_to_buchi(const Hoa& a, const std::vector<Acceptance::Pair>& pairs) {
  if (pairs.empty()) return detail::empty_language(a, Acceptance::buchi(0));
  const StateBased sb = to_state_based(a);
  const unsigned n = sb.aut.num_states;
  Transformed r;
  r.aut.aps = a.aps;
  r.aut.name = a.name;
  r.aut.d = sb.aut.d;
  const Color accepting = detail::fresh_color(r.aut);
  for (const auto& [e, f] : pairs) {
    const StateId base = r.aut.num_states;
    r.aut.num_states += 2 * n;
    for (StateId q : sb.aut.initial) r.aut.initial.push_back(base + q);
    auto kept = [&](StateId q) { return !has_color(f, sb.color_of[q]); };
    auto copy2_color = [&](StateId q) { return has_color(e, sb.color_of[q]) ? accepting : sb.color_of[q]; };
    for (std::size_t i = 0; i < sb.aut.transitions.size(); ++i) {
      const auto& t = sb.aut.transitions[i];
      r.aut.transitions.push_back({base + t.src, t.guard, base + t.dst, t.color});
      r.origin.push_back(sb.origin[i]);
      if (!kept(t.dst)) continue;
      r.aut.transitions.push_back({base + t.src, t.guard, base + n + t.dst, t.color});
      r.origin.push_back(sb.origin[i]);
      if (!kept(t.src)) continue;
      r.aut.transitions.push_back({base + n + t.src, t.guard, base + n + t.dst, copy2_color(t.src)});
      r.origin.push_back(sb.origin[i]);
    }
  }
  // Copy-2 states outside F that are never entered stay isolated; harmless.
  r.acc = Acceptance::buchi(color_bit(accepting));
  return r;
}

// Emerson-Lei as Büchi. Per DNF disjunct (Inf E_1..E_m, Fin C): states
// (q, j, b). Mode b = 0 copies the automaton and may switch to mode 1 on any
// step. Mode 1 forbids C-colored transitions and runs a round-robin counter j
// over E_1..E_m; completing a round emits a fresh accepting color.
inline Transformed el_to_buchi(const Hoa& a, const AccFormula& alpha) {
  const auto terms = dnf(alpha);
  Hoa shell = a;
  const Color accepting = detail::fresh_color(shell);
  if (terms.empty()) {
    auto r = detail::empty_language(a, Acceptance::buchi(color_bit(accepting)));
    r.aut.d = accepting;
    return r;
  }
  Transformed r;
  r.aut.aps = a.aps;
  r.aut.name = a.name;
  r.aut.d = accepting;
  const unsigned n = a.num_states;
  for (const auto& term : terms) {
    const unsigned m = static_cast<unsigned>(term.infs.size());
    const unsigned rounds = std::max(1u, m);
    const StateId base = r.aut.num_states;
    r.aut.num_states += n * (1 + rounds);
    auto mode0 = [&](StateId q) { return base + q; };
    auto mode1 = [&](StateId q, unsigned j) { return base + n + q * rounds + j; };
    for (StateId q : a.initial) r.aut.initial.push_back(mode0(q));
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& t = a.transitions[i];
      r.aut.transitions.push_back({mode0(t.src), t.guard, mode0(t.dst), t.color});
      r.aut.transitions.push_back({mode0(t.src), t.guard, mode1(t.dst, 0), t.color});
      r.origin.push_back(i);
      r.origin.push_back(i);
      if (has_color(term.fin, t.color)) continue;
      for (unsigned j = 0; j < rounds; ++j) {
        unsigned next = j;
        if (m == 0 || has_color(term.infs[j], t.color)) next = j + 1;
        Color c = t.color;
        if (next == rounds) {
          next = 0;
          c = accepting;
        }
        r.aut.transitions.push_back({mode1(t.src, j), t.guard, mode1(t.dst, next), c});
        r.origin.push_back(i);
      }
    }
  }
  r.acc = Acceptance::buchi(color_bit(accepting));
  return r;
}

// Any condition as (transition-based) Büchi.
inline Transformed to_buchi(const Hoa& a, const Acceptance& acc) {
  using F = Acceptance::Family;
  switch (acc.family()) {
    case F::Buchi: {
      Transformed r{a, acc, {}};
      for (std::size_t i = 0; i < a.transitions.size(); ++i) r.origin.push_back(i);
      return r;
    }
    case F::Reachability: return reach_to_buchi(a, acc.set());
    case F::Safety: {
      auto cb = safety_to_cobuchi(a, acc.set());
      auto r = el_to_buchi(cb.aut, cb.acc.to_el());
      for (auto& o : r.origin) o = o == kNoTransition ? kNoTransition : cb.origin[o];
      return r;
    }
    case F::Rabin: return rabin_to_buchi(a, acc.pairs());
    default: return el_to_buchi(a, acc.to_el());
  }
}

}  // namespace hoa
