#pragma once

// Games on automata: each round the environment (In) fixes the input
// propositions, then the controller (Out) fixes the outputs, and the arena moves
// deterministically. Solved through the explicit announcement game P_G or by a
// recursion directly on state sets.

#include <array>
#include <map>
#include <queue>

#include "transforms.hpp"

namespace hoa {

enum class Player { In, Out };

inline Player opponent(Player p) { return p == Player::In ? Player::Out : Player::In; }
inline const char* player_name(Player p) { return p == Player::Out ? "controller" : "environment"; }

using StateSet = std::uint64_t;

inline StateSet state_bit(StateId q) { return StateSet{1} << q; }
inline bool has_state(StateSet s, StateId q) { return (s >> q) & 1; }

inline std::vector<StateId> members(StateSet s) {
  std::vector<StateId> out;
  for (; s; s &= s - 1) out.push_back(static_cast<StateId>(std::countr_zero(s)));
  return out;
}

inline constexpr unsigned kMaxGameStates = 64;

// ---- state-colored view ----------------------------------------------------

// A game whose colors sit on states (0 = neutral). A transition-colored arena
// is expanded so that each state remembers the color of the transition that
// entered it; the initial state gets the neutral color.
struct StateGame {
  Hog hog;
  std::vector<Color> color;
  std::vector<StateId> origin;  // state of the input arena

  unsigned size() const { return hog.arena.num_states; }
  StateId initial() const { return hog.arena.initial.front(); }
  StateSet all() const { return size() == 64 ? ~StateSet{0} : (StateSet{1} << size()) - 1; }
};

inline void require_game_arena(const Hog& g) {
  g.validate();
  if (g.arena.initial.size() != 1) throw MalformedAutomaton("a game needs exactly one initial state");
  if (!is_deterministic(g.arena)) throw MalformedAutomaton("game arena is not deterministic");
  if (!is_complete(g.arena)) throw MalformedAutomaton("game arena is not complete");
}

// Entry-color expansion without arena checks; callers validate first.
inline StateGame expand_entry_colors(const Hog& g) {
  StateGame sg;
  if (is_state_based(g.arena)) {
    sg.hog = g;
    sg.color.assign(g.arena.num_states, 0);
    for (const auto& t : g.arena.transitions) sg.color[t.src] = t.color;
    sg.origin.resize(g.arena.num_states);
    for (StateId q = 0; q < g.arena.num_states; ++q) sg.origin[q] = q;
  } else {
    sg.hog.in_mask = g.in_mask;
    sg.hog.out_mask = g.out_mask;
    sg.hog.acc = g.acc;
    sg.hog.arena.aps = g.arena.aps;
    sg.hog.arena.name = g.arena.name;
    auto out = g.arena.outgoing();
    std::map<std::pair<StateId, Color>, StateId> id;
    std::vector<std::pair<StateId, Color>> todo;
    auto get = [&](StateId q, Color c) {
      auto [it, fresh] = id.emplace(std::make_pair(q, c), sg.hog.arena.num_states);
      if (fresh) {
        sg.hog.arena.add_state();
        sg.color.push_back(c);
        sg.origin.push_back(q);
        todo.push_back({q, c});
        if (sg.hog.arena.num_states > kMaxGameStates)
          throw BoundExceeded("game states", sg.hog.arena.num_states, kMaxGameStates);
      }
      return it->second;
    };
    sg.hog.arena.initial = {get(g.arena.initial.front(), 0)};
    for (std::size_t i = 0; i < todo.size(); ++i) {
      const auto [q, c] = todo[i];
      const StateId src = id.at({q, c});
      for (std::size_t e : out[q]) {
        const auto& t = g.arena.transitions[e];
        sg.hog.arena.add_transition(src, t.guard, get(t.dst, t.color), t.color);
      }
    }
    sg.hog.arena.d = std::max(sg.hog.arena.d, g.arena.d);
  }
  if (sg.size() > kMaxGameStates) throw BoundExceeded("game states", sg.size(), kMaxGameStates);
  return sg;
}

inline StateGame state_game(const Hog& g) {
  require_game_arena(g);
  return expand_entry_colors(g);
}

// ---- one-round questions ---------------------------------------------------

// Guard under which q moves into `s`.
inline Formula guard_into(const Hog& g, StateId q, StateSet s) {
  std::vector<Formula> parts;
  for (const auto& t : g.arena.transitions)
    if (t.src == q && has_state(s, t.dst)) parts.push_back(t.guard);
  return Formula::disj(std::move(parts));
}

// An input valuation under which every output leads from q into `s`.
inline std::optional<Valuation> is_q_good(const Hog& g, StateId q, StateSet s) {
  return exists_forall_sat(g.in_mask, g.out_mask, guard_into(g, q, s));
}

// States the controller can reach from q once the inputs are fixed.
inline StateSet exact_successor_set(const Hog& g, StateId q, const Valuation& v_in) {
  StateSet s = 0;
  const PropMask bits = v_in.bits & g.in_mask;
  for (const auto& t : g.arena.transitions)
    if (t.src == q && sat(restrict(t.guard, g.in_mask, bits))) s |= state_bit(t.dst);
  return s;
}

// Predecessors that `p` can force into `target` in one round.
inline StateSet cpre(const Hog& g, StateSet target, Player p) {
  const unsigned n = g.arena.num_states;
  const StateSet all = n == 64 ? ~StateSet{0} : (StateSet{1} << n) - 1;
  StateSet out = 0;
  for (StateId q = 0; q < n; ++q) {
    const bool good = p == Player::In ? is_q_good(g, q, target & all).has_value()
                                      : !is_q_good(g, q, all & ~target).has_value();
    if (good) out |= state_bit(q);
  }
  return out;
}

// ---- explicit turn-based games ---------------------------------------------

struct ClassicalGame {
  struct Vertex {
    Player owner = Player::In;
    Color color = 0;
    StateId state = 0;     // arena state of the vertex
    StateSet set = 0;      // announced set, for controller vertices of P_G
    PropMask witness = 0;  // inputs forcing the announced set
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<unsigned>> succ;
  Acceptance acc;
  unsigned initial = 0;

  unsigned add(const Vertex& v) {
    vertices.push_back(v);
    succ.emplace_back();
    return static_cast<unsigned>(vertices.size() - 1);
  }
  std::size_t size() const { return vertices.size(); }
};

// Exact: one set per input valuation. Full: every q-good set. Successors: the
// q-good subsets of q's successors, which the environment never needs to
// exceed.
enum class PgMode { Exact, Full, Successors };

// Vertices 0..n-1 are the environment's (one per state); controller vertices
// (q, S) follow in order of q, then of first input valuation (exact) or of S
// as a bit mask.
inline ClassicalGame build_pg(const StateGame& sg, PgMode mode, const Bounds& bounds = Bounds::from_env()) {
  const Hog& g = sg.hog;
  const unsigned n = sg.size();
  ClassicalGame pg;
  pg.acc = g.acc;
  pg.initial = sg.initial();
  for (StateId q = 0; q < n; ++q) pg.add({Player::In, sg.color[q], q, 0, 0});
  auto add_out = [&](StateId q, StateSet s, PropMask witness) {
    const unsigned v = pg.add({Player::Out, 0, q, s, witness});
    pg.succ[q].push_back(v);
    for (StateId p : members(s)) pg.succ[v].push_back(p);
  };
  if (mode == PgMode::Exact) {
    const unsigned k = static_cast<unsigned>(std::popcount(g.in_mask));
    if (k > bounds.pg_input_bits) throw BoundExceeded("input propositions", k, bounds.pg_input_bits);
    for (StateId q = 0; q < n; ++q) {
      std::vector<StateSet> seen;
      for (PropMask i = 0; i < (PropMask{1} << k); ++i) {
        const PropMask bits = detail::deposit(i, g.in_mask);
        const StateSet s = exact_successor_set(g, q, Valuation{g.in_mask, bits});
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
        seen.push_back(s);
        add_out(q, s, bits);
      }
    }
  } else if (mode == PgMode::Full) {
    if (n > bounds.pg_state_bits) throw BoundExceeded("game states", n, bounds.pg_state_bits);
    for (StateId q = 0; q < n; ++q)
      for (StateSet s = 1; s <= sg.all(); ++s)
        if (auto w = is_q_good(g, q, s)) add_out(q, s, w->bits);
  } else {
    for (StateId q = 0; q < n; ++q) {
      StateSet succ = 0;
      for (const auto& t : g.arena.transitions)
        if (t.src == q) succ |= state_bit(t.dst);
      const unsigned k = static_cast<unsigned>(std::popcount(succ));
      if (k > bounds.pg_state_bits) throw BoundExceeded("successors of a state", k, bounds.pg_state_bits);
      for (StateSet pick = 1; pick < (StateSet{1} << k); ++pick) {
        const StateSet s = detail::deposit(pick, succ);
        if (auto w = is_q_good(g, q, s)) add_out(q, s, w->bits);
      }
    }
  }
  return pg;
}

inline ClassicalGame build_pg(const Hog& g, PgMode mode, const Bounds& bounds = Bounds::from_env()) {
  return build_pg(state_game(g), mode, bounds);
}

// Winner per vertex; strategy[v] is the successor the winner picks at v when
// v belongs to the winner, -1 otherwise or when the engine yields none.
struct Solution {
  std::vector<Player> winner;
  std::vector<int> strategy;
};

namespace detail {

using Mask = std::vector<char>;

inline int player_index(Player p) { return p == Player::Out ? 0 : 1; }

inline bool any(const Mask& m) { return std::find(m.begin(), m.end(), 1) != m.end(); }

inline Mask minus(const Mask& a, const Mask& b) {
  Mask r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && !b[i];
  return r;
}

// Vertices of `alive` from which `p` forces a visit to `target`.
inline Mask attractor(const ClassicalGame& g, const Mask& alive, const Mask& target, Player p,
                      std::vector<int>* strategy) {
  const std::size_t n = g.size();
  std::vector<std::vector<unsigned>> pred(n);
  std::vector<unsigned> count(n, 0);
  for (unsigned v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (unsigned w : g.succ[v])
      if (alive[w]) {
        pred[w].push_back(v);
        ++count[v];
      }
  }
  Mask in(n, 0);
  std::queue<unsigned> todo;
  for (unsigned v = 0; v < n; ++v)
    if (alive[v] && target[v]) {
      in[v] = 1;
      todo.push(v);
    }
  while (!todo.empty()) {
    const unsigned w = todo.front();
    todo.pop();
    for (unsigned u : pred[w]) {
      if (in[u]) continue;
      if (g.vertices[u].owner == p) {
        if (strategy) (*strategy)[u] = static_cast<int>(w);
      } else if (--count[u] != 0) {
        continue;
      }
      in[u] = 1;
      todo.push(u);
    }
  }
  return in;
}

// Recursive parity solver; Out wins when the largest priority seen infinitely
// often is even.
inline std::array<Mask, 2> zielonka(const ClassicalGame& g, const std::vector<int>& prio, const Mask& alive,
                                    std::vector<int>& strategy) {
  const std::size_t n = g.size();
  std::array<Mask, 2> win{Mask(n, 0), Mask(n, 0)};
  int top = -1;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v]) top = std::max(top, prio[v]);
  if (top < 0) return win;
  const Player a = top % 2 == 0 ? Player::Out : Player::In;
  const Player b = opponent(a);
  Mask u(n, 0);
  for (std::size_t v = 0; v < n; ++v) u[v] = alive[v] && prio[v] == top;
  const Mask big = attractor(g, alive, u, a, &strategy);
  auto sub = zielonka(g, prio, minus(alive, big), strategy);
  if (!any(sub[player_index(b)])) {
    win[player_index(a)] = alive;
    for (std::size_t v = 0; v < n; ++v)
      if (u[v] && g.vertices[v].owner == a)
        for (unsigned w : g.succ[v])
          if (alive[w]) {
            strategy[v] = static_cast<int>(w);
            break;
          }
    return win;
  }
  const Mask lost = attractor(g, alive, sub[player_index(b)], b, &strategy);
  auto rest = zielonka(g, prio, minus(alive, lost), strategy);
  win[player_index(a)] = rest[player_index(a)];
  win[player_index(b)] = rest[player_index(b)];
  for (std::size_t v = 0; v < n; ++v)
    if (lost[v]) win[player_index(b)][v] = 1;
  return win;
}

// Maximal proper subsets of `c` on which the condition flips.
inline std::vector<ColorSet> flipping_children(ColorSet c, const std::function<bool(ColorSet)>& wins) {
  const std::vector<Color> cs = colors_of(c);
  const bool here = wins(c);
  std::vector<ColorSet> cand;
  for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << cs.size()); ++m) {
    ColorSet d = 0;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if ((m >> i) & 1) d |= color_bit(cs[i]);
    if (wins(d) != here) cand.push_back(d);
  }
  std::vector<ColorSet> out;
  for (ColorSet d : cand) {
    bool maximal = true;
    for (ColorSet e : cand)
      if (e != d && (d & e) == d) maximal = false;
    if (maximal) out.push_back(d);
  }
  return out;
}

inline std::function<bool(ColorSet)> condition_on_sets(const Acceptance& acc) {
  return [acc](ColorSet c) { return eval_acceptance(acc, ColorTrace{c, c}); };
}

// McNaughton-Zielonka recursion for conditions on the set of colors seen
// infinitely often. Returns Out's winning region inside `alive`.
inline Mask muller_region(const ClassicalGame& g, const std::function<bool(ColorSet)>& wins, const Mask& alive) {
  const std::size_t n = g.size();
  if (!any(alive)) return Mask(n, 0);
  ColorSet c = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v] && g.vertices[v].color) c |= color_bit(g.vertices[v].color);
  const Player s = wins(c) ? Player::Out : Player::In;
  const Player o = opponent(s);
  for (ColorSet d : flipping_children(c, wins)) {
    Mask y(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      y[v] = alive[v] && g.vertices[v].color && !has_color(d, g.vertices[v].color);
    const Mask sub = minus(alive, attractor(g, alive, y, s, nullptr));
    const Mask out_sub = muller_region(g, wins, sub);
    const Mask opp_sub = o == Player::Out ? out_sub : minus(sub, out_sub);
    if (!any(opp_sub)) continue;
    const Mask lost = attractor(g, alive, opp_sub, o, nullptr);
    Mask out_rest = muller_region(g, wins, minus(alive, lost));
    if (o == Player::Out)
      for (std::size_t v = 0; v < n; ++v)
        if (lost[v]) out_rest[v] = 1;
    return out_rest;
  }
  return s == Player::Out ? alive : Mask(n, 0);
}

// Parity priorities for conditions with memoryless solutions; the neutral
// color gets the lowest priority of the right parity.
inline std::optional<std::vector<int>> priorities(const ClassicalGame& g) {
  using F = Acceptance::Family;
  const Acceptance& acc = g.acc;
  std::vector<int> p(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Color c = g.vertices[v].color;
    switch (acc.family()) {
      case F::Parity: p[v] = c ? static_cast<int>(c) + 2 : 1; break;
      case F::Buchi: p[v] = c && has_color(acc.set(), c) ? 2 : 1; break;
      case F::CoBuchi: p[v] = c && has_color(acc.set(), c) ? 1 : 0; break;
      default: return std::nullopt;
    }
  }
  return p;
}

}  // namespace detail

inline bool has_memoryless_solution(const Acceptance& acc) {
  using F = Acceptance::Family;
  switch (acc.family()) {
    case F::Reachability:
    case F::Safety:
    case F::Parity:
    case F::Buchi:
    case F::CoBuchi: return true;
    default: return false;
  }
}

// Attractors for reachability and safety, parity recursion for parity-like
// conditions (both with memoryless strategies), McNaughton-Zielonka recursion
// (winners only) for everything else.
inline Solution solve_classical(const ClassicalGame& g) {
  using F = Acceptance::Family;
  const std::size_t n = g.size();
  Solution sol{std::vector<Player>(n, Player::In), std::vector<int>(n, -1)};
  const detail::Mask all(n, 1);
  auto stay_outside = [&](const detail::Mask& region, Player p) {
    for (std::size_t v = 0; v < n; ++v)
      if (!region[v] && g.vertices[v].owner == p)
        for (unsigned w : g.succ[v])
          if (!region[w]) {
            sol.strategy[v] = static_cast<int>(w);
            break;
          }
  };
  auto first_succ = [&](std::size_t v) {
    if (!g.succ[v].empty()) sol.strategy[v] = static_cast<int>(g.succ[v].front());
  };
  const Color none = 0;
  auto colored = [&](std::size_t v, ColorSet s) { return g.vertices[v].color != none && has_color(s, g.vertices[v].color); };
  if (g.acc.family() == F::Reachability) {
    detail::Mask target(n, 0);
    for (std::size_t v = 0; v < n; ++v) target[v] = colored(v, g.acc.set());
    const auto win = detail::attractor(g, all, target, Player::Out, &sol.strategy);
    for (std::size_t v = 0; v < n; ++v) {
      sol.winner[v] = win[v] ? Player::Out : Player::In;
      if (target[v] && g.vertices[v].owner == Player::Out) first_succ(v);
    }
    stay_outside(win, Player::In);
  } else if (g.acc.family() == F::Safety) {
    detail::Mask bad(n, 0);
    for (std::size_t v = 0; v < n; ++v) bad[v] = g.vertices[v].color != none && !colored(v, g.acc.set());
    const auto lost = detail::attractor(g, all, bad, Player::In, &sol.strategy);
    for (std::size_t v = 0; v < n; ++v) {
      sol.winner[v] = lost[v] ? Player::In : Player::Out;
      if (bad[v] && g.vertices[v].owner == Player::In) first_succ(v);
    }
    stay_outside(lost, Player::Out);
  } else if (auto prio = detail::priorities(g)) {
    const auto win = detail::zielonka(g, *prio, all, sol.strategy);
    for (std::size_t v = 0; v < n; ++v) sol.winner[v] = win[0][v] ? Player::Out : Player::In;
  } else {
    const auto out = detail::muller_region(g, detail::condition_on_sets(g.acc), all);
    for (std::size_t v = 0; v < n; ++v) sol.winner[v] = out[v] ? Player::Out : Player::In;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (g.vertices[v].owner != sol.winner[v]) sol.strategy[v] = -1;
  return sol;
}

// ---- appearance records ----------------------------------------------------

// Product with a latest-appearance record over the game's colors; the result is
// a parity game (reachable part from the initial vertex) whose memoryless
// strategies are finite-memory strategies of the input.
struct RecordProduct {
  ClassicalGame game;
  std::vector<unsigned> base;  // product vertex -> input vertex
};

inline constexpr unsigned kMaxRecordColors = 7;

inline RecordProduct record_product(const ClassicalGame& g) {
  ColorSet used = 0;
  for (const auto& v : g.vertices)
    if (v.color) used |= color_bit(v.color);
  const std::vector<Color> cs = colors_of(used);
  if (cs.size() > kMaxRecordColors)
    throw BoundExceeded("colors for the appearance record", cs.size(), kMaxRecordColors);
  const auto wins = detail::condition_on_sets(g.acc);
  using Record = std::vector<Color>;
  struct Key {
    unsigned v;
    Record rec;
    int hit;
    bool operator<(const Key& o) const { return std::tie(v, rec, hit) < std::tie(o.v, o.rec, o.hit); }
  };
  auto visit = [](Record rec, Color c) -> std::pair<Record, int> {
    if (!c) return {rec, -1};
    auto it = std::find(rec.begin(), rec.end(), c);
    const int pos = static_cast<int>(it - rec.begin());
    rec.erase(it);
    rec.insert(rec.begin(), c);
    return {rec, pos};
  };
  auto priority = [&](const Record& rec, int hit) {
    if (hit < 0) return wins(0) ? 0 : 1;
    ColorSet top = 0;
    for (int i = 0; i <= hit; ++i) top |= color_bit(rec[static_cast<std::size_t>(i)]);
    return 2 * (hit + 1) + (wins(top) ? 0 : 1);
  };
  RecordProduct out;
  std::map<Key, unsigned> id;
  std::vector<Key> todo;
  int top_prio = 0;
  auto get = [&](const Key& k) {
    auto [it, fresh] = id.emplace(k, static_cast<unsigned>(out.game.size()));
    if (fresh) {
      auto vx = g.vertices[k.v];
      const int p = priority(k.rec, k.hit);
      top_prio = std::max(top_prio, p);
      vx.color = static_cast<Color>(p + 2);
      out.game.add(vx);
      out.base.push_back(k.v);
      todo.push_back(k);
    }
    return it->second;
  };
  auto [rec0, hit0] = visit(Record(cs.begin(), cs.end()), g.vertices[g.initial].color);
  out.game.initial = get(Key{g.initial, rec0, hit0});
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const Key k = todo[i];
    const unsigned from = id.at(k);
    for (unsigned w : g.succ[k.v]) {
      auto [rec, hit] = visit(k.rec, g.vertices[w].color);
      const unsigned to = get(Key{w, rec, hit});
      out.game.succ[from].push_back(to);
    }
  }
  out.game.acc = Acceptance::parity(static_cast<unsigned>(top_prio + 2));
  return out;
}

// Fixes one successor per vertex of `p`, keeping only choices under which p
// still wins from the initial vertex. Returns the choice per vertex of p.
inline std::vector<int> memoryless_by_restriction(ClassicalGame g, Player p) {
  auto wins = [&] { return solve_classical(g).winner[g.initial] == p; };
  if (!wins()) throw std::invalid_argument("player does not win from the initial vertex");
  std::vector<int> choice(g.size(), -1);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.vertices[v].owner != p) continue;
    const auto options = g.succ[v];
    for (unsigned w : options) {
      g.succ[v] = {w};
      if (wins()) {
        choice[v] = static_cast<int>(w);
        break;
      }
    }
    if (choice[v] < 0) throw std::logic_error("no memoryless winning choice");
  }
  return choice;
}

// ---- strategies and reports ------------------------------------------------

struct InChoice {
  Valuation input;
  StateSet set = 0;
};

// One input valuation and announced set per state of the state game.
struct InMemorylessStrategy {
  std::vector<InChoice> choice;
};

// Controller machine: in (state, memory), on an input, emit an output and move.
struct OutStrategy {
  struct Row {
    StateId state;
    unsigned memory;
    PropMask input, output;
    StateId next;
    unsigned next_memory;
  };
  unsigned memory_size = 1;
  std::vector<Row> rows;

  std::optional<Row> react(StateId q, unsigned m, PropMask input) const {
    for (const auto& r : rows)
      if (r.state == q && r.memory == m && r.input == input) return r;
    return std::nullopt;
  }
};

struct WinningReport {
  Player winner = Player::In;
  StateGame game;  // the arena strategies refer to
  std::optional<InMemorylessStrategy> in_strategy;
  std::optional<OutStrategy> out_strategy;
  std::size_t pg_vertices = 0;
};

enum class Engine { PgExact, PgFull, Direct };

namespace detail {

// Outputs that move q to p once the inputs are fixed.
inline std::optional<PropMask> output_towards(const Hog& g, StateId q, PropMask in_bits, StateId p) {
  for (const auto& t : g.arena.transitions) {
    if (t.src != q || t.dst != p) continue;
    if (auto v = sat(restrict(t.guard, g.in_mask, in_bits))) return v->bits & g.out_mask;
  }
  return std::nullopt;
}

// Tabulates a controller strategy given on `play` (P_G or a product over it).
inline OutStrategy out_machine(const StateGame& sg, const ClassicalGame& pg, const ClassicalGame& play,
                               const std::vector<unsigned>& base, const std::vector<int>& strategy) {
  const Hog& g = sg.hog;
  const unsigned k = static_cast<unsigned>(std::popcount(g.in_mask));
  std::map<std::pair<StateId, StateSet>, unsigned> pg_vertex;
  for (unsigned v = 0; v < pg.size(); ++v)
    if (pg.vertices[v].owner == Player::Out) pg_vertex[{pg.vertices[v].state, pg.vertices[v].set}] = v;
  std::map<unsigned, unsigned> memory;  // play vertex -> memory index for its state
  std::vector<unsigned> per_state(sg.size(), 0);
  std::vector<unsigned> todo;
  auto mem = [&](unsigned x) {
    auto [it, fresh] = memory.emplace(x, 0);
    if (fresh) {
      it->second = per_state[pg.vertices[base[x]].state]++;
      todo.push_back(x);
    }
    return it->second;
  };
  OutStrategy m;
  mem(play.initial);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const unsigned x = todo[i];
    const StateId q = pg.vertices[base[x]].state;
    for (PropMask c = 0; c < (PropMask{1} << k); ++c) {
      const PropMask bits = deposit(c, g.in_mask);
      const StateSet s = exact_successor_set(g, q, Valuation{g.in_mask, bits});
      const unsigned target = pg_vertex.at({q, s});
      auto y = std::find_if(play.succ[x].begin(), play.succ[x].end(), [&](unsigned w) { return base[w] == target; });
      if (y == play.succ[x].end()) throw std::logic_error("announcement missing from the play graph");
      // Past a reachability target the play is won whatever happens.
      int pick = strategy[*y];
      if (pick < 0 && sg.hog.acc.family() == Acceptance::Family::Reachability) pick = static_cast<int>(play.succ[*y].front());
      if (pick < 0) throw std::logic_error("controller strategy is undefined");
      const unsigned z = static_cast<unsigned>(pick);
      const StateId p = pg.vertices[base[z]].state;
      const PropMask out = output_towards(g, q, bits, p).value();
      m.rows.push_back({q, memory.at(x), bits, out, p, mem(z)});
    }
  }
  m.memory_size = *std::max_element(per_state.begin(), per_state.end());
  return m;
}

inline InMemorylessStrategy in_choices(const StateGame& sg, const ClassicalGame& pg, const std::vector<int>& choice) {
  InMemorylessStrategy s;
  for (StateId q = 0; q < sg.size(); ++q) {
    const int c = choice[q] >= 0 ? choice[q] : static_cast<int>(pg.succ[q].front());
    const auto& v = pg.vertices[static_cast<std::size_t>(c)];
    s.choice.push_back({Valuation{sg.hog.in_mask, v.witness}, v.set});
  }
  return s;
}

// Subgames of P_G written on state sets: Z holds the environment vertices
// still present; F holds states removed inside controller attractors, which
// announced sets must avoid. With an announced exact set E the controller
// picks from E ∩ Z; if that is empty the environment may pad E with any state
// of Z.
class DirectSolver {
 public:
  explicit DirectSolver(const StateGame& sg) : sg_(sg), wins_(condition_on_sets(sg.hog.acc)) {
    const Hog& g = sg.hog;
    const unsigned k = static_cast<unsigned>(std::popcount(g.in_mask));
    options_.resize(sg.size());
    for (StateId q = 0; q < sg.size(); ++q)
      for (PropMask c = 0; c < (PropMask{1} << k); ++c) {
        const StateSet s = exact_successor_set(g, q, Valuation{g.in_mask, deposit(c, g.in_mask)});
        if (std::find(options_[q].begin(), options_[q].end(), s) == options_[q].end()) options_[q].push_back(s);
      }
  }

  // Controller's winning region in the subgame (z, f).
  StateSet solve(StateSet z, StateSet f) const {
    if (!z) return 0;
    ColorSet c = 0;
    for (StateId q : members(z))
      if (sg_.color[q]) c |= color_bit(sg_.color[q]);
    const Player s = wins_(c) ? Player::Out : Player::In;
    const Player o = opponent(s);
    for (ColorSet d : flipping_children(c, wins_)) {
      StateSet y = 0;
      for (StateId q : members(z))
        if (sg_.color[q] && !has_color(d, sg_.color[q])) y |= state_bit(q);
      const StateSet a = attractor(z, f, y, s);
      const StateSet z1 = z & ~a;
      const StateSet out1 = solve(z1, s == Player::Out ? f | a : f);
      const StateSet opp1 = o == Player::Out ? out1 : z1 & ~out1;
      if (!opp1) continue;
      const StateSet b = attractor(z, f, opp1, o);
      const StateSet out2 = solve(z & ~b, o == Player::Out ? f | b : f);
      return o == Player::Out ? (b | out2) : out2;
    }
    return s == Player::Out ? z : 0;
  }

  StateSet attractor(StateSet z, StateSet f, StateSet x, Player p) const {
    StateSet res = x & z;
    for (bool grew = true; grew;) {
      grew = false;
      for (StateId q : members(z & ~res)) {
        bool in = p == Player::Out;
        for (StateSet e : options_[q]) {
          if (e & f) continue;
          const bool forced = (e & z) ? (p == Player::Out ? (e & res) != 0 : (e & z & ~res) == 0)
                                      : (p == Player::Out ? (z & ~res) == 0 : res != 0);
          if (p == Player::Out && !forced) in = false;
          if (p == Player::In && forced) in = true;
        }
        if (in) {
          res |= state_bit(q);
          grew = true;
        }
      }
    }
    return res;
  }

 private:
  const StateGame& sg_;
  std::function<bool(ColorSet)> wins_;
  std::vector<std::vector<StateSet>> options_;
};

}  // namespace detail

// Recursion on state sets of the arena; P_G is never built. Winner only.
inline WinningReport solve_hog_direct(const Hog& g) {
  using F = Acceptance::Family;
  if (g.acc.family() == F::Reachability || g.acc.family() == F::Safety)
    throw std::invalid_argument("the direct engine needs a condition on colors seen infinitely often");
  WinningReport r;
  r.game = state_game(g);
  const detail::DirectSolver solver(r.game);
  const StateSet out = solver.solve(r.game.all(), 0);
  r.winner = has_state(out, r.game.initial()) ? Player::Out : Player::In;
  return r;
}

inline WinningReport solve_hog(const Hog& g, Engine engine = Engine::PgExact, const Bounds& bounds = Bounds::from_env()) {
  if (engine == Engine::Direct) return solve_hog_direct(g);
  WinningReport r;
  r.game = state_game(g);
  const ClassicalGame pg = build_pg(r.game, engine == Engine::PgFull ? PgMode::Full : PgMode::Exact, bounds);
  r.pg_vertices = pg.size();
  const bool memoryless = has_memoryless_solution(g.acc);
  RecordProduct prod;
  if (!memoryless) prod = record_product(pg);
  const ClassicalGame& play = memoryless ? pg : prod.game;
  std::vector<unsigned> base(play.size());
  for (unsigned v = 0; v < play.size(); ++v) base[v] = memoryless ? v : prod.base[v];
  const Solution sol = solve_classical(play);
  r.winner = sol.winner[play.initial];
  if (r.winner == Player::Out) {
    r.out_strategy = detail::out_machine(r.game, pg, play, base, sol.strategy);
  } else if (g.acc.is_streett_class()) {
    const auto choice = memoryless ? sol.strategy : memoryless_by_restriction(pg, Player::In);
    r.in_strategy = detail::in_choices(r.game, pg, choice);
  }
  return r;
}

// ---- named-condition solvers on state sets ---------------------------------

// Controller's winning region for "only colors of S" as a greatest fixpoint.
inline StateSet solve_safety_hog(const StateGame& sg, ColorSet s) {
  StateSet safe = 0;
  for (StateId q = 0; q < sg.size(); ++q)
    if (!sg.color[q] || has_color(s, sg.color[q])) safe |= state_bit(q);
  StateSet x = safe;
  for (;;) {
    const StateSet next = safe & cpre(sg.hog, x, Player::Out);
    if (next == x) return x;
    x = next;
  }
}

// Controller's winning region for "some color of R" as a least fixpoint.
inline StateSet solve_reachability_hog(const StateGame& sg, ColorSet r) {
  StateSet target = 0;
  for (StateId q = 0; q < sg.size(); ++q)
    if (sg.color[q] && has_color(r, sg.color[q])) target |= state_bit(q);
  StateSet x = target;
  for (;;) {
    const StateSet next = target | cpre(sg.hog, x, Player::Out);
    if (next == x) return x;
    x = next;
  }
}

// ---- certification ---------------------------------------------------------

enum class Certification { Winning, NotWinning, Malformed };

inline const char* certification_name(Certification c) {
  switch (c) {
    case Certification::Winning: return "winning";
    case Certification::NotWinning: return "not winning";
    case Certification::Malformed: return "malformed";
  }
  return "?";
}

namespace detail {

// Conditions on a state-colored graph where the neutral color never hurts.
inline Acceptance neutral_safe(const Acceptance& acc) {
  if (acc.family() == Acceptance::Family::Safety) return Acceptance::safety(acc.set() | color_bit(0));
  return acc;
}

}  // namespace detail

// Checks an environment strategy: every announced set is forced by its input,
// and no play it allows from the initial state is won by the controller.
inline Certification certify_in_strategy(const Hog& g, const InMemorylessStrategy& s) {
  const StateGame sg = state_game(g);
  if (s.choice.size() != sg.size()) return Certification::Malformed;
  ColorGraph h{sg.size(), {}};
  for (StateId q = 0; q < sg.size(); ++q) {
    const auto& c = s.choice[q];
    if (!c.set) return Certification::Malformed;
    const Formula stay = restrict(guard_into(sg.hog, q, c.set), sg.hog.in_mask, c.input.bits & sg.hog.in_mask);
    if (sat(Formula::neg(stay))) return Certification::Malformed;
    for (StateId p : members(c.set)) h.edges.push_back({q, p, sg.color[q]});
  }
  const auto lasso = graph_lasso(h, {sg.initial()}, detail::neutral_safe(sg.hog.acc));
  return lasso ? Certification::NotWinning : Certification::Winning;
}

// Per state, all states from most to least preferred.
struct OrderProfile {
  std::vector<std::vector<StateId>> order;
};

// Turns a memoryless controller strategy on a P_G built by set into per-state
// orders: repeatedly take the first remaining announced set, rank the chosen
// state next and drop every set containing it.
inline OrderProfile extract_order_profile(const ClassicalGame& full_pg, const std::vector<int>& out_choice) {
  unsigned n = 0;
  while (n < full_pg.size() && full_pg.vertices[n].owner == Player::In) ++n;
  OrderProfile prof;
  for (StateId q = 0; q < n; ++q) {
    std::vector<unsigned> remaining;
    for (unsigned v = n; v < full_pg.size(); ++v)
      if (full_pg.vertices[v].state == q) remaining.push_back(v);
    std::vector<StateId> order;
    StateSet placed = 0;
    while (!remaining.empty()) {
      const int c = out_choice.at(remaining.front());
      if (c < 0) throw std::invalid_argument("strategy has no choice at a controller vertex");
      const StateId p = full_pg.vertices[static_cast<std::size_t>(c)].state;
      order.push_back(p);
      placed |= state_bit(p);
      std::erase_if(remaining, [&](unsigned v) { return has_state(full_pg.vertices[v].set, p); });
    }
    for (StateId p = 0; p < n; ++p)
      if (!has_state(placed, p)) order.push_back(p);
    prof.order.push_back(std::move(order));
  }
  return prof;
}

// Graph of moves the controller can make when always taking the most preferred
// offered state: q -> q' iff the set of states ranked at or below q' is q-good.
// The profile wins iff no path from the initial state violates the condition.
inline bool verify_order_profile(const Hog& g, const OrderProfile& prof) {
  using F = Acceptance::Family;
  if (g.acc.family() == F::Reachability || g.acc.family() == F::Safety)
    throw std::invalid_argument("order profiles need a condition on colors seen infinitely often");
  const StateGame sg = state_game(g);
  if (prof.order.size() != sg.size()) throw std::invalid_argument("profile size differs from the game");
  ColorGraph h{sg.size(), {}};
  for (StateId q = 0; q < sg.size(); ++q) {
    StateSet below = 0;
    const auto& ord = prof.order[q];
    for (std::size_t i = ord.size(); i-- > 0;) {
      below |= state_bit(ord[i]);
      if (is_q_good(sg.hog, q, below)) h.edges.push_back({q, ord[i], sg.color[q]});
    }
  }
  return !graph_lasso(h, {sg.initial()}, negate(sg.hog.acc));
}

// P_G over successor sets, a memoryless winning controller strategy on it, and
// its order profile; nullopt when the environment wins.
inline std::optional<OrderProfile> controller_order_profile(const Hog& g, const Bounds& bounds = Bounds::from_env()) {
  const ClassicalGame full = build_pg(g, PgMode::Successors, bounds);
  if (solve_classical(full).winner[full.initial] != Player::Out) return std::nullopt;
  return extract_order_profile(full, memoryless_by_restriction(full, Player::Out));
}

// ---- hardness fixtures -----------------------------------------------------

struct QbfGames {
  Hog reachability, safety;
};

// For ∀x ∃y φ: from state 0, φ leads to state 2 with color 2 and ¬φ to state 1
// with color 1; both targets loop in their color. The controller wins with
// R = {2} (or S = {2}) iff the formula is true.
inline QbfGames hog_from_qbf2(const std::vector<std::string>& props, PropMask x, PropMask y, const Formula& phi) {
  Hog g;
  g.arena.aps = props;
  g.in_mask = x;
  g.out_mask = y;
  g.arena.num_states = 3;
  g.arena.initial = {0};
  g.arena.add_transition(0, phi, 2, 2);
  g.arena.add_transition(0, Formula::neg(phi), 1, 1);
  g.arena.add_transition(1, Formula::top(), 1, 1);
  g.arena.add_transition(2, Formula::top(), 2, 2);
  g.validate();
  QbfGames out{g, g};
  out.reachability.acc = Acceptance::reachability(color_bit(2));
  out.safety.acc = Acceptance::safety(color_bit(2));
  return out;
}

}  // namespace hoa
