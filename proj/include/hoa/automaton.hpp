#pragma once

// Transition-colored automata over propositional guards, the colored-graph
// view used by every fixpoint and cycle search, and the data shape of games.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "bounds.hpp"
#include "formula.hpp"

namespace hoa {

using StateId = unsigned;
inline constexpr std::size_t kNoTransition = std::numeric_limits<std::size_t>::max();

struct Transition {
  StateId src = 0;
  Formula guard;
  StateId dst = 0;
  Color color = 1;
};

struct MalformedAutomaton : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Hoa {
  unsigned num_states = 0;
  std::vector<StateId> initial;
  std::vector<std::string> aps;
  std::vector<Transition> transitions;
  unsigned d = 0;  // colors range over 1..d
  std::string name;

  unsigned num_aps() const { return static_cast<unsigned>(aps.size()); }
  PropMask ap_mask() const { return low_mask(num_aps()); }
  std::size_t size() const { return num_states + transitions.size(); }

  StateId add_state() { return num_states++; }
  void add_transition(StateId src, Formula guard, StateId dst, Color color) {
    transitions.push_back({src, std::move(guard), dst, color});
    d = std::max<unsigned>(d, color);
  }

  std::vector<std::vector<std::size_t>> outgoing() const {
    std::vector<std::vector<std::size_t>> out(num_states);
    for (std::size_t i = 0; i < transitions.size(); ++i) out[transitions[i].src].push_back(i);
    return out;
  }

  void validate() const {
    if (num_aps() > kMaxProps) throw MalformedAutomaton("more than 64 atomic propositions");
    if (d > kMaxColor) throw MalformedAutomaton("more than 63 colors");
    for (StateId q : initial)
      if (q >= num_states) throw MalformedAutomaton("initial state " + std::to_string(q) + " out of range");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const auto& t = transitions[i];
      if (t.src >= num_states || t.dst >= num_states)
        throw MalformedAutomaton("transition " + std::to_string(i) + " has an endpoint out of range");
      if (t.color < 1 || t.color > d)
        throw MalformedAutomaton("transition " + std::to_string(i) + " has color " + std::to_string(t.color) +
                                 " outside 1.." + std::to_string(d));
      if (t.guard.atoms() & ~ap_mask())
        throw MalformedAutomaton("transition " + std::to_string(i) + " mentions an undeclared proposition");
    }
  }
};

// A game: an automaton whose propositions are split between the environment
// (inputs, chosen first) and the controller (outputs).
struct Hog {
  Hoa arena;
  PropMask in_mask = 0;
  PropMask out_mask = 0;
  Acceptance acc;

  void validate() const {
    arena.validate();
    if (in_mask & out_mask) throw MalformedAutomaton("input and output propositions overlap");
    if ((in_mask | out_mask) != arena.ap_mask())
      throw MalformedAutomaton("input and output propositions must partition the alphabet");
  }
};

// Every valuation enables at least one transition in every state.
inline bool is_complete(const Hoa& a) {
  auto out = a.outgoing();
  for (StateId q = 0; q < a.num_states; ++q) {
    std::vector<Formula> negs;
    for (std::size_t i : out[q]) negs.push_back(Formula::neg(a.transitions[i].guard));
    if (sat(Formula::conj(std::move(negs)))) return false;
  }
  return true;
}

// At most one initial state and pairwise disjoint guards per state.
inline bool is_deterministic(const Hoa& a) {
  if (a.initial.size() > 1) return false;
  auto out = a.outgoing();
  for (StateId q = 0; q < a.num_states; ++q)
    for (std::size_t i = 0; i < out[q].size(); ++i)
      for (std::size_t j = i + 1; j < out[q].size(); ++j)
        if (sat(Formula::conj(a.transitions[out[q][i]].guard, a.transitions[out[q][j]].guard))) return false;
  return true;
}

// All transitions of q enabled by the letter (bits over all propositions).
inline std::vector<std::size_t> successors(const Hoa& a, StateId q, PropMask letter) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    if (a.transitions[i].src == q && eval_bits(a.transitions[i].guard, letter)) out.push_back(i);
  return out;
}

// ---- colored graphs --------------------------------------------------------

struct ColorGraph {
  struct Edge {
    unsigned src, dst;
    Color color;
  };
  unsigned num_nodes = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<std::size_t>> outgoing() const {
    std::vector<std::vector<std::size_t>> out(num_nodes);
    for (std::size_t i = 0; i < edges.size(); ++i) out[edges[i].src].push_back(i);
    return out;
  }
};

inline ColorGraph color_graph(const Hoa& a) {
  ColorGraph g{a.num_states, {}};
  for (const auto& t : a.transitions) g.edges.push_back({t.src, t.dst, t.color});
  return g;
}

// Edge indices; the cycle is nonempty and closes on itself, the prefix leads
// from a start node to the cycle's first node.
struct GraphLasso {
  std::vector<std::size_t> prefix, cycle;
};

// Strongly connected components (iterative Tarjan) over the edges for which
// `keep` holds. comp[v] = -1 for nodes outside `nodes`.
inline std::vector<int> scc_decompose(const ColorGraph& g, const std::vector<char>& nodes,
                                      const std::function<bool(std::size_t)>& keep, int* count = nullptr) {
  const unsigned n = g.num_nodes;
  auto out = g.outgoing();
  std::vector<int> comp(n, -1), index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<unsigned> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    unsigned v;
    std::size_t pos;
  };
  for (unsigned root = 0; root < n; ++root) {
    if (!nodes[root] || index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.pos < out[f.v].size()) {
        std::size_t e = out[f.v][f.pos++];
        if (!keep(e)) continue;
        unsigned w = g.edges[e].dst;
        if (!nodes[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      unsigned v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        unsigned w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
    }
  }
  if (count) *count = next_comp;
  return comp;
}

namespace detail {

// Shortest path of edges from any node in `from` to `to`, restricted to edges
// accepted by `ok`. Empty if `to` is already in `from`.
inline std::optional<std::vector<std::size_t>> bfs_path(const ColorGraph& g,
                                                        const std::vector<std::vector<std::size_t>>& out,
                                                        const std::vector<unsigned>& from, unsigned to,
                                                        const std::function<bool(std::size_t)>& ok) {
  std::vector<std::size_t> via(g.num_nodes, kNoTransition);
  std::vector<char> seen(g.num_nodes, 0);
  std::deque<unsigned> queue;
  for (unsigned s : from)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty() && !seen[to]) {
    unsigned v = queue.front();
    queue.pop_front();
    for (std::size_t e : out[v]) {
      if (!ok(e)) continue;
      unsigned w = g.edges[e].dst;
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = e;
      queue.push_back(w);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<std::size_t> path;
  for (unsigned v = to; via[v] != kNoTransition; v = g.edges[via[v]].src) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::vector<char> reachable(const ColorGraph& g, const std::vector<unsigned>& from) {
  auto out = g.outgoing();
  std::vector<char> seen(g.num_nodes, 0);
  std::vector<unsigned> stack;
  for (unsigned s : from)
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    unsigned v = stack.back();
    stack.pop_back();
    for (std::size_t e : out[v]) {
      unsigned w = g.edges[e].dst;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Lasso whose cycle avoids `fin` and meets every set in `infs`.
inline std::optional<GraphLasso> conjunct_lasso(const ColorGraph& g, const std::vector<unsigned>& starts,
                                                const Conjunct& c) {
  auto out = g.outgoing();
  auto reach = reachable(g, starts);
  auto allowed = [&](std::size_t e) { return !has_color(c.fin, g.edges[e].color); };
  int ncomp = 0;
  auto comp = scc_decompose(g, reach, allowed, &ncomp);
  std::vector<std::vector<std::size_t>> internal(static_cast<std::size_t>(ncomp));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (comp[ed.src] >= 0 && comp[ed.src] == comp[ed.dst] && allowed(e))
      internal[static_cast<std::size_t>(comp[ed.src])].push_back(e);
  }
  for (int k = 0; k < ncomp; ++k) {
    const auto& edges = internal[static_cast<std::size_t>(k)];
    if (edges.empty()) continue;
    std::vector<std::size_t> required;
    bool ok = true;
    for (ColorSet s : c.infs) {
      auto it = std::find_if(edges.begin(), edges.end(), [&](std::size_t e) { return has_color(s, g.edges[e].color); });
      if (it == edges.end()) {
        ok = false;
        break;
      }
      required.push_back(*it);
    }
    if (!ok) continue;
    if (required.empty()) required.push_back(edges.front());
    auto inside = [&](std::size_t e) {
      return allowed(e) && comp[g.edges[e].src] == k && comp[g.edges[e].dst] == k;
    };
    GraphLasso l;
    const unsigned anchor = g.edges[required.front()].src;
    unsigned cur = anchor;
    for (std::size_t e : required) {
      auto p = bfs_path(g, out, {cur}, g.edges[e].src, inside);
      l.cycle.insert(l.cycle.end(), p->begin(), p->end());
      l.cycle.push_back(e);
      cur = g.edges[e].dst;
    }
    auto back = bfs_path(g, out, {cur}, anchor, inside);
    l.cycle.insert(l.cycle.end(), back->begin(), back->end());
    l.prefix = *bfs_path(g, out, starts, anchor, [](std::size_t) { return true; });
    return l;
  }
  return std::nullopt;
}

}  // namespace detail

// Accepting lasso of the colored graph under `acc`, if one exists.
inline std::optional<GraphLasso> graph_lasso(const ColorGraph& g, const std::vector<unsigned>& starts,
                                             const Acceptance& acc) {
  using F = Acceptance::Family;
  if (acc.family() == F::Safety) {
    // Stay inside S-colored edges; any cycle will do.
    ColorGraph h{g.num_nodes, {}};
    std::vector<std::size_t> origin;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (has_color(acc.set(), g.edges[e].color)) {
        h.edges.push_back(g.edges[e]);
        origin.push_back(e);
      }
    auto l = detail::conjunct_lasso(h, starts, Conjunct{});
    if (!l) return std::nullopt;
    for (auto& e : l->prefix) e = origin[e];
    for (auto& e : l->cycle) e = origin[e];
    return l;
  }
  if (acc.family() == F::Reachability) {
    // Two layers: layer 1 is entered by an R-colored edge and never left.
    const unsigned n = g.num_nodes;
    ColorGraph h{2 * n, {}};
    std::vector<std::size_t> origin;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& ed = g.edges[e];
      const bool hit = has_color(acc.set(), ed.color);
      h.edges.push_back({ed.src, hit ? ed.dst + n : ed.dst, 1});
      h.edges.push_back({ed.src + n, ed.dst + n, 2});
      origin.push_back(e);
      origin.push_back(e);
    }
    auto l = detail::conjunct_lasso(h, starts, Conjunct{{color_bit(2)}, 0});
    if (!l) return std::nullopt;
    for (auto& e : l->prefix) e = origin[e];
    for (auto& e : l->cycle) e = origin[e];
    return l;
  }
  for (const auto& c : dnf(acc.to_el()))
    if (auto l = detail::conjunct_lasso(g, starts, c)) return l;
  return std::nullopt;
}

// Color trace of a graph lasso.
inline ColorTrace lasso_trace(const ColorGraph& g, const GraphLasso& l) {
  ColorTrace t;
  for (std::size_t e : l.cycle) t.occ_inf |= color_bit(g.edges[e].color);
  t.elem = t.occ_inf;
  for (std::size_t e : l.prefix) t.elem |= color_bit(g.edges[e].color);
  return t;
}

// Letter-labeled automaton: one edge per (transition, satisfying letter).
struct ExplicitAutomaton {
  struct Edge {
    StateId src;
    PropMask letter;
    StateId dst;
    Color color;
    std::size_t origin;
  };
  unsigned num_states = 0;
  unsigned num_aps = 0;
  unsigned d = 0;
  std::vector<StateId> initial;
  std::vector<Edge> edges;

  ColorGraph graph() const {
    ColorGraph g{num_states, {}};
    for (const auto& e : edges) g.edges.push_back({e.src, e.dst, e.color});
    return g;
  }
};

inline ExplicitAutomaton expand_explicit(const Hoa& a, unsigned max_aps = Bounds::from_env().max_aps) {
  if (a.num_aps() > max_aps) throw BoundExceeded("atomic propositions", a.num_aps(), max_aps);
  ExplicitAutomaton x{a.num_states, a.num_aps(), a.d, a.initial, {}};
  const PropMask letters = PropMask{1} << a.num_aps();
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    for (PropMask l = 0; l < letters; ++l)
      if (eval_bits(t.guard, l)) x.edges.push_back({t.src, l, t.dst, t.color, i});
  }
  return x;
}

}  // namespace hoa
