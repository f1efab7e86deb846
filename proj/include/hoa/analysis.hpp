#pragma once

// Emptiness with lasso witnesses, lasso shortening, and desk-scale language
// inclusion over transition profiles.

#include <map>

#include "transforms.hpp"

namespace hoa {

struct LassoStep {
  std::size_t transition;
  Valuation val;
};

// An ultimately periodic run: prefix, then cycle repeated forever.
struct Lasso {
  std::vector<LassoStep> prefix, cycle;
};

struct InvalidLasso : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyLanguage : std::runtime_error {
  EmptyLanguage() : std::runtime_error("the language is empty") {}
};

inline void validate_lasso(const Hoa& a, const Lasso& l) {
  if (l.cycle.empty()) throw InvalidLasso("cycle is empty");
  const auto& first = l.prefix.empty() ? l.cycle.front() : l.prefix.front();
  auto src = [&](const LassoStep& s) -> StateId {
    if (s.transition >= a.transitions.size()) throw InvalidLasso("transition index out of range");
    return a.transitions[s.transition].src;
  };
  if (std::find(a.initial.begin(), a.initial.end(), src(first)) == a.initial.end())
    throw InvalidLasso("lasso does not start in an initial state");
  std::optional<StateId> at;
  auto step = [&](const LassoStep& s) {
    const auto& t = a.transitions[s.transition];
    if (at && *at != src(s)) throw InvalidLasso("consecutive transitions do not chain");
    if (t.guard.atoms() & ~s.val.domain) throw InvalidLasso("valuation misses a guard proposition");
    if (!eval(t.guard, s.val)) throw InvalidLasso("valuation violates its guard");
    at = t.dst;
  };
  for (const auto& s : l.prefix) step(s);
  for (const auto& s : l.cycle) step(s);
  if (*at != src(l.cycle.front())) throw InvalidLasso("cycle does not close");
}

inline ColorTrace lasso_trace(const Hoa& a, const Lasso& l) {
  ColorTrace t;
  for (const auto& s : l.cycle) t.occ_inf |= color_bit(a.transitions[s.transition].color);
  t.elem = t.occ_inf;
  for (const auto& s : l.prefix) t.elem |= color_bit(a.transitions[s.transition].color);
  return t;
}

// `(state,bits,color)` steps, prefix and cycle separated by `|`. Bit i of the
// valuation string is proposition i.
inline std::string format_lasso(const Hoa& a, const Lasso& l) {
  auto step = [&](const LassoStep& s) {
    const auto& t = a.transitions[s.transition];
    std::string bits;
    for (unsigned p = 0; p < a.num_aps(); ++p) bits.push_back(((s.val.bits >> p) & 1) ? '1' : '0');
    if (bits.empty()) bits = "-";
    return "(" + std::to_string(t.src) + "," + bits + "," + std::to_string(t.color) + ")";
  };
  std::string out;
  for (const auto& s : l.prefix) out += step(s) + " ";
  out += "|";
  for (const auto& s : l.cycle) out += " " + step(s);
  return out;
}

struct Emptiness {
  bool empty = true;
  std::optional<Lasso> witness;
};

namespace detail {

inline Valuation full_valuation(const Hoa& a, const Formula& guard) {
  auto v = sat(guard);
  if (!v) throw std::logic_error("unsatisfiable guard on a witness");
  return Valuation{a.ap_mask(), v->bits & a.ap_mask()};
}

// Follows the first outgoing transition until a state repeats.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> greedy_lasso(const Hoa& a, StateId from) {
  auto out = a.outgoing();
  std::vector<std::size_t> path;
  std::map<StateId, std::size_t> seen;
  StateId q = from;
  while (!seen.count(q)) {
    seen[q] = path.size();
    if (out[q].empty()) throw std::logic_error("dead end in a complete automaton");
    path.push_back(out[q].front());
    q = a.transitions[out[q].front()].dst;
  }
  const std::size_t j = seen[q];
  return {std::vector<std::size_t>(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j)),
          std::vector<std::size_t>(path.begin() + static_cast<std::ptrdiff_t>(j), path.end())};
}

}  // namespace detail

inline Emptiness is_empty(const Hoa& a, const Acceptance& acc) {
  // Drop transitions no valuation can take.
  Hoa pruned = a;
  pruned.transitions.clear();
  std::vector<std::size_t> to_input;
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    if (sat(a.transitions[i].guard)) {
      pruned.transitions.push_back(a.transitions[i]);
      to_input.push_back(i);
    }

  std::vector<std::size_t> prefix, cycle;  // pruned transition indices
  using F = Acceptance::Family;
  if (acc.family() == F::Reachability || acc.family() == F::Safety) {
    Transformed t = acc.family() == F::Reachability ? reach_to_buchi(pruned, acc.set())
                                                    : safety_to_cobuchi(pruned, acc.set());
    auto gl = graph_lasso(color_graph(t.aut), t.aut.initial, t.acc);
    if (!gl) return {};
    // Steps that exist only in the surgery output (the sink) are cut off and the
    // run is continued inside the input, which is complete in that case.
    std::vector<std::size_t> steps = gl->prefix;
    steps.insert(steps.end(), gl->cycle.begin(), gl->cycle.end());
    auto cut = std::find_if(steps.begin(), steps.end(), [&](std::size_t e) { return t.origin[e] == kNoTransition; });
    if (cut == steps.end()) {
      for (std::size_t e : gl->prefix) prefix.push_back(t.origin[e]);
      for (std::size_t e : gl->cycle) cycle.push_back(t.origin[e]);
    } else {
      if (acc.family() == F::Safety) throw std::logic_error("safety witness enters the rejecting sink");
      for (auto it = steps.begin(); it != cut; ++it) prefix.push_back(t.origin[*it]);
      const StateId from = pruned.transitions[prefix.back()].dst;
      auto [more, loop] = detail::greedy_lasso(pruned, from);
      prefix.insert(prefix.end(), more.begin(), more.end());
      cycle = loop;
    }
  } else {
    auto gl = graph_lasso(color_graph(pruned), pruned.initial, acc);
    if (!gl) return {};
    prefix = gl->prefix;
    cycle = gl->cycle;
  }
  Lasso l;
  for (std::size_t e : prefix) l.prefix.push_back({to_input[e], detail::full_valuation(a, pruned.transitions[e].guard)});
  for (std::size_t e : cycle) l.cycle.push_back({to_input[e], detail::full_valuation(a, pruned.transitions[e].guard)});
  return {false, std::move(l)};
}

namespace detail {

// Removes subsegments between consecutive visits of the same state while the
// segment's color set stays the same. `closing` is the state reached after the
// segment's last step.
inline void shrink_segment(const Hoa& a, std::vector<LassoStep>& seg, StateId closing, bool keep_nonempty) {
  auto color_set = [&](const std::vector<LassoStep>& s, std::size_t skip_from, std::size_t skip_to) {
    ColorSet c = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i < skip_from || i >= skip_to) c |= color_bit(a.transitions[s[i].transition].color);
    return c;
  };
  for (bool changed = true; changed;) {
    changed = false;
    const ColorSet target = color_set(seg, 0, 0);
    auto state_at = [&](std::size_t pos) { return pos < seg.size() ? a.transitions[seg[pos].transition].src : closing; };
    for (StateId q = 0; q < a.num_states && !changed; ++q) {
      std::vector<std::size_t> occ;
      for (std::size_t pos = 0; pos <= seg.size(); ++pos)
        if (state_at(pos) == q) occ.push_back(pos);
      for (std::size_t k = 0; k + 1 < occ.size() && !changed; ++k) {
        const std::size_t from = occ[k], to = occ[k + 1];
        if (keep_nonempty && to - from == seg.size()) continue;
        if (color_set(seg, from, to) != target) continue;
        seg.erase(seg.begin() + static_cast<std::ptrdiff_t>(from), seg.begin() + static_cast<std::ptrdiff_t>(to));
        changed = true;
      }
    }
  }
}

}  // namespace detail

// For state-based automata: the result has at most |Q|² steps in each part and
// the same color sets in prefix and cycle.
inline Lasso shrink_lasso(const Hoa& a, const Lasso& l) {
  if (!is_state_based(a)) throw InvalidLasso("shrinking needs a state-based automaton");
  validate_lasso(a, l);
  Lasso out = l;
  const StateId cycle_start = a.transitions[out.cycle.front().transition].src;
  detail::shrink_segment(a, out.cycle, cycle_start, true);
  detail::shrink_segment(a, out.prefix, cycle_start, false);
  return out;
}

struct LassoBoundReport {
  std::size_t prefix_length = 0, cycle_length = 0, bound = 0;
  bool holds = false;
  Lasso lasso;  // over the state-based automaton
  StateBased state_based;
};

inline LassoBoundReport check_lasso_bound(const Hoa& a, const Acceptance& acc) {
  LassoBoundReport r;
  r.state_based = to_state_based(a);
  auto e = is_empty(r.state_based.aut, acc);
  if (e.empty) throw EmptyLanguage();
  r.lasso = shrink_lasso(r.state_based.aut, *e.witness);
  r.prefix_length = r.lasso.prefix.size();
  r.cycle_length = r.lasso.cycle.size();
  const std::size_t side = std::size_t{a.num_states} * a.d;
  r.bound = side * side;
  r.holds = r.prefix_length <= r.bound && r.cycle_length <= r.bound;
  return r;
}

// ---- words and membership --------------------------------------------------

// Letters are bit vectors over all propositions.
struct WordLasso {
  std::vector<PropMask> prefix, cycle;
};

// An accepting run of `a` on u v^ω, if one exists.
inline std::optional<Lasso> accepting_run(const Hoa& a, const Acceptance& acc, const WordLasso& w) {
  if (w.cycle.empty()) throw std::invalid_argument("word cycle is empty");
  const unsigned len = static_cast<unsigned>(w.prefix.size() + w.cycle.size());
  auto letter = [&](unsigned pos) { return pos < w.prefix.size() ? w.prefix[pos] : w.cycle[pos - w.prefix.size()]; };
  auto next = [&](unsigned pos) { return pos + 1 < len ? pos + 1 : static_cast<unsigned>(w.prefix.size()); };
  ColorGraph g{a.num_states * len, {}};
  std::vector<std::pair<std::size_t, unsigned>> edge_info;
  for (unsigned pos = 0; pos < len; ++pos)
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
      const auto& t = a.transitions[i];
      if (!eval_bits(t.guard, letter(pos))) continue;
      g.edges.push_back({t.src * len + pos, t.dst * len + next(pos), t.color});
      edge_info.push_back({i, pos});
    }
  std::vector<unsigned> starts;
  for (StateId q : a.initial) starts.push_back(q * len);
  auto gl = graph_lasso(g, starts, acc);
  if (!gl) return std::nullopt;
  Lasso l;
  auto step = [&](std::size_t e) {
    return LassoStep{edge_info[e].first, Valuation{a.ap_mask(), letter(edge_info[e].second) & a.ap_mask()}};
  };
  for (std::size_t e : gl->prefix) l.prefix.push_back(step(e));
  for (std::size_t e : gl->cycle) l.cycle.push_back(step(e));
  return l;
}

// ---- inclusion -------------------------------------------------------------

struct Inclusion {
  bool included = true;
  std::optional<WordLasso> word;  // in L(A) \ L(B)
  std::optional<Lasso> run;       // accepting run of A on `word`
};

namespace detail {

// Büchi automaton restricted to states that are reachable and can still reach
// an accepting cycle, recolored to 1 (accepting) and 2.
inline Hoa trim_buchi(const Hoa& a, ColorSet accepting) {
  auto g = color_graph(a);
  auto reach = detail::reachable(g, a.initial);
  // Backward closure from nodes on accepting cycles.
  std::vector<char> good(a.num_states, 0);
  int ncomp = 0;
  auto comp = scc_decompose(g, std::vector<char>(a.num_states, 1), [](std::size_t) { return true; }, &ncomp);
  for (const auto& e : g.edges)
    if (comp[e.src] == comp[e.dst] && has_color(accepting, e.color)) good[e.src] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : g.edges)
      if (good[e.dst] && !good[e.src]) good[e.src] = grew = true;
  }
  std::vector<StateId> id(a.num_states, static_cast<StateId>(-1));
  Hoa out;
  out.aps = a.aps;
  for (StateId q = 0; q < a.num_states; ++q)
    if (reach[q] && good[q]) id[q] = out.add_state();
  for (StateId q : a.initial)
    if (id[q] != static_cast<StateId>(-1)) out.initial.push_back(id[q]);
  out.d = 2;
  for (const auto& t : a.transitions)
    if (id[t.src] != static_cast<StateId>(-1) && id[t.dst] != static_cast<StateId>(-1))
      out.transitions.push_back({id[t.src], t.guard, id[t.dst], has_color(accepting, t.color) ? 1u : 2u});
  return out;
}

// Transition profiles of a Büchi automaton with accepting color 1: entry
// (p,q) is 0 (no path), 1 (a path) or 2 (a path through an accepting edge).
// The profiles of nonempty words form a finite monoid; index 0 stands for the
// empty word and is kept apart from the classes of nonempty words.
class ProfileMonoid {
 public:
  using Profile = std::vector<std::uint8_t>;

  ProfileMonoid(const Hoa& b, unsigned aps, std::size_t cap) : n_(b.num_states), letters_(PropMask{1} << aps) {
    profiles_.push_back(Profile(n_ * n_, 0));
    for (StateId q = 0; q < n_; ++q) profiles_[0][q * n_ + q] = 1;
    letter_profile_.assign(letters_, Profile(n_ * n_, 0));
    for (const auto& t : b.transitions)
      for (PropMask l = 0; l < letters_; ++l)
        if (eval_bits(t.guard, l)) {
          auto& e = letter_profile_[l][t.src * n_ + t.dst];
          e = std::max<std::uint8_t>(e, t.color == 1 ? 2 : 1);
        }
    for (std::size_t i = 0; i < profiles_.size(); ++i) {
      next_.emplace_back(letters_, 0);
      for (PropMask l = 0; l < letters_; ++l) {
        auto [it, fresh] = index_.emplace(multiply(profiles_[i], letter_profile_[l]), profiles_.size());
        if (fresh) {
          profiles_.push_back(it->first);
          if (profiles_.size() > cap) throw BoundExceeded("transition profiles", profiles_.size(), cap);
        }
        next_[i][l] = it->second;
      }
    }
  }

  std::size_t size() const { return profiles_.size(); }
  std::size_t step(std::size_t m, PropMask letter) const { return next_[m][letter]; }
  std::size_t product(std::size_t x, std::size_t y) const { return index_.at(multiply(profiles_[x], profiles_[y])); }

  // Does the automaton accept words of the form Y E^ω?
  bool accepts(const std::vector<StateId>& initial, std::size_t y, std::size_t e) const {
    for (StateId p : initial)
      for (StateId q = 0; q < n_; ++q)
        if (profiles_[y][p * n_ + q] && profiles_[e][q * n_ + q] == 2) return true;
    return false;
  }

 private:
  Profile multiply(const Profile& x, const Profile& y) const {
    Profile z(n_ * n_, 0);
    for (unsigned p = 0; p < n_; ++p)
      for (unsigned r = 0; r < n_; ++r) {
        if (!x[p * n_ + r]) continue;
        for (unsigned q = 0; q < n_; ++q)
          if (y[r * n_ + q]) z[p * n_ + q] = std::max<std::uint8_t>(z[p * n_ + q], std::max(x[p * n_ + r], y[r * n_ + q]));
      }
    return z;
  }

  unsigned n_;
  PropMask letters_;
  std::vector<Profile> profiles_, letter_profile_;
  std::map<Profile, std::size_t> index_;
  std::vector<std::vector<std::size_t>> next_;
};

}  // namespace detail

// L(A) ⊆ L(B)? Both sides become Büchi automata. Every word lies in some
// Y E^ω with E idempotent and Y E = Y over B's profile monoid, and B's verdict
// is constant on each such set, so A is searched for a word in a set B rejects.
inline Inclusion included(const Hoa& a, const Acceptance& acc_a, const Hoa& b, const Acceptance& acc_b,
                          const Bounds& bounds = Bounds::from_env()) {
  if (a.num_aps() != b.num_aps()) throw std::invalid_argument("inclusion needs the same propositions on both sides");
  if (a.num_aps() > bounds.inclusion_aps) throw BoundExceeded("atomic propositions", a.num_aps(), bounds.inclusion_aps);
  const Transformed ba = to_buchi(a, acc_a);
  const Transformed bb = to_buchi(b, acc_b);
  const Hoa trimmed = detail::trim_buchi(bb.aut, bb.acc.set());
  if (trimmed.num_states > bounds.inclusion_states)
    throw BoundExceeded("states of the complemented side", trimmed.num_states, bounds.inclusion_states);
  const detail::ProfileMonoid mon(trimmed, a.num_aps(), bounds.max_product_states);
  const ExplicitAutomaton xa = expand_explicit(ba.aut, bounds.max_aps);
  const std::size_t m = mon.size();
  const Acceptance both = Acceptance::emerson_lei(
      AccFormula::conj(AccFormula::inf(color_bit(2) | color_bit(4)), AccFormula::inf(color_bit(3) | color_bit(4))));

  for (std::size_t e = 1; e < m; ++e) {
    if (mon.product(e, e) != e) continue;
    std::vector<char> prefix_ok(m, 0);
    bool any = false;
    for (std::size_t y = 1; y < m; ++y)
      if (mon.product(y, e) == y && !mon.accepts(trimmed.initial, y, e)) prefix_ok[y] = any = true;
    if (!any) continue;
    // Nodes: phase (reading Y or an E block) x A state x profile so far.
    auto node = [&](unsigned phase, StateId q, std::size_t p) {
      return static_cast<unsigned>((phase * xa.num_states + q) * m + p);
    };
    ColorGraph g{static_cast<unsigned>(2 * xa.num_states * m), {}};
    if (g.num_nodes > bounds.max_product_states)
      throw BoundExceeded("product states", g.num_nodes, bounds.max_product_states);
    std::vector<PropMask> letter;
    for (const auto& ed : xa.edges) {
      const unsigned acc_bit = has_color(ba.acc.set(), ed.color) ? 1 : 0;
      for (std::size_t p = 0; p < m; ++p) {
        const std::size_t p2 = mon.step(p, ed.letter);
        g.edges.push_back({node(0, ed.src, p), node(0, ed.dst, p2), 1});
        letter.push_back(ed.letter);
        if (prefix_ok[p2]) {
          g.edges.push_back({node(0, ed.src, p), node(1, ed.dst, 0), 1});
          letter.push_back(ed.letter);
        }
        g.edges.push_back({node(1, ed.src, p), node(1, ed.dst, p2), 1 + acc_bit});
        letter.push_back(ed.letter);
        if (p2 == e) {
          g.edges.push_back({node(1, ed.src, p), node(1, ed.dst, 0), 3 + acc_bit});
          letter.push_back(ed.letter);
        }
      }
    }
    std::vector<unsigned> starts;
    for (StateId q : xa.initial) starts.push_back(node(0, q, 0));
    auto gl = graph_lasso(g, starts, both);
    if (!gl) continue;
    Inclusion r;
    r.included = false;
    WordLasso w;
    for (std::size_t i : gl->prefix) w.prefix.push_back(letter[i]);
    for (std::size_t i : gl->cycle) w.cycle.push_back(letter[i]);
    r.run = accepting_run(a, acc_a, w);
    if (!r.run) throw std::logic_error("inclusion counterexample is not accepted by the left automaton");
    r.word = std::move(w);
    return r;
  }
  return {};
}

// ---- hardness fixture ------------------------------------------------------

// Two states: φ moves from 0 to 1 with color 2, ¬φ loops on 0 with color 1,
// and 1 loops with color 2. Under Reachability({2}) or Safety({2}) the
// language is nonempty iff φ is satisfiable.
inline Hoa sat_automaton(const std::vector<std::string>& props, const Formula& phi) {
  Hoa a;
  a.num_states = 2;
  a.initial = {0};
  a.aps = props;
  a.add_transition(0, phi, 1, 2);
  a.add_transition(0, Formula::neg(phi), 0, 1);
  a.add_transition(1, Formula::top(), 1, 2);
  a.validate();
  return a;
}

}  // namespace hoa
