#pragma once

// Reader and writer for the explicit-state subset of the HOA v1 format,
// including the controllable-AP extension for games.
//
// Wire acceptance set k is color k+1. Edges without marks get a neutral
// color one above the declared count; edges with several marks are split.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"

namespace hoa {

struct UnsupportedFeature : ParseError {
  UnsupportedFeature(const std::string& what, std::size_t l, std::size_t c)
      : ParseError("unsupported feature: " + what, l, c) {}
};

struct IndexOutOfRange : ParseError {
  IndexOutOfRange(const std::string& what, std::size_t l, std::size_t c)
      : ParseError("index out of range: " + what, l, c) {}
};

struct HoaDocument {
  Hoa automaton;
  Acceptance acc;
  bool is_game = false;
  PropMask controllable = 0;

  Hog game() const {
    if (!is_game) throw std::logic_error("document has no controllable-AP header");
    Hog g{automaton, automaton.ap_mask() & ~controllable, controllable, acc};
    return g;
  }
};

namespace detail {

class HoaLexer {
 public:
  explicit HoaLexer(std::string_view text) : s_(text) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  // Header names end in ':'; body markers are --BODY-- and --END--.
  bool peek_word(std::string& out) {
    skip();
    std::size_t p = pos_;
    if (s_.compare(p, 2, "--") == 0) {
      std::size_t e = s_.find("--", p + 2);
      if (e == std::string_view::npos) return false;
      out = std::string(s_.substr(p, e + 2 - p));
      return true;
    }
    if (p >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[p])) || s_[p] == '_')) return false;
    std::size_t e = p;
    while (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_' || s_[e] == '-')) ++e;
    if (e < s_.size() && s_[e] == ':') ++e;
    out = std::string(s_.substr(p, e - p));
    return true;
  }

  std::string word() {
    std::string w;
    if (!peek_word(w)) fail("expected a keyword");
    advance(w.size());
    return w;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance(1);
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance(1);
    return true;
  }

  bool peek_int() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  unsigned integer() {
    if (!peek_int()) fail("expected a non-negative integer");
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
      if (v > 1000000000UL) fail("integer too large");
      advance(1);
    }
    return static_cast<unsigned>(v);
  }

  std::string quoted() {
    if (peek() != '"') fail("expected a string");
    advance(1);
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) advance(1);
      if (s_[pos_] == '\n') fail("unterminated string");
      out.push_back(s_[pos_]);
      advance(1);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    advance(1);
    return out;
  }

  // Raw text up to (not including) `stop`, with its starting position.
  std::string until(char stop, std::size_t& l, std::size_t& c) {
    skip();
    l = line_;
    c = col_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != stop) {
      out.push_back(s_[pos_]);
      advance(1);
    }
    if (pos_ >= s_.size()) fail(std::string("expected '") + stop + "'");
    return out;
  }

  // Skips the remaining tokens of an ignored header line.
  void skip_header_values() {
    for (;;) {
      std::string w;
      if (peek() == '\0') return;
      if (peek() == '"') {
        quoted();
        continue;
      }
      if (peek_word(w) && (w.back() == ':' || w.rfind("--", 0) == 0)) return;
      advance(1);
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip() {
    for (;;) {
      while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance(1);
      if (s_.compare(pos_, 2, "/*") == 0) {
        std::size_t e = s_.find("*/", pos_ + 2);
        if (e == std::string_view::npos) fail("unterminated comment");
        advance(e + 2 - pos_);
        continue;
      }
      return;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// Acceptance formula as written, before any merging.
struct RawAcc {
  enum class Kind { True, False, Inf, Fin, And, Or } kind;
  unsigned index = 0;
  std::vector<RawAcc> kids;
};

inline RawAcc parse_raw_acc(HoaLexer& lx, unsigned sets);

inline RawAcc parse_raw_primary(HoaLexer& lx, unsigned sets) {
  if (lx.accept('(')) {
    RawAcc r = parse_raw_acc(lx, sets);
    lx.expect(')');
    return r;
  }
  const std::size_t l = lx.line(), c = lx.col();
  std::string w = lx.word();
  if (w == "t") return {RawAcc::Kind::True, 0, {}};
  if (w == "f") return {RawAcc::Kind::False, 0, {}};
  if (w != "Inf" && w != "Fin") throw ParseError("expected Inf, Fin, t or f", l, c);
  lx.expect('(');
  if (lx.peek() == '!') throw UnsupportedFeature("negated acceptance set", lx.line(), lx.col());
  const std::size_t il = lx.line(), ic = lx.col();
  unsigned k = lx.integer();
  if (k >= sets) throw IndexOutOfRange("acceptance set " + std::to_string(k), il, ic);
  lx.expect(')');
  return {w == "Inf" ? RawAcc::Kind::Inf : RawAcc::Kind::Fin, k, {}};
}

inline RawAcc parse_raw_and(HoaLexer& lx, unsigned sets) {
  std::vector<RawAcc> kids{parse_raw_primary(lx, sets)};
  while (lx.accept('&')) kids.push_back(parse_raw_primary(lx, sets));
  if (kids.size() == 1) return std::move(kids.front());
  return {RawAcc::Kind::And, 0, std::move(kids)};
}

inline RawAcc parse_raw_acc(HoaLexer& lx, unsigned sets) {
  std::vector<RawAcc> kids{parse_raw_and(lx, sets)};
  while (lx.accept('|')) kids.push_back(parse_raw_and(lx, sets));
  if (kids.size() == 1) return std::move(kids.front());
  return {RawAcc::Kind::Or, 0, std::move(kids)};
}

inline AccFormula to_formula(const RawAcc& r) {
  using K = RawAcc::Kind;
  switch (r.kind) {
    case K::True: return AccFormula::top();
    case K::False: return AccFormula::bottom();
    case K::Inf: return AccFormula::inf(color_bit(r.index + 1));
    case K::Fin: return AccFormula::fin(color_bit(r.index + 1));
    case K::And:
    case K::Or: {
      std::vector<AccFormula> kids;
      for (const auto& k : r.kids) kids.push_back(to_formula(k));
      return r.kind == K::And ? AccFormula::conj(std::move(kids)) : AccFormula::disj(std::move(kids));
    }
  }
  return {};
}

// Order-insensitive rendering used to compare formulas up to commutativity.
inline std::string canonical_key(const AccFormula& f) {
  using K = AccFormula::Kind;
  switch (f.kind()) {
    case K::Inf: return "I" + std::to_string(f.set());
    case K::Fin: return "F" + std::to_string(f.set());
    case K::Not: return "N(" + canonical_key(f.children()[0]) + ")";
    case K::And:
    case K::Or: {
      std::vector<std::string> ks;
      for (const auto& k : f.children()) ks.push_back(canonical_key(k));
      std::sort(ks.begin(), ks.end());
      std::string out = f.kind() == K::And ? "A(" : "O(";
      for (const auto& k : ks) out += k + ",";
      return out + ")";
    }
  }
  return "";
}

// Set denoted by a single primitive or a homogeneous group of them.
inline std::optional<ColorSet> raw_set(const RawAcc& r, RawAcc::Kind prim, RawAcc::Kind group, RawAcc::Kind empty) {
  if (r.kind == empty) return ColorSet{0};
  if (r.kind == prim) return color_bit(r.index + 1);
  if (r.kind != group) return std::nullopt;
  ColorSet s = 0;
  for (const auto& k : r.kids) {
    if (k.kind != prim) return std::nullopt;
    s |= color_bit(k.index + 1);
  }
  return s;
}

inline std::vector<const RawAcc*> raw_terms(const RawAcc& r, RawAcc::Kind op, unsigned k) {
  std::vector<const RawAcc*> out;
  if (k == 1) out.push_back(&r);
  else if (k > 1 && r.kind == op)
    for (const auto& c : r.kids) out.push_back(&c);
  return out;
}

// Pair of (Fin-part, Inf-part) under connective `op`.
inline std::optional<Acceptance::Pair> raw_pair(const RawAcc& r, RawAcc::Kind op) {
  using K = RawAcc::Kind;
  if (r.kind != op || r.kids.size() != 2) return std::nullopt;
  for (int flip = 0; flip < 2; ++flip) {
    const RawAcc& a = r.kids[static_cast<std::size_t>(flip)];
    const RawAcc& b = r.kids[static_cast<std::size_t>(1 - flip)];
    auto fin = raw_set(a, K::Fin, K::And, K::True);
    auto inf = raw_set(b, K::Inf, K::Or, K::False);
    if (fin && inf) return Acceptance::Pair{*fin, *inf};
  }
  return std::nullopt;
}

// Recovers a named family from acc-name when the formula matches it exactly;
// otherwise the condition stays Emerson-Lei.
inline Acceptance recover_family(const std::vector<std::string>& name, const RawAcc& raw) {
  using K = RawAcc::Kind;
  const AccFormula f = to_formula(raw);
  auto matches = [&](const Acceptance& cand) { return canonical_key(cand.to_el()) == canonical_key(f); };
  auto number = [&](std::size_t i) -> std::optional<unsigned> {
    if (i >= name.size() || name[i].empty() || !std::all_of(name[i].begin(), name[i].end(), ::isdigit))
      return std::nullopt;
    return static_cast<unsigned>(std::stoul(name[i]));
  };
  std::optional<Acceptance> cand;
  const std::string head = name.empty() ? "" : name[0];
  if (head.empty()) {
    if (f.kind() == AccFormula::Kind::Inf) cand = Acceptance::buchi(f.set());
    else if (f.kind() == AccFormula::Kind::Fin && !f.is_true()) cand = Acceptance::co_buchi(f.set());
  } else if (head == "Buchi" && f.kind() == AccFormula::Kind::Inf) {
    cand = Acceptance::buchi(f.set());
  } else if (head == "co-Buchi" && f.kind() == AccFormula::Kind::Fin) {
    cand = Acceptance::co_buchi(f.set());
  } else if (head == "parity" && name.size() == 4 && name[1] == "max" && name[2] == "odd") {
    if (auto n = number(3)) cand = Acceptance::parity(*n);
  } else if ((head == "Rabin" || head == "Streett") && number(1)) {
    const bool rabin = head == "Rabin";
    const unsigned k = *number(1);
    std::vector<Acceptance::Pair> pairs;
    auto terms = raw_terms(raw, rabin ? K::Or : K::And, k);
    if (terms.size() == k) {
      for (const RawAcc* t : terms) {
        auto p = raw_pair(*t, rabin ? K::And : K::Or);
        if (!p) break;
        // Rabin pairs are (Inf-set, Fin-set); Streett pairs are (Fin-set, Inf-set).
        pairs.push_back(rabin ? Acceptance::Pair{p->second, p->first} : *p);
      }
      if (pairs.size() == k) cand = rabin ? Acceptance::rabin(pairs) : Acceptance::streett(pairs);
    } else if (k == 0) {
      cand = rabin ? Acceptance::rabin({}) : Acceptance::streett({});
    }
  } else if (head == "muller" && number(1)) {
    const unsigned k = *number(1);
    std::vector<ColorSet> sets;
    auto terms = raw_terms(raw, K::Or, k);
    for (const RawAcc* t : terms) {
      auto s = raw_set(*t, K::Inf, K::And, K::True);
      if (!s) break;
      sets.push_back(*s);
    }
    if (sets.size() == k) cand = Acceptance::muller(sets);
  }
  if (cand && matches(*cand)) return *cand;
  return Acceptance::emerson_lei(f);
}

inline std::vector<Color> read_marks(HoaLexer& lx, unsigned sets) {
  std::vector<Color> marks;
  lx.expect('{');
  while (!lx.accept('}')) {
    const std::size_t l = lx.line(), c = lx.col();
    unsigned k = lx.integer();
    if (k >= sets) throw IndexOutOfRange("acceptance set " + std::to_string(k), l, c);
    marks.push_back(k + 1);
  }
  return marks;
}

}  // namespace detail

inline HoaDocument parse_hoa(std::string_view text) {
  detail::HoaLexer lx(text);
  HoaDocument doc;
  Hoa& a = doc.automaton;
  std::optional<unsigned> states;
  std::optional<unsigned> sets;
  std::optional<detail::RawAcc> raw_acc;
  std::vector<std::string> acc_name;
  std::optional<std::pair<bool, ColorSet>> special;  // (is_reach, set)
  std::vector<std::pair<unsigned, std::pair<std::size_t, std::size_t>>> controllable;
  bool saw_ap = false;

  {
    std::string w = lx.word();
    if (w != "HOA:") lx.fail("document must start with 'HOA:'");
    std::string v = lx.word();
    if (v != "v1") lx.fail("unsupported format version '" + v + "'");
  }
  for (;;) {
    const std::size_t l = lx.line(), c = lx.col();
    if (lx.at_end()) lx.fail("missing --BODY--");
    std::string w = lx.word();
    if (w == "--BODY--") break;
    if (w.empty() || w.back() != ':') throw ParseError("expected a header name", l, c);
    const std::string h = w.substr(0, w.size() - 1);
    if (h == "States") {
      states = lx.integer();
    } else if (h == "Start") {
      a.initial.push_back(lx.integer());
      if (lx.peek() == '&') throw UnsupportedFeature("conjunctive initial states (Start: with '&')", lx.line(), lx.col());
    } else if (h == "AP") {
      saw_ap = true;
      unsigned n = lx.integer();
      for (unsigned i = 0; i < n; ++i) a.aps.push_back(lx.quoted());
      if (n > kMaxProps) throw UnsupportedFeature("more than 64 atomic propositions", l, c);
    } else if (h == "Acceptance") {
      sets = lx.integer();
      if (*sets > kMaxColor - 1) throw UnsupportedFeature("more than 62 acceptance sets", l, c);
      raw_acc = detail::parse_raw_acc(lx, *sets);
    } else if (h == "acc-name") {
      std::string first;
      while (lx.peek_word(first) || lx.peek_int()) {
        if (lx.peek_int()) {
          acc_name.push_back(std::to_string(lx.integer()));
          continue;
        }
        if (first.back() == ':' || first.rfind("--", 0) == 0) break;
        acc_name.push_back(lx.word());
      }
    } else if (h == "name") {
      a.name = lx.quoted();
    } else if (h == "controllable-AP") {
      while (lx.peek_int()) {
        const std::size_t il = lx.line(), ic = lx.col();
        controllable.push_back({lx.integer(), {il, ic}});
      }
      doc.is_game = true;
    } else if (h == "reachability" || h == "safety") {
      ColorSet s = 0;
      while (lx.peek_int()) {
        const std::size_t il = lx.line(), ic = lx.col();
        unsigned k = lx.integer();
        if (sets && k >= *sets) throw IndexOutOfRange("acceptance set " + std::to_string(k), il, ic);
        s |= color_bit(k + 1);
      }
      special = {h == "reachability", s};
    } else if (h == "Alias") {
      throw UnsupportedFeature("Alias", l, c);
    } else if (std::isupper(static_cast<unsigned char>(h[0]))) {
      throw UnsupportedFeature("header " + h, l, c);
    } else {
      lx.skip_header_values();
    }
  }
  if (!states) lx.fail("missing States header");
  if (!sets) lx.fail("missing Acceptance header");
  a.num_states = *states;
  a.d = *sets;
  for (StateId q : a.initial)
    if (q >= a.num_states) lx.fail("start state " + std::to_string(q) + " out of range");
  for (const auto& [p, pos] : controllable) {
    if (p >= a.aps.size()) throw IndexOutOfRange("controllable proposition " + std::to_string(p), pos.first, pos.second);
    doc.controllable |= prop_bit(p);
  }
  (void)saw_ap;

  // Body. Unmarked edges are collected first; the neutral color is assigned after.
  std::vector<std::size_t> unmarked;
  std::vector<char> seen_state(a.num_states, 0);
  std::optional<StateId> current;
  std::vector<Color> state_marks;
  for (;;) {
    const std::size_t l = lx.line(), c = lx.col();
    if (lx.at_end()) lx.fail("missing --END--");
    std::string w;
    if (lx.peek_word(w)) {
      if (w == "--END--") {
        lx.word();
        break;
      }
      if (w != "State:") throw ParseError("expected 'State:' or an edge", l, c);
      lx.word();
      const std::size_t sl = lx.line(), sc = lx.col();
      if (lx.peek() == '[') throw UnsupportedFeature("state labels", sl, sc);
      StateId q = lx.integer();
      if (q >= a.num_states) throw IndexOutOfRange("state " + std::to_string(q), sl, sc);
      if (seen_state[q]) throw ParseError("state " + std::to_string(q) + " declared twice", sl, sc);
      seen_state[q] = 1;
      if (lx.peek() == '"') lx.quoted();
      state_marks.clear();
      if (lx.peek() == '{') state_marks = detail::read_marks(lx, *sets);
      current = q;
      continue;
    }
    if (!current) throw ParseError("edge outside of a state", l, c);
    if (lx.peek() != '[') throw UnsupportedFeature("implicit labels", l, c);
    lx.expect('[');
    std::size_t ll, lc;
    std::string label = lx.until(']', ll, lc);
    lx.expect(']');
    if (label.find('@') != std::string::npos) throw UnsupportedFeature("Alias", ll, lc);
    Formula guard = parse_label(label, ll, lc);
    if (guard.atoms() & ~a.ap_mask())
      throw IndexOutOfRange("atomic proposition " + std::to_string(max_color(guard.atoms() & ~a.ap_mask())), ll, lc);
    const std::size_t dl = lx.line(), dc = lx.col();
    StateId dst = lx.integer();
    if (dst >= a.num_states) throw IndexOutOfRange("state " + std::to_string(dst), dl, dc);
    if (lx.peek() == '&') throw UnsupportedFeature("universal branching", lx.line(), lx.col());
    std::vector<Color> marks = state_marks;
    if (lx.peek() == '{') marks = detail::read_marks(lx, *sets);
    if (marks.empty()) {
      unmarked.push_back(a.transitions.size());
      a.transitions.push_back({*current, guard, dst, 0});
    }
    for (Color m : marks) a.transitions.push_back({*current, guard, dst, m});
  }
  if (!lx.at_end()) lx.fail("trailing content after --END--");
  if (!unmarked.empty()) {
    ++a.d;
    for (std::size_t i : unmarked) a.transitions[i].color = a.d;
  }

  if (special) {
    doc.acc = special->first ? Acceptance::reachability(special->second) : Acceptance::safety(special->second);
  } else {
    doc.acc = detail::recover_family(acc_name, *raw_acc);
  }
  return doc;
}

namespace detail {

inline std::string wire_set(ColorSet s, const char* prim, const char* sep, bool group_parens) {
  std::vector<Color> cs = colors_of(s);
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += sep;
    out += std::string(prim) + "(" + std::to_string(cs[i] - 1) + ")";
  }
  if (group_parens && cs.size() > 1) out = "(" + out + ")";
  return out;
}

// Negation-free rendering with minimal parentheses (& binds tighter than |).
inline std::string wire_formula(const AccFormula& f, bool positive, int parent) {
  using K = AccFormula::Kind;
  switch (f.kind()) {
    case K::Not: return wire_formula(f.children()[0], !positive, parent);
    case K::Inf:
    case K::Fin: {
      const bool inf = (f.kind() == K::Inf) == positive;
      if (f.set() == 0) return inf ? "f" : "t";
      // A multi-set Inf is a disjunction, a multi-set Fin a conjunction.
      if (inf) return wire_set(f.set(), "Inf", " | ", parent == 2);
      return wire_set(f.set(), "Fin", " & ", false);
    }
    case K::And:
    case K::Or: {
      const bool conj = (f.kind() == K::And) == positive;
      const int me = conj ? 2 : 1;
      std::string out;
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += conj ? " & " : " | ";
        out += wire_formula(f.children()[i], positive, me);
      }
      if (parent == 2 && !conj) out = "(" + out + ")";
      return out;
    }
  }
  return "";
}

inline std::string wire_acceptance(const Acceptance& acc) {
  using F = Acceptance::Family;
  auto join = [](const std::vector<std::string>& parts, const char* sep, const char* empty) {
    if (parts.empty()) return std::string(empty);
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
  };
  auto fin_part = [](ColorSet s) { return s ? wire_set(s, "Fin", " & ", true) : std::string("t"); };
  auto inf_part = [](ColorSet s) { return s ? wire_set(s, "Inf", " | ", true) : std::string("f"); };
  switch (acc.family()) {
    case F::Reachability:
    case F::Safety: return "t";
    case F::Rabin: {
      std::vector<std::string> parts;
      for (const auto& [e, f] : acc.pairs()) {
        std::string p = fin_part(f) + " & " + inf_part(e);
        parts.push_back(acc.pairs().size() > 1 ? "(" + p + ")" : p);
      }
      return join(parts, " | ", "f");
    }
    case F::Streett: {
      std::vector<std::string> parts;
      for (const auto& [e, f] : acc.pairs()) parts.push_back("(" + fin_part(e) + " | " + inf_part(f) + ")");
      return join(parts, " & ", "t");
    }
    case F::Muller: {
      std::vector<std::string> parts;
      for (ColorSet s : acc.sets()) {
        std::string p = s ? wire_set(s, "Inf", " & ", acc.sets().size() > 1) : std::string("t");
        parts.push_back(p);
      }
      return join(parts, " | ", "f");
    }
    default: return wire_formula(acc.to_el(), true, 0);
  }
}

inline std::string acc_name_line(const Acceptance& acc) {
  using F = Acceptance::Family;
  switch (acc.family()) {
    case F::CoBuchi: return "co-Buchi";
    case F::Parity: return "parity max odd " + std::to_string(acc.parity_colors());
    case F::Rabin: return "Rabin " + std::to_string(acc.pairs().size());
    case F::Streett: return "Streett " + std::to_string(acc.pairs().size());
    case F::Muller: return "muller " + std::to_string(acc.sets().size());
    default: return "";
  }
}

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out + "\"";
}

inline std::string print_document(const Hoa& a, const Acceptance& acc, const PropMask* controllable) {
  std::ostringstream os;
  const unsigned d = std::max(a.d, max_color(acc.colors()));
  os << "HOA: v1\n";
  if (!a.name.empty()) os << "name: " << quote(a.name) << "\n";
  os << "States: " << a.num_states << "\n";
  for (StateId q : a.initial) os << "Start: " << q << "\n";
  os << "AP: " << a.aps.size();
  for (const auto& p : a.aps) os << " " << quote(p);
  os << "\n";
  if (controllable) {
    os << "controllable-AP:";
    for (PropMask m = *controllable; m; m &= m - 1) os << " " << std::countr_zero(m);
    os << "\n";
  }
  if (auto n = acc_name_line(acc); !n.empty()) os << "acc-name: " << n << "\n";
  os << "Acceptance: " << d << " " << wire_acceptance(acc) << "\n";
  if (!acc.is_emerson_lei_expressible()) {
    os << (acc.family() == Acceptance::Family::Reachability ? "reachability:" : "safety:");
    for (Color c : colors_of(acc.set())) os << " " << c - 1;
    os << "\n";
  }
  os << "--BODY--\n";
  auto out = a.outgoing();
  for (StateId q = 0; q < a.num_states; ++q) {
    os << "State: " << q << "\n";
    for (std::size_t i : out[q]) {
      const auto& t = a.transitions[i];
      os << "[" << print_label(t.guard) << "] " << t.dst << " {" << t.color - 1 << "}\n";
    }
  }
  os << "--END--\n";
  return os.str();
}

}  // namespace detail

inline std::string print_hoa(const Hoa& a, const Acceptance& acc) { return detail::print_document(a, acc, nullptr); }
inline std::string print_hoa(const Hog& g) { return detail::print_document(g.arena, g.acc, &g.out_mask); }
inline std::string print_hoa(const HoaDocument& doc) {
  return detail::print_document(doc.automaton, doc.acc, doc.is_game ? &doc.controllable : nullptr);
}

}  // namespace hoa
