#pragma once

// Propositional guards over atomic propositions: construction, evaluation,
// satisfiability and one-alternation (exists-forall) satisfiability, plus the
// HOA label syntax.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hoa {

using PropId = unsigned;
using PropMask = std::uint64_t;
inline constexpr unsigned kMaxProps = 64;

inline PropMask prop_bit(PropId p) { return PropMask{1} << p; }
inline PropMask low_mask(unsigned n) { return n >= 64 ? ~PropMask{0} : (PropMask{1} << n) - 1; }

struct ParseError : std::runtime_error {
  std::size_t line, column;
  ParseError(const std::string& msg, std::size_t l, std::size_t c)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

struct UndefinedAtom : std::runtime_error {
  PropId atom;
  explicit UndefinedAtom(PropId p)
      : std::runtime_error("atom " + std::to_string(p) + " has no value"), atom(p) {}
};

// Index <-> name table for atomic propositions. Indices are dense.
class PropRegistry {
 public:
  PropId add(const std::string& name) {
    if (auto p = find(name)) return *p;
    names_.push_back(name);
    return static_cast<PropId>(names_.size() - 1);
  }
  std::optional<PropId> find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<PropId>(i);
    return std::nullopt;
  }
  const std::string& name(PropId p) const { return names_.at(p); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

// Total assignment over a declared set of propositions (bit i of `domain`).
struct Valuation {
  PropMask domain = 0;
  PropMask bits = 0;

  bool has(PropId p) const { return (domain & prop_bit(p)) != 0; }
  bool get(PropId p) const {
    if (!has(p)) throw UndefinedAtom(p);
    return (bits & prop_bit(p)) != 0;
  }
  void set(PropId p, bool v) {
    domain |= prop_bit(p);
    if (v) bits |= prop_bit(p);
    else bits &= ~prop_bit(p);
  }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline Valuation make_valuation(PropMask domain, PropMask bits) { return {domain, bits & domain}; }

// v_in ∪ v_out; the domains must be disjoint.
inline Valuation merge(const Valuation& a, const Valuation& b) {
  if (a.domain & b.domain) throw std::invalid_argument("merge: valuation domains overlap");
  return {a.domain | b.domain, a.bits | b.bits};
}

inline Valuation restrict_valuation(const Valuation& v, PropMask dom) {
  return {v.domain & dom, v.bits & dom};
}

class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, Not, And, Or };

  Formula() : Formula(make(Kind::True, 0, {})) {}

  static Formula top() { return make(Kind::True, 0, {}); }
  static Formula bottom() { return make(Kind::False, 0, {}); }
  static Formula atom(PropId p) {
    if (p >= kMaxProps) throw std::out_of_range("proposition index too large");
    return make(Kind::Atom, p, {});
  }
  static Formula neg(Formula f) { return make(Kind::Not, 0, {std::move(f)}); }
  static Formula conj(std::vector<Formula> kids) { return nary(Kind::And, std::move(kids)); }
  static Formula disj(std::vector<Formula> kids) { return nary(Kind::Or, std::move(kids)); }
  static Formula conj(Formula a, Formula b) { return conj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return disj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula literal(PropId p, bool positive) { return positive ? atom(p) : neg(atom(p)); }
  // Conjunction of literals fixing every proposition of `domain` as in `bits`.
  static Formula cube(PropMask domain, PropMask bits) {
    std::vector<Formula> lits;
    for (PropMask m = domain; m; m &= m - 1) {
      auto p = static_cast<PropId>(std::countr_zero(m));
      lits.push_back(literal(p, (bits >> p) & 1));
    }
    return conj(std::move(lits));
  }

  Kind kind() const { return node_->kind; }
  PropId atom_id() const { return node_->atom; }
  const std::vector<Formula>& children() const { return node_->kids; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  // Node count.
  std::size_t size() const { return node_->size; }
  PropMask atoms() const { return node_->atoms; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    if (a.kind() == Kind::Atom) return a.atom_id() == b.atom_id();
    const auto& x = a.children();
    const auto& y = b.children();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i] == y[i])) return false;
    return true;
  }

 private:
  struct Node {
    Kind kind;
    PropId atom;
    std::vector<Formula> kids;
    std::size_t size;
    PropMask atoms;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula make(Kind k, PropId a, std::vector<Formula> kids) {
    std::size_t sz = 1;
    PropMask at = k == Kind::Atom ? prop_bit(a) : 0;
    for (const auto& c : kids) {
      sz += c.size();
      at |= c.atoms();
    }
    return Formula(std::make_shared<const Node>(Node{k, a, std::move(kids), sz, at}));
  }

  // Flattens nested nodes of the same kind; empty and singleton cases collapse.
  static Formula nary(Kind k, std::vector<Formula> kids) {
    std::vector<Formula> flat;
    for (auto& c : kids) {
      if (c.kind() == k) flat.insert(flat.end(), c.children().begin(), c.children().end());
      else flat.push_back(std::move(c));
    }
    if (flat.empty()) return k == Kind::And ? top() : bottom();
    if (flat.size() == 1) return flat.front();
    return make(k, 0, std::move(flat));
  }

  std::shared_ptr<const Node> node_;
};

// Evaluation on a plain bit vector; atoms outside `bits` read as false.
inline bool eval_bits(const Formula& f, PropMask bits) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return (bits >> f.atom_id()) & 1;
    case K::Not: return !eval_bits(f.children()[0], bits);
    case K::And:
      for (const auto& c : f.children())
        if (!eval_bits(c, bits)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (eval_bits(c, bits)) return true;
      return false;
  }
  return false;
}

inline bool eval(const Formula& f, const Valuation& v) {
  PropMask missing = f.atoms() & ~v.domain;
  if (missing) throw UndefinedAtom(static_cast<PropId>(std::countr_zero(missing)));
  return eval_bits(f, v.bits);
}

// Substitutes the atoms in `dom` by their values in `bits` and folds constants.
inline Formula restrict(const Formula& f, PropMask dom, PropMask bits) {
  using K = Formula::Kind;
  if ((f.atoms() & dom) == 0) return f;
  switch (f.kind()) {
    case K::True:
    case K::False: return f;
    case K::Atom: return ((bits >> f.atom_id()) & 1) ? Formula::top() : Formula::bottom();
    case K::Not: {
      Formula c = restrict(f.children()[0], dom, bits);
      if (c.is_true()) return Formula::bottom();
      if (c.is_false()) return Formula::top();
      return Formula::neg(c);
    }
    case K::And:
    case K::Or: {
      const bool is_and = f.kind() == K::And;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) {
        Formula r = restrict(c, dom, bits);
        if (r.is_true()) {
          if (!is_and) return Formula::top();
          continue;
        }
        if (r.is_false()) {
          if (is_and) return Formula::bottom();
          continue;
        }
        kids.push_back(std::move(r));
      }
      return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
  return f;
}

namespace detail {

inline void count_atoms(const Formula& f, std::map<PropId, unsigned>& freq) {
  if (f.kind() == Formula::Kind::Atom) ++freq[f.atom_id()];
  for (const auto& c : f.children()) count_atoms(c, freq);
}

// Literals that must hold for f to be true (top-level unit clauses).
inline void unit_literals(const Formula& f, PropMask& dom, PropMask& bits, bool& conflict) {
  using K = Formula::Kind;
  auto assign = [&](PropId p, bool v) {
    if (dom & prop_bit(p)) {
      if (((bits >> p) & 1) != static_cast<PropMask>(v)) conflict = true;
      return;
    }
    dom |= prop_bit(p);
    if (v) bits |= prop_bit(p);
  };
  if (f.kind() == K::Atom) assign(f.atom_id(), true);
  else if (f.kind() == K::Not && f.children()[0].kind() == K::Atom) assign(f.children()[0].atom_id(), false);
  else if (f.kind() == K::And)
    for (const auto& c : f.children()) unit_literals(c, dom, bits, conflict);
}

inline bool dpll(Formula f, PropMask& dom, PropMask& bits) {
  for (;;) {
    if (f.is_true()) return true;
    if (f.is_false()) return false;
    PropMask udom = 0, ubits = 0;
    bool conflict = false;
    unit_literals(f, udom, ubits, conflict);
    if (conflict) return false;
    if (!udom) break;
    dom |= udom;
    bits |= ubits;
    f = restrict(f, udom, ubits);
  }
  std::map<PropId, unsigned> freq;
  count_atoms(f, freq);
  PropId best = freq.begin()->first;
  for (const auto& [p, n] : freq)
    if (n > freq[best]) best = p;
  for (bool v : {true, false}) {
    PropMask d2 = dom | prop_bit(best), b2 = v ? bits | prop_bit(best) : bits;
    if (dpll(restrict(f, prop_bit(best), b2), d2, b2)) {
      dom = d2;
      bits = b2;
      return true;
    }
  }
  return false;
}

// Spreads the low popcount(mask) bits of `packed` onto the set bits of `mask`.
inline PropMask deposit(PropMask packed, PropMask mask) {
  PropMask out = 0;
  for (PropMask m = mask; m; m &= m - 1, packed >>= 1)
    if (packed & 1) out |= m & (~m + 1);
  return out;
}

}  // namespace detail

inline constexpr unsigned kSatEnumerationLimit = 12;

// Satisfying valuation over the atoms of f, if any.
inline std::optional<Valuation> sat(const Formula& f) {
  const PropMask at = f.atoms();
  const unsigned n = static_cast<unsigned>(std::popcount(at));
  if (n < kSatEnumerationLimit) {
    for (PropMask k = 0; k < (PropMask{1} << n); ++k) {
      PropMask bits = detail::deposit(k, at);
      if (eval_bits(f, bits)) return Valuation{at, bits};
    }
    return std::nullopt;
  }
  PropMask dom = 0, bits = 0;
  if (!detail::dpll(f, dom, bits)) return std::nullopt;
  return Valuation{at, bits & at};
}

inline constexpr unsigned kMaxUniversalAtoms = 20;

// Some v over x_e such that f(v ∪ w) holds for every w over x_a.
inline std::optional<Valuation> exists_forall_sat(PropMask x_e, PropMask x_a, const Formula& f) {
  if (x_e & x_a) throw std::invalid_argument("exists_forall_sat: blocks overlap");
  if (f.atoms() & ~(x_e | x_a)) throw std::invalid_argument("exists_forall_sat: free atom outside both blocks");
  const PropMask uni = f.atoms() & x_a;
  const unsigned k = static_cast<unsigned>(std::popcount(uni));
  if (k > kMaxUniversalAtoms) throw std::length_error("exists_forall_sat: too many universal atoms");
  std::vector<Formula> parts;
  parts.reserve(std::size_t{1} << k);
  for (PropMask w = 0; w < (PropMask{1} << k); ++w) {
    Formula r = restrict(f, uni, detail::deposit(w, uni));
    if (r.is_false()) return std::nullopt;
    if (!r.is_true()) parts.push_back(std::move(r));
  }
  auto v = sat(Formula::conj(std::move(parts)));
  if (!v) return std::nullopt;
  return Valuation{x_e, v->bits & x_e};
}

// ---- HOA label syntax ------------------------------------------------------

inline std::string print_label(const Formula& f);

namespace detail {

inline void print_label_into(const Formula& f, int parent_prec, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: out += 't'; return;
    case K::False: out += 'f'; return;
    case K::Atom: out += std::to_string(f.atom_id()); return;
    case K::Not: out += '!'; print_label_into(f.children()[0], 3, out); return;
    case K::And:
    case K::Or: {
      const int prec = f.kind() == K::And ? 2 : 1;
      const bool paren = parent_prec > prec;
      if (paren) out += '(';
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += prec == 2 ? " & " : " | ";
        first = false;
        print_label_into(c, prec, out);
      }
      if (paren) out += ')';
      return;
    }
  }
}

// Small recursive-descent reader shared by the label grammar and the
// name-based formula syntax.
class FormulaReader {
 public:
  FormulaReader(std::string_view text, std::size_t line, std::size_t col0, PropRegistry* names)
      : s_(text), line_(line), col0_(col0), names_(names) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + i_); }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (names_ && accept("<->")) {
      Formula g = parse_imp();
      f = Formula::disj(Formula::conj(f, g), Formula::conj(Formula::neg(f), Formula::neg(g)));
    }
    return f;
  }
  Formula parse_imp() {
    Formula f = parse_or();
    if (names_ && accept("->")) return Formula::disj(Formula::neg(f), parse_imp());
    return f;
  }
  Formula parse_or() {
    std::vector<Formula> kids{parse_and()};
    while (true) {
      skip_ws();
      if (i_ < s_.size() && s_[i_] == '|' ) {
        ++i_;
        kids.push_back(parse_and());
      } else break;
    }
    return Formula::disj(std::move(kids));
  }
  Formula parse_and() {
    std::vector<Formula> kids{parse_unary()};
    while (true) {
      skip_ws();
      if (i_ < s_.size() && s_[i_] == '&') {
        ++i_;
        kids.push_back(parse_unary());
      } else break;
    }
    return Formula::conj(std::move(kids));
  }
  Formula parse_unary() {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '!') {
      ++i_;
      return Formula::neg(parse_unary());
    }
    return parse_primary();
  }
  Formula parse_primary() {
    skip_ws();
    if (i_ >= s_.size()) fail("unexpected end of formula");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Formula f = parse_iff();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (names_) fail("numeric atom in name-based formula");
      std::size_t start = i_;
      unsigned long v = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        v = v * 10 + static_cast<unsigned long>(s_[i_] - '0');
        if (v >= kMaxProps) {
          i_ = start;
          fail("atom index out of range");
        }
        ++i_;
      }
      return Formula::atom(static_cast<PropId>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string word(s_.substr(start, i_ - start));
      if (word == "t" || (names_ && word == "true")) return Formula::top();
      if (word == "f" || (names_ && word == "false")) return Formula::bottom();
      if (!names_) {
        i_ = start;
        fail("unknown token '" + word + "'");
      }
      PropId p = names_->add(word);
      if (p >= kMaxProps) fail("too many propositions");
      return Formula::atom(p);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_, col0_;
  PropRegistry* names_;
};

}  // namespace detail

inline std::string print_label(const Formula& f) {
  std::string out;
  detail::print_label_into(f, 0, out);
  return out;
}

// Grammar: t, f, integer atoms, !, &, | and parentheses. `line`/`col` locate
// the text inside a larger document for error messages.
inline Formula parse_label(std::string_view text, std::size_t line = 1, std::size_t col = 1) {
  return detail::FormulaReader(text, line, col, nullptr).parse_all();
}

// Same grammar with identifiers instead of indices, plus -> and <->.
// Unknown names are added to `names`.
inline Formula parse_named_formula(std::string_view text, PropRegistry& names) {
  return detail::FormulaReader(text, 1, 1, &names).parse_all();
}

}  // namespace hoa
