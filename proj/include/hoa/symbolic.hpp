#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hoa/automaton.hpp"
#include "hoa/bounds.hpp"
#include "hoa/formula.hpp"
#include "hoa/games.hpp"
#include "hoa/hoa_io.hpp"

namespace hoa {

// Games whose guards are formulas over theory atoms. Atom i of a guard is the
// oracle's atom i; the oracle alone gives atoms their meaning.

struct MalformedAtom : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Values of the input variables, in declaration order.
using Assignment = std::vector<std::int64_t>;

class TheoryOracle {
 public:
  virtual ~TheoryOracle() = default;
  virtual unsigned num_atoms() const = 0;
  virtual std::string atom_text(PropId a) const = 0;
  // Some input assignment under which every output assignment satisfies f.
  virtual std::optional<Assignment> exists_forall(const Formula& f) const = 0;
  // Every input assignment has an output assignment satisfying f.
  virtual bool forall_exists(const Formula& f) const = 0;
  virtual bool satisfiable(const Formula& f) const = 0;
  // Every output assignment satisfies f once the inputs are fixed to w.
  virtual bool holds_for_all_outputs(const Assignment& w, const Formula& f) const = 0;
};

// An input assignment under which no avoid-guard can fire.
inline std::optional<Assignment> avoid_all(const TheoryOracle& o, const std::vector<Formula>& avoid) {
  std::vector<Formula> negs;
  negs.reserve(avoid.size());
  for (const auto& f : avoid) negs.push_back(Formula::neg(f));
  return o.exists_forall(Formula::conj(std::move(negs)));
}

// ---- Boolean domain --------------------------------------------------------

class BooleanOracle : public TheoryOracle {
 public:
  BooleanOracle(std::vector<std::string> props, PropMask in_mask, PropMask out_mask)
      : props_(std::move(props)), in_(in_mask), out_(out_mask) {
    if (in_ & out_) throw MalformedAtom("input and output propositions overlap");
    if ((in_ | out_) != low_mask(static_cast<unsigned>(props_.size())))
      throw MalformedAtom("input and output propositions must cover every atom");
  }

  unsigned num_atoms() const override { return static_cast<unsigned>(props_.size()); }
  std::string atom_text(PropId a) const override { return props_.at(a); }

  std::optional<Assignment> exists_forall(const Formula& f) const override {
    check(f);
    auto v = exists_forall_sat(in_, out_, f);
    if (!v) return std::nullopt;
    Assignment w;
    for (PropId p = 0; p < props_.size(); ++p)
      if (in_ & prop_bit(p)) w.push_back(v->get(p) ? 1 : 0);
    return w;
  }
  bool forall_exists(const Formula& f) const override { return !exists_forall(Formula::neg(f)).has_value(); }
  bool satisfiable(const Formula& f) const override {
    check(f);
    return sat(f).has_value();
  }
  bool holds_for_all_outputs(const Assignment& w, const Formula& f) const override {
    check(f);
    return !sat(Formula::neg(restrict(f, in_, input_bits(w)))).has_value();
  }

  PropMask input_bits(const Assignment& w) const {
    PropMask bits = 0;
    std::size_t i = 0;
    for (PropId p = 0; p < props_.size(); ++p) {
      if (!(in_ & prop_bit(p))) continue;
      if (i >= w.size()) throw MalformedAtom("assignment is shorter than the input block");
      if (w[i++]) bits |= prop_bit(p);
    }
    return bits;
  }

 private:
  void check(const Formula& f) const {
    if (f.atoms() & ~(in_ | out_)) throw MalformedAtom("formula mentions an undeclared atom");
  }

  std::vector<std::string> props_;
  PropMask in_, out_;
};

inline BooleanOracle boolean_oracle(const Hog& g) { return BooleanOracle(g.arena.aps, g.in_mask, g.out_mask); }

// ---- bounded integers ------------------------------------------------------

// sum coef[i] * x_i  op  rhs, over inputs then outputs.
struct LinearAtom {
  enum class Op { Lt, Le, Eq, Ne, Ge, Gt };
  std::vector<std::int64_t> coef;
  Op op = Op::Eq;
  std::int64_t rhs = 0;

  bool holds(const std::vector<std::int64_t>& x) const {
    std::int64_t lhs = 0;
    for (std::size_t i = 0; i < coef.size(); ++i) lhs += coef[i] * x[i];
    switch (op) {
      case Op::Lt: return lhs < rhs;
      case Op::Le: return lhs <= rhs;
      case Op::Eq: return lhs == rhs;
      case Op::Ne: return lhs != rhs;
      case Op::Ge: return lhs >= rhs;
      case Op::Gt: return lhs > rhs;
    }
    return false;
  }
  friend bool operator==(const LinearAtom&, const LinearAtom&) = default;
};

inline const char* op_text(LinearAtom::Op op) {
  switch (op) {
    case LinearAtom::Op::Lt: return "<";
    case LinearAtom::Op::Le: return "<=";
    case LinearAtom::Op::Eq: return "=";
    case LinearAtom::Op::Ne: return "!=";
    case LinearAtom::Op::Ge: return ">=";
    case LinearAtom::Op::Gt: return ">";
  }
  return "?";
}

inline constexpr std::int64_t kDefaultDomainBound = 32;
inline constexpr std::uint64_t kMaxEnumeratedAssignments = 20000000;

// Variables range over {0..bound}; sentences are decided by enumeration in
// ascending lexicographic order, so witnesses are the least ones.
class BoundedIntOracle : public TheoryOracle {
 public:
  BoundedIntOracle(std::int64_t bound, std::vector<std::string> inputs, std::vector<std::string> outputs,
                   std::vector<LinearAtom> atoms, std::int64_t max_bound = kDefaultDomainBound)
      : bound_(bound), inputs_(std::move(inputs)), outputs_(std::move(outputs)), atoms_(std::move(atoms)) {
    if (bound_ < 0) throw MalformedAtom("domain bound must be non-negative");
    if (bound_ > max_bound) throw BoundExceeded("domain bound", static_cast<std::size_t>(bound_), static_cast<std::size_t>(max_bound));
    if (atoms_.size() > kMaxProps) throw MalformedAtom("more than 64 atoms");
    const std::size_t n = inputs_.size() + outputs_.size();
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].coef.size() != n)
        throw MalformedAtom("atom " + std::to_string(i) + " has " + std::to_string(atoms_[i].coef.size()) +
                            " coefficients for " + std::to_string(n) + " variables");
    enumeration_size(n);
  }

  std::int64_t bound() const { return bound_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<LinearAtom>& atoms() const { return atoms_; }

  unsigned num_atoms() const override { return static_cast<unsigned>(atoms_.size()); }
  std::string atom_text(PropId a) const override {
    const LinearAtom& at = atoms_.at(a);
    std::string s;
    for (std::size_t i = 0; i < at.coef.size(); ++i) {
      const std::int64_t c = at.coef[i];
      if (!c) continue;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      const std::int64_t m = c < 0 ? -c : c;
      if (m != 1) s += std::to_string(m) + "*";
      s += variable(i);
    }
    if (s.empty()) s = "0";
    return s + " " + op_text(at.op) + " " + std::to_string(at.rhs);
  }

  // Truth values of all atoms at a full assignment.
  PropMask atom_bits(const std::vector<std::int64_t>& x) const {
    PropMask bits = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].holds(x)) bits |= prop_bit(static_cast<PropId>(i));
    return bits;
  }

  std::optional<Assignment> exists_forall(const Formula& f) const override {
    check(f);
    std::optional<Assignment> found;
    for_each(inputs_.size(), [&](const Assignment& w) {
      if (holds_for_all_outputs(w, f)) {
        found = w;
        return false;
      }
      return true;
    });
    return found;
  }

  bool forall_exists(const Formula& f) const override {
    check(f);
    bool all = true;
    for_each(inputs_.size(), [&](const Assignment& w) {
      if (!some_output(w, f)) {
        all = false;
        return false;
      }
      return true;
    });
    return all;
  }

  bool satisfiable(const Formula& f) const override {
    check(f);
    bool any = false;
    for_each(inputs_.size(), [&](const Assignment& w) {
      any = some_output(w, f);
      return !any;
    });
    return any;
  }

  bool holds_for_all_outputs(const Assignment& w, const Formula& f) const override {
    check(f);
    check_inputs(w);
    bool all = true;
    std::vector<std::int64_t> x(w);
    x.resize(inputs_.size() + outputs_.size());
    for_each(outputs_.size(), [&](const Assignment& y) {
      std::copy(y.begin(), y.end(), x.begin() + static_cast<std::ptrdiff_t>(w.size()));
      all = eval_bits(f, atom_bits(x));
      return all;
    });
    return all;
  }

  std::string variable(std::size_t i) const {
    return i < inputs_.size() ? inputs_[i] : outputs_.at(i - inputs_.size());
  }

 private:
  void check(const Formula& f) const {
    if (f.atoms() & ~low_mask(num_atoms())) throw MalformedAtom("formula mentions an undeclared atom");
  }
  void check_inputs(const Assignment& w) const {
    if (w.size() != inputs_.size()) throw MalformedAtom("assignment does not match the input block");
    for (auto v : w)
      if (v < 0 || v > bound_) throw MalformedAtom("assignment value outside the domain");
  }

  bool some_output(const Assignment& w, const Formula& f) const {
    bool any = false;
    std::vector<std::int64_t> x(w);
    x.resize(inputs_.size() + outputs_.size());
    for_each(outputs_.size(), [&](const Assignment& y) {
      std::copy(y.begin(), y.end(), x.begin() + static_cast<std::ptrdiff_t>(w.size()));
      any = eval_bits(f, atom_bits(x));
      return !any;
    });
    return any;
  }

  std::uint64_t enumeration_size(std::size_t k) const {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
      total *= static_cast<std::uint64_t>(bound_ + 1);
      if (total > kMaxEnumeratedAssignments) throw BoundExceeded("assignments", total, kMaxEnumeratedAssignments);
    }
    return total;
  }

  // Visits {0..bound}^k in lexicographic order until `visit` returns false.
  template <class Visit>
  void for_each(std::size_t k, Visit visit) const {
    Assignment a(k, 0);
    for (;;) {
      if (!visit(a)) return;
      std::size_t i = k;
      while (i > 0 && a[i - 1] == bound_) a[--i] = 0;
      if (i == 0) return;
      ++a[i - 1];
    }
  }

  std::int64_t bound_;
  std::vector<std::string> inputs_, outputs_;
  std::vector<LinearAtom> atoms_;
};

// ---- games -----------------------------------------------------------------

// Arena labels are formulas over the oracle's atoms; `aps` carries their text.
struct FGame {
  Hoa arena;
  Acceptance acc;
};

// Deterministic and complete relative to the oracle.
inline void validate_fgame(const FGame& g, const TheoryOracle& o) {
  g.arena.validate();
  if (g.arena.initial.size() != 1) throw MalformedAutomaton("a game needs exactly one initial state");
  if (g.arena.ap_mask() & ~low_mask(o.num_atoms())) throw MalformedAtom("arena mentions an atom the oracle lacks");
  auto out = g.arena.outgoing();
  for (StateId q = 0; q < g.arena.num_states; ++q) {
    std::vector<Formula> negs;
    for (std::size_t i = 0; i < out[q].size(); ++i) {
      const auto& t = g.arena.transitions[out[q][i]];
      negs.push_back(Formula::neg(t.guard));
      for (std::size_t j = i + 1; j < out[q].size(); ++j)
        if (o.satisfiable(Formula::conj(t.guard, g.arena.transitions[out[q][j]].guard)))
          throw MalformedAutomaton("game arena is not deterministic at state " + std::to_string(q));
    }
    if (o.satisfiable(Formula::conj(std::move(negs))))
      throw MalformedAutomaton("game arena is not complete at state " + std::to_string(q));
  }
}

struct FGameReport {
  Player winner = Player::In;
  StateGame game;
  ClassicalGame pg;
  std::map<unsigned, Assignment> witness;  // controller vertex of pg -> inputs forcing its set
};

// P_G with q-goodness decided by the oracle. The environment never gains by
// announcing states q cannot move to, so the sets tried at q are the nonempty
// subsets of its successors.
inline ClassicalGame build_fgame_pg(const StateGame& sg, const TheoryOracle& o, const Bounds& bounds,
                                    std::map<unsigned, Assignment>* witness = nullptr) {
  const Hoa& a = sg.hog.arena;
  const unsigned n = sg.size();
  ClassicalGame pg;
  pg.acc = sg.hog.acc;
  pg.initial = sg.initial();
  for (StateId q = 0; q < n; ++q) pg.add({Player::In, sg.color[q], q, 0, 0});
  auto out = a.outgoing();
  for (StateId q = 0; q < n; ++q) {
    StateSet succ = 0;
    for (std::size_t e : out[q]) succ |= state_bit(a.transitions[e].dst);
    const auto targets = members(succ);
    const unsigned k = static_cast<unsigned>(targets.size());
    if (k > bounds.pg_state_bits) throw BoundExceeded("successors of a state", k, bounds.pg_state_bits);
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << k); ++pick) {
      StateSet s = 0;
      for (unsigned i = 0; i < k; ++i)
        if ((pick >> i) & 1) s |= state_bit(targets[i]);
      std::vector<Formula> avoid;
      for (std::size_t e : out[q])
        if (!has_state(s, a.transitions[e].dst)) avoid.push_back(a.transitions[e].guard);
      auto w = avoid_all(o, avoid);
      if (!w) continue;
      const unsigned v = pg.add({Player::Out, 0, q, s, 0});
      pg.succ[q].push_back(v);
      for (StateId p : members(s)) pg.succ[v].push_back(p);
      if (witness) (*witness)[v] = *w;
    }
  }
  return pg;
}

inline FGameReport solve_fgame(const FGame& g, const TheoryOracle& o, const Bounds& bounds = Bounds::from_env()) {
  validate_fgame(g, o);
  FGameReport r;
  r.game = expand_entry_colors(Hog{g.arena, 0, 0, g.acc});
  r.pg = build_fgame_pg(r.game, o, bounds, &r.witness);
  if (has_memoryless_solution(g.acc)) {
    r.winner = solve_classical(r.pg).winner[r.pg.initial];
  } else {
    const RecordProduct prod = record_product(r.pg);
    r.winner = solve_classical(prod.game).winner[prod.game.initial];
  }
  return r;
}

// ---- text format -----------------------------------------------------------

namespace detail {

// Label syntax: Boolean combinations (!, &, |, parentheses, t, f) of linear
// comparisons such as `2*x - y + 1 <= z`.
class LinearLabelReader {
 public:
  LinearLabelReader(std::string_view text, std::size_t line, std::size_t col,
                    const std::vector<std::string>& vars, std::vector<LinearAtom>& atoms)
      : s_(text), line_(line), col_(col), vars_(vars), atoms_(atoms) {}

  Formula parse_all() {
    Formula f = parse_or();
    skip_ws();
    if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
    return f;
  }

 private:
  struct Linear {
    std::vector<std::int64_t> coef;
    std::int64_t constant = 0;
  };

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_ + i_); }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Formula parse_or() {
    std::vector<Formula> kids{parse_and()};
    while (accept("|")) kids.push_back(parse_and());
    return kids.size() == 1 ? kids.front() : Formula::disj(std::move(kids));
  }
  Formula parse_and() {
    std::vector<Formula> kids{parse_unary()};
    while (accept("&")) kids.push_back(parse_unary());
    return kids.size() == 1 ? kids.front() : Formula::conj(std::move(kids));
  }
  Formula parse_unary() {
    if (peek() == '!' && s_.substr(i_, 2) != "!=") {
      ++i_;
      return Formula::neg(parse_unary());
    }
    if (accept("(")) {
      Formula f = parse_or();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    const std::size_t save = i_;
    std::string w = identifier();
    if (w == "t" || w == "f") return w == "t" ? Formula::top() : Formula::bottom();
    i_ = save;
    return comparison();
  }

  std::string identifier() {
    skip_ws();
    std::string w;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      if (w.empty() && std::isdigit(static_cast<unsigned char>(s_[i_]))) break;
      w.push_back(s_[i_++]);
    }
    return w;
  }

  std::int64_t number() {
    skip_ws();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a number");
    std::int64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > 1000000000) fail("integer too large");
    }
    return v;
  }

  void term(Linear& l, std::int64_t sign) {
    std::int64_t c = 1;
    bool has_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = number();
      has_number = true;
      if (!accept("*")) {
        l.constant += sign * c;
        return;
      }
    }
    const std::string v = identifier();
    if (v.empty()) fail(has_number ? "expected a variable after '*'" : "expected a term");
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) fail("unknown variable '" + v + "'");
    l.coef[static_cast<std::size_t>(it - vars_.begin())] += sign * c;
  }

  Linear linear() {
    Linear l{std::vector<std::int64_t>(vars_.size(), 0), 0};
    std::int64_t sign = accept("-") ? -1 : 1;
    term(l, sign);
    for (;;) {
      if (accept("+")) sign = 1;
      else if (peek() == '-') {
        ++i_;
        sign = -1;
      } else {
        return l;
      }
      term(l, sign);
    }
  }

  Formula comparison() {
    const Linear lhs = linear();
    LinearAtom::Op op;
    if (accept("<=")) op = LinearAtom::Op::Le;
    else if (accept(">=")) op = LinearAtom::Op::Ge;
    else if (accept("!=")) op = LinearAtom::Op::Ne;
    else if (accept("==") || accept("=")) op = LinearAtom::Op::Eq;
    else if (accept("<")) op = LinearAtom::Op::Lt;
    else if (accept(">")) op = LinearAtom::Op::Gt;
    else fail("expected a comparison operator");
    const Linear rhs = linear();
    LinearAtom a{std::vector<std::int64_t>(vars_.size()), op, rhs.constant - lhs.constant};
    for (std::size_t i = 0; i < vars_.size(); ++i) a.coef[i] = lhs.coef[i] - rhs.coef[i];
    auto it = std::find(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end()) {
      if (atoms_.size() == kMaxProps) fail("more than 64 distinct atoms");
      atoms_.push_back(a);
      it = atoms_.end() - 1;
    }
    return Formula::atom(static_cast<PropId>(it - atoms_.begin()));
  }

  std::string_view s_;
  std::size_t i_ = 0, line_, col_;
  const std::vector<std::string>& vars_;
  std::vector<LinearAtom>& atoms_;
};

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace detail

struct FGameDocument {
  FGame game;
  std::shared_ptr<BoundedIntOracle> oracle;
};

// A HOA document with three extra headers
//   domain: int 0..B
//   inputs: x ...
//   outputs: y ...
// and labels written as linear comparisons over those variables. The AP
// header is derived from the labels and must not be given.
inline FGameDocument parse_fgame(std::string_view text, std::int64_t max_bound = kDefaultDomainBound) {
  const std::size_t body = text.find("--BODY--");
  if (body == std::string_view::npos) throw ParseError("missing --BODY--", 1, 1);
  std::optional<std::int64_t> bound;
  std::vector<std::string> inputs, outputs;
  bool saw_inputs = false, saw_outputs = false;
  std::size_t first_line_end = std::string_view::npos;
  {
    std::size_t pos = 0, line = 1;
    while (pos < body) {
      std::size_t e = text.find('\n', pos);
      if (e == std::string_view::npos || e > body) e = body;
      if (first_line_end == std::string_view::npos) first_line_end = e;
      const std::string_view l = text.substr(pos, e - pos);
      const auto words = detail::split_words(l);
      if (!words.empty()) {
        const std::string& h = words[0];
        if (h == "AP:") throw ParseError("AP header is derived from the labels", line, 1);
        if (h == "domain:") {
          if (words.size() != 3 || words[1] != "int" || words[2].rfind("0..", 0) != 0)
            throw ParseError("expected 'domain: int 0..B'", line, 1);
          const std::string b = words[2].substr(3);
          if (b.empty() || !std::all_of(b.begin(), b.end(), ::isdigit) || b.size() > 9)
            throw ParseError("domain bound must be a non-negative integer", line, 1);
          bound = std::stoll(b);
        } else if (h == "inputs:") {
          inputs.assign(words.begin() + 1, words.end());
          saw_inputs = true;
        } else if (h == "outputs:") {
          outputs.assign(words.begin() + 1, words.end());
          saw_outputs = true;
        }
      }
      pos = e + 1;
      ++line;
    }
  }
  if (!bound) throw ParseError("missing domain header", 1, 1);
  if (!saw_inputs || !saw_outputs) throw ParseError("missing inputs or outputs header", 1, 1);
  std::vector<std::string> vars = inputs;
  vars.insert(vars.end(), outputs.begin(), outputs.end());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string& v = vars[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') ||
        !std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
      throw ParseError("bad variable name '" + v + "'", 1, 1);
    if (v == "t" || v == "f") throw ParseError("'t' and 'f' are reserved", 1, 1);
    if (std::find(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(i), v) != vars.begin() + static_cast<std::ptrdiff_t>(i))
      throw ParseError("variable '" + v + "' declared twice", 1, 1);
  }

  // Rewrite labels to atom indices, keeping line structure for diagnostics.
  std::vector<LinearAtom> atoms;
  std::string rewritten(text.substr(0, body));
  {
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(body), '\n'));
    std::size_t col = 1;
    for (std::size_t i = body; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch == '[') {
        const std::size_t close = text.find(']', i);
        if (close == std::string_view::npos) throw ParseError("expected ']'", line, col);
        const std::string_view label = text.substr(i + 1, close - i - 1);
        if (label.find('\n') != std::string_view::npos) throw ParseError("label spans lines", line, col);
        detail::LinearLabelReader reader(label, line, col + 1, vars, atoms);
        rewritten += "[" + print_label(reader.parse_all()) + "]";
        col += close - i + 1;
        i = close;
        continue;
      }
      rewritten.push_back(ch);
      if (ch == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }
  auto oracle = std::make_shared<BoundedIntOracle>(*bound, inputs, outputs, atoms, max_bound);
  std::string ap = " AP: " + std::to_string(atoms.size());
  for (PropId a = 0; a < atoms.size(); ++a) ap += " " + detail::quote(oracle->atom_text(a));
  rewritten.insert(first_line_end, ap);
  HoaDocument doc = parse_hoa(rewritten);
  FGameDocument out{{doc.automaton, doc.acc}, oracle};
  return out;
}

namespace detail {

inline void print_linear_label(const Formula& f, const BoundedIntOracle& o, int parent, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: out += "t"; return;
    case K::False: out += "f"; return;
    case K::Atom: out += o.atom_text(f.atom_id()); return;
    case K::Not:
      out += "!(";
      print_linear_label(f.children()[0], o, 0, out);
      out += ")";
      return;
    case K::And:
    case K::Or: {
      const int prec = f.kind() == K::And ? 2 : 1;
      if (prec < parent) out += "(";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += prec == 2 ? " & " : " | ";
        print_linear_label(f.children()[i], o, prec + 1, out);
      }
      if (prec < parent) out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string print_linear_label(const Formula& f, const BoundedIntOracle& o) {
  std::string out;
  detail::print_linear_label(f, o, 0, out);
  return out;
}

// Inverse of parse_fgame up to atom numbering.
inline std::string print_fgame(const FGame& g, const BoundedIntOracle& o) {
  Hoa plain = g.arena;
  plain.aps.clear();
  for (PropId a = 0; a < g.arena.num_aps(); ++a) plain.aps.push_back("a" + std::to_string(a));
  std::istringstream in(print_hoa(plain, g.acc));
  std::string out, line;
  bool body = false;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += " " + x;
    return s;
  };
  while (std::getline(in, line)) {
    if (!body && line.rfind("AP:", 0) == 0) continue;
    if (line == "--BODY--") body = true;
    if (body && !line.empty() && line[0] == '[') {
      const std::size_t close = line.find(']');
      const Formula f = parse_label(std::string_view(line).substr(1, close - 1));
      line = "[" + print_linear_label(f, o) + "]" + line.substr(close + 1);
    }
    out += line + "\n";
    if (line.rfind("HOA:", 0) == 0) {
      out += "domain: int 0.." + std::to_string(o.bound()) + "\n";
      out += "inputs:" + join(o.inputs()) + "\n";
      out += "outputs:" + join(o.outputs()) + "\n";
    }
  }
  return out;
}

}  // namespace hoa
