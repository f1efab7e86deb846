#pragma once

// Colors, Emerson-Lei acceptance formulas, the named acceptance families and
// their evaluation on lasso-shaped color traces.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hoa {

using Color = unsigned;
using ColorSet = std::uint64_t;  // bit c stands for color c
inline constexpr Color kMaxColor = 63;

inline ColorSet color_bit(Color c) {
  if (c > kMaxColor) throw std::out_of_range("color " + std::to_string(c) + " exceeds " + std::to_string(kMaxColor));
  return ColorSet{1} << c;
}
inline bool has_color(ColorSet s, Color c) { return c <= kMaxColor && ((s >> c) & 1); }
// {1, ..., d}
inline ColorSet all_colors(unsigned d) {
  if (d > kMaxColor) throw std::out_of_range("index d exceeds " + std::to_string(kMaxColor));
  return ((ColorSet{1} << d) - 1) << 1;
}
inline Color max_color(ColorSet s) { return s ? static_cast<Color>(63 - std::countl_zero(s)) : 0; }
inline std::vector<Color> colors_of(ColorSet s) {
  std::vector<Color> out;
  for (; s; s &= s - 1) out.push_back(static_cast<Color>(std::countr_zero(s)));
  return out;
}

struct ColorError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// elem = colors seen at all, occ_inf = colors seen infinitely often.
struct ColorTrace {
  ColorSet elem = 0;
  ColorSet occ_inf = 0;
  ColorSet occ_fin() const { return elem & ~occ_inf; }
};

class AccFormula {
 public:
  enum class Kind : std::uint8_t { Inf, Fin, And, Or, Not };

  AccFormula() = default;  // Fin(∅), i.e. true

  static AccFormula inf(ColorSet c) { return AccFormula(Kind::Inf, c, {}); }
  static AccFormula fin(ColorSet c) { return AccFormula(Kind::Fin, c, {}); }
  static AccFormula top() { return fin(0); }
  static AccFormula bottom() { return inf(0); }
  static AccFormula neg(AccFormula f) { return AccFormula(Kind::Not, 0, {std::move(f)}); }
  static AccFormula conj(std::vector<AccFormula> kids) { return nary(Kind::And, std::move(kids)); }
  static AccFormula disj(std::vector<AccFormula> kids) { return nary(Kind::Or, std::move(kids)); }
  static AccFormula conj(AccFormula a, AccFormula b) { return conj(std::vector<AccFormula>{std::move(a), std::move(b)}); }
  static AccFormula disj(AccFormula a, AccFormula b) { return disj(std::vector<AccFormula>{std::move(a), std::move(b)}); }

  Kind kind() const { return kind_; }
  ColorSet set() const { return set_; }
  const std::vector<AccFormula>& children() const { return kids_; }
  bool is_true() const { return kind_ == Kind::Fin && set_ == 0; }
  bool is_false() const { return kind_ == Kind::Inf && set_ == 0; }

  bool eval(ColorSet occ_inf) const {
    switch (kind_) {
      case Kind::Inf: return (occ_inf & set_) != 0;
      case Kind::Fin: return (occ_inf & set_) == 0;
      case Kind::Not: return !kids_[0].eval(occ_inf);
      case Kind::And:
        for (const auto& k : kids_)
          if (!k.eval(occ_inf)) return false;
        return true;
      case Kind::Or:
        for (const auto& k : kids_)
          if (k.eval(occ_inf)) return true;
        return false;
    }
    return false;
  }

  // Symbol count: one per connective or primitive, plus one per listed color.
  std::size_t size() const {
    std::size_t n = 1 + static_cast<std::size_t>(std::popcount(set_));
    for (const auto& k : kids_) n += k.size();
    return n;
  }

  ColorSet colors() const {
    ColorSet s = set_;
    for (const auto& k : kids_) s |= k.colors();
    return s;
  }

  friend bool operator==(const AccFormula&, const AccFormula&) = default;

 private:
  AccFormula(Kind k, ColorSet s, std::vector<AccFormula> kids) : kind_(k), set_(s), kids_(std::move(kids)) {}

  // Flattening plus merging of sibling primitives: Inf(A) | Inf(B) = Inf(A∪B)
  // and Fin(A) & Fin(B) = Fin(A∪B). Neutral constants vanish next to other
  // operands.
  static AccFormula nary(Kind k, std::vector<AccFormula> kids) {
    const Kind merge_kind = k == Kind::And ? Kind::Fin : Kind::Inf;
    std::vector<AccFormula> flat;
    std::vector<AccFormula> work;
    for (auto& c : kids) {
      if (c.kind_ == k) work.insert(work.end(), c.kids_.begin(), c.kids_.end());
      else work.push_back(std::move(c));
    }
    int merged = -1;
    for (auto& c : work) {
      if (c.kind_ == merge_kind) {
        if (merged < 0) {
          merged = static_cast<int>(flat.size());
          flat.push_back(std::move(c));
        } else {
          flat[static_cast<std::size_t>(merged)].set_ |= c.set_;
        }
      } else {
        flat.push_back(std::move(c));
      }
    }
    if (merged >= 0 && flat.size() > 1 && flat[static_cast<std::size_t>(merged)].set_ == 0)
      flat.erase(flat.begin() + merged);
    if (flat.empty()) return k == Kind::And ? top() : bottom();
    if (flat.size() == 1) return std::move(flat.front());
    return AccFormula(k, 0, std::move(flat));
  }

  Kind kind_ = Kind::Fin;
  ColorSet set_ = 0;
  std::vector<AccFormula> kids_;
};

// One disjunct of a DNF: every Inf set is hit and the union of Fin sets avoided.
struct Conjunct {
  std::vector<ColorSet> infs;
  ColorSet fin = 0;
  friend bool operator==(const Conjunct&, const Conjunct&) = default;
};

namespace detail {
inline constexpr std::size_t kMaxDnfTerms = std::size_t{1} << 16;

inline std::vector<Conjunct> dnf_rec(const AccFormula& f, bool positive) {
  using K = AccFormula::Kind;
  switch (f.kind()) {
    case K::Not: return dnf_rec(f.children()[0], !positive);
    case K::Inf:
    case K::Fin: {
      const bool is_inf = (f.kind() == K::Inf) == positive;
      if (is_inf) {
        if (f.set() == 0) return {};  // Inf(∅) is unsatisfiable
        return {Conjunct{{f.set()}, 0}};
      }
      return {Conjunct{{}, f.set()}};
    }
    case K::And:
    case K::Or: {
      const bool conjunction = (f.kind() == K::And) == positive;
      if (!conjunction) {
        std::vector<Conjunct> out;
        for (const auto& k : f.children()) {
          auto part = dnf_rec(k, positive);
          out.insert(out.end(), part.begin(), part.end());
          if (out.size() > kMaxDnfTerms) throw std::length_error("acceptance DNF too large");
        }
        return out;
      }
      std::vector<Conjunct> acc{Conjunct{}};
      for (const auto& k : f.children()) {
        auto part = dnf_rec(k, positive);
        std::vector<Conjunct> next;
        for (const auto& a : acc)
          for (const auto& b : part) {
            Conjunct c = a;
            c.infs.insert(c.infs.end(), b.infs.begin(), b.infs.end());
            c.fin |= b.fin;
            next.push_back(std::move(c));
          }
        if (next.size() > kMaxDnfTerms) throw std::length_error("acceptance DNF too large");
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}
}  // namespace detail

// Disjunctive normal form with negations pushed onto primitives.
inline std::vector<Conjunct> dnf(const AccFormula& f) {
  auto out = detail::dnf_rec(f, true);
  std::vector<Conjunct> uniq;
  for (auto& c : out) {
    std::vector<ColorSet> infs;
    for (ColorSet s : c.infs)
      if (std::find(infs.begin(), infs.end(), s) == infs.end()) infs.push_back(s);
    c.infs = std::move(infs);
    if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(std::move(c));
  }
  return uniq;
}

class Acceptance {
 public:
  enum class Family : std::uint8_t { EmersonLei, Reachability, Safety, Buchi, CoBuchi, Parity, Rabin, Streett, Muller };
  using Pair = std::pair<ColorSet, ColorSet>;

  Acceptance() = default;  // Emerson-Lei "true"

  static Acceptance emerson_lei(AccFormula f) {
    Acceptance a;
    a.family_ = Family::EmersonLei;
    a.formula_ = std::move(f);
    return a;
  }
  static Acceptance reachability(ColorSet r) { return with_set(Family::Reachability, r); }
  static Acceptance safety(ColorSet s) { return with_set(Family::Safety, s); }
  static Acceptance buchi(ColorSet b) { return with_set(Family::Buchi, b); }
  static Acceptance co_buchi(ColorSet b) { return with_set(Family::CoBuchi, b); }
  // Max-even parity over colors 1..d.
  static Acceptance parity(unsigned d) {
    Acceptance a;
    a.family_ = Family::Parity;
    a.parity_d_ = d;
    return a;
  }
  // Pairs (E, F): Inf(E) & Fin(F).
  static Acceptance rabin(std::vector<Pair> pairs) { return with_pairs(Family::Rabin, std::move(pairs)); }
  // Pairs (E, F): Fin(E) | Inf(F).
  static Acceptance streett(std::vector<Pair> pairs) { return with_pairs(Family::Streett, std::move(pairs)); }
  static Acceptance muller(std::vector<ColorSet> sets) {
    Acceptance a;
    a.family_ = Family::Muller;
    a.sets_ = std::move(sets);
    return a;
  }

  Family family() const { return family_; }
  const AccFormula& formula() const { return formula_; }
  ColorSet set() const { return set_; }
  unsigned parity_colors() const { return parity_d_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::vector<ColorSet>& sets() const { return sets_; }

  bool is_emerson_lei_expressible() const { return family_ != Family::Reachability && family_ != Family::Safety; }
  // Conditions whose complement admits memoryless strategies (In's side is Rabin-like).
  bool is_streett_class() const {
    switch (family_) {
      case Family::Reachability:
      case Family::Safety:
      case Family::Buchi:
      case Family::CoBuchi:
      case Family::Parity:
      case Family::Streett: return true;
      default: return false;
    }
  }

  // The defining Inf/Fin formula of the family.
  AccFormula to_el() const {
    switch (family_) {
      case Family::EmersonLei: return formula_;
      case Family::Buchi: return AccFormula::inf(set_);
      case Family::CoBuchi: return AccFormula::fin(set_);
      case Family::Parity: {
        std::vector<AccFormula> ds;
        for (unsigned c = 2; c <= parity_d_; c += 2) {
          ColorSet above = all_colors(parity_d_) & ~all_colors(c);
          ds.push_back(AccFormula::conj(AccFormula::inf(color_bit(c)), AccFormula::fin(above)));
        }
        return AccFormula::disj(std::move(ds));
      }
      case Family::Rabin: {
        std::vector<AccFormula> ds;
        for (const auto& [e, f] : pairs_) ds.push_back(AccFormula::conj(AccFormula::inf(e), AccFormula::fin(f)));
        return AccFormula::disj(std::move(ds));
      }
      case Family::Streett: {
        std::vector<AccFormula> cs;
        for (const auto& [e, f] : pairs_) cs.push_back(AccFormula::disj(AccFormula::fin(e), AccFormula::inf(f)));
        return AccFormula::conj(std::move(cs));
      }
      case Family::Muller: {
        std::vector<AccFormula> ds;
        for (ColorSet s : sets_) {
          std::vector<AccFormula> cs;
          for (Color c : colors_of(s)) cs.push_back(AccFormula::inf(color_bit(c)));
          ds.push_back(AccFormula::conj(std::move(cs)));
        }
        return AccFormula::disj(std::move(ds));
      }
      case Family::Reachability:
      case Family::Safety: break;
    }
    throw std::logic_error("reachability and safety have no Inf/Fin formula");
  }

  ColorSet colors() const {
    switch (family_) {
      case Family::Reachability:
      case Family::Safety:
      case Family::Buchi:
      case Family::CoBuchi: return set_;
      case Family::Parity: return all_colors(parity_d_);
      default: return to_el().colors();
    }
  }

  std::size_t size() const {
    if (!is_emerson_lei_expressible()) return static_cast<std::size_t>(std::popcount(set_));
    return to_el().size();
  }

  friend bool operator==(const Acceptance&, const Acceptance&) = default;

 private:
  static Acceptance with_set(Family f, ColorSet s) {
    Acceptance a;
    a.family_ = f;
    a.set_ = s;
    return a;
  }
  static Acceptance with_pairs(Family f, std::vector<Pair> p) {
    Acceptance a;
    a.family_ = f;
    a.pairs_ = std::move(p);
    return a;
  }

  Family family_ = Family::EmersonLei;
  AccFormula formula_;
  ColorSet set_ = 0;
  unsigned parity_d_ = 0;
  std::vector<Pair> pairs_;
  std::vector<ColorSet> sets_;
};

inline const char* family_name(Acceptance::Family f) {
  using F = Acceptance::Family;
  switch (f) {
    case F::EmersonLei: return "emerson-lei";
    case F::Reachability: return "reachability";
    case F::Safety: return "safety";
    case F::Buchi: return "buchi";
    case F::CoBuchi: return "co-buchi";
    case F::Parity: return "parity";
    case F::Rabin: return "rabin";
    case F::Streett: return "streett";
    case F::Muller: return "muller";
  }
  return "?";
}

inline constexpr Acceptance::Family kAllFamilies[] = {
    Acceptance::Family::Reachability, Acceptance::Family::Safety, Acceptance::Family::Buchi,
    Acceptance::Family::CoBuchi,      Acceptance::Family::Parity, Acceptance::Family::Rabin,
    Acceptance::Family::Streett,      Acceptance::Family::Muller, Acceptance::Family::EmersonLei};

// Color 0 never occurs in an automaton; inside derived games it marks
// neutral positions and is dropped here. A nonzero `d` enables the range check.
inline bool eval_acceptance(const Acceptance& acc, const ColorTrace& trace, unsigned d = 0) {
  ColorTrace t{trace.elem & ~ColorSet{1}, trace.occ_inf & ~ColorSet{1}};
  if (d > 0 && ((t.elem | t.occ_inf) & ~all_colors(d)))
    throw ColorError("trace mentions color " + std::to_string(max_color(t.elem | t.occ_inf)) + " > d = " + std::to_string(d));
  switch (acc.family()) {
    case Acceptance::Family::Reachability: return (t.elem & acc.set()) != 0;
    case Acceptance::Family::Safety: return (t.elem & ~acc.set()) == 0;
    default: return acc.to_el().eval(t.occ_inf);
  }
}

// Complement for Inf/Fin-expressible conditions.
inline Acceptance negate(const Acceptance& acc) { return Acceptance::emerson_lei(AccFormula::neg(acc.to_el())); }

}  // namespace hoa
