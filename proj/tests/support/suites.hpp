#pragma once

// Seeded cross-check suites shared by the acceptance binary and the command
// line tool. Each check draws one instance from its own generator and compares
// the library against the brute-force oracles.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hoa/hoa.hpp"
#include "support/fgame_oracle.hpp"
#include "support/game_oracle.hpp"
#include "support/oracles.hpp"

namespace suite {

using namespace hoa;

struct Outcome {
  bool ok = true;
  std::string note;  // reason for a disagreement
};

inline Outcome fail(std::string why) { return {false, std::move(why)}; }

struct Tally {
  std::size_t count = 0, agreed = 0;
  std::vector<std::string> failures;  // "#index: note", in index order
  double seconds = 0;
  bool all() const { return agreed == count; }
};

inline std::uint64_t instance_seed(std::uint64_t seed, std::size_t i) {
  return seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL * (i + 1);
}

// Runs `check` on instances 0..count-1, each with its own generator, spread
// over `threads` workers. Results do not depend on the thread count.
inline Tally run(std::size_t count, std::uint64_t seed, const std::function<Outcome(gen::Rng&, std::size_t)>& check,
                 unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Outcome> out(count);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i; (i = next++) < count;) {
      gen::Rng rng(instance_seed(seed, i));
      try {
        out[i] = check(rng, i);
      } catch (const std::exception& e) {
        out[i] = fail(std::string("exception: ") + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  Tally r;
  r.count = count;
  for (std::size_t i = 0; i < count; ++i) {
    if (out[i].ok) ++r.agreed;
    else r.failures.push_back("#" + std::to_string(i) + ": " + out[i].note);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline Acceptance::Family family_at(std::size_t i) { return kAllFamilies[i % std::size(kAllFamilies)]; }

inline bool word_accepted(const Hoa& a, const Acceptance& acc, const WordLasso& w) {
  return oracle::accepts(oracle::prefix_profile(a, acc, w.prefix), oracle::period_profile(a, acc, w.cycle));
}

inline WordLasso word_of(const Lasso& l) {
  WordLasso w;
  for (const auto& s : l.prefix) w.prefix.push_back(s.val.bits);
  for (const auto& s : l.cycle) w.cycle.push_back(s.val.bits);
  return w;
}

// ---- emptiness -------------------------------------------------------------

// |Q| <= 6, |P| <= 4, d <= 4.
inline Outcome emptiness(gen::Rng& rng, std::size_t i) {
  gen::AutomatonParams p{1 + gen::uniform(rng, 6), gen::uniform(rng, 5), 1 + gen::uniform(rng, 4), 3};
  const Hoa a = gen::random_automaton(rng, p);
  const Acceptance acc = gen::random_acceptance(rng, family_at(i), a.d);
  const auto x = expand_explicit(a);
  const bool nonempty = oracle::graph_nonempty(x.graph(), x.initial, acc);
  const auto e = is_empty(a, acc);
  if (e.empty == nonempty) return fail(std::string(family_name(acc.family())) + ": verdict differs");
  if (e.empty) return {};
  if (!e.witness) return fail("nonempty without a witness");
  validate_lasso(a, *e.witness);
  if (!word_accepted(a, acc, word_of(*e.witness))) return fail("witness word is rejected");
  return {};
}

// ---- satisfiability reduction ----------------------------------------------

inline Outcome sat_reduction(gen::Rng& rng, std::size_t) {
  const unsigned vars = 1 + gen::uniform(rng, 10);
  const Formula phi = gen::random_guard(rng, vars, 4);
  std::vector<std::string> props;
  for (unsigned v = 0; v < vars; ++v) props.push_back("v" + std::to_string(v));
  bool satisfiable = false;
  for (PropMask m = 0; m < (PropMask{1} << vars) && !satisfiable; ++m) satisfiable = eval_bits(phi, m);
  const Hoa a = sat_automaton(props, phi);
  if (is_empty(a, Acceptance::reachability(color_bit(2))).empty == satisfiable) return fail("reachability variant");
  if (is_empty(a, Acceptance::safety(color_bit(2))).empty == satisfiable) return fail("safety variant");
  return {};
}

// ---- lasso bound -----------------------------------------------------------

// A nonempty state-based instance: shortened lassos stay within |Q|^2, and
// the raw automaton meets (|Q| d)^2 after conversion.
inline Outcome lasso_bound(gen::Rng& rng, std::size_t i) {
  for (;;) {
    gen::AutomatonParams p{1 + gen::uniform(rng, 5), 1 + gen::uniform(rng, 2), 1 + gen::uniform(rng, 3), 3};
    const Hoa raw = gen::random_automaton(rng, p);
    const Acceptance acc = gen::random_acceptance(rng, family_at(i), raw.d);
    const Hoa sb = to_state_based(raw).aut;
    const auto e = is_empty(sb, acc);
    if (e.empty) continue;
    const Lasso l = shrink_lasso(sb, *e.witness);
    validate_lasso(sb, l);
    const std::size_t q2 = std::size_t{sb.num_states} * sb.num_states;
    if (l.prefix.size() > q2 || l.cycle.size() > q2) return fail("shortened lasso exceeds |Q|^2");
    if (!word_accepted(sb, acc, word_of(l))) return fail("shortened lasso is rejected");
    const auto rep = check_lasso_bound(raw, acc);
    if (!rep.holds) return fail("(|Q| d)^2 bound fails on the raw automaton");
    return {};
  }
}

// ---- transformations -------------------------------------------------------

enum class Transform { StateBased, ReachBuchi, SafetyCoBuchi, MullerStreett, RabinBuchi, ElBuchi };

inline const char* transform_name(Transform t) {
  switch (t) {
    case Transform::StateBased: return "to_state_based";
    case Transform::ReachBuchi: return "reach_to_buchi";
    case Transform::SafetyCoBuchi: return "safety_to_cobuchi";
    case Transform::MullerStreett: return "muller_to_streett";
    case Transform::RabinBuchi: return "rabin_to_buchi";
    case Transform::ElBuchi: return "el_to_buchi";
  }
  return "?";
}

inline constexpr Transform kAllTransforms[] = {Transform::StateBased,    Transform::ReachBuchi, Transform::SafetyCoBuchi,
                                               Transform::MullerStreett, Transform::RabinBuchi, Transform::ElBuchi};

// |Q| <= 4, |P| <= 3; languages compared on all u v^ω with |u|, |v| <= len.
inline Outcome transform(Transform kind, gen::Rng& rng, unsigned len) {
  using F = Acceptance::Family;
  gen::AutomatonParams p{1 + gen::uniform(rng, 4), 1 + gen::uniform(rng, 3), 1 + gen::uniform(rng, 3), 3};
  const Hoa a = gen::random_automaton(rng, p);
  const std::size_t q = a.num_states, d = a.d;
  Acceptance acc;
  Transformed r;
  std::string size_error;
  switch (kind) {
    case Transform::StateBased: {
      acc = gen::random_acceptance(rng, kAllFamilies[gen::uniform(rng, static_cast<unsigned>(std::size(kAllFamilies)))], a.d);
      r.aut = to_state_based(a).aut;
      r.acc = acc;
      if (!is_state_based(r.aut)) size_error = "output is not state-based";
      if (r.aut.num_states > q * d) size_error = "more than |Q| d states";
      if (r.aut.transitions.size() > pad_dead_states(a).transitions.size() * d) size_error = "more than |Δ| d transitions";
      break;
    }
    case Transform::ReachBuchi:
      acc = gen::random_acceptance(rng, F::Reachability, a.d);
      r = reach_to_buchi(a, acc.set());
      if (r.aut.num_states > 2 * (q + 1)) size_error = "more than 2(|Q|+1) states";
      break;
    case Transform::SafetyCoBuchi:
      acc = gen::random_acceptance(rng, F::Safety, a.d);
      r = safety_to_cobuchi(a, acc.set());
      if (r.aut.num_states > q + 1) size_error = "more than |Q|+1 states";
      break;
    case Transform::MullerStreett:
      acc = gen::random_acceptance(rng, F::Muller, a.d);
      r = muller_to_streett(a, acc.sets());
      if (r.aut.num_states > 2 * acc.sets().size() * q * d) size_error = "more than 2 k |Q| d states";
      break;
    case Transform::RabinBuchi:
      acc = gen::random_acceptance(rng, F::Rabin, a.d);
      r = rabin_to_buchi(a, acc.pairs());
      if (r.aut.num_states > 2 * acc.pairs().size() * q * d) size_error = "more than 2 k |Q| d states";
      break;
    case Transform::ElBuchi: {
      acc = gen::random_acceptance(rng, F::EmersonLei, a.d);
      r = el_to_buchi(a, acc.to_el());
      const std::size_t terms = dnf(acc.to_el()).size();
      if (r.aut.num_states > terms * 2 * std::max<std::size_t>(1, acc.to_el().size()) * q)
        size_error = "more than 2 |alpha| |Q| states per disjunct";
      break;
    }
  }
  if (!size_error.empty()) return fail(size_error);
  if (auto diff = oracle::compare_on_lassos(a, acc, r.aut, r.acc, len)) return fail("languages differ");
  return {};
}

// ---- games -----------------------------------------------------------------

// Everything one random game contributes to the game criteria.
struct GameResult {
  bool agree = true;           // solve_hog vs the alternating-arena oracle
  bool direct_checked = false, direct_agree = true;
  bool certify_checked = false, certify_ok = true;
  bool profile_checked = false, profile_ok = true;
  bool fgame_agree = true;     // Boolean F-game vs solve_hog
  std::string note;
};

inline GameResult game(Acceptance::Family family, gen::Rng& rng) {
  gen::GameParams p;
  p.states = 1 + gen::uniform(rng, 4);
  p.inputs = 1 + gen::uniform(rng, 2);
  p.outputs = 1 + gen::uniform(rng, 2);
  p.colors = 1 + gen::uniform(rng, 3);
  p.leaves = 2 + gen::uniform(rng, 4);
  const Hog g = gen::random_hog(rng, p, gen::random_acceptance(rng, family, p.colors));
  GameResult res;
  const bool oracle_out = oracle::controller_wins(g);
  const auto r = solve_hog(g);
  res.agree = (r.winner == Player::Out) == oracle_out;
  if (!res.agree) res.note = "solve_hog differs from the oracle";
  if (family == Acceptance::Family::Muller || family == Acceptance::Family::EmersonLei) {
    res.direct_checked = true;
    res.direct_agree = solve_hog_direct(g).winner == r.winner;
    if (!res.direct_agree) res.note = "direct solver differs";
  }
  if (r.winner == Player::In && g.acc.is_streett_class()) {
    res.certify_checked = true;
    res.certify_ok = r.in_strategy && certify_in_strategy(g, *r.in_strategy) == Certification::Winning;
    if (!res.certify_ok) res.note = "environment strategy not certified";
  }
  if (r.winner == Player::Out && family == Acceptance::Family::Rabin) {
    res.profile_checked = true;
    const auto prof = controller_order_profile(g);
    res.profile_ok = prof && verify_order_profile(g, *prof);
    if (!res.profile_ok) res.note = "order profile not verified";
  }
  res.fgame_agree = solve_fgame(FGame{g.arena, g.acc}, boolean_oracle(g)).winner == r.winner;
  if (!res.fgame_agree) res.note = "Boolean F-game differs";
  return res;
}

inline Outcome game_check(Acceptance::Family family, gen::Rng& rng) {
  const auto r = game(family, rng);
  const bool ok = r.agree && r.direct_agree && r.certify_ok && r.profile_ok && r.fgame_agree;
  return {ok, r.note};
}

// ---- QBF games -------------------------------------------------------------

// ∀x ∃y φ with up to 4 + 4 variables; both game variants against the truth table.
inline Outcome qbf(gen::Rng& rng, std::size_t) {
  const unsigned kx = 1 + gen::uniform(rng, 4), ky = 1 + gen::uniform(rng, 4);
  const Formula phi = gen::random_guard(rng, kx + ky, 4);
  std::vector<std::string> props;
  for (unsigned i = 0; i < kx; ++i) props.push_back("x" + std::to_string(i));
  for (unsigned i = 0; i < ky; ++i) props.push_back("y" + std::to_string(i));
  bool truth = true;
  for (PropMask x = 0; x < (PropMask{1} << kx) && truth; ++x) {
    bool some = false;
    for (PropMask y = 0; y < (PropMask{1} << ky) && !some; ++y) some = eval_bits(phi, x | (y << kx));
    truth = some;
  }
  const PropMask xm = low_mask(kx), ym = low_mask(kx + ky) & ~xm;
  const auto games = hog_from_qbf2(props, xm, ym, phi);
  if ((solve_hog(games.reachability).winner == Player::Out) != truth) return fail("reachability variant");
  if ((solve_hog(games.safety).winner == Player::Out) != truth) return fail("safety variant");
  return {};
}

// ---- bounded-integer F-games -----------------------------------------------

inline Outcome fgame(gen::Rng& rng, std::size_t i) {
  const auto inst = oracle::random_fgame(rng, family_at(i));
  const auto r = solve_fgame(inst.game, inst.oracle);
  if ((r.winner == Player::Out) != oracle::controller_wins(inst.game, inst.oracle)) return fail("winner differs");
  return {};
}

// ---- inclusion -------------------------------------------------------------

inline Outcome inclusion_reflexive(gen::Rng& rng, std::size_t i) {
  for (;;) {
    gen::AutomatonParams p{1 + gen::uniform(rng, 3), 1 + gen::uniform(rng, 2), 1 + gen::uniform(rng, 3), 3};
    const Hoa a = gen::random_automaton(rng, p);
    const Acceptance acc = gen::random_acceptance(rng, family_at(i), a.d);
    try {
      if (!included(a, acc, a, acc).included) return fail("not reflexive");
      return {};
    } catch (const BoundExceeded&) {
      continue;  // outside the inclusion bounds; draw again
    }
  }
}

// A random pair within bounds: every counterexample is accepted by A and
// rejected by B, and an INCLUDED answer has no short lasso in A \ B.
inline Outcome inclusion_pair(gen::Rng& rng, std::size_t i) {
  for (;;) {
    const unsigned aps = 1 + gen::uniform(rng, 2);
    gen::AutomatonParams pa{1 + gen::uniform(rng, 3), aps, 1 + gen::uniform(rng, 3), 3};
    gen::AutomatonParams pb{1 + gen::uniform(rng, 3), aps, 1 + gen::uniform(rng, 3), 3};
    const Hoa a = gen::random_automaton(rng, pa), b = gen::random_automaton(rng, pb);
    const Acceptance acc_a = gen::random_acceptance(rng, family_at(i), a.d);
    const Acceptance acc_b = gen::random_acceptance(rng, kAllFamilies[gen::uniform(rng, static_cast<unsigned>(std::size(kAllFamilies)))], b.d);
    Inclusion inc;
    try {
      inc = included(a, acc_a, b, acc_b);
    } catch (const BoundExceeded&) {
      continue;
    }
    if (inc.included) {
      // Search lassos of A not accepted by B.
      for (const auto& u : oracle::all_words(aps, 0, 2))
        for (const auto& v : oracle::all_words(aps, 1, 2))
          if (word_accepted(a, acc_a, {u, v}) && !word_accepted(b, acc_b, {u, v})) return fail("missed a counterexample");
      return {};
    }
    if (!inc.word || !inc.run) return fail("counterexample missing");
    validate_lasso(a, *inc.run);
    if (!word_accepted(a, acc_a, *inc.word)) return fail("counterexample rejected by A");
    if (word_accepted(b, acc_b, *inc.word)) return fail("counterexample accepted by B");
    return {};
  }
}

}  // namespace suite
