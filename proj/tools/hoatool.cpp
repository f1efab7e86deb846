// Command-line front end: emptiness, inclusion, transformations, game solving,
// seeded generators and the cross-check suites.
//
// Exit codes: check-empty 0 = nonempty, 1 = empty; check-inclusion 0 =
// included, 1 = not included; cross-check 1 = disagreement; 2 = any error.
// Game states are those of the entry-colored arena ("copy"), each mapped back
// to the state of the input arena it came from.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hoa/hoa.hpp"
#include "support/suites.hpp"

using namespace hoa;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json sizes_of(const Hoa& a) {
  return {{"states", a.num_states}, {"transitions", a.transitions.size()}, {"aps", a.num_aps()}, {"colors", a.d}};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

// Replaces the acceptance headers of a HOA text. The clause is either an
// Acceptance value such as `2 Inf(0) & Fin(1)` or `reachability|safety k...`
// with HOA set indices.
std::string override_acceptance(const std::string& text, const std::string& clause) {
  std::istringstream in(text);
  std::string line, head, rest, sets = "0";
  bool in_body = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t == "--BODY--") in_body = true;
    if (!in_body && starts_with(t, "Acceptance:")) {
      std::istringstream ls(t.substr(11));
      ls >> sets;
      continue;
    }
    if (!in_body && (starts_with(t, "acc-name:") || starts_with(t, "reachability:") || starts_with(t, "safety:")))
      continue;
    (in_body ? rest : head) += line + "\n";
  }
  std::istringstream cs(clause);
  std::string kind;
  cs >> kind;
  std::string inserted;
  if (kind == "reachability" || kind == "safety") {
    std::string k, ks;
    unsigned need = 0;
    while (cs >> k) {
      if (k.find_first_not_of("0123456789") != std::string::npos) throw UsageError("bad set index '" + k + "'");
      need = std::max(need, static_cast<unsigned>(std::stoul(k)) + 1);
      ks += " " + k;
    }
    const unsigned n = std::max(need, static_cast<unsigned>(std::stoul(sets)));
    inserted = "Acceptance: " + std::to_string(n) + " t\n" + kind + ":" + ks + "\n";
  } else {
    inserted = "Acceptance: " + clause + "\n";
  }
  return head + inserted + rest;
}

HoaDocument load(const std::string& path, const std::string& acc_override = "") {
  std::string text = read_file(path);
  if (!acc_override.empty()) text = override_acceptance(text, acc_override);
  return parse_hoa(text);
}

std::string bits_of(PropMask m, PropMask dom) {
  std::string s;
  for (PropMask x = dom; x; x &= x - 1) s.push_back(((m >> std::countr_zero(x)) & 1) ? '1' : '0');
  return s.empty() ? "-" : s;
}

std::string set_text(StateSet s) {
  std::string out = "{";
  for (StateId q : members(s)) out += (out.size() > 1 ? "," : "") + std::to_string(q);
  return out + "}";
}

std::string assignment_text(const BoundedIntOracle& o, const Assignment& w) {
  std::string out;
  for (std::size_t i = 0; i < o.inputs().size() && i < w.size(); ++i)
    out += (out.empty() ? "" : " ") + o.inputs()[i] + "=" + std::to_string(w[i]);
  return out;
}

// ---- commands --------------------------------------------------------------

int check_empty(const std::string& file, const std::string& acc_override, bool as_json) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto doc = load(file, acc_override);
  const auto e = is_empty(doc.automaton, doc.acc);
  const std::string witness = e.empty ? "" : format_lasso(doc.automaton, *e.witness);
  if (as_json) {
    std::cout << json{{"verdict", e.empty ? "EMPTY" : "NONEMPTY"},
                      {"witness", e.empty ? json(nullptr) : json(witness)},
                      {"sizes", sizes_of(doc.automaton)},
                      {"timings", {{"seconds", since(t0)}}}}
                     .dump()
              << "\n";
  } else {
    std::cout << (e.empty ? "EMPTY" : "NONEMPTY " + witness) << "\n";
  }
  return e.empty ? 1 : 0;
}

int check_inclusion(const std::string& fa, const std::string& fb, bool as_json) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = load(fa), b = load(fb);
  const auto r = included(a.automaton, a.acc, b.automaton, b.acc);
  const std::string witness = r.included ? "" : format_lasso(a.automaton, *r.run);
  if (as_json) {
    std::cout << json{{"verdict", r.included ? "INCLUDED" : "NOT-INCLUDED"},
                      {"witness", r.included ? json(nullptr) : json(witness)},
                      {"sizes", {{"left", sizes_of(a.automaton)}, {"right", sizes_of(b.automaton)}}},
                      {"timings", {{"seconds", since(t0)}}}}
                     .dump()
              << "\n";
  } else {
    std::cout << (r.included ? "INCLUDED" : "NOT-INCLUDED " + witness) << "\n";
  }
  return r.included ? 0 : 1;
}

int transform_cmd(const std::string& file, const std::string& to) {
  const auto doc = load(file);
  using F = Acceptance::Family;
  Hoa out;
  Acceptance acc;
  if (to == "state-based") {
    out = to_state_based(doc.automaton).aut;
    acc = doc.acc;
  } else if (to == "buchi") {
    auto r = to_buchi(doc.automaton, doc.acc);
    out = std::move(r.aut);
    acc = std::move(r.acc);
  } else if (to == "streett") {
    if (doc.acc.family() != F::Muller) throw UsageError("--to streett needs a Muller condition");
    auto r = muller_to_streett(doc.automaton, doc.acc.sets());
    out = std::move(r.aut);
    acc = std::move(r.acc);
  } else if (to == "cobuchi") {
    if (doc.acc.family() != F::Safety) throw UsageError("--to cobuchi needs a safety condition");
    auto r = safety_to_cobuchi(doc.automaton, doc.acc.set());
    out = std::move(r.aut);
    acc = std::move(r.acc);
  } else {
    throw UsageError("unknown target '" + to + "'");
  }
  std::cout << print_hoa(out, acc);
  return 0;
}

void print_out_strategy(const WinningReport& r) {
  std::cout << "controller machine, memory " << r.out_strategy->memory_size << "\n";
  for (const auto& row : r.out_strategy->rows)
    std::cout << "  state " << r.game.origin[row.state] << " copy " << row.state << " mem " << row.memory << " in "
              << bits_of(row.input, r.game.hog.in_mask) << " -> out " << bits_of(row.output, r.game.hog.out_mask)
              << " next " << r.game.origin[row.next] << " copy " << row.next << " mem " << row.next_memory << "\n";
}

void print_in_strategy(const WinningReport& r) {
  std::cout << "environment choices\n";
  for (StateId q = 0; q < r.in_strategy->choice.size(); ++q) {
    const auto& c = r.in_strategy->choice[q];
    std::cout << "  state " << r.game.origin[q] << " copy " << q << " in " << bits_of(c.input.bits, r.game.hog.in_mask)
              << " announce ";
    std::string targets = "{";
    for (StateId p : members(c.set)) targets += (targets.size() > 1 ? "," : "") + std::to_string(r.game.origin[p]);
    std::cout << targets << "}\n";
  }
}

int solve_game(const std::string& file, const std::string& engine, bool strategy, bool as_json) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(file);
  if (std::regex_search(text, std::regex(R"((^|\n)\s*domain:)"))) {
    const auto doc = parse_fgame(text);
    const auto r = solve_fgame(doc.game, *doc.oracle);
    // Rows are keyed by arena states; copies made for entry colors collapse.
    std::set<std::pair<StateId, StateSet>> seen;
    json table = json::array();
    for (const auto& [v, w] : r.witness) {
      const auto& vx = r.pg.vertices[v];
      StateSet targets = 0;
      for (StateId p : members(vx.set)) targets |= state_bit(r.game.origin[p]);
      if (!seen.insert({r.game.origin[vx.state], targets}).second) continue;
      table.push_back({{"state", r.game.origin[vx.state]},
                       {"announce", set_text(targets)},
                       {"inputs", assignment_text(*doc.oracle, w)}});
    }
    if (as_json) {
      json out{{"verdict", std::string("WINNER: ") + player_name(r.winner)},
               {"sizes", {{"states", doc.game.arena.num_states}, {"pg_vertices", r.pg.size()}}},
               {"timings", {{"seconds", since(t0)}}}};
      out["witness"] = strategy ? table : json(nullptr);
      std::cout << out.dump() << "\n";
      return 0;
    }
    std::cout << "WINNER: " << player_name(r.winner) << "\n";
    if (strategy) {
      std::cout << "environment inputs forcing each announcement\n";
      for (const auto& row : table)
        std::cout << "  state " << row["state"].get<unsigned>() << " announce " << row["announce"].get<std::string>()
                  << " with " << row["inputs"].get<std::string>() << "\n";
    }
    return 0;
  }
  const auto doc = parse_hoa(text);
  if (!doc.is_game) throw UsageError(file + " has no controllable-AP header");
  Engine e = Engine::PgExact;
  if (engine == "pg-full") e = Engine::PgFull;
  else if (engine == "direct") e = Engine::Direct;
  else if (engine != "pg-exact") throw UsageError("unknown engine '" + engine + "'");
  const auto r = solve_hog(doc.game(), e);
  if (as_json) {
    json out{{"verdict", std::string("WINNER: ") + player_name(r.winner)},
             {"witness", nullptr},
             {"sizes", {{"states", doc.automaton.num_states}, {"pg_vertices", r.pg_vertices}}},
             {"timings", {{"seconds", since(t0)}}}};
    if (strategy && r.out_strategy) {
      json rows = json::array();
      for (const auto& row : r.out_strategy->rows)
        rows.push_back({{"state", r.game.origin[row.state]},
                        {"copy", row.state},
                        {"memory", row.memory},
                        {"input", bits_of(row.input, r.game.hog.in_mask)},
                        {"output", bits_of(row.output, r.game.hog.out_mask)},
                        {"next", r.game.origin[row.next]},
                        {"next_copy", row.next},
                        {"next_memory", row.next_memory}});
      out["witness"] = rows;
    }
    std::cout << out.dump() << "\n";
    return 0;
  }
  std::cout << "WINNER: " << player_name(r.winner) << "\n";
  if (strategy) {
    if (r.out_strategy) print_out_strategy(r);
    else if (r.in_strategy) print_in_strategy(r);
    else std::cout << "no memoryless environment strategy is extracted for this condition\n";
  }
  return 0;
}

// ---- generators ------------------------------------------------------------

struct GenOptions {
  std::string kind;
  std::uint64_t seed = 0;
  std::string family = "buchi";
  unsigned states = 3, aps = 2, colors = 3, vars = 3;
  std::string variant = "reachability";
  std::string formula;
};

Acceptance::Family parse_family(const std::string& name) {
  for (auto f : kAllFamilies) {
    std::string n = family_name(f);
    for (auto& ch : n) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (n == name) return f;
  }
  throw UsageError("unknown acceptance family '" + name + "'");
}

Acceptance variant_acceptance(const std::string& variant) {
  if (variant == "reachability") return Acceptance::reachability(color_bit(2));
  if (variant == "safety") return Acceptance::safety(color_bit(2));
  throw UsageError("unknown variant '" + variant + "'");
}

// `forall x1 x2 exists y1 y2 (phi)` or `forall x exists y : phi`.
QbfGames qbf_from_text(const std::string& text) {
  static const std::regex shape(R"(^\s*forall\s+([\w\s]+?)\s+exists\s+([\w\s]+?)\s*(?::|(?=\())(.*)$)");
  std::smatch m;
  if (!std::regex_match(text, m, shape)) throw UsageError("expected 'forall X exists Y formula'");
  PropRegistry names;
  auto declare = [&](const std::string& list) {
    std::istringstream ls(list);
    std::string v;
    PropMask mask = 0;
    while (ls >> v) {
      if (names.find(v)) throw UsageError("variable " + v + " bound twice");
      mask |= prop_bit(names.add(v));
    }
    return mask;
  };
  const PropMask x = declare(m[1]), y = declare(m[2]);
  const std::size_t declared = names.size();
  const Formula phi = parse_named_formula(m[3].str(), names);
  if (names.size() != declared) throw UsageError("formula has free variable " + names.name(declared));
  return hog_from_qbf2(names.names(), x, y, phi);
}

std::string generate(const GenOptions& o) {
  gen::Rng rng(o.seed);
  if (o.kind == "hoa") {
    const Hoa a = gen::random_automaton(rng, {o.states, o.aps, o.colors, 3});
    return print_hoa(a, gen::random_acceptance(rng, parse_family(o.family), a.d));
  }
  if (o.kind == "hog") {
    gen::GameParams p;
    p.states = o.states;
    p.inputs = std::max(1u, o.aps / 2);
    p.outputs = std::max(1u, o.aps - p.inputs);
    p.colors = o.colors;
    Hog g = gen::random_hog(rng, p, Acceptance{});
    g.acc = gen::random_acceptance(rng, parse_family(o.family), g.arena.d);
    return print_hoa(g);
  }
  if (o.kind == "sat-hoa") {
    PropRegistry names;
    Formula phi = Formula::top();
    if (!o.formula.empty()) {
      phi = parse_named_formula(o.formula, names);
    } else {
      for (unsigned v = 0; v < o.vars; ++v) names.add("v" + std::to_string(v));
      phi = gen::random_guard(rng, o.vars, 4);
    }
    return print_hoa(sat_automaton(names.names(), phi), variant_acceptance(o.variant));
  }
  if (o.kind == "qbf2-hog") {
    QbfGames games;
    if (!o.formula.empty()) {
      games = qbf_from_text(o.formula);
    } else {
      const unsigned kx = std::max(1u, o.vars / 2), ky = std::max(1u, o.vars - kx);
      std::vector<std::string> props;
      for (unsigned i = 0; i < kx; ++i) props.push_back("x" + std::to_string(i));
      for (unsigned i = 0; i < ky; ++i) props.push_back("y" + std::to_string(i));
      games = hog_from_qbf2(props, low_mask(kx), low_mask(kx + ky) & ~low_mask(kx),
                            gen::random_guard(rng, kx + ky, 4));
    }
    return print_hoa(variant_acceptance(o.variant).family() == Acceptance::Family::Safety ? games.safety
                                                                                          : games.reachability);
  }
  if (o.kind == "fgame") {
    const auto inst = oracle::random_fgame(rng, parse_family(o.family));
    return print_fgame(inst.game, inst.oracle);
  }
  throw UsageError("unknown generator kind '" + o.kind + "'");
}

// ---- cross-check -----------------------------------------------------------

int cross_check(const std::string& name, std::size_t count, std::uint64_t seed, unsigned threads) {
  std::vector<std::pair<std::string, std::function<suite::Outcome(gen::Rng&, std::size_t)>>> checks;
  if (name == "emptiness") checks.push_back({name, suite::emptiness});
  else if (name == "sat") checks.push_back({name, suite::sat_reduction});
  else if (name == "lasso-bound") checks.push_back({name, suite::lasso_bound});
  else if (name == "qbf") checks.push_back({name, suite::qbf});
  else if (name == "fgames") checks.push_back({name, suite::fgame});
  else if (name == "games")
    checks.push_back({name, [](gen::Rng& rng, std::size_t i) { return suite::game_check(suite::family_at(i), rng); }});
  else if (name == "inclusion") {
    checks.push_back({"inclusion-reflexive", suite::inclusion_reflexive});
    checks.push_back({"inclusion-pairs", suite::inclusion_pair});
  } else if (name == "transforms") {
    for (auto kind : suite::kAllTransforms)
      checks.push_back({std::string("transform ") + suite::transform_name(kind),
                        [kind](gen::Rng& rng, std::size_t) { return suite::transform(kind, rng, 4); }});
  } else {
    throw UsageError("unknown suite '" + name + "'");
  }
  bool ok = true;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto t = suite::run(count, seed + k, checks[k].second, threads);
    ok = ok && t.all();
    std::cout << checks[k].first << ": " << t.agreed << "/" << t.count << " agree\n";
    for (const auto& f : t.failures) std::cout << "  " << f << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emptiness, inclusion, transformations and games on HOA automata"};
  app.require_subcommand(1);

  std::string file, file_b, acc_override, to, engine = "pg-exact";
  bool as_json = false, strategy = false;

  auto* empty = app.add_subcommand("check-empty", "Decide emptiness; exit 0 nonempty, 1 empty");
  empty->add_option("file", file, "HOA file")->required();
  empty->add_option("--acc-override", acc_override, "acceptance clause replacing the file's");
  empty->add_flag("--json", as_json, "machine-readable output");

  auto* incl = app.add_subcommand("check-inclusion", "Decide L(A) within L(B); exit 0 included, 1 not");
  incl->add_option("a", file, "HOA file A")->required();
  incl->add_option("b", file_b, "HOA file B")->required();
  incl->add_flag("--json", as_json, "machine-readable output");

  auto* tr = app.add_subcommand("transform", "Convert an automaton and print it as HOA");
  tr->add_option("file", file, "HOA file")->required();
  tr->add_option("--to", to, "state-based, buchi, streett or cobuchi")->required();

  auto* solve = app.add_subcommand("solve-game", "Solve a HOA game or a bounded-integer game");
  solve->add_option("file", file, "game file")->required();
  solve->add_option("--engine", engine, "pg-exact, pg-full or direct");
  solve->add_flag("--strategy", strategy, "print a winning strategy");
  solve->add_flag("--json", as_json, "machine-readable output");

  GenOptions g;
  auto* gen_cmd = app.add_subcommand("gen", "Print a seeded random instance");
  gen_cmd->add_option("kind", g.kind, "hoa, hog, sat-hoa, qbf2-hog or fgame")->required();
  gen_cmd->add_option("--seed", g.seed, "generator seed");
  gen_cmd->add_option("--family", g.family, "acceptance family for hoa, hog and fgame");
  gen_cmd->add_option("--states", g.states, "states for hoa and hog")->check(CLI::Range(1u, 64u));
  gen_cmd->add_option("--aps", g.aps, "propositions for hoa and hog")->check(CLI::Range(1u, 12u));
  gen_cmd->add_option("--colors", g.colors, "colors for hoa and hog")->check(CLI::Range(1u, 30u));
  gen_cmd->add_option("--vars", g.vars, "variables for sat-hoa and qbf2-hog")->check(CLI::Range(1u, 12u));
  gen_cmd->add_option("--variant", g.variant, "reachability or safety");
  gen_cmd->add_option("--formula", g.formula, "formula for sat-hoa, quantified formula for qbf2-hog");

  std::string suite_name;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  auto* cc = app.add_subcommand("cross-check", "Run a seeded suite against the brute-force oracles");
  cc->add_option("suite", suite_name,
                 "emptiness, sat, lasso-bound, transforms, games, qbf, fgames or inclusion")
      ->required();
  cc->add_option("--count", count, "instances");
  cc->add_option("--seed", seed, "suite seed");
  cc->add_option("--threads", threads, "worker threads, 0 for all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*empty) return check_empty(file, acc_override, as_json);
    if (*incl) return check_inclusion(file, file_b, as_json);
    if (*tr) return transform_cmd(file, to);
    if (*solve) return solve_game(file, engine, strategy, as_json);
    if (*gen_cmd) {
      std::cout << generate(g);
      return 0;
    }
    if (*cc) return cross_check(suite_name, count, seed, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
