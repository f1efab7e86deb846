#pragma once

#include "hoa/automaton.hpp"

namespace fixture {

using namespace hoa;

// Request/grant automaton: r = proposition 0, g = proposition 1. States 0..3;
// the grant-less states carry color 1, the others color 2.
inline Hoa request_grant() {
  Hoa a;
  a.num_states = 4;
  a.initial = {0};
  a.aps = {"r", "g"};
  auto r = Formula::atom(0), g = Formula::atom(1);
  auto nr = Formula::neg(r), ng = Formula::neg(g);
  a.add_transition(0, Formula::conj(nr, ng), 0, 1);
  a.add_transition(0, g, 1, 1);
  a.add_transition(0, Formula::conj(r, ng), 2, 1);
  a.add_transition(1, Formula::conj(nr, ng), 0, 1);
  a.add_transition(1, Formula::conj(r, ng), 2, 1);
  a.add_transition(1, g, 3, 1);
  a.add_transition(2, ng, 2, 2);
  a.add_transition(2, g, 1, 2);
  a.add_transition(3, Formula::top(), 3, 2);
  return a;
}

// The same arena as a game: r is the input, g the output.
inline Hog request_grant_game(Acceptance acc = Acceptance::buchi(color_bit(1))) {
  Hog g;
  g.arena = request_grant();
  g.in_mask = 0b01;
  g.out_mask = 0b10;
  g.acc = std::move(acc);
  return g;
}

}  // namespace fixture
