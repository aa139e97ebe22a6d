#pragma once

#include <string>
#include <vector>

#include "searchgame/game.hpp"

namespace searchgame {

/// Example game 1: four states, the first two transient with self/cross
/// probability eta/2 and mass (1-eta)/2 draining into each of two absorbing
/// states. Initial mass (q, q, 1/2-q, 1/2-q). Requires eta, q in (0, 1/4).
inline GameSpec example1_spec(double eta, double q) {
  if (!(eta > 0.0 && eta < 0.25))
    throw ParameterOutOfRange("example1: eta must lie in (0, 1/4), got " +
                              std::to_string(eta));
  if (!(q > 0.0 && q < 0.25))
    throw ParameterOutOfRange("example1: q must lie in (0, 1/4), got " +
                              std::to_string(q));
  double h = eta / 2.0, d = (1.0 - eta) / 2.0;
  std::vector<double> rows = {
      h, h, d, d,  //
      h, h, d, d,  //
      0, 0, 1, 0,  //
      0, 0, 0, 1,  //
  };
  return GameSpec(StateSpace::numbered(4),
                  TransitionSchedule({TransitionMatrix(4, rows)}),
                  Belief({q, q, 0.5 - q, 0.5 - q}));
}

/// Example game 2: nine states. States 1..7 form one recurrent loop
/// (1->7, 2->1, 3->1, 4->1, 5->{2,3,4} uniformly, 6->5, 7->6 with 1-eta and
/// 7->7 with eta); states 8 and 9 are absorbing. Initial mass
/// (0,...,0, q(1-eta), q*eta, (1-q)/2, (1-q)/2). Requires eta in (0, 1/6)
/// and q in (0, 1/3).
inline GameSpec example2_spec(double eta, double q) {
  if (!(eta > 0.0 && eta < 1.0 / 6.0))
    throw ParameterOutOfRange("example2: eta must lie in (0, 1/6), got " +
                              std::to_string(eta));
  if (!(q > 0.0 && q < 1.0 / 3.0))
    throw ParameterOutOfRange("example2: q must lie in (0, 1/3), got " +
                              std::to_string(q));
  double third = 1.0 / 3.0;
  std::vector<double> rows = {
      0, 0,     0,     0,     0, 0,       1,   0, 0,  // 1 -> 7
      1, 0,     0,     0,     0, 0,       0,   0, 0,  // 2 -> 1
      1, 0,     0,     0,     0, 0,       0,   0, 0,  // 3 -> 1
      1, 0,     0,     0,     0, 0,       0,   0, 0,  // 4 -> 1
      0, third, third, third, 0, 0,       0,   0, 0,  // 5 -> 2,3,4
      0, 0,     0,     0,     1, 0,       0,   0, 0,  // 6 -> 5
      0, 0,     0,     0,     0, 1 - eta, eta, 0, 0,  // 7 -> 6 / 7
      0, 0,     0,     0,     0, 0,       0,   1, 0,  // 8 absorbing
      0, 0,     0,     0,     0, 0,       0,   0, 1,  // 9 absorbing
  };
  return GameSpec(StateSpace::numbered(9),
                  TransitionSchedule({TransitionMatrix(9, rows)}),
                  Belief({0, 0, 0, 0, 0, q * (1.0 - eta), q * eta,
                          (1.0 - q) / 2.0, (1.0 - q) / 2.0}));
}

/// n-state identity chain with uniform initial belief.
inline GameSpec identity_spec(int n) {
  if (n < 1) throw ParameterOutOfRange("identity: n must be >= 1");
  return GameSpec(StateSpace::numbered(n),
                  TransitionSchedule({TransitionMatrix::identity(n)}),
                  Belief::uniform(n));
}

/// n-state chain with all transition probabilities 1/n, uniform initial.
inline GameSpec uniform_spec(int n) {
  if (n < 1) throw ParameterOutOfRange("uniform: n must be >= 1");
  return GameSpec(StateSpace::numbered(n),
                  TransitionSchedule({TransitionMatrix::uniform(n)}),
                  Belief::uniform(n));
}

/// The 3-state identity chain used in the region-geometry demos.
inline GameSpec figure1_spec() { return identity_spec(3); }

/// The 3-state chain with two absorbing states and a third that drains
/// evenly into them, used in the region-geometry demos.
inline GameSpec figure2_spec() {
  std::vector<double> rows = {
      1,   0,   0,  //
      0,   1,   0,  //
      0.5, 0.5, 0,  //
  };
  return GameSpec(StateSpace::numbered(3),
                  TransitionSchedule({TransitionMatrix(3, rows)}),
                  Belief::uniform(3));
}

/// Name-based example factory: "example1", "example2", "identity",
/// "uniform", "figure1", "figure2". eta/q apply to the first two, n to
/// identity/uniform.
inline GameSpec generate_example(const std::string& name, double eta = 0.2,
                                 double q = 0.2, int n = 2) {
  if (name == "example1") return example1_spec(eta, q);
  if (name == "example2") return example2_spec(eta, q);
  if (name == "identity") return identity_spec(n);
  if (name == "uniform") return uniform_spec(n);
  if (name == "figure1") return figure1_spec();
  if (name == "figure2") return figure2_spec();
  throw ParameterOutOfRange("unknown example: " + name);
}

}  // namespace searchgame
