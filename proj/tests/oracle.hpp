#pragma once

// Test-only oracles, deliberately independent of the library's belief
// algebra: payoffs come from exhaustive enumeration of object paths, and
// max-min values from plain minimax over the tree of action sequences.

#include <cstdint>
#include <random>
#include <vector>

#include "searchgame/game.hpp"
#include "searchgame/solver.hpp"

namespace oracle {

struct PathPayoff {
  double p1 = 0.0;
  double p2 = 0.0;
  double not_found = 0.0;
  std::vector<double> per_period;  // probability the first meet is at t
};

// Enumerates every object path (X_1, ..., X_T) with its product probability
// and records the first period where the scripted action meets the path.
inline PathPayoff enumerate_paths(const searchgame::GameSpec& spec,
                                  const std::vector<int>& actions) {
  int T = static_cast<int>(actions.size());
  int n = spec.state_count();
  PathPayoff out;
  out.per_period.assign(static_cast<std::size_t>(T), 0.0);

  struct Frame {
    int state;
    int t;
    double prob;
  };
  std::vector<Frame> stack;
  for (int x = 0; x < n; ++x)
    stack.push_back({x, 1, spec.initial()[x]});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.prob == 0.0) continue;
    if (actions[static_cast<std::size_t>(f.t - 1)] == f.state) {
      out.per_period[static_cast<std::size_t>(f.t - 1)] += f.prob;
      if (f.t % 2 == 1)
        out.p1 += f.prob;
      else
        out.p2 += f.prob;
      continue;
    }
    if (f.t == T) {
      out.not_found += f.prob;
      continue;
    }
    const auto& m = spec.schedule().matrix_at(f.t);
    for (int y = 0; y < n; ++y)
      stack.push_back({y, f.t + 1, f.prob * m(f.state, y)});
  }
  return out;
}

namespace detail {

inline double minimax(const searchgame::GameSpec& spec,
                      std::vector<int>& actions, int t, int T,
                      searchgame::Player target) {
  int n = spec.state_count();
  if (t > T) {
    PathPayoff payoff = enumerate_paths(spec, actions);
    return target == searchgame::Player::one ? payoff.p1 : payoff.p2;
  }
  bool target_moves =
      (t % 2 == 1) == (target == searchgame::Player::one);
  double best = target_moves ? -1.0 : 2.0;
  for (int s = 0; s < n; ++s) {
    actions.push_back(s);
    double v = minimax(spec, actions, t + 1, T, target);
    actions.pop_back();
    if (target_moves ? v > best : v < best) best = v;
  }
  return best;
}

}  // namespace detail

// Max-min value of the horizon-T truncation by backward induction over
// complete action sequences, leaf payoffs by object-path enumeration.
// Exponential in T; for the n <= 3, T <= 5 corpus only.
inline double value(const searchgame::GameSpec& spec, int T,
                    searchgame::Player target) {
  std::vector<int> actions;
  return detail::minimax(spec, actions, 1, T, target);
}

inline double q_value(const searchgame::GameSpec& spec, int T, int first) {
  std::vector<int> actions{first};
  return detail::minimax(spec, actions, 2, T, searchgame::Player::one);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline std::vector<double> random_simplex(std::mt19937_64& eng, int n,
                                          double min_entry = 0.0) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (true) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& x : v) {
      x = -std::log(1.0 - unif(eng));  // Exp(1) draws give Dirichlet(1,..,1)
      sum += x;
    }
    for (auto& x : v) x /= sum;
    bool ok = true;
    for (double x : v) ok = ok && x >= min_entry;
    if (ok) return v;
  }
}

inline searchgame::Belief random_belief(std::mt19937_64& eng, int n) {
  return searchgame::Belief(random_simplex(eng, n));
}

inline searchgame::TransitionMatrix random_matrix(std::mt19937_64& eng, int n,
                                                  double min_entry = 0.0) {
  std::vector<double> rows;
  rows.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    auto row = random_simplex(eng, n, min_entry);
    rows.insert(rows.end(), row.begin(), row.end());
  }
  return searchgame::TransitionMatrix(n, rows);
}

inline searchgame::GameSpec random_spec(std::mt19937_64& eng, int n,
                                        int matrices = 1) {
  std::vector<searchgame::TransitionMatrix> ms;
  for (int k = 0; k < matrices; ++k) ms.push_back(random_matrix(eng, n));
  auto rule = (eng() & 1) ? searchgame::RepeatRule::cycle
                          : searchgame::RepeatRule::hold_last;
  return searchgame::GameSpec(searchgame::StateSpace::numbered(n),
                              searchgame::TransitionSchedule(ms, rule),
                              random_belief(eng, n));
}

}  // namespace oracle
