#pragma once

#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "searchgame/game.hpp"
#include "searchgame/solver.hpp"

namespace searchgame {

/// A pure strategy: a deterministic choice of state given the history, the
/// current belief and the period. Strategies are immutable values; copying
/// shares the underlying behavior.
class Strategy {
 public:
  using ActFn = std::function<int(const History&, const Belief&, int)>;
  using ValidateFn = std::function<void(const GameSpec&)>;

  Strategy(std::string name, ActFn act, ValidateFn validate = nullptr)
      : name_(std::move(name)),
        act_(std::move(act)),
        validate_(std::move(validate)) {}

  int act(const History& h, const Belief& b, int period) const {
    return act_(h, b, period);
  }
  const std::string& name() const { return name_; }

  /// Throws SpecMismatch when the strategy was written for a different game
  /// shape than `spec`.
  void validate_for(const GameSpec& spec) const {
    if (validate_) validate_(spec);
  }

 private:
  std::string name_;
  ActFn act_;
  ValidateFn validate_;
};

// ---------------------------------------------------------------------------
// Built-in strategies
// ---------------------------------------------------------------------------

/// Searches a state with the highest current probability, lowest index on
/// ties.
inline Strategy greedy_strategy() {
  return Strategy("greedy", [](const History&, const Belief& b, int) {
    return b.argmax();
  });
}

/// Always searches state s.
inline Strategy fixed_strategy(int s) {
  return Strategy(
      "fixed:" + std::to_string(s),
      [s](const History&, const Belief&, int) { return s; },
      [s](const GameSpec& spec) {
        if (s < 0 || s >= spec.state_count())
          throw SpecMismatch("fixed: state " + std::to_string(s) +
                             " out of range");
      });
}

/// Cycles through `order`, advancing one step per own move.
inline Strategy cycle_strategy(std::vector<int> order) {
  if (order.empty()) throw UnknownStrategy("cycle: empty order");
  std::string name = "cycle:";
  for (std::size_t i = 0; i < order.size(); ++i)
    name += (i ? "-" : "") + std::to_string(order[i]);
  auto shared = std::make_shared<std::vector<int>>(std::move(order));
  return Strategy(
      name,
      [shared](const History&, const Belief&, int period) {
        std::size_t own_move = static_cast<std::size_t>((period - 1) / 2);
        return (*shared)[own_move % shared->size()];
      },
      [shared](const GameSpec& spec) {
        for (int s : *shared)
          if (s < 0 || s >= spec.state_count())
            throw SpecMismatch("cycle: state " + std::to_string(s) +
                               " out of range");
      });
}

/// The finite truncation strategy: at every own move, re-solve the T-horizon
/// game from the current belief (the mover maximizing, the opponent
/// minimizing) and play the lowest-index optimal action.
inline Strategy truncation_strategy(const GameSpec& spec, int T,
                                    SolveOptions opts = {}) {
  if (T < 1) throw ParameterOutOfRange("truncation horizon must be >= 1");
  auto shared = std::make_shared<GameSpec>(spec);
  opts.build_strategy_tree = false;
  return Strategy(
      "truncation:" + std::to_string(T),
      [shared, T, opts](const History&, const Belief& b, int period) {
        int parity = period % 2;
        detail::HorizonSolver solver(shared->schedule(), parity, 1.0, opts);
        return detail::argmax_action(solver, b, period, T);
      },
      [shared](const GameSpec& other) {
        if (other.state_count() != shared->state_count())
          throw SpecMismatch("truncation strategy bound to a game with " +
                             std::to_string(shared->state_count()) +
                             " states");
      });
}

/// As above; `player` only names whose strategy it is in reports, the
/// re-solve always maximizes for whoever moves.
inline Strategy truncation_strategy(const GameSpec& spec, int T, Player,
                                    SolveOptions opts = {}) {
  return truncation_strategy(spec, T, opts);
}

// ---------------------------------------------------------------------------
// Scripted strategies for the bundled example games
// ---------------------------------------------------------------------------

enum class ExampleStrategyKind {
  ex1_sigma,    // example-game-1 opener: probe a transient state, then track
  ex1_tau,      // example-game-1 waiter: hold the transient states, then track
  ex1_sigma_n,  // hold until period n, then claim an absorbing state
  ex1_tau_n,
  ex2_sigma_n,  // analogue on example game 2 (hold state 6, then claim 8/9)
  ex2_tau_n,
};

namespace detail {

inline bool all_in(const std::vector<int>& h, int lo, int hi) {
  for (int a : h)
    if (a < lo || a > hi) return false;
  return true;
}

// Example game 1, 0-based states: 0,1 transient, 2,3 absorbing.
// "Track" means: answer an opponent claim of one absorbing state by taking
// the other, where the current claim is read off the last two actions.
inline int ex1_opener(const History& h, const Belief& b, int t) {
  if (t == 1) return 0;
  if (h.actions.size() >= 2) {
    int last = h.last(), second = h.second_last();
    if (last == 3) return 2;
    if ((last == 0 || last == 1) && second != 2) return 2;
    if (last == 2) return 3;
    if ((last == 0 || last == 1) && second == 2) return 3;
  }
  return b.argmax();  // uncovered histories fall back to greedy
}

inline int ex1_waiter(const History& h, const Belief& b, int) {
  if (all_in(h.actions, 0, 1)) return 0;
  if (!h.actions.empty()) {
    int last = h.last();
    if (last == 3) return 2;
    if (last == 2) return 3;
    if ((last == 0 || last == 1) && h.actions.size() >= 2) {
      int second = h.second_last();
      if (second == 3) return 2;
      if (second == 2) return 3;
    }
  }
  return b.argmax();
}

inline int ex1_hold_until(const History& h, const Belief& b, int t, int n) {
  bool waiting = all_in(h.actions, 0, 1);
  if (waiting && t < n) return 0;
  if (waiting && t >= n) return 2;
  if (!h.actions.empty()) {
    int last = h.last();
    if (last == 3) return 2;
    if (last == 2) return 3;
    if ((last == 0 || last == 1) && h.actions.size() >= 2) {
      int second = h.second_last();
      if (second == 3) return 2;
      if (second == 2) return 3;
    }
  }
  return b.argmax();
}

// Example game 2, 0-based states: 0..6 form one recurrent cycle, 7 and 8 are
// absorbing. Waiting action is state 5; claims are 7/8.
inline int ex2_hold_until(const History& h, const Belief& b, int t, int n) {
  bool waiting = all_in(h.actions, 0, 6);
  if (waiting && t < n) return 5;
  if (waiting && t >= n) return 7;
  if (!h.actions.empty()) {
    int last = h.last();
    if (last == 8) return 7;
    if (last == 7) return 8;
    if (last <= 6 && h.actions.size() >= 2) {
      int second = h.second_last();
      if (second == 8) return 7;
      if (second == 7) return 8;
    }
  }
  return b.argmax();
}

// Fingerprint check: dimension plus positivity pattern of the single
// scheduled matrix, so the example strategies accept any parameter values.
inline void require_pattern(const GameSpec& spec,
                            const std::vector<std::vector<int>>& pattern,
                            const std::string& who) {
  int n = static_cast<int>(pattern.size());
  if (spec.state_count() != n || !spec.schedule().time_homogeneous())
    throw SpecMismatch(who + ": expected a single " + std::to_string(n) + "x" +
                       std::to_string(n) + " transition matrix");
  const TransitionMatrix& m = spec.schedule().matrices().front();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool positive = m(i, j) > 0.0;
      if (positive != (pattern[static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)] != 0))
        throw SpecMismatch(who + ": transition pattern differs at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

inline void require_example1_shape(const GameSpec& spec,
                                   const std::string& who) {
  require_pattern(spec,
                  {{1, 1, 1, 1}, {1, 1, 1, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                  who);
}

inline void require_example2_shape(const GameSpec& spec,
                                   const std::string& who) {
  require_pattern(spec,
                  {{0, 0, 0, 0, 0, 0, 1, 0, 0},
                   {1, 0, 0, 0, 0, 0, 0, 0, 0},
                   {1, 0, 0, 0, 0, 0, 0, 0, 0},
                   {1, 0, 0, 0, 0, 0, 0, 0, 0},
                   {0, 1, 1, 1, 0, 0, 0, 0, 0},
                   {0, 0, 0, 0, 1, 0, 0, 0, 0},
                   {0, 0, 0, 0, 0, 1, 1, 0, 0},
                   {0, 0, 0, 0, 0, 0, 0, 1, 0},
                   {0, 0, 0, 0, 0, 0, 0, 0, 1}},
                  who);
}

}  // namespace detail

/// Scripted strategies for the two bundled example games. The `n` parameter
/// is the switch period of the hold-until variants. Binding to a chain of
/// the wrong shape raises SpecMismatch; histories the case tables leave
/// uncovered fall back to greedy.
inline Strategy example_strategy(ExampleStrategyKind kind, int n = 0) {
  using K = ExampleStrategyKind;
  bool wants_n =
      kind == K::ex1_sigma_n || kind == K::ex1_tau_n ||
      kind == K::ex2_sigma_n || kind == K::ex2_tau_n;
  if (wants_n && n < 1)
    throw ParameterOutOfRange("example strategy requires n >= 1");

  switch (kind) {
    case K::ex1_sigma:
      return Strategy(
          "ex1_sigma",
          [](const History& h, const Belief& b, int t) {
            return detail::ex1_opener(h, b, t);
          },
          [](const GameSpec& s) {
            detail::require_example1_shape(s, "ex1_sigma");
          });
    case K::ex1_tau:
      return Strategy(
          "ex1_tau",
          [](const History& h, const Belief& b, int t) {
            return detail::ex1_waiter(h, b, t);
          },
          [](const GameSpec& s) { detail::require_example1_shape(s, "ex1_tau"); });
    case K::ex1_sigma_n:
    case K::ex1_tau_n:
      return Strategy(
          (kind == K::ex1_sigma_n ? "ex1_sigma_n:" : "ex1_tau_n:") +
              std::to_string(n),
          [n](const History& h, const Belief& b, int t) {
            return detail::ex1_hold_until(h, b, t, n);
          },
          [](const GameSpec& s) {
            detail::require_example1_shape(s, "ex1 hold-until");
          });
    case K::ex2_sigma_n:
    case K::ex2_tau_n:
      return Strategy(
          (kind == K::ex2_sigma_n ? "ex2_sigma_n:" : "ex2_tau_n:") +
              std::to_string(n),
          [n](const History& h, const Belief& b, int t) {
            return detail::ex2_hold_until(h, b, t, n);
          },
          [](const GameSpec& s) {
            detail::require_example2_shape(s, "ex2 hold-until");
          });
  }
  throw UnknownStrategy("example_strategy: bad kind");
}

// ---------------------------------------------------------------------------
// Name-based factory (CLI form)
// ---------------------------------------------------------------------------

namespace detail {

// Resolves a state given as a label, falling back to a 0-based index.
inline int resolve_state(const GameSpec& spec, const std::string& token) {
  int idx = spec.states().index_of(token);
  if (idx >= 0) return idx;
  try {
    std::size_t pos = 0;
    int v = std::stoi(token, &pos);
    if (pos == token.size() && v >= 0 && v < spec.state_count()) return v;
  } catch (const std::exception&) {
  }
  throw UnknownStrategy("no state named \"" + token + "\"");
}

}  // namespace detail

/// Builds a strategy from its CLI name: "greedy", "fixed:S", "cycle:S-S-S",
/// "truncation:T", "ex1_sigma", "ex1_tau", "ex1_sigma_n:N", "ex1_tau_n:N",
/// "ex2_sigma_n:N", "ex2_tau_n:N". States are given by label (or 0-based
/// index when no label matches).
inline Strategy builtin(const GameSpec& spec, const std::string& name) {
  std::string head = name, param;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    head = name.substr(0, colon);
    param = name.substr(colon + 1);
  }
  auto int_param = [&](const char* what) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(param, &pos);
      if (pos != param.size()) throw std::invalid_argument(param);
      return v;
    } catch (const std::exception&) {
      throw UnknownStrategy(std::string(what) + " needs an integer parameter, got \"" +
                            param + "\"");
    }
  };

  if (head == "greedy") return greedy_strategy();
  if (head == "fixed") return fixed_strategy(detail::resolve_state(spec, param));
  if (head == "cycle") {
    std::vector<int> order;
    std::stringstream ss(param);
    std::string tok;
    while (std::getline(ss, tok, '-'))
      order.push_back(detail::resolve_state(spec, tok));
    return cycle_strategy(std::move(order));
  }
  if (head == "truncation") return truncation_strategy(spec, int_param("truncation"));
  if (head == "ex1_sigma") return example_strategy(ExampleStrategyKind::ex1_sigma);
  if (head == "ex1_tau") return example_strategy(ExampleStrategyKind::ex1_tau);
  if (head == "ex1_sigma_n")
    return example_strategy(ExampleStrategyKind::ex1_sigma_n, int_param("ex1_sigma_n"));
  if (head == "ex1_tau_n")
    return example_strategy(ExampleStrategyKind::ex1_tau_n, int_param("ex1_tau_n"));
  if (head == "ex2_sigma_n")
    return example_strategy(ExampleStrategyKind::ex2_sigma_n, int_param("ex2_sigma_n"));
  if (head == "ex2_tau_n")
    return example_strategy(ExampleStrategyKind::ex2_tau_n, int_param("ex2_tau_n"));
  throw UnknownStrategy(name);
}

}  // namespace searchgame
