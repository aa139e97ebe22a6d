#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "searchgame/errors.hpp"

namespace searchgame {

// Tolerance on simplex invariants (row sums, belief sums).
constexpr double kSimplexTol = 1e-12;
// Belief mass at or above 1 - kCertaintyTol is treated as a certain find.
constexpr double kCertaintyTol = 1e-12;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// The finite state space: a count plus distinct human-readable labels.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels)
      : labels_(std::move(labels)) {
    if (labels_.empty()) throw LabelError("state space must be non-empty");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw LabelError("state labels must be non-empty");
      if (!seen.insert(l).second)
        throw LabelError("duplicate state label: " + l);
    }
  }

  static StateSpace numbered(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return StateSpace(std::move(labels));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const {
    return labels_[static_cast<std::size_t>(i)];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  // Index of a label, or -1 if absent.
  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<int>(i);
    return -1;
  }

 private:
  std::vector<std::string> labels_;
};

/// A probability distribution over states. Entries are non-negative and the
/// vector is renormalized to sum to 1 at construction, so equality within
/// tolerance is meaningful downstream.
class Belief {
 public:
  explicit Belief(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw DimensionMismatch("belief must be non-empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (probs_[i] < 0.0)
        throw NegativeEntry("belief[" + std::to_string(i) + "]", probs_[i]);
      sum += probs_[i];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) throw BeliefSumNotOne(sum);
    if (sum != 1.0)
      for (auto& p : probs_) p /= sum;
  }

  /// Unit mass on state s.
  static Belief unit(int n, int s) {
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(s)] = 1.0;
    return Belief(std::move(v));
  }

  static Belief uniform(int n) {
    return Belief(std::vector<double>(static_cast<std::size_t>(n),
                                      1.0 / static_cast<double>(n)));
  }

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

  /// Index of the largest entry, lowest index on ties.
  int argmax() const {
    return static_cast<int>(
        std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
  }
  double max() const { return *std::max_element(probs_.begin(), probs_.end()); }

 private:
  std::vector<double> probs_;
};

/// A row-stochastic transition matrix, stored row-major.
class TransitionMatrix {
 public:
  TransitionMatrix(int n, std::vector<double> row_major, int matrix_index = 0)
      : n_(n), a_(std::move(row_major)) {
    if (n_ < 1 || a_.size() != static_cast<std::size_t>(n_) * n_)
      throw DimensionMismatch("matrix " + std::to_string(matrix_index) +
                              " is not " + std::to_string(n_) + "x" +
                              std::to_string(n_));
    for (int i = 0; i < n_; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n_; ++j) {
        double e = (*this)(i, j);
        if (e < 0.0)
          throw NegativeEntry("matrix " + std::to_string(matrix_index) +
                                  " row " + std::to_string(i) + " col " +
                                  std::to_string(j),
                              e);
        sum += e;
      }
      if (std::abs(sum - 1.0) > kSimplexTol)
        throw RowSumNotOne(matrix_index, i, sum);
    }
  }

  static TransitionMatrix identity(int n) {
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = 1.0;
    return TransitionMatrix(n, std::move(a));
  }

  /// All entries equal to 1/n.
  static TransitionMatrix uniform(int n) {
    return TransitionMatrix(
        n, std::vector<double>(static_cast<std::size_t>(n) * n,
                               1.0 / static_cast<double>(n)));
  }

  int size() const { return n_; }
  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  const std::vector<double>& row_major() const { return a_; }
  double min_entry() const { return *std::min_element(a_.begin(), a_.end()); }

 private:
  int n_;
  std::vector<double> a_;
};

enum class RepeatRule { cycle, hold_last };

/// A finite list of transition matrices plus a repetition rule, making the
/// infinite sequence of per-period matrices finitely specifiable. A single
/// matrix with either rule is the time-homogeneous case.
class TransitionSchedule {
 public:
  explicit TransitionSchedule(std::vector<TransitionMatrix> matrices,
                              RepeatRule rule = RepeatRule::hold_last)
      : matrices_(std::move(matrices)), rule_(rule) {
    if (matrices_.empty()) throw EmptySchedule();
    for (const auto& m : matrices_)
      if (m.size() != matrices_.front().size())
        throw DimensionMismatch("schedule matrices disagree in dimension");
  }

  int state_count() const { return matrices_.front().size(); }
  int listed_count() const { return static_cast<int>(matrices_.size()); }
  const std::vector<TransitionMatrix>& matrices() const { return matrices_; }
  RepeatRule rule() const { return rule_; }

  /// The matrix governing the move after period t (t >= 1).
  const TransitionMatrix& matrix_at(int t) const {
    int len = listed_count();
    int idx = rule_ == RepeatRule::cycle ? (t - 1) % len
                                         : std::min(t - 1, len - 1);
    return matrices_[static_cast<std::size_t>(idx)];
  }

  bool time_homogeneous() const { return listed_count() == 1; }

 private:
  std::vector<TransitionMatrix> matrices_;
  RepeatRule rule_;
};

/// A complete game description: states, transition schedule, initial belief.
class GameSpec {
 public:
  GameSpec(StateSpace states, TransitionSchedule schedule, Belief initial)
      : states_(std::move(states)),
        schedule_(std::move(schedule)),
        initial_(std::move(initial)) {
    if (schedule_.state_count() != states_.size() ||
        initial_.size() != states_.size())
      throw DimensionMismatch("states, schedule and initial belief disagree");
  }

  int state_count() const { return states_.size(); }
  const StateSpace& states() const { return states_; }
  const TransitionSchedule& schedule() const { return schedule_; }
  const Belief& initial() const { return initial_; }

  /// Same game started from a different belief.
  GameSpec with_initial(Belief b) const {
    return GameSpec(states_, schedule_, std::move(b));
  }

 private:
  StateSpace states_;
  TransitionSchedule schedule_;
  Belief initial_;
};

/// A sequence of past actions. The game is at period actions.size() + 1;
/// odd periods belong to player 1, even periods to player 2.
struct History {
  std::vector<int> actions;

  int period() const { return static_cast<int>(actions.size()) + 1; }
  void push(int a) { actions.push_back(a); }
  bool empty() const { return actions.empty(); }
  int last() const { return actions.back(); }
  int second_last() const { return actions[actions.size() - 2]; }
};

// ---------------------------------------------------------------------------
// Belief algebra
// ---------------------------------------------------------------------------

/// The belief given that the object is not at state s: zero out s and
/// renormalize. When b(s) is already 0 this is exactly the identity.
inline Belief condition(const Belief& b, int s) {
  if (s < 0 || s >= b.size())
    throw DimensionMismatch("condition: state index out of range");
  if (b[s] >= 1.0 - kCertaintyTol) throw ConditioningOnCertainty(s, b[s]);
  if (b[s] == 0.0) return b;
  std::vector<double> v = b.probs();
  v[static_cast<std::size_t>(s)] = 0.0;
  return Belief(std::move(v));
}

/// One step of object motion: left multiplication of the belief by m.
inline Belief propagate(const Belief& b, const TransitionMatrix& m) {
  if (b.size() != m.size())
    throw DimensionMismatch("propagate: belief and matrix disagree");
  int n = b.size();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double w = b[i];
    if (w == 0.0) continue;
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] += w * m(i, j);
  }
  return Belief(std::move(out));
}

/// Belief at period t+1 given a miss at state s in period t.
inline Belief step_belief(const Belief& b, int s,
                          const TransitionSchedule& schedule, int t) {
  return propagate(condition(b, s), schedule.matrix_at(t));
}

inline Belief step_belief(const GameSpec& spec, const Belief& b, int s, int t) {
  return step_belief(b, s, spec.schedule(), t);
}

// ---------------------------------------------------------------------------
// Spec validation
// ---------------------------------------------------------------------------

/// A game description as parsed from a spec document, before validation.
/// Matrices are row-major, one flat n*n array per listed matrix.
struct RawGameSpec {
  std::vector<std::string> states;
  std::vector<std::vector<double>> matrices;
  std::string repeat = "hold_last";
  std::vector<double> initial;
};

/// Checks every type invariant and returns the validated GameSpec, or throws
/// a SpecError naming the first violated constraint.
inline GameSpec validate_spec(const RawGameSpec& raw) {
  StateSpace states(raw.states);
  int n = states.size();

  if (raw.matrices.empty()) throw EmptySchedule();
  std::vector<TransitionMatrix> mats;
  mats.reserve(raw.matrices.size());
  for (std::size_t k = 0; k < raw.matrices.size(); ++k)
    mats.emplace_back(n, raw.matrices[k], static_cast<int>(k));

  RepeatRule rule;
  if (raw.repeat == "cycle")
    rule = RepeatRule::cycle;
  else if (raw.repeat == "hold_last")
    rule = RepeatRule::hold_last;
  else
    throw SpecError("repeat must be \"cycle\" or \"hold_last\", got \"" +
                    raw.repeat + "\"");

  if (raw.initial.size() != static_cast<std::size_t>(n))
    throw DimensionMismatch("initial belief has length " +
                            std::to_string(raw.initial.size()) +
                            ", expected " + std::to_string(n));
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.initial.size(); ++i) {
    if (raw.initial[i] < 0.0)
      throw NegativeEntry("initial[" + std::to_string(i) + "]",
                          raw.initial[i]);
    sum += raw.initial[i];
  }
  if (std::abs(sum - 1.0) > kSimplexTol) throw BeliefSumNotOne(sum);

  return GameSpec(std::move(states),
                  TransitionSchedule(std::move(mats), rule),
                  Belief(raw.initial));
}

}  // namespace searchgame
