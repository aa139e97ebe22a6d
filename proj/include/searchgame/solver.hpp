#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "searchgame/game.hpp"

namespace searchgame {

enum class Player { one, two };

// Actions within this tolerance of the best root value count as optimal.
constexpr double kTieTol = 1e-9;

struct SolveOptions {
  // Maximum number of expanded recursion nodes before HorizonTooLarge.
  std::uint64_t node_budget = 100'000'000;
  // Whether to materialize the strategy tree on the solved player's nodes.
  bool build_strategy_tree = true;
  // Cap on materialized tree entries; beyond it the tree is truncated.
  std::size_t max_tree_nodes = 100'000;
};

/// Result of a finite-horizon max-min solve. q_values[s] is the value, to the
/// solved player, of pinning the game's first action (period 1) to s. When
/// solving for player 1 the root belongs to the solved player and
/// value = max_s q_values[s]; when solving for player 2 the root belongs to
/// the minimizing opponent and value = min_s q_values[s]. optimal_actions is
/// the corresponding arg-set under the tie tolerance. strategy_tree maps
/// miss-histories at the solved player's decision nodes to the chosen action.
struct SolveResult {
  double value = 0.0;
  std::vector<double> q_values;
  std::vector<int> optimal_actions;
  int horizon = 0;
  Player for_player = Player::one;
  std::map<std::vector<int>, int> strategy_tree;
  bool strategy_tree_truncated = false;
  std::uint64_t nodes_expanded = 0;
};

/// Certified interval for the infinite-horizon value of player 1:
/// lower = v_{1,T} and upper = 1 - v_{2,T} bracket the limit value.
struct ValueBracket {
  double lower = 0.0;
  double upper = 1.0;
  int horizon = 0;
  double width = 1.0;
};

/// Discounted value for player 1, computed by truncating the discounted sum
/// once the remaining weight beta^T drops below the requested tolerance.
struct DiscountedResult {
  double value = 0.0;
  double beta = 0.0;
  int truncation_horizon = 0;
  double tail_bound = 0.0;
};

namespace detail {

// Memo key: remaining periods followed by the belief entries rounded to
// 1e-9. Lookups go through a transparent view over a scratch buffer so a
// cache hit allocates nothing.
using BeliefKey = std::vector<std::int64_t>;

struct BeliefKeyView {
  const std::int64_t* data;
  std::size_t size;
};

struct BeliefKeyHash {
  using is_transparent = void;
  static std::size_t mix(const std::int64_t* d, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<std::uint64_t>(d[i]);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
  std::size_t operator()(const BeliefKey& k) const {
    return mix(k.data(), k.size());
  }
  std::size_t operator()(const BeliefKeyView& k) const {
    return mix(k.data, k.size);
  }
};

struct BeliefKeyEq {
  using is_transparent = void;
  static bool eq(const std::int64_t* a, std::size_t an, const std::int64_t* b,
                 std::size_t bn) {
    if (an != bn) return false;
    for (std::size_t i = 0; i < an; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  bool operator()(const BeliefKey& a, const BeliefKey& b) const {
    return eq(a.data(), a.size(), b.data(), b.size());
  }
  bool operator()(const BeliefKeyView& a, const BeliefKey& b) const {
    return eq(a.data, a.size, b.data(), b.size());
  }
  bool operator()(const BeliefKey& a, const BeliefKeyView& b) const {
    return eq(a.data(), a.size(), b.data, b.size);
  }
};

// Backward induction over the tree of miss-histories. The recursion is
// per-period: at the solved player's periods the find pays 1 (times the
// running discount) and the aggregation is a max; at the opponent's periods
// the find pays 0 and the aggregation is a min. gamma = 1 recovers the
// undiscounted finite-horizon value; gamma = beta gives the discounted value
// normalized so that a find at the start period has weight 1.
//
// Distinct histories frequently induce equal beliefs under structured
// chains, so subgame values are memoized per (remaining periods, belief
// rounded to 1e-9 per entry); the start period is fixed per solve, so the
// remaining count determines the period and with it the scheduled matrix.
// On chains where histories never collide the table is pure overhead, so it
// turns itself off when the hit rate stays below 1%.
class HorizonSolver {
 public:
  HorizonSolver(const TransitionSchedule& schedule, int target_parity,
                double gamma, const SolveOptions& opts)
      : schedule_(schedule),
        target_parity_(target_parity),
        gamma_(gamma),
        opts_(opts) {}

  double value(const Belief& p, int t, int remaining) {
    if (remaining == 0) return 0.0;
    prepare_scratch(p, remaining);
    return value_at(depth_scratch_[0], t, remaining, 0);
  }

  double action_value(const Belief& p, int t, int remaining, int s) {
    prepare_scratch(p, remaining);
    return action_value_at(depth_scratch_[0], t, remaining, s, 0);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // The recursion passes references into the per-depth buffers, so the
  // outer vector must never reallocate while a solve is running.
  void prepare_scratch(const Belief& p, int remaining) {
    if (depth_scratch_.size() < static_cast<std::size_t>(remaining) + 2)
      depth_scratch_.resize(static_cast<std::size_t>(remaining) + 2);
    depth_scratch_[0] = p.probs();
  }

  // Value of the subgame at a normalized belief and period t with
  // `remaining` periods left. `depth` indexes the per-level scratch buffers
  // holding the belief path from the root.
  double value_at(const std::vector<double>& probs, int t, int remaining,
                  int depth) {
    if (remaining == 0) return 0.0;
    if (++nodes_ > opts_.node_budget) throw HorizonTooLarge(opts_.node_budget);
    bool target_moves = (t % 2) == target_parity_;
    double best = target_moves ? -1.0 : 2.0;
    for (int s = 0; s < static_cast<int>(probs.size()); ++s) {
      double v = action_value_at(probs, t, remaining, s, depth);
      if (target_moves ? v > best : v < best) best = v;
    }
    return best;
  }

  // Value of committing to action s at period t, optimal play afterwards.
  double action_value_at(const std::vector<double>& probs, int t,
                         int remaining, int s, int depth) {
    bool target_moves = (t % 2) == target_parity_;
    double f = probs[static_cast<std::size_t>(s)];
    if (f >= 1.0 - kCertaintyTol) return target_moves ? 1.0 : 0.0;
    if (remaining <= 1) return target_moves ? f : 0.0;
    double cont = miss_value(probs, s, t, remaining, depth);
    double tail = (1.0 - f) * gamma_ * cont;
    return target_moves ? f + tail : tail;
  }

  // Value of the subgame entered after a miss at s. The successor belief is
  // conditioned, propagated and canonically renormalized into the next
  // scratch level; only a cache miss recurses.
  double miss_value(const std::vector<double>& probs, int s, int t,
                    int remaining, int depth) {
    std::size_t n = probs.size();
    const TransitionMatrix& m = schedule_.matrix_at(t);
    std::vector<double>& child = depth_scratch_[static_cast<std::size_t>(depth) + 1];
    child.assign(n, 0.0);
    double miss_mass = 1.0 - probs[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<int>(i) == s || probs[i] == 0.0) continue;
      double w = probs[i] / miss_mass;
      const double* row = &m.row_major()[i * n];
      for (std::size_t j = 0; j < n; ++j) child[j] += w * row[j];
    }
    double sum = 0.0;
    for (double v : child) sum += v;
    for (double& v : child) v /= sum;

    if (!memo_on_)
      return value_at(child, t + 1, remaining - 1, depth + 1);

    key_scratch_.clear();
    key_scratch_.push_back(remaining - 1);
    for (double v : child)
      key_scratch_.push_back(static_cast<std::int64_t>(std::llround(v * 1e9)));
    ++lookups_;
    auto it = memo_.find(BeliefKeyView{key_scratch_.data(), key_scratch_.size()});
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    if (lookups_ == 65536 && hits_ * 100 < lookups_) {
      // Dense chains never revisit a belief; drop the table and run bare.
      memo_on_ = false;
      memo_.clear();
      return value_at(child, t + 1, remaining - 1, depth + 1);
    }

    BeliefKey key = key_scratch_;  // the recursion clobbers key_scratch_
    double v = value_at(child, t + 1, remaining - 1, depth + 1);
    if (memo_.size() < kMemoCap) memo_.emplace(std::move(key), v);
    return v;
  }

  static constexpr std::size_t kMemoCap = 30'000'000;
  const TransitionSchedule& schedule_;
  int target_parity_;  // 1 = finds at odd periods count, 0 = even periods
  double gamma_;
  const SolveOptions& opts_;
  std::uint64_t nodes_ = 0;
  std::uint64_t lookups_ = 0;
  std::uint64_t hits_ = 0;
  bool memo_on_ = true;
  std::vector<std::vector<double>> depth_scratch_;
  std::vector<std::int64_t> key_scratch_;
  std::unordered_map<BeliefKey, double, BeliefKeyHash, BeliefKeyEq> memo_;
};

// Lowest-index action within tie tolerance of the best value at one of the
// target player's decision nodes.
inline int argmax_action(HorizonSolver& solver, const Belief& p, int t,
                         int remaining) {
  int n = p.size();
  std::vector<double> vals(static_cast<std::size_t>(n));
  double best = -1.0;
  for (int s = 0; s < n; ++s) {
    vals[static_cast<std::size_t>(s)] = solver.action_value(p, t, remaining, s);
    best = std::max(best, vals[static_cast<std::size_t>(s)]);
  }
  for (int s = 0; s < n; ++s)
    if (vals[static_cast<std::size_t>(s)] >= best - kTieTol) return s;
  return 0;
}

// Materializes the solved player's policy over reachable miss-histories: own
// moves are pinned to the lowest-index optimum, opponent moves branch over
// every action whose miss branch stays alive. Stops at the entry cap.
inline void build_strategy_tree(HorizonSolver& solver,
                                const TransitionSchedule& schedule,
                                int target_parity, SolveResult& out,
                                const Belief& root, int start_period,
                                const SolveOptions& opts) {
  struct Node {
    std::vector<int> history;
    Belief belief;
    int t;
    int remaining;
  };
  std::vector<Node> queue{{{}, root, start_period, out.horizon}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Node node = queue[head];
    if (node.remaining == 0) continue;
    bool target_moves = (node.t % 2) == target_parity;
    if (target_moves) {
      if (out.strategy_tree.size() >= opts.max_tree_nodes) {
        out.strategy_tree_truncated = true;
        return;
      }
      int a = argmax_action(solver, node.belief, node.t, node.remaining);
      out.strategy_tree.emplace(node.history, a);
      if (node.belief[a] >= 1.0 - kCertaintyTol) continue;  // find resolves
      Node next = node;
      next.history.push_back(a);
      next.belief = step_belief(node.belief, a, schedule, node.t);
      ++next.t;
      --next.remaining;
      queue.push_back(std::move(next));
    } else {
      for (int s = 0; s < node.belief.size(); ++s) {
        if (node.belief[s] >= 1.0 - kCertaintyTol) continue;
        Node next = node;
        next.history.push_back(s);
        next.belief = step_belief(node.belief, s, schedule, node.t);
        ++next.t;
        --next.remaining;
        queue.push_back(std::move(next));
      }
    }
  }
}

}  // namespace detail

/// Exact max-min value of the horizon-T game from an arbitrary belief and
/// start period. The solved player is `player`; the opponent minimizes the
/// solved player's find probability. Periods start_period, start_period+1,
/// ..., start_period+T-1 are played with the scheduled matrices.
inline SolveResult value_finite_from(const GameSpec& spec, const Belief& from,
                                     int start_period, int T, Player player,
                                     const SolveOptions& opts = {}) {
  if (T < 1) throw ParameterOutOfRange("horizon must be >= 1");
  if (start_period < 1) throw ParameterOutOfRange("period must be >= 1");
  if (from.size() != spec.state_count())
    throw DimensionMismatch("belief does not match the game's state count");
  int target_parity = player == Player::one ? 1 : 0;
  detail::HorizonSolver solver(spec.schedule(), target_parity, 1.0, opts);

  SolveResult out;
  out.horizon = T;
  out.for_player = player;
  int n = spec.state_count();
  out.q_values.resize(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    out.q_values[static_cast<std::size_t>(s)] =
        solver.action_value(from, start_period, T, s);

  bool target_moves = (start_period % 2) == target_parity;
  double best = out.q_values[0];
  for (double v : out.q_values) best = target_moves ? std::max(best, v) : std::min(best, v);
  out.value = best;
  for (int s = 0; s < n; ++s) {
    double v = out.q_values[static_cast<std::size_t>(s)];
    if (target_moves ? v >= best - kTieTol : v <= best + kTieTol)
      out.optimal_actions.push_back(s);
  }

  if (opts.build_strategy_tree)
    detail::build_strategy_tree(solver, spec.schedule(), target_parity, out,
                                from, start_period, opts);
  out.nodes_expanded = solver.nodes();
  return out;
}

/// v_{1,T} / v_{2,T}: the value of the T-period truncation for the given
/// player, from the game's initial belief.
inline SolveResult value_finite(const GameSpec& spec, int T, Player player,
                                const SolveOptions& opts = {}) {
  return value_finite_from(spec, spec.initial(), 1, T, player, opts);
}

/// Value for player 1 of committing to first action s, optimal play after.
inline double q_value(const GameSpec& spec, int T, int s,
                      const SolveOptions& opts = {}) {
  if (s < 0 || s >= spec.state_count())
    throw DimensionMismatch("q_value: state index out of range");
  if (T < 1) throw ParameterOutOfRange("horizon must be >= 1");
  detail::HorizonSolver solver(spec.schedule(), 1, 1.0, opts);
  return solver.action_value(spec.initial(), 1, T, s);
}

/// Certified interval [v_{1,T}, 1 - v_{2,T}] containing the infinite-horizon
/// value of player 1.
inline ValueBracket value_bracket(const GameSpec& spec, int T,
                                  const SolveOptions& opts = {}) {
  SolveOptions inner = opts;
  inner.build_strategy_tree = false;
  ValueBracket b;
  b.horizon = T;
  b.lower = value_finite(spec, T, Player::one, inner).value;
  b.upper = 1.0 - value_finite(spec, T, Player::two, inner).value;
  b.width = b.upper - b.lower;
  return b;
}

/// Discounted value for player 1: finds at odd period t pay beta^(t-1).
/// The recursion is truncated at the first T with beta^T <= tol, which
/// bounds the neglected tail by beta^T.
inline DiscountedResult value_discounted(const GameSpec& spec, double beta,
                                         double tol,
                                         const SolveOptions& opts = {}) {
  if (!(beta > 0.0 && beta < 1.0))
    throw ParameterOutOfRange("discount factor must be in (0,1)");
  if (!(tol > 0.0)) throw ParameterOutOfRange("tolerance must be positive");
  int T = 1;
  if (tol < 1.0) {
    T = static_cast<int>(std::ceil(std::log(tol) / std::log(beta)));
    while (std::pow(beta, T) > tol) ++T;
  }
  detail::HorizonSolver solver(spec.schedule(), 1, beta, opts);
  DiscountedResult out;
  out.beta = beta;
  out.truncation_horizon = T;
  out.tail_bound = std::pow(beta, T);
  out.value = solver.value(spec.initial(), 1, T);
  return out;
}

}  // namespace searchgame
