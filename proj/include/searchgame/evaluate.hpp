#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "searchgame/game.hpp"
#include "searchgame/strategy.hpp"

namespace searchgame {

/// Exact win probabilities of a pure strategy profile over T periods.
/// per_period_find[t-1] is the probability that the object is first found at
/// period t; odd periods accrue to player 1, even to player 2, and
/// not_found is the survival mass past T.
struct EvaluationReport {
  double p1_win = 0.0;
  double p2_win = 0.0;
  double not_found = 1.0;
  int horizon = 0;
  std::vector<double> per_period_find;
};

/// Propagates the find probabilities of (sigma, tau) exactly: pure
/// strategies induce a single action path, so each period contributes
/// (survival so far) * (current belief at the searched state).
inline EvaluationReport evaluate_exact(const GameSpec& spec,
                                       const Strategy& sigma,
                                       const Strategy& tau, int T) {
  if (T < 1) throw ParameterOutOfRange("horizon must be >= 1");
  sigma.validate_for(spec);
  tau.validate_for(spec);

  EvaluationReport out;
  out.horizon = T;
  out.per_period_find.assign(static_cast<std::size_t>(T), 0.0);

  Belief p = spec.initial();
  History h;
  double survival = 1.0;
  for (int t = 1; t <= T; ++t) {
    const Strategy& active = (t % 2 == 1) ? sigma : tau;
    int a = active.act(h, p, t);
    if (a < 0 || a >= spec.state_count())
      throw DimensionMismatch("strategy returned an invalid state index");
    double f = p[a];
    out.per_period_find[static_cast<std::size_t>(t - 1)] = survival * f;
    if (t % 2 == 1)
      out.p1_win += survival * f;
    else
      out.p2_win += survival * f;
    if (f >= 1.0 - kCertaintyTol) {
      survival = 0.0;  // the find resolves with certainty; the game is over
      break;
    }
    survival *= 1.0 - f;
    p = step_belief(spec, p, a, t);
    h.push(a);
  }
  out.not_found = survival;
  return out;
}

/// Outcome counts of seeded Monte Carlo play. Hats are exact count ratios;
/// ci_halfwidth is the 95% normal-approximation halfwidth for p1_win_hat.
/// Trials draw from independent generators derived from (seed, trial index),
/// so results do not depend on how trials are scheduled across workers.
struct SimulationReport {
  long long trials = 0;
  std::uint64_t seed = 0;
  double p1_win_hat = 0.0;
  double p2_win_hat = 0.0;
  double not_found_hat = 0.0;
  double mean_find_time = 0.0;  // over found trials; 0 when none found
  double ci_halfwidth = 0.0;
  std::string rng = "mt19937_64";
};

namespace detail {

inline std::mt19937_64 trial_engine(std::uint64_t seed, long long trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

// Uniform double in [0,1) with 53 random bits; inverse-CDF scan over a row.
inline double canonical(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline int sample_index(const std::vector<double>& weights,
                        std::mt19937_64& eng) {
  double u = canonical(eng);
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

// Pure strategies never react to the unobserved object, so the whole action
// path is fixed in advance. If the belief path runs through a certain find
// (reachable only with probability <= kCertaintyTol), later actions keep
// following the renormalized residual mass, or default to state 0 once no
// mass is left.
inline std::vector<int> scripted_actions(const GameSpec& spec,
                                         const Strategy& sigma,
                                         const Strategy& tau, int T) {
  std::vector<int> actions;
  actions.reserve(static_cast<std::size_t>(T));
  std::vector<double> mass = spec.initial().probs();
  History h;
  for (int t = 1; t <= T; ++t) {
    double total = 0.0;
    for (double v : mass) total += v;
    if (total <= 0.0) {
      actions.push_back(0);
      continue;
    }
    std::vector<double> norm = mass;
    for (auto& v : norm) v /= total;
    Belief b(norm);
    const Strategy& active = (t % 2 == 1) ? sigma : tau;
    int a = active.act(h, b, t);
    actions.push_back(a);
    // Condition on the miss and propagate, without the certainty guard.
    std::vector<double> next(mass.size(), 0.0);
    mass[static_cast<std::size_t>(a)] = 0.0;
    const TransitionMatrix& m = spec.schedule().matrix_at(t);
    for (int i = 0; i < spec.state_count(); ++i) {
      if (mass[static_cast<std::size_t>(i)] == 0.0) continue;
      for (int j = 0; j < spec.state_count(); ++j)
        next[static_cast<std::size_t>(j)] +=
            mass[static_cast<std::size_t>(i)] * m(i, j);
    }
    mass = std::move(next);
    h.push(a);
  }
  return actions;
}

}  // namespace detail

/// Samples `trials` object paths and plays the scripted profile against
/// each. Reproducible given (seed, trials).
inline SimulationReport simulate(const GameSpec& spec, const Strategy& sigma,
                                 const Strategy& tau, int T, long long trials,
                                 std::uint64_t seed) {
  if (T < 1) throw ParameterOutOfRange("horizon must be >= 1");
  if (trials < 1) throw ParameterOutOfRange("trials must be >= 1");
  sigma.validate_for(spec);
  tau.validate_for(spec);

  std::vector<int> actions = detail::scripted_actions(spec, sigma, tau, T);

  // Row tables for the periods actually played.
  int n = spec.state_count();
  std::vector<const TransitionMatrix*> step(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t)
    step[static_cast<std::size_t>(t - 1)] = &spec.schedule().matrix_at(t);

  long long p1 = 0, p2 = 0, not_found = 0;
  long long found_time_sum = 0;
  std::vector<double> row(static_cast<std::size_t>(n));
  for (long long trial = 0; trial < trials; ++trial) {
    std::mt19937_64 eng = detail::trial_engine(seed, trial);
    int x = detail::sample_index(spec.initial().probs(), eng);
    int theta = 0;
    for (int t = 1; t <= T; ++t) {
      if (actions[static_cast<std::size_t>(t - 1)] == x) {
        theta = t;
        break;
      }
      const TransitionMatrix& m = *step[static_cast<std::size_t>(t - 1)];
      for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = m(x, j);
      x = detail::sample_index(row, eng);
    }
    if (theta == 0)
      ++not_found;
    else if (theta % 2 == 1)
      ++p1;
    else
      ++p2;
    if (theta != 0) found_time_sum += theta;
  }

  SimulationReport out;
  out.trials = trials;
  out.seed = seed;
  out.p1_win_hat = static_cast<double>(p1) / static_cast<double>(trials);
  out.p2_win_hat = static_cast<double>(p2) / static_cast<double>(trials);
  out.not_found_hat =
      static_cast<double>(not_found) / static_cast<double>(trials);
  long long found = p1 + p2;
  out.mean_find_time =
      found > 0 ? static_cast<double>(found_time_sum) / static_cast<double>(found)
                : 0.0;
  double ph = out.p1_win_hat;
  out.ci_halfwidth =
      1.96 * std::sqrt(ph * (1.0 - ph) / static_cast<double>(trials));
  return out;
}

}  // namespace searchgame
