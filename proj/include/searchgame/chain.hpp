#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "searchgame/game.hpp"

namespace searchgame {

// ---------------------------------------------------------------------------
// Total variation distance
// ---------------------------------------------------------------------------

/// Total variation distance between two beliefs: half the L1 distance,
/// equivalently the largest probability gap over subsets of states.
inline double tv_distance(const Belief& b, const Belief& c) {
  if (b.size() != c.size())
    throw DimensionMismatch("tv_distance: beliefs disagree in dimension");
  double l1 = 0.0;
  for (int i = 0; i < b.size(); ++i) l1 += std::abs(b[i] - c[i]);
  return 0.5 * l1;
}

// ---------------------------------------------------------------------------
// Structural classification
// ---------------------------------------------------------------------------

/// Structure of a time-homogeneous transition matrix. Every state is either
/// transient or in exactly one ergodic class; the chain is irreducible iff a
/// single ergodic class covers all states.
struct ChainClassification {
  bool irreducible = false;
  bool aperiodic = false;
  int period = 1;  // gcd of all return-cycle lengths; 1 when aperiodic
  std::set<int> transient_states;
  std::vector<std::set<int>> ergodic_classes;
  std::set<int> absorbing_states;
};

namespace detail {

// Strongly connected components of the positivity graph (entry > 0, exact),
// via iterative Tarjan. Components are renumbered so that they are ordered
// by their smallest state index.
inline std::vector<std::vector<int>> strongly_connected_components(
    const TransitionMatrix& m) {
  int n = m.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) > 0.0) adj[static_cast<std::size_t>(i)].push_back(j);

  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int start = 0; start < n; ++start) {
    if (index[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<Frame> call;
    call.push_back({start, 0});
    index[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = next_index++;
    stack.push_back(start);
    on_stack[static_cast<std::size_t>(start)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto& edges = adj[static_cast<std::size_t>(f.v)];
      if (f.edge < edges.size()) {
        int w = edges[f.edge++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[static_cast<std::size_t>(call.back().v)] =
              std::min(low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  return comps;
}

// Period of one strongly connected component: gcd over intra-component edges
// u->v of level(u) + 1 - level(v), with BFS levels from the first node.
// Returns 0 if the component carries no cycle (single node, no self-loop).
inline int component_period(const TransitionMatrix& m,
                            const std::vector<int>& comp) {
  int n = m.size();
  if (comp.size() == 1) {
    int v = comp.front();
    return m(v, v) > 0.0 ? 1 : 0;
  }
  std::vector<bool> in_comp(static_cast<std::size_t>(n), false);
  for (int v : comp) in_comp[static_cast<std::size_t>(v)] = true;
  std::vector<int> level(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{comp.front()};
  level[static_cast<std::size_t>(comp.front())] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int v = 0; v < n; ++v) {
      if (m(u, v) <= 0.0 || !in_comp[static_cast<std::size_t>(v)]) continue;
      if (level[static_cast<std::size_t>(v)] == -1) {
        level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  int g = 0;
  for (int u : comp)
    for (int v = 0; v < n; ++v)
      if (m(u, v) > 0.0 && in_comp[static_cast<std::size_t>(v)])
        g = std::gcd(g, std::abs(level[static_cast<std::size_t>(u)] + 1 -
                                 level[static_cast<std::size_t>(v)]));
  return g;
}

}  // namespace detail

/// Classifies a time-homogeneous transition matrix: ergodic classes (closed
/// strongly connected components), transient states, absorbing states,
/// irreducibility, period and aperiodicity. Positivity of an entry is exact
/// (> 0, no tolerance).
inline ChainClassification classify(const TransitionMatrix& m) {
  int n = m.size();
  ChainClassification out;
  auto comps = detail::strongly_connected_components(m);

  int period_gcd = 0;
  for (const auto& comp : comps) {
    bool closed = true;
    std::vector<bool> in_comp(static_cast<std::size_t>(n), false);
    for (int v : comp) in_comp[static_cast<std::size_t>(v)] = true;
    for (int u : comp)
      for (int v = 0; v < n && closed; ++v)
        if (m(u, v) > 0.0 && !in_comp[static_cast<std::size_t>(v)]) closed = false;

    int p = detail::component_period(m, comp);
    if (p > 0) period_gcd = std::gcd(period_gcd, p);

    if (closed) {
      out.ergodic_classes.emplace_back(comp.begin(), comp.end());
      if (comp.size() == 1) out.absorbing_states.insert(comp.front());
    } else {
      for (int v : comp) out.transient_states.insert(v);
    }
  }

  out.period = period_gcd == 0 ? 1 : period_gcd;
  out.aperiodic = out.period == 1;
  out.irreducible = out.ergodic_classes.size() == 1 &&
                    static_cast<int>(out.ergodic_classes.front().size()) == n;
  return out;
}

// ---------------------------------------------------------------------------
// Stationary distribution
// ---------------------------------------------------------------------------

/// The unique stationary distribution of an irreducible matrix, solving
/// pi P = pi with sum(pi) = 1 as a dense linear system (one balance equation
/// replaced by the normalization row). Throws NotIrreducible otherwise.
inline Belief stationary_distribution(const TransitionMatrix& m) {
  if (!classify(m).irreducible) throw NotIrreducible();
  int n = m.size();
  // A x = b with A = (P^T - I), last row replaced by ones.
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i) * n + j] = m(j, i) - (i == j ? 1.0 : 0.0);
  for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(n - 1) * n + j] = 1.0;
  b[static_cast<std::size_t>(n - 1)] = 1.0;

  // Gaussian elimination with partial pivoting; n is small.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]) * n + j];
  };
  auto rhs = [&](int i) -> double& {
    return b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    std::swap(perm[static_cast<std::size_t>(col)], perm[static_cast<std::size_t>(pivot)]);
    double diag = at(col, col);
    for (int r = col + 1; r < n; ++r) {
      double f = at(r, col) / diag;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) at(r, j) -= f * at(col, j);
      rhs(r) -= f * rhs(col);
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs(r);
    for (int j = r + 1; j < n; ++j) s -= at(r, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(r)] = s / at(r, r);
  }
  // Irreducibility guarantees strict positivity; scrub float dust.
  for (auto& v : x) v = std::max(v, 0.0);
  return Belief(std::move(x));
}

// ---------------------------------------------------------------------------
// Mixing certificate
// ---------------------------------------------------------------------------

/// The largest alpha such that every scheduled matrix is alpha-strongly
/// mixed (all entries >= alpha). Repeat rules reuse listed matrices, so the
/// finite minimum covers every period.
struct MixingCertificate {
  double alpha = 0.0;
};

inline MixingCertificate mixing_certificate(const TransitionSchedule& s) {
  double alpha = 1.0;
  for (const auto& m : s.matrices()) alpha = std::min(alpha, m.min_entry());
  return MixingCertificate{alpha};
}

}  // namespace searchgame
