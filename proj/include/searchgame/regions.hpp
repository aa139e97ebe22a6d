#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "searchgame/chain.hpp"
#include "searchgame/game.hpp"
#include "searchgame/solver.hpp"

namespace searchgame {

// Membership tolerance for the sampled geometry checks; looser than the
// solver's tie tolerance so boundary grid points do not flag float noise.
constexpr double kRegionTol = 1e-7;

/// All beliefs with entries k/N on an n-state simplex.
struct SimplexGrid {
  int n = 0;
  int denominator = 0;
  std::vector<std::vector<int>> numerators;

  static SimplexGrid make(int n, int N) {
    if (n < 1) throw ParameterOutOfRange("grid: need at least one state");
    if (N < 1) throw ParameterOutOfRange("grid: denominator must be >= 1");
    SimplexGrid g;
    g.n = n;
    g.denominator = N;
    std::vector<int> point(static_cast<std::size_t>(n), 0);
    enumerate(g, point, 0, N);
    return g;
  }

  std::size_t size() const { return numerators.size(); }

  Belief point(std::size_t idx) const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] =
          static_cast<double>(numerators[idx][static_cast<std::size_t>(i)]) /
          static_cast<double>(denominator);
    return Belief(std::move(v));
  }

 private:
  static void enumerate(SimplexGrid& g, std::vector<int>& point, int coord,
                        int left) {
    if (coord == g.n - 1) {
      point[static_cast<std::size_t>(coord)] = left;
      g.numerators.push_back(point);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      point[static_cast<std::size_t>(coord)] = k;
      enumerate(g, point, coord + 1, left - k);
    }
  }
};

/// Horizon-T optimality regions over a simplex grid: for every grid point,
/// the player-1 value and the set of first actions within tie tolerance of
/// the best. Carries the game so the sampled checks can re-solve off-grid
/// points.
struct RegionMap {
  GameSpec spec;
  SimplexGrid grid;
  int horizon = 0;
  std::vector<double> values;                 // per grid point
  std::vector<std::vector<double>> q_values;  // per grid point, per action
  std::vector<std::vector<int>> assignment;   // actions within kTieTol of max
  // Optional empirical stabilization flag: v_T == v_{T+2} on the grid.
  std::optional<bool> stabilized;
  double stabilization_delta = 0.0;
};

namespace detail {

inline std::vector<double> grid_q_values(const GameSpec& spec,
                                         const Belief& p, int T,
                                         const SolveOptions& opts) {
  HorizonSolver solver(spec.schedule(), 1, 1.0, opts);
  std::vector<double> q(static_cast<std::size_t>(spec.state_count()));
  for (int s = 0; s < spec.state_count(); ++s)
    q[static_cast<std::size_t>(s)] = solver.action_value(p, 1, T, s);
  return q;
}

inline std::vector<int> assignment_of(const std::vector<double>& q,
                                      double tol) {
  double best = *std::max_element(q.begin(), q.end());
  std::vector<int> a;
  for (std::size_t s = 0; s < q.size(); ++s)
    if (q[s] >= best - tol) a.push_back(static_cast<int>(s));
  return a;
}

}  // namespace detail

/// Solves every grid point at horizon T. Grid points stand in for the
/// initial belief; the spec's own initial distribution is not used.
inline RegionMap map_regions(const GameSpec& spec, int T, int N,
                             const SolveOptions& opts = {},
                             bool check_stabilization = false) {
  SolveOptions inner = opts;
  inner.build_strategy_tree = false;
  RegionMap rm{spec, SimplexGrid::make(spec.state_count(), N), T, {}, {}, {}};
  rm.values.reserve(rm.grid.size());
  rm.q_values.reserve(rm.grid.size());
  rm.assignment.reserve(rm.grid.size());
  double max_delta = 0.0;
  for (std::size_t i = 0; i < rm.grid.size(); ++i) {
    Belief p = rm.grid.point(i);
    auto q = detail::grid_q_values(spec, p, T, inner);
    rm.values.push_back(*std::max_element(q.begin(), q.end()));
    rm.assignment.push_back(detail::assignment_of(q, kTieTol));
    rm.q_values.push_back(std::move(q));
    if (check_stabilization) {
      auto q2 = detail::grid_q_values(spec, p, T + 2, inner);
      double v2 = *std::max_element(q2.begin(), q2.end());
      max_delta = std::max(max_delta, std::abs(v2 - rm.values.back()));
    }
  }
  if (check_stabilization) {
    rm.stabilized = max_delta <= kTieTol;
    rm.stabilization_delta = max_delta;
  }
  return rm;
}

// ---------------------------------------------------------------------------
// Geometry checks
// ---------------------------------------------------------------------------

struct StarConvexityViolation {
  std::size_t point_index;
  double lambda;
  double gap;  // how far q(., s) fell below the best q at the blended point
};

struct StarConvexityReport {
  int state = 0;
  int points_checked = 0;
  std::vector<StarConvexityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples points assigned to action s and walks the segment toward the
/// vertex e^s; each blended point must keep s within kRegionTol of its best
/// q-value.
inline StarConvexityReport check_star_convexity(const RegionMap& rm, int s,
                                                int samples,
                                                std::uint64_t seed = 1,
                                                const SolveOptions& opts = {}) {
  StarConvexityReport report;
  report.state = s;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < rm.grid.size(); ++i) {
    const auto& a = rm.assignment[i];
    if (std::find(a.begin(), a.end(), s) != a.end()) members.push_back(i);
  }
  if (members.empty()) return report;

  std::mt19937_64 eng(seed);
  std::shuffle(members.begin(), members.end(), eng);
  if (static_cast<int>(members.size()) > samples)
    members.resize(static_cast<std::size_t>(samples));

  SolveOptions inner = opts;
  inner.build_strategy_tree = false;
  const double lambdas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t idx : members) {
    Belief p = rm.grid.point(idx);
    for (double lambda : lambdas) {
      std::vector<double> v(p.probs());
      for (auto& x : v) x *= 1.0 - lambda;
      v[static_cast<std::size_t>(s)] += lambda;
      Belief blend{std::move(v)};
      auto q = detail::grid_q_values(rm.spec, blend, rm.horizon, inner);
      double best = *std::max_element(q.begin(), q.end());
      double gap = best - q[static_cast<std::size_t>(s)];
      if (gap > kRegionTol) report.violations.push_back({idx, lambda, gap});
    }
    ++report.points_checked;
  }
  return report;
}

struct IntersectionReport {
  bool found = false;
  std::optional<Belief> witness;
  double spread = 1.0;  // max q - min q at the reported point
  int refinement_rounds = 0;
  std::string diagnostic;
};

/// Searches for a belief where every first action is optimal (q-values equal
/// within 1e-6). Scans the grid, then pattern-searches from the best
/// candidates. Failure to find one is reported as a resolution diagnostic,
/// never as nonexistence.
inline IntersectionReport check_intersection(const RegionMap& rm,
                                             const SolveOptions& opts = {}) {
  constexpr double kWitnessTol = 1e-6;
  SolveOptions inner = opts;
  inner.build_strategy_tree = false;

  auto spread_at = [&](const Belief& p) {
    auto q = detail::grid_q_values(rm.spec, p, rm.horizon, inner);
    return *std::max_element(q.begin(), q.end()) -
           *std::min_element(q.begin(), q.end());
  };

  IntersectionReport report;
  // Rank grid points by spread.
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(rm.grid.size());
  for (std::size_t i = 0; i < rm.grid.size(); ++i) {
    const auto& q = rm.q_values[i];
    ranked.emplace_back(*std::max_element(q.begin(), q.end()) -
                            *std::min_element(q.begin(), q.end()),
                        i);
  }
  std::sort(ranked.begin(), ranked.end());
  report.spread = ranked.front().first;
  report.witness = rm.grid.point(ranked.front().second);
  if (report.spread <= kWitnessTol) {
    report.found = true;
    return report;
  }

  // Pattern search with shrinking steps from the best few grid points.
  int n = rm.grid.n;
  std::size_t starts = std::min<std::size_t>(ranked.size(), 5);
  for (std::size_t k = 0; k < starts && !report.found; ++k) {
    std::vector<double> p = rm.grid.point(ranked[k].second).probs();
    double spread = spread_at(Belief(p));
    double step = 1.0 / rm.grid.denominator;
    int rounds = 0;
    while (step > 1e-10 && spread > kWitnessTol && rounds < 200) {
      bool improved = false;
      for (int i = 0; i < n && !improved; ++i) {
        for (int j = 0; j < n && !improved; ++j) {
          if (i == j || p[static_cast<std::size_t>(j)] < step) continue;
          std::vector<double> cand = p;
          cand[static_cast<std::size_t>(i)] += step;
          cand[static_cast<std::size_t>(j)] -= step;
          double s2 = spread_at(Belief(cand));
          if (s2 < spread) {
            p = std::move(cand);
            spread = s2;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2.0;
      ++rounds;
    }
    ++report.refinement_rounds;
    if (spread < report.spread) {
      report.spread = spread;
      report.witness = Belief(p);
    }
    if (spread <= kWitnessTol) report.found = true;
  }
  if (!report.found)
    report.diagnostic =
        "no all-optimal point found at this resolution (best spread " +
        std::to_string(report.spread) + ")";
  return report;
}

struct ZeroMassViolation {
  Belief point;
  int zero_state;
  int better_than;  // the action that q(., zero_state) exceeded
  double gap;
};

struct ZeroMassReport {
  int samples_checked = 0;
  std::vector<ZeroMassViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples beliefs with one zero-mass coordinate s' and checks that
/// searching s' first is never better than any other first action.
inline ZeroMassReport check_zero_mass_domination(const GameSpec& spec, int T,
                                                 int samples,
                                                 std::uint64_t seed = 1,
                                                 const SolveOptions& opts = {}) {
  SolveOptions inner = opts;
  inner.build_strategy_tree = false;
  ZeroMassReport report;
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int n = spec.state_count();
  if (n < 2) return report;
  for (int k = 0; k < samples; ++k) {
    int zero = static_cast<int>(eng() % static_cast<std::uint64_t>(n));
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == zero) continue;
      v[static_cast<std::size_t>(i)] = unif(eng) + 1e-9;
      sum += v[static_cast<std::size_t>(i)];
    }
    for (auto& x : v) x /= sum;
    Belief p{std::move(v)};
    auto q = detail::grid_q_values(spec, p, T, inner);
    for (int s = 0; s < n; ++s) {
      double gap = q[static_cast<std::size_t>(zero)] - q[static_cast<std::size_t>(s)];
      if (gap > kTieTol) report.violations.push_back({p, zero, s, gap});
    }
    ++report.samples_checked;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_assignment(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "|" : "") + std::to_string(a[static_cast<std::size_t>(i)]);
  return s;
}

}  // namespace detail

/// CSV rows `p_0,...,p_{n-1},value,assignment` with assignment as
/// pipe-separated action indices.
inline void export_regions_csv(const RegionMap& rm, std::ostream& os) {
  int n = rm.grid.n;
  for (int i = 0; i < n; ++i) os << "p_" << i << ",";
  os << "value,assignment\n";
  os.precision(17);
  for (std::size_t i = 0; i < rm.grid.size(); ++i) {
    Belief p = rm.grid.point(i);
    for (int j = 0; j < n; ++j) os << p[j] << ",";
    os << rm.values[i] << "," << detail::join_assignment(rm.assignment[i])
       << "\n";
  }
}

struct RegionCsv {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  std::vector<std::vector<int>> assignment;
};

/// Parses the CSV written by export_regions_csv.
inline RegionCsv import_regions_csv(std::istream& is) {
  RegionCsv out;
  std::string line;
  if (!std::getline(is, line)) throw SpecError("regions csv: missing header");
  std::size_t columns = static_cast<std::size_t>(
      std::count(line.begin(), line.end(), ',') + 1);
  if (columns < 3) throw SpecError("regions csv: malformed header");
  std::size_t n = columns - 2;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> p;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::getline(ss, cell, ',')) throw SpecError("regions csv: short row");
      p.push_back(std::stod(cell));
    }
    if (!std::getline(ss, cell, ',')) throw SpecError("regions csv: short row");
    out.values.push_back(std::stod(cell));
    if (!std::getline(ss, cell)) throw SpecError("regions csv: short row");
    std::vector<int> a;
    std::stringstream as(cell);
    std::string tok;
    while (std::getline(as, tok, '|')) a.push_back(std::stoi(tok));
    out.points.push_back(std::move(p));
    out.assignment.push_back(std::move(a));
  }
  return out;
}

/// Barycentric scatter of a 3-state region map: one fill color per
/// single-action region, a neutral diamond for multi-action points.
inline void export_regions_svg(const RegionMap& rm, std::ostream& os) {
  if (rm.grid.n != 3)
    throw UnsupportedDimension("svg export requires exactly 3 states");
  const double width = 640.0, height = 600.0, margin = 40.0;
  const double side = width - 2 * margin;
  const double h = side * std::sqrt(3.0) / 2.0;
  const double y0 = height - margin;
  // p = (a,b,c) -> barycentric: x spans from vertex 0 to vertex 1, vertex 2
  // on top.
  auto px = [&](const Belief& p) {
    return margin + side * (p[1] + 0.5 * p[2]);
  };
  auto py = [&](const Belief& p) { return y0 - h * p[2]; };
  const char* palette[3] = {"#e41a1c", "#377eb8", "#4daf4a"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<polygon points=\"" << margin << "," << y0 << " " << margin + side
     << "," << y0 << " " << margin + side / 2 << "," << y0 - h
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (int i = 0; i < 3; ++i) {
    Belief v = Belief::unit(3, i);
    os << "<text x=\"" << px(v) + (i == 1 ? 6 : -6) << "\" y=\""
       << py(v) + (i == 2 ? -8 : 16) << "\" font-size=\"13\" text-anchor=\""
       << (i == 0 ? "end" : (i == 1 ? "start" : "middle")) << "\">"
       << rm.spec.states().label(i) << "</text>\n";
  }
  double r = std::max(1.5, side / (3.2 * rm.grid.denominator));
  for (std::size_t i = 0; i < rm.grid.size(); ++i) {
    Belief p = rm.grid.point(i);
    const auto& a = rm.assignment[i];
    if (a.size() == 1) {
      os << "<circle cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"" << r
         << "\" fill=\"" << palette[a.front() % 3] << "\"/>\n";
    } else {
      double x = px(p), y = py(p);
      os << "<path d=\"M" << x - r << " " << y << " L" << x << " " << y - r
         << " L" << x + r << " " << y << " L" << x << " " << y + r
         << " Z\" fill=\"#222\"/>\n";
    }
  }
  os << "</svg>\n";
}

/// Writes a region map to `path` as "csv" or "svg" (svg needs n = 3).
inline void export_regions(const RegionMap& rm, const std::string& path,
                           const std::string& format) {
  std::ofstream os(path);
  if (!os) throw SpecError("cannot write " + path);
  if (format == "csv")
    export_regions_csv(rm, os);
  else if (format == "svg")
    export_regions_svg(rm, os);
  else
    throw ParameterOutOfRange("format must be csv or svg, got " + format);
}

}  // namespace searchgame
