#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "searchgame/chain.hpp"
#include "searchgame/examples.hpp"
#include "searchgame/regions.hpp"

using namespace searchgame;

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::size_t grid_index(const SimplexGrid& g, const std::vector<int>& nums) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.numerators[i] == nums) return i;
  FAIL("grid point not found");
  return 0;
}

}  // namespace

TEST_CASE("simplex grid enumerates all compositions") {
  SimplexGrid g = SimplexGrid::make(3, 4);
  REQUIRE(g.size() == 15);  // C(4+2, 2)
  SimplexGrid g2 = SimplexGrid::make(4, 6);
  REQUIRE(g2.size() == 84);  // C(6+3, 3)
  for (std::size_t i = 0; i < g.size(); ++i) {
    Belief p = g.point(i);
    double sum = 0;
    for (int j = 0; j < 3; ++j) sum += p[j];
    REQUIRE_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
  REQUIRE_THROWS_AS(SimplexGrid::make(3, 0), ParameterOutOfRange);
}

TEST_CASE("identity-chain regions: vertices are uniquely assigned") {
  RegionMap rm = map_regions(figure1_spec(), 9, 10);
  std::size_t v0 = grid_index(rm.grid, {10, 0, 0});
  REQUIRE(rm.assignment[v0] == std::vector<int>{0});
  std::size_t v2 = grid_index(rm.grid, {0, 0, 10});
  REQUIRE(rm.assignment[v2] == std::vector<int>{2});
}

TEST_CASE("identity-chain regions: the zero state stays weakly optimal") {
  RegionMap rm = map_regions(figure1_spec(), 9, 10);
  std::size_t mid = grid_index(rm.grid, {5, 5, 0});
  REQUIRE(contains(rm.assignment[mid], 0));
  REQUIRE(contains(rm.assignment[mid], 1));
  REQUIRE(contains(rm.assignment[mid], 2));
}

TEST_CASE("every grid point has a non-empty assignment") {
  for (const GameSpec& spec : {figure1_spec(), figure2_spec()}) {
    RegionMap rm = map_regions(spec, 7, 12);
    for (const auto& a : rm.assignment) REQUIRE_FALSE(a.empty());
  }
}

TEST_CASE("face points keep an optimal action on their support") {
  std::mt19937_64 eng(109);
  GameSpec spec = figure2_spec();
  RegionMap rm = map_regions(spec, 9, 12);
  for (std::size_t i = 0; i < rm.grid.size(); ++i) {
    std::vector<int> support;
    for (int s = 0; s < 3; ++s)
      if (rm.grid.numerators[i][static_cast<std::size_t>(s)] > 0)
        support.push_back(s);
    bool hit = false;
    for (int s : support) hit = hit || contains(rm.assignment[i], s);
    REQUIRE(hit);
  }
}

TEST_CASE("values are Lipschitz between adjacent grid points") {
  RegionMap rm = map_regions(figure2_spec(), 9, 12);
  for (std::size_t i = 0; i < rm.grid.size(); ++i)
    for (std::size_t j = i + 1; j < rm.grid.size(); ++j) {
      double d = tv_distance(rm.grid.point(i), rm.grid.point(j));
      if (d > 1.0 / rm.grid.denominator + 1e-12) continue;
      REQUIRE(std::abs(rm.values[i] - rm.values[j]) <= d + 1e-9);
    }
}

TEST_CASE("drain-chain regions: the draining state dominates the center") {
  // Missing at the draining state hands the opponent an even two-atom
  // subgame, so searching it first is strictly optimal on a wide band.
  // Hand check at (0.45, 0.45, 0.10): q = (0.5, 0.5, 0.55).
  RegionMap rm = map_regions(figure2_spec(), 9, 20);
  std::size_t center = grid_index(rm.grid, {9, 9, 2});
  REQUIRE(rm.assignment[center] == std::vector<int>{2});
  REQUIRE_THAT(rm.q_values[center][2], Catch::Matchers::WithinAbs(0.55, 1e-9));
  REQUIRE_THAT(rm.q_values[center][0], Catch::Matchers::WithinAbs(0.50, 1e-9));
  // Each region still owns its vertex exclusively.
  for (int s = 0; s < 3; ++s) {
    std::vector<int> nums(3, 0);
    nums[static_cast<std::size_t>(s)] = 20;
    REQUIRE(rm.assignment[grid_index(rm.grid, nums)] == std::vector<int>{s});
  }
}

TEST_CASE("star convexity holds on the sampled segments") {
  RegionMap rm1 = map_regions(figure1_spec(), 9, 10);
  for (int s = 0; s < 3; ++s) {
    auto report = check_star_convexity(rm1, s, 10, 5);
    INFO("state " << s);
    REQUIRE(report.ok());
    REQUIRE(report.points_checked > 0);
  }
  RegionMap rm2 = map_regions(figure2_spec(), 9, 10);
  for (int s = 0; s < 3; ++s) REQUIRE(check_star_convexity(rm2, s, 10, 5).ok());
}

TEST_CASE("all-actions-optimal witness on the two-state identity game") {
  RegionMap rm = map_regions(identity_spec(2), 9, 10);
  auto report = check_intersection(rm);
  REQUIRE(report.found);
  REQUIRE_THAT((*report.witness)[0], Catch::Matchers::WithinAbs(0.5, 1e-9));
  REQUIRE(report.spread <= 1e-6);
}

TEST_CASE("all-actions-optimal witness on both demo games") {
  for (const GameSpec& spec : {figure1_spec(), figure2_spec()}) {
    RegionMap rm = map_regions(spec, 9, 12);
    auto report = check_intersection(rm);
    INFO(report.diagnostic);
    REQUIRE(report.found);
  }
}

TEST_CASE("degenerate one-state game: the vertex is trivially optimal") {
  GameSpec one(StateSpace::numbered(1),
               TransitionSchedule({TransitionMatrix::identity(1)}),
               Belief({1.0}));
  RegionMap rm = map_regions(one, 3, 1);
  REQUIRE(rm.grid.size() == 1);
  REQUIRE(rm.assignment[0] == std::vector<int>{0});
  auto report = check_intersection(rm);
  REQUIRE(report.found);
}

TEST_CASE("zero-mass first actions are never strictly better") {
  auto r1 = check_zero_mass_domination(figure1_spec(), 9, 100, 13);
  REQUIRE(r1.samples_checked == 100);
  REQUIRE(r1.ok());
  std::mt19937_64 eng(127);
  GameSpec random4(StateSpace::numbered(4),
                   TransitionSchedule({oracle::random_matrix(eng, 4)}),
                   Belief::uniform(4));
  REQUIRE(check_zero_mass_domination(random4, 7, 100, 17).ok());
}

TEST_CASE("csv export round-trips the assignments") {
  RegionMap rm = map_regions(figure2_spec(), 7, 8);
  std::stringstream ss;
  export_regions_csv(rm, ss);
  RegionCsv parsed = import_regions_csv(ss);
  REQUIRE(parsed.assignment == rm.assignment);
  REQUIRE(parsed.values.size() == rm.grid.size());
  for (std::size_t i = 0; i < rm.grid.size(); ++i)
    REQUIRE(parsed.values[i] == rm.values[i]);
}

TEST_CASE("svg export draws the ternary diagram for three states") {
  RegionMap rm = map_regions(figure1_spec(), 5, 6);
  std::stringstream ss;
  export_regions_svg(rm, ss);
  std::string svg = ss.str();
  REQUIRE(svg.find("<svg") != std::string::npos);
  REQUIRE(svg.find("polygon") != std::string::npos);
  REQUIRE(svg.find("#e41a1c") != std::string::npos);
  REQUIRE(svg.find("#377eb8") != std::string::npos);
  REQUIRE(svg.find("#4daf4a") != std::string::npos);
}

TEST_CASE("svg export requires exactly three states") {
  RegionMap rm = map_regions(identity_spec(2), 3, 4);
  std::stringstream ss;
  REQUIRE_THROWS_AS(export_regions_svg(rm, ss), UnsupportedDimension);
}

TEST_CASE("identity-chain values stabilize at the reported horizon") {
  RegionMap rm = map_regions(figure1_spec(), 9, 8, {}, true);
  REQUIRE(rm.stabilized.has_value());
  REQUIRE(*rm.stabilized);
  REQUIRE(rm.stabilization_delta <= 1e-9);
}
