// Command-line frontend for the competitive-search solver library.
//
// Exit codes: 0 success, 2 usage error, 3 spec error, 4 node budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "searchgame/searchgame.hpp"

using nlohmann::json;
using namespace searchgame;

namespace {

SolveOptions options_from_env() {
  SolveOptions opts;
  if (const char* env = std::getenv("SEARCHGAME_NODE_BUDGET")) {
    try {
      opts.node_budget = std::stoull(env);
    } catch (const std::exception&) {
      throw ParameterOutOfRange(
          "SEARCHGAME_NODE_BUDGET must be an unsigned integer");
    }
  }
  return opts;
}

std::string player_label(Player p) { return p == Player::one ? "1" : "2"; }

json solve_to_json(const GameSpec& spec, const SolveResult& r) {
  json j;
  j["value"] = r.value;
  j["horizon"] = r.horizon;
  j["player"] = player_label(r.for_player);
  json q = json::object();
  for (int s = 0; s < spec.state_count(); ++s)
    q[spec.states().label(s)] = r.q_values[static_cast<std::size_t>(s)];
  j["q_values"] = std::move(q);
  json acts = json::array();
  for (int a : r.optimal_actions) acts.push_back(spec.states().label(a));
  j["optimal_actions"] = std::move(acts);
  j["nodes_expanded"] = r.nodes_expanded;
  j["strategy_tree_size"] = r.strategy_tree.size();
  j["strategy_tree_truncated"] = r.strategy_tree_truncated;
  return j;
}

void print_solve_text(const GameSpec& spec, const SolveResult& r) {
  std::printf("horizon %d, player %s\n", r.horizon,
              player_label(r.for_player).c_str());
  std::printf("value = %.12g\n", r.value);
  std::printf("q-values (game's first action pinned per state):\n");
  for (int s = 0; s < spec.state_count(); ++s)
    std::printf("  %-8s %.12g\n", spec.states().label(s).c_str(),
                r.q_values[static_cast<std::size_t>(s)]);
  std::printf("optimal first actions:");
  for (int a : r.optimal_actions)
    std::printf(" %s", spec.states().label(a).c_str());
  std::printf("\n");
}

json bracket_to_json(const ValueBracket& b) {
  return json{{"lower", b.lower},
              {"upper", b.upper},
              {"width", b.width},
              {"horizon", b.horizon}};
}

json classification_to_json(const ChainClassification& c,
                            const StateSpace& states) {
  json j;
  j["irreducible"] = c.irreducible;
  j["aperiodic"] = c.aperiodic;
  j["period"] = c.period;
  auto labels = [&](const std::set<int>& ss) {
    json a = json::array();
    for (int s : ss) a.push_back(states.label(s));
    return a;
  };
  j["transient_states"] = labels(c.transient_states);
  j["absorbing_states"] = labels(c.absorbing_states);
  json classes = json::array();
  for (const auto& cls : c.ergodic_classes) classes.push_back(labels(cls));
  j["ergodic_classes"] = std::move(classes);
  return j;
}

std::string join_labels(const StateSpace& states, const std::set<int>& ss) {
  std::string out;
  for (int s : ss) out += (out.empty() ? "" : " ") + states.label(s);
  return out.empty() ? "-" : out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Solver for the two-player alternating search game on a Markov chain"};
  app.require_subcommand(1);

  std::string spec_path, sigma_name = "greedy", tau_name = "greedy";
  std::string format = "text", out_path, emit_path;
  int horizon = 9, grid = 30, player = 1, example_n = 2;
  long long trials = 100000;
  std::uint64_t seed = 1;
  double discount = 0.0, tol = 1e-6, eta = 0.2, q = 0.2;
  bool with_bracket = false, check_stable = false;

  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "game spec file (JSON)")->required();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json");
  };

  CLI::App* solve = app.add_subcommand("solve", "finite-horizon max-min value");
  add_spec(solve);
  solve->add_option("--horizon", horizon, "number of periods (default 9)");
  solve->add_option("--player", player, "1 or 2")->check(CLI::Range(1, 2));
  solve->add_option("--discount", discount, "discount factor in (0,1)");
  solve->add_option("--tol", tol, "discounted truncation tolerance");
  solve->add_flag("--bracket", with_bracket, "also print the value bracket");
  add_format(solve);

  CLI::App* bracket = app.add_subcommand(
      "bracket", "certified interval for the infinite-horizon value");
  add_spec(bracket);
  bracket->add_option("--horizon", horizon, "number of periods (default 9)");
  add_format(bracket);

  CLI::App* regions = app.add_subcommand(
      "regions", "optimality regions over the belief simplex");
  add_spec(regions);
  regions->add_option("--horizon", horizon, "number of periods (default 9)");
  regions->add_option("--grid", grid, "simplex grid denominator (default 30)");
  regions->add_option("--out", out_path, "output file")->required();
  regions->add_option("--format", format, "csv or svg");
  regions->add_flag("--check-stable", check_stable,
                    "also compare against horizon+2 values");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "seeded Monte Carlo play");
  add_spec(simulate_cmd);
  simulate_cmd->add_option("--sigma", sigma_name, "player-1 strategy");
  simulate_cmd->add_option("--tau", tau_name, "player-2 strategy");
  simulate_cmd->add_option("--horizon", horizon, "number of periods");
  simulate_cmd->add_option("--trials", trials, "number of trials");
  simulate_cmd->add_option("--seed", seed, "RNG seed");
  add_format(simulate_cmd);

  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "exact win probabilities of a profile");
  add_spec(evaluate_cmd);
  evaluate_cmd->add_option("--sigma", sigma_name, "player-1 strategy");
  evaluate_cmd->add_option("--tau", tau_name, "player-2 strategy");
  evaluate_cmd->add_option("--horizon", horizon, "number of periods");
  add_format(evaluate_cmd);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "structure of the scheduled matrices");
  add_spec(classify_cmd);
  add_format(classify_cmd);

  CLI::App* examples_cmd = app.add_subcommand(
      "examples",
      "emit a bundled game: example1, example2, identity, uniform, figure1, "
      "figure2");
  std::string example_name;
  examples_cmd->add_option("name", example_name, "bundle name")->required();
  examples_cmd->add_option("--eta", eta, "chain parameter (example1/example2)");
  examples_cmd->add_option("--q", q, "initial-mass parameter");
  examples_cmd->add_option("--n", example_n, "state count (identity/uniform)");
  examples_cmd->add_option("--emit", emit_path, "write the spec here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0, any usage problem exits 2
  }

  SolveOptions opts = options_from_env();
  bool as_json = format == "json";

  if (solve->parsed()) {
    GameSpec spec = load_game_spec(spec_path);
    if (discount > 0.0) {
      DiscountedResult r = value_discounted(spec, discount, tol, opts);
      if (as_json) {
        std::cout << json{{"discounted_value", r.value},
                          {"beta", r.beta},
                          {"truncation_horizon", r.truncation_horizon},
                          {"tail_bound", r.tail_bound}}
                         .dump(2)
                  << "\n";
      } else {
        std::printf("discounted value (beta=%g) = %.12g\n", r.beta, r.value);
        std::printf("truncated at horizon %d, tail bound %.3g\n",
                    r.truncation_horizon, r.tail_bound);
      }
      return 0;
    }
    SolveResult r = value_finite(
        spec, horizon, player == 1 ? Player::one : Player::two, opts);
    json j = solve_to_json(spec, r);
    if (with_bracket) j["bracket"] = bracket_to_json(value_bracket(spec, horizon, opts));
    if (as_json) {
      std::cout << j.dump(2) << "\n";
    } else {
      print_solve_text(spec, r);
      if (with_bracket) {
        ValueBracket b = value_bracket(spec, horizon, opts);
        std::printf("bracket [%.12g, %.12g], width %.3g\n", b.lower, b.upper,
                    b.width);
      }
    }
    return 0;
  }

  if (bracket->parsed()) {
    GameSpec spec = load_game_spec(spec_path);
    ValueBracket b = value_bracket(spec, horizon, opts);
    if (as_json)
      std::cout << bracket_to_json(b).dump(2) << "\n";
    else
      std::printf("horizon %d: value in [%.12g, %.12g], width %.3g\n",
                  b.horizon, b.lower, b.upper, b.width);
    return 0;
  }

  if (regions->parsed()) {
    if (format == "text") format = "csv";
    GameSpec spec = load_game_spec(spec_path);
    RegionMap rm = map_regions(spec, horizon, grid, opts, check_stable);
    export_regions(rm, out_path, format);
    std::vector<int> pure(static_cast<std::size_t>(spec.state_count()), 0);
    int shared = 0;
    for (const auto& a : rm.assignment) {
      if (a.size() == 1)
        ++pure[static_cast<std::size_t>(a.front())];
      else
        ++shared;
    }
    std::printf("%zu grid points at horizon %d -> %s\n", rm.grid.size(),
                rm.horizon, out_path.c_str());
    for (int s = 0; s < spec.state_count(); ++s)
      std::printf("  only %-8s %d\n", spec.states().label(s).c_str(),
                  pure[static_cast<std::size_t>(s)]);
    std::printf("  shared   %d\n", shared);
    if (rm.stabilized.has_value())
      std::printf("stabilized vs horizon %d: %s (max delta %.3g)\n",
                  rm.horizon + 2, *rm.stabilized ? "yes" : "no",
                  rm.stabilization_delta);
    return 0;
  }

  if (simulate_cmd->parsed()) {
    GameSpec spec = load_game_spec(spec_path);
    Strategy sigma = builtin(spec, sigma_name);
    Strategy tau = builtin(spec, tau_name);
    SimulationReport r = simulate(spec, sigma, tau, horizon, trials, seed);
    if (as_json) {
      std::cout << json{{"trials", r.trials},
                        {"seed", r.seed},
                        {"rng", r.rng},
                        {"p1_win_hat", r.p1_win_hat},
                        {"p2_win_hat", r.p2_win_hat},
                        {"not_found_hat", r.not_found_hat},
                        {"mean_find_time", r.mean_find_time},
                        {"ci_halfwidth", r.ci_halfwidth}}
                       .dump(2)
                << "\n";
    } else {
      std::printf("%s vs %s, horizon %d, %lld trials, seed %llu (%s)\n",
                  sigma.name().c_str(), tau.name().c_str(), horizon, r.trials,
                  static_cast<unsigned long long>(r.seed), r.rng.c_str());
      std::printf("p1 %.6f   p2 %.6f   not found %.6f\n", r.p1_win_hat,
                  r.p2_win_hat, r.not_found_hat);
      std::printf("mean find time %.3f, 95%% ci halfwidth %.5f\n",
                  r.mean_find_time, r.ci_halfwidth);
    }
    return 0;
  }

  if (evaluate_cmd->parsed()) {
    GameSpec spec = load_game_spec(spec_path);
    Strategy sigma = builtin(spec, sigma_name);
    Strategy tau = builtin(spec, tau_name);
    EvaluationReport r = evaluate_exact(spec, sigma, tau, horizon);
    if (as_json) {
      std::cout << json{{"p1_win", r.p1_win},
                        {"p2_win", r.p2_win},
                        {"not_found", r.not_found},
                        {"horizon", r.horizon},
                        {"per_period_find", r.per_period_find}}
                       .dump(2)
                << "\n";
    } else {
      std::printf("%s vs %s over %d periods\n", sigma.name().c_str(),
                  tau.name().c_str(), r.horizon);
      std::printf("p1 wins %.12g   p2 wins %.12g   not found %.12g\n",
                  r.p1_win, r.p2_win, r.not_found);
    }
    return 0;
  }

  if (classify_cmd->parsed()) {
    GameSpec spec = load_game_spec(spec_path);
    double alpha = mixing_certificate(spec.schedule()).alpha;
    if (as_json) {
      json matrices = json::array();
      for (const auto& m : spec.schedule().matrices())
        matrices.push_back(classification_to_json(classify(m), spec.states()));
      std::cout << json{{"matrices", matrices}, {"alpha", alpha}}.dump(2)
                << "\n";
    } else {
      int k = 0;
      for (const auto& m : spec.schedule().matrices()) {
        ChainClassification c = classify(m);
        std::printf("matrix %d: %s, %s (period %d)\n", k++,
                    c.irreducible ? "irreducible" : "reducible",
                    c.aperiodic ? "aperiodic" : "periodic", c.period);
        std::printf("  transient: %s\n",
                    join_labels(spec.states(), c.transient_states).c_str());
        std::printf("  absorbing: %s\n",
                    join_labels(spec.states(), c.absorbing_states).c_str());
        std::printf("  ergodic classes:");
        for (const auto& cls : c.ergodic_classes)
          std::printf(" {%s}", join_labels(spec.states(), cls).c_str());
        std::printf("\n");
      }
      std::printf("strong-mixing alpha = %.12g\n", alpha);
    }
    return 0;
  }

  if (examples_cmd->parsed()) {
    GameSpec spec = generate_example(example_name, eta, q, example_n);
    if (emit_path.empty()) {
      write_game_spec(spec, std::cout);
    } else {
      save_game_spec(spec, emit_path);
      std::printf("wrote %s (%d states)\n", emit_path.c_str(),
                  spec.state_count());
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const HorizonTooLarge& e) {
    std::cerr << "error: budget: " << e.what() << "\n";
    return 4;
  } catch (const UnknownStrategy& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "error: spec: " << e.what() << "\n";
    return 3;
  } catch (const SpecMismatch& e) {
    std::cerr << "error: spec: " << e.what() << "\n";
    return 3;
  } catch (const ParameterOutOfRange& e) {
    std::cerr << "error: spec: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
