// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier end-to-end runs live here; per-module edge cases live in
// the unit suites.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/full_matrix.hpp"
#include "support/random_scenarios.hpp"
#include "unsg/bench.hpp"
#include "unsg/cfr.hpp"
#include "unsg/meta.hpp"

using namespace unsg;

namespace {

struct Outcome {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<Outcome> outcomes;

template <typename Fn>
void criterion(const std::string& name, Fn&& body) {
  Outcome outcome;
  outcome.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    outcome.passed = body(detail);
    outcome.detail = detail.str();
  } catch (const std::exception& e) {
    outcome.passed = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  outcome.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcomes.push_back(std::move(outcome));
}

bool check(bool condition, std::ostringstream& detail, const std::string& message) {
  if (!condition) detail << "[" << message << "] ";
  return condition;
}

// ---- criterion bodies -----------------------------------------------------

bool easy_ground_truth(std::ostringstream& detail) {
  const ScenarioFile s = bundled_scenario("easy");
  const GameConfig config = scenario_config(s);
  const PathSet paths = scenario_paths(s, config);
  DOParams params;
  params.eps = s.eps;
  params.max_iters = s.max_iters;
  const DOResult result = double_oracle_solve(config, paths, params);
  detail << "value=" << result.value << " iters=" << result.log.size();
  bool ok = check(result.converged, detail, "converged");
  ok &= check(std::abs(result.value - 1.0) <= 1e-3, detail, "value 1.0 +- 1e-3");
  return ok;
}

bool hard_ground_truth(std::ostringstream& detail) {
  const ScenarioFile s = bundled_scenario("hard");
  const GameConfig config = scenario_config(s);
  const PathSet paths = scenario_paths(s, config);

  DOParams params;
  params.eps = s.eps;
  params.max_iters = s.max_iters;
  const DOResult do_result = double_oracle_solve(config, paths, params);
  const double do_gap =
      do_result.log.back().upper_bound - do_result.log.back().lower_bound;

  CfrParams cfr_params;
  cfr_params.iterations = 20000;
  cfr_params.stop_exploitability = 2e-3;
  const CfrResult cfr_result = cfr_solve(config, cfr_params);

  detail << "do=" << do_result.value << " gap=" << do_gap << " cfr=" << cfr_result.value;
  bool ok = check(do_result.converged, detail, "do converged");
  ok &= check(std::abs(do_result.value - 0.5) <= 1e-2, detail, "do value 0.5 +- 1e-2");
  ok &= check(do_gap <= 1e-3, detail, "do bound gap <= 1e-3");
  ok &= check(std::abs(cfr_result.value - 0.5) <= 1e-2, detail, "cfr value 0.5 +- 1e-2");
  return ok;
}

bool oracle_equivalence(std::ostringstream& detail) {
  std::mt19937_64 rng(424242);
  int done = 0;
  double worst_do = 0.0, worst_cfr = 0.0;
  bool ok = true;
  while (done < 20) {
    PathSet paths;
    const GameConfig config = testing::random_tiny_scenario(rng, paths);
    const auto brute = testing::brute_force_full_matrix(config, paths);
    if (!brute) continue;  // too large for the exhaustive oracle; resample

    DOParams params;
    params.eps = 1e-5;
    params.max_iters = 200;
    const DOResult do_result = double_oracle_solve(config, paths, params);
    worst_do = std::max(worst_do, std::abs(do_result.value - brute->value));
    ok &= check(do_result.converged, detail, "do converged");
    ok &= check(std::abs(do_result.value - brute->value) <= 1e-3, detail,
                "do vs brute force <= 1e-3");

    CfrParams cfr_params;
    cfr_params.iterations = 100000;
    cfr_params.stop_exploitability = 4e-3;
    const CfrResult cfr_result = cfr_solve(config, cfr_params);
    worst_cfr = std::max(worst_cfr, std::abs(cfr_result.value - brute->value));
    ok &= check(std::abs(cfr_result.value - brute->value) <= 1e-2, detail,
                "cfr vs brute force <= 1e-2");
    ++done;
  }
  detail << "scenarios=" << done << " max|do-bf|=" << worst_do
         << " max|cfr-bf|=" << worst_cfr;
  return ok;
}

PursuerPolicy random_independent_policy(const GameConfig& config, std::mt19937_64& rng) {
  PursuerPolicy policy;
  policy.kind = PolicyKind::IndependentMarkov;
  const bool keyed = config.pursuer_sees_evader() && uniform_index(rng, 2) == 0;
  policy.keying = keyed ? EvaderKeying::CurrentPosition : EvaderKeying::None;
  policy.per_pursuer.resize(config.pursuer_count());
  for (auto& table : policy.per_pursuer) {
    for (Vertex v = 0; v < config.graph.vertex_count; ++v) {
      const auto moves = legal_moves(config, v);
      for (int t = 0; t < config.horizon; ++t) {
        const int evader_values = keyed ? config.graph.vertex_count : 1;
        for (int e = 0; e < evader_values; ++e) {
          VertexDistribution dist;
          dist.moves = moves;
          dist.probs.resize(moves.size());
          double sum = 0.0;
          for (double& p : dist.probs) {
            p = 0.05 + unit_double(rng);
            sum += p;
          }
          for (double& p : dist.probs) p /= sum;
          const std::vector<Vertex> seen =
              keyed ? std::vector<Vertex>{static_cast<Vertex>(e)} : std::vector<Vertex>{};
          table[ObsKey{{v}, seen, t}] = std::move(dist);
        }
      }
    }
  }
  return policy;
}

bool evaluation_consistency(std::ostringstream& detail) {
  std::mt19937_64 rng(777);
  bool ok = true;
  double max_gap = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    PathSet paths;
    GameConfig config = testing::random_tiny_scenario(rng, paths);
    config.pursuer_starts.push_back(static_cast<Vertex>(uniform_index(rng, 9)));
    const PursuerPolicy policy = random_independent_policy(config, rng);

    // factored vs joint on every path
    double pick_value = -1.0;
    EvaderPath pick;
    for (const auto& path : paths.paths) {
      const double factored = catch_probability_exact(policy, path, config);
      const double joint = catch_probability_exact_joint(policy, path, config);
      max_gap = std::max(max_gap, std::abs(factored - joint));
      ok &= check(std::abs(factored - joint) <= 1e-10, detail, "factored==joint 1e-10");
      if (std::abs(factored - 0.5) < std::abs(pick_value - 0.5)) {
        pick_value = factored;
        pick = path;
      }
    }
    // Monte Carlo against the exact value on the most informative path
    const auto [mean, se] = catch_probability_mc(policy, pick, config, 100000, rng());
    ok &= check(std::abs(mean - pick_value) <= 3.0 * se + 1e-12, detail,
                "mc within 3 stderr");
  }
  detail << "scenarios=50 max|factored-joint|=" << max_gap;
  return ok;
}

bool do_sandwich(std::ostringstream& detail) {
  bool ok = true;
  for (const std::string name : bench_scenario_names()) {
    const ScenarioFile s = bundled_scenario(name);
    const GameConfig config = scenario_config(s);
    const PathSet paths = scenario_paths(s, config);
    DOParams params;
    params.eps = s.eps;
    params.max_iters = s.max_iters;
    const DOResult result = double_oracle_solve(config, paths, params);
    ok &= check(result.converged, detail, name + " converged");
    for (const auto& row : result.log) {
      ok &= check(row.lower_bound <= row.value + 2 * params.eps, detail,
                  name + " lower <= value");
      ok &= check(row.value <= row.upper_bound + 2 * params.eps, detail,
                  name + " value <= upper");
    }
    const double gap = result.log.back().upper_bound - result.log.back().lower_bound;
    ok &= check(gap <= params.eps, detail, name + " final gap <= eps");
    detail << name << ": iters=" << result.log.size() << " gap=" << gap << "  ";
  }
  return ok;
}

bool sweep_scale(std::ostringstream& detail) {
  const ScenarioFile s = bundled_scenario("sweep7x7");
  const GameConfig config = scenario_config(s);
  const PathSet paths = scenario_paths(s, config);  // throws PathExplosion on cap
  const PursuerPolicy uniform = make_uniform_independent(config);
  const EvalReport report = worst_case_reward(uniform, paths, config);
  detail << "paths=" << paths.paths.size() << " worst=" << report.value;
  bool ok = check(paths.paths.size() > 1000, detail, "nontrivial path count");
  ok &= check(report.value >= 0.0 && report.value <= 1.0, detail, "value in [0,1]");
  ok &= check(report.method == EvalMethod::ExactFactored, detail, "exact sweep");
  return ok;
}

bool bench_determinism(std::ostringstream& detail) {
  auto run_bench = [&]() -> std::string {
    const std::string command = std::string(UNSG_CLI_PATH) + " bench 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string output;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, n);
    if (pclose(pipe) != 0) return "<bench failed>";
    return output;
  };
  const std::string first = run_bench();
  const std::string second = run_bench();
  detail << "bytes=" << first.size();
  bool ok = check(first.find('<') != 0, detail, "bench ran");
  ok &= check(!first.empty() && first == second, detail, "byte-identical reruns");
  return ok;
}

bool dynamics_conformance(std::ostringstream& detail) {
  std::mt19937_64 rng(31337);
  bool ok = true;
  for (int rollout = 0; rollout < 10000 && ok; ++rollout) {
    GameConfig config;
    config.graph = generate_grid({3, 3, 0.5 + 0.5 * unit_double(rng), 0.3, rng()});
    config.graph.exits = {static_cast<Vertex>(uniform_index(rng, 9))};
    config.pursuer_starts = {static_cast<Vertex>(uniform_index(rng, 9)),
                             static_cast<Vertex>(uniform_index(rng, 9))};
    config.evader_start = static_cast<Vertex>(uniform_index(rng, 9));
    config.horizon = 1 + static_cast<int>(uniform_index(rng, 4));
    config.allow_stay = uniform_index(rng, 2) == 0;

    GameState state = initial_state(config);
    bool coincided = std::find(state.pursuer_locs.begin(), state.pursuer_locs.end(),
                               state.evader_loc) != state.pursuer_locs.end();
    while (!state.terminal()) {
      const auto joint = pursuer_joint_actions(state, config);
      const auto evader = evader_actions(state, config);
      const GameState next = step(state, joint[uniform_index(rng, joint.size())],
                                  evader[uniform_index(rng, evader.size())], config);
      ok &= check(next.t == state.t + 1, detail, "time advances");
      ok &= check(next.t <= config.horizon, detail, "no play past the horizon");
      state = next;
      coincided |= std::find(state.pursuer_locs.begin(), state.pursuer_locs.end(),
                             state.evader_loc) != state.pursuer_locs.end();
    }
    const double payoff = pursuer_payoff(state);
    ok &= check(payoff == 0.0 || payoff == 1.0, detail, "binary payoff");
    if (coincided) ok &= check(payoff == 1.0, detail, "capture dominance");
    if (state.status == Status::PursuerWinTimeout) {
      ok &= check(state.t == config.horizon, detail, "timeout only at T");
    }
    // status monotonicity: terminal states reject further steps
    try {
      step(state, state.pursuer_locs, state.evader_loc, config);
      ok = check(false, detail, "terminal step rejected");
    } catch (const Error& e) {
      ok &= check(e.code() == ErrorCode::GameOver, detail, "GameOver code");
    }
  }
  detail << "rollouts=10000";
  return ok;
}

}  // namespace

int main() {
  criterion("1 easy ground truth: double oracle reaches 1.0 +- 1e-3", easy_ground_truth);
  criterion("2 hard ground truth: DO and CFR reach 0.5, DO gap <= 1e-3", hard_ground_truth);
  criterion("3 oracle equivalence on 20 random 3x3 games (DO 1e-3, CFR 1e-2)",
            oracle_equivalence);
  criterion("4 evaluation consistency: factored==joint 1e-10, MC within 3 stderr",
            evaluation_consistency);
  criterion("5 DO sandwich: bounds bracket the value, final gap <= eps", do_sandwich);
  criterion("6 worst-case sweep scale: 7x7, 4 exits, max_len 12, exact sweep",
            sweep_scale);
  criterion("7 determinism: bench CSV byte-identical across reruns", bench_determinism);
  criterion("8 dynamics conformance over 10^4 random rollouts", dynamics_conformance);

  bool all_passed = true;
  for (const Outcome& outcome : outcomes) {
    std::printf("[%s] %-70s (%.1fs) %s\n", outcome.passed ? "PASS" : "FAIL",
                outcome.name.c_str(), outcome.seconds, outcome.detail.c_str());
    all_passed &= outcome.passed;
  }
  return all_passed ? 0 : 1;
}
