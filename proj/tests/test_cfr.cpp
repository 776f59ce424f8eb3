#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support/full_matrix.hpp"
#include "support/random_scenarios.hpp"
#include "unsg/cfr.hpp"
#include "unsg/meta.hpp"

using namespace unsg;

namespace {

GameConfig diamond_config() {
  GameConfig config;
  config.graph = generate_grid({2, 2, 1.0, 1.0, 3});
  config.graph.exits = {0, 3};
  config.pursuer_starts = {2};
  config.evader_start = 1;
  config.horizon = 3;
  return config;
}

// The evader is boxed in a component with no exit: every leaf is a pursuer
// win (timeout), whatever either side does.
GameConfig forced_capture_config() {
  GameConfig config;
  config.graph = from_adjacency({{1}, {0}, {3}, {2}}, false);
  config.graph.exits = {3};
  config.pursuer_starts = {2};
  config.evader_start = 0;
  config.horizon = 2;
  return config;
}

// Full normal form under NeitherSees: pursuer trajectories x evader walks,
// every entry replayed through the game dynamics.
double blind_normal_form_value(const GameConfig& config, const PathSet& paths) {
  std::vector<std::vector<std::vector<Vertex>>> trajectories;
  std::vector<std::vector<Vertex>> current(config.horizon + 1);
  current[0] = config.pursuer_starts;
  auto expand = [&](auto&& self, int t) -> void {
    if (t == config.horizon) {
      trajectories.push_back(current);
      return;
    }
    for (const auto& move : joint_moves_from(config, current[t])) {
      current[t + 1] = move;
      self(self, t + 1);
    }
  };
  expand(expand, 0);

  PayoffMatrix matrix;
  matrix.rows = trajectories.size();
  matrix.cols = paths.paths.size();
  matrix.entries.reserve(matrix.rows * matrix.cols);
  for (const auto& trajectory : trajectories) {
    for (const auto& path : paths.paths) {
      GameState state = initial_state(config);
      while (!state.terminal()) {
        state = step(state, trajectory[state.t + 1], path[state.t + 1], config);
      }
      matrix.entries.push_back(pursuer_payoff(state));
    }
  }
  return solve_matrix_zero_sum(matrix, 1e-6, 40'000'000).value;
}

// Deterministic play-out of a profile that always picks the stated action,
// tracking histories exactly like the tree conversion does.
double replay_deterministic_profile(const CfrProfile& profile, const GameConfig& config) {
  GameState state = initial_state(config);
  std::vector<Vertex> phist = config.pursuer_starts;
  std::vector<Vertex> ehist{config.evader_start};
  while (!state.terminal()) {
    const auto pursuer_moves = joint_moves_from(config, state.pursuer_locs);
    const auto evader_moves = legal_moves(config, state.evader_loc);
    const InfoSetKey pk{Role::Pursuer, state.t, phist,
                        config.pursuer_sees_evader() ? ehist : std::vector<Vertex>{}};
    const InfoSetKey ek{Role::Evader, state.t, ehist,
                        config.evader_sees_pursuers() ? phist : std::vector<Vertex>{}};
    const auto& pd = profile.pursuer.table.at(pk);
    const auto& ed = profile.evader.table.at(ek);
    const std::size_t pi = std::max_element(pd.begin(), pd.end()) - pd.begin();
    const std::size_t ei = std::max_element(ed.begin(), ed.end()) - ed.begin();
    state = step(state, pursuer_moves[pi], evader_moves[ei], config);
    phist.insert(phist.end(), pursuer_moves[pi].begin(), pursuer_moves[pi].end());
    ehist.push_back(evader_moves[ei]);
  }
  return pursuer_payoff(state);
}

CfrProfile make_deterministic(const CfrProfile& base, std::uint64_t seed) {
  CfrProfile result = base;
  std::mt19937_64 rng(seed);
  for (auto& [key, dist] : result.pursuer.table) {
    std::fill(dist.begin(), dist.end(), 0.0);
    dist[uniform_index(rng, dist.size())] = 1.0;
  }
  for (auto& [key, dist] : result.evader.table) {
    std::fill(dist.begin(), dist.end(), 0.0);
    dist[uniform_index(rng, dist.size())] = 1.0;
  }
  return result;
}

}  // namespace

TEST_CASE("forced capture games have value one immediately") {
  const GameConfig config = forced_capture_config();
  CfrParams params;
  params.iterations = 3;
  const CfrResult result = cfr_solve(config, params);
  CHECK(result.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(exploitability(result.profile, config) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("the symmetric two-exit game converges to one half") {
  const GameConfig config = diamond_config();
  CfrParams params;
  params.iterations = 10000;
  params.stop_exploitability = 1e-3;
  const CfrResult result = cfr_solve(config, params);
  CHECK(std::abs(result.value - 0.5) <= 1e-2);
  CHECK(result.final_exploitability <= 1e-3);

  // same game, matrix-enumeration oracle
  const PathSet paths = enumerate_paths(config.graph, 1, 3, PathMode::Walks);
  const auto brute = testing::brute_force_full_matrix(config, paths);
  REQUIRE(brute.has_value());
  CHECK(std::abs(result.value - brute->value) <= 1e-2);
}

TEST_CASE("vanilla CFR also converges on the diamond") {
  const GameConfig config = diamond_config();
  CfrParams params;
  params.iterations = 4000;
  params.variant = CfrVariant::Vanilla;
  const CfrResult result = cfr_solve(config, params);
  CHECK(std::abs(result.value - 0.5) <= 1e-2);
}

TEST_CASE("blind games match the trajectory-vs-walk normal form") {
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 3) {
    PathSet paths;
    GameConfig config = testing::random_tiny_scenario(rng, paths);
    config.info_case = InfoCase::NeitherSees;
    config.horizon = 2;  // keep the trajectory enumeration small
    paths = enumerate_paths(config.graph, config.evader_start, config.horizon,
                            PathMode::Walks);
    if (paths.paths.empty()) continue;

    const double matrix_value = blind_normal_form_value(config, paths);
    CfrParams params;
    params.iterations = 100000;
    params.stop_exploitability = 5e-3;
    const CfrResult result = cfr_solve(config, params);
    CHECK(std::abs(result.value - matrix_value) <= 1e-2);
    ++done;
  }
}

TEST_CASE("exploitability properties") {
  const GameConfig config = diamond_config();

  SUBCASE("nonnegative for arbitrary deterministic profiles") {
    CfrParams params;
    params.iterations = 1;
    const CfrResult base = cfr_solve(config, params);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const CfrProfile profile = make_deterministic(base.profile, seed);
      CHECK(exploitability(profile, config) >= -1e-12);
    }
  }
  SUBCASE("zero on the forced-capture game for any profile") {
    const GameConfig forced = forced_capture_config();
    CfrParams params;
    params.iterations = 1;
    const CfrResult base = cfr_solve(forced, params);
    CHECK(exploitability(base.profile, forced) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("a pursuer strategy ignoring one exit is at least 0.5 exploitable") {
    CfrParams params;
    params.iterations = 1;
    CfrResult base = cfr_solve(config, params);
    CfrProfile profile = base.profile;
    for (auto& [key, dist] : profile.pursuer.table) {
      std::fill(dist.begin(), dist.end(), 0.0);
      dist[0] = 1.0;  // joint move 0 is "stay": the pursuer never guards exit 0 or 3
    }
    CHECK(exploitability(profile, config) >= 0.5);
  }
}

TEST_CASE("exploitability shrinks along a doubling schedule") {
  const GameConfig config = diamond_config();
  double previous = 1e9;
  for (std::size_t n : {20, 200, 2000}) {
    CfrParams params;
    params.iterations = n;
    const CfrResult result = cfr_solve(config, params);
    const double gap = exploitability(result.profile, config);
    CHECK(gap <= previous * 1.05 + 1e-9);
    previous = gap;
  }
}

TEST_CASE("the turn-based conversion is payoff-equivalent to simultaneous play") {
  std::mt19937_64 rng(4);
  for (const InfoCase info :
       {InfoCase::PursuerSeesEvader, InfoCase::NeitherSees, InfoCase::BothSee,
        InfoCase::EvaderSeesPursuers}) {
    PathSet paths;
    GameConfig config = testing::random_tiny_scenario(rng, paths);
    config.info_case = info;
    CfrParams params;
    params.iterations = 1;
    const CfrResult base = cfr_solve(config, params);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const CfrProfile profile = make_deterministic(base.profile, seed);
      // the converted game's expected value of a pure profile equals the
      // dynamics replay payoff
      CHECK(profile_value(profile, config) ==
            doctest::Approx(replay_deterministic_profile(profile, config)).epsilon(1e-12));
    }
  }
}

TEST_CASE("tree size guard") {
  const GameConfig config = diamond_config();
  CHECK(count_tree_nodes(config, 1'000'000) > 10);
  CHECK_THROWS_AS(count_tree_nodes(config, 10), Error);
  CfrParams params;
  params.node_cap = 10;
  try {
    cfr_solve(config, params);
    FAIL("expected TreeTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TreeTooLarge);
  }
}

TEST_CASE("log CSV is frozen") {
  CfrResult result;
  result.log.push_back({4, 0.5, 0.125});
  std::ostringstream out;
  write_cfr_log_csv(result, out);
  CHECK(out.str() == "iteration,value,exploitability\n4,0.5,0.125\n");
}
