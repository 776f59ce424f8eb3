// Randomized tiny scenarios shared by the solver-equivalence suites.
#pragma once

#include <random>
#include <set>

#include "unsg/dynamics.hpp"
#include "unsg/paths.hpp"
#include "unsg/util.hpp"

namespace unsg::testing {

// Random 3x3 single-pursuer game with at least one feasible evader path and a
// walk count small enough for brute-force work. Horizon is 2 or 3.
inline GameConfig random_tiny_scenario(std::mt19937_64& rng, PathSet& paths_out) {
  for (;;) {
    GameConfig config;
    config.graph = generate_grid(
        {3, 3, 0.55 + 0.45 * unit_double(rng), 0.4 * unit_double(rng), rng()});
    const int exit_count = 1 + static_cast<int>(uniform_index(rng, 2));
    std::set<Vertex> exits;
    while (static_cast<int>(exits.size()) < exit_count) {
      exits.insert(static_cast<Vertex>(uniform_index(rng, 9)));
    }
    config.graph.exits.assign(exits.begin(), exits.end());
    config.pursuer_starts = {static_cast<Vertex>(uniform_index(rng, 9))};
    do {
      config.evader_start = static_cast<Vertex>(uniform_index(rng, 9));
    } while (config.graph.is_exit(config.evader_start));
    config.horizon = 2 + static_cast<int>(uniform_index(rng, 2));
    config.info_case = InfoCase::PursuerSeesEvader;

    if (initial_state(config).terminal()) continue;
    // Walks with max_len = horizon: the exact open-loop strategy space, which
    // makes the path game, the full matrix, and the extensive-form value agree.
    PathSet paths = enumerate_paths(config.graph, config.evader_start, config.horizon,
                                    PathMode::Walks, config.allow_stay);
    if (paths.paths.empty() || paths.paths.size() > 48) continue;
    paths_out = std::move(paths);
    return config;
  }
}

}  // namespace unsg::testing
