#include "unsg/bench.hpp"

namespace unsg {

ScenarioFile bundled_scenario(const std::string& name) {
  ScenarioFile s;
  s.id = name;
  if (name == "easy") {
    // 3x3 full grid, exits at the four corners, one pursuer parked on each.
    s.grid_spec = {3, 3, 1.0, 0.0, 7};
    s.exits = {0, 2, 6, 8};
    s.pursuer_starts = {0, 2, 6, 8};
    s.evader_start = 4;
    s.horizon = 4;
    s.max_len = 4;
    s.max_iters = 50;
    return s;
  }
  if (name == "hard") {
    // 2x2 grid with both diagonals: the evader is adjacent to both exits, the
    // pursuer is adjacent to both exits, and nobody can cover both at once.
    s.grid_spec = {2, 2, 1.0, 1.0, 3};
    s.exits = {0, 3};
    s.pursuer_starts = {2};
    s.evader_start = 1;
    s.horizon = 3;
    s.max_len = 3;
    s.max_iters = 50;
    return s;
  }
  if (name == "sweep7x7") {
    // Full 7x7 grid, exits at the four corners, evader in the center.
    s.grid_spec = {7, 7, 1.0, 0.0, 17};
    s.exits = {0, 6, 42, 48};
    s.pursuer_starts = {10, 16, 32, 38};
    s.evader_start = 24;
    s.horizon = 12;
    s.max_len = 12;
    return s;
  }
  throw Error(ErrorCode::ParseError, "unknown bundled scenario '" + name + "'");
}

std::vector<std::string> bench_scenario_names() { return {"easy", "hard"}; }

std::vector<std::string> bench_solvers(const std::string& name) {
  if (name == "easy") return {"do"};
  if (name == "hard") return {"do", "cfr"};
  throw Error(ErrorCode::ParseError, "unknown bundled scenario '" + name + "'");
}

}  // namespace unsg
