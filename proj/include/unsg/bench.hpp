#pragma once

#include "unsg/scenario.hpp"

namespace unsg {

// Bundled benchmark games with brute-force-verified values:
//   easy    — pursuers start on every exit with stay allowed; certain capture,
//             game value 1.
//   hard    — the evader sits one step from two exits and a single pursuer can
//             cover exactly one of them in time; game value 0.5.
//   sweep7x7 — full 7x7 grid with four exits; the worst-case sweep stress
//             scenario (evaluation only, not part of the solve benchmarks).
ScenarioFile bundled_scenario(const std::string& name);

// Scenario ids cmd_bench runs, in output order.
std::vector<std::string> bench_scenario_names();

// Solvers run per benchmark scenario ("do", "cfr"). CFR is omitted where the
// joint-action tree is out of tabular reach.
std::vector<std::string> bench_solvers(const std::string& name);

}  // namespace unsg
