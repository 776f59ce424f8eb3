#pragma once

#include <iosfwd>
#include <string>

#include "unsg/evaluation.hpp"

namespace unsg {

// A scenario file: line-structured `key = value` text, `#` comments, unknown
// keys rejected. The graph comes either from a grid spec or from an explicit
// adjacency (semicolon-separated per-vertex neighbor lists).
struct ScenarioFile {
  std::string id = "scenario";

  bool grid = true;
  GridSpec grid_spec;
  std::vector<std::vector<Vertex>> adjacency;
  bool directed = false;

  std::vector<Vertex> exits;
  std::vector<Vertex> pursuer_starts;
  Vertex evader_start = 0;
  int horizon = 6;
  InfoCase info_case = InfoCase::PursuerSeesEvader;
  bool allow_stay = true;
  bool capture_before_escape = true;

  PathMode path_mode = PathMode::Simple;
  int max_len = 6;
  std::size_t path_cap = kDefaultPathCap;

  double eps = 1e-4;
  std::size_t max_iters = 100;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;

  bool operator==(const ScenarioFile&) const = default;
};

ScenarioFile parse_scenario(std::istream& in);
ScenarioFile parse_scenario_string(const std::string& text);
std::string serialize_scenario(const ScenarioFile& scenario);

// Builds the graph, applies exits, and validates; throws InvalidScenario
// listing every violation.
GameConfig scenario_config(const ScenarioFile& scenario);

// Enumerates the scenario's evader strategy space per its eval block.
PathSet scenario_paths(const ScenarioFile& scenario, const GameConfig& config);

// Policy files: header lines (kind/keying/missing_key/pursuers) followed by
// one `entry = ... -> move:prob ...` line per observation key.
PursuerPolicy parse_policy(std::istream& in);
std::string serialize_policy(const PursuerPolicy& policy);

struct ResultRow {
  std::string scenario_id;
  std::string solver;
  double value = 0.0;
  double gap = 0.0;  // bound gap (solvers) or stderr (Monte Carlo sweeps)
  double wall_ms = 0.0;
  std::size_t iterations = 0;
};

// `with_wall_time=false` is the benchmark table variant: wall time is the one
// nondeterministic column, and benchmark CSVs must be byte-identical across
// reruns with the same seeds.
std::string result_csv_header(bool with_wall_time);
std::string result_csv_row(const ResultRow& row, bool with_wall_time);

// Shortest-round-trip decimal formatting; serialization and CSV output use
// this so equal doubles always print the same bytes.
std::string format_double(double value);

}  // namespace unsg
