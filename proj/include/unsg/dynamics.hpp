#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unsg/graph.hpp"

namespace unsg {

// Who receives the opponent's real-time locations.
enum class InfoCase {
  EvaderSeesPursuers,
  PursuerSeesEvader,
  BothSee,
  NeitherSees,
};

enum class Role { Pursuer, Evader };

enum class Status {
  Ongoing,
  PursuerWinCapture,
  PursuerWinTimeout,
  EvaderWin,
};

struct GameConfig {
  Graph graph;
  std::vector<Vertex> pursuer_starts;
  Vertex evader_start = 0;
  int horizon = 1;  // T
  InfoCase info_case = InfoCase::PursuerSeesEvader;
  bool allow_stay = true;
  // Simultaneous arrival on an exit counts as capture when true (default);
  // pursuers parked on an exit then block it.
  bool capture_before_escape = true;

  int pursuer_count() const { return static_cast<int>(pursuer_starts.size()); }
  bool pursuer_sees_evader() const {
    return info_case == InfoCase::PursuerSeesEvader || info_case == InfoCase::BothSee;
  }
  bool evader_sees_pursuers() const {
    return info_case == InfoCase::EvaderSeesPursuers || info_case == InfoCase::BothSee;
  }
};

struct GameState {
  int t = 0;
  std::vector<Vertex> pursuer_locs;
  Vertex evader_loc = 0;
  Status status = Status::Ongoing;

  bool terminal() const { return status != Status::Ongoing; }
};

// What one side can see at a state: own positions always, opponent positions
// only when the info case grants them.
struct Observation {
  Role role = Role::Pursuer;
  std::vector<Vertex> own;
  std::optional<std::vector<Vertex>> opponent;
  int t = 0;
  int horizon = 0;
};

struct Violation {
  std::string code;
  std::string message;
};

// Returns every problem found (positions out of range, no exits,
// horizon < 1), not just the first; empty means the scenario is playable.
std::vector<Violation> validate_scenario(const Graph& graph, const GameConfig& config);

// Movement choices actually available to an agent at v: neighbors() plus the
// forced-stay rule for vertices with otherwise empty move sets.
std::vector<Vertex> legal_moves(const GameConfig& config, Vertex v);

// Termination classification for arbitrary positions at time t: capture if
// any pursuer shares the evader's vertex (ordering against simultaneous exit
// arrival per capture_before_escape), else escape on an exit, else timeout at
// t = horizon.
Status status_of(int t, const std::vector<Vertex>& pursuer_locs, Vertex evader_loc,
                 const GameConfig& config);

// Cartesian product of per-pursuer legal moves from the given locations, in
// nested enumeration order (stay first when allowed).
std::vector<std::vector<Vertex>> joint_moves_from(const GameConfig& config,
                                                  const std::vector<Vertex>& locs);

// t=0 state with the termination check already applied (a pursuer sharing the
// evader's start captures immediately; an evader starting on an unblocked
// exit has escaped).
GameState initial_state(const GameConfig& config);

// All joint pursuer moves: Cartesian product of per-pursuer legal moves, in
// nested enumeration order (stay first when allowed). Throws GameOver on a
// terminal state. Distinct pursuers may pick the same target vertex.
std::vector<std::vector<Vertex>> pursuer_joint_actions(const GameState& state,
                                                       const GameConfig& config);
std::vector<Vertex> evader_actions(const GameState& state, const GameConfig& config);

// Simultaneous transition. Both moves must be legal for the moving agents;
// the returned state carries the updated termination status.
GameState step(const GameState& state, const std::vector<Vertex>& pursuer_move,
               Vertex evader_move, const GameConfig& config);

Observation observe(const GameState& state, Role role, const GameConfig& config);

// 1 when the pursuers win (capture or timeout), 0 when the evader escapes.
// The evader's payoff is the negation and is never stored separately.
double pursuer_payoff(const GameState& state);

const char* status_name(Status status);
const char* info_case_name(InfoCase info_case);
std::optional<InfoCase> info_case_from_name(const std::string& name);

}  // namespace unsg
