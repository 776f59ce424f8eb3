#include "unsg/dynamics.hpp"

#include <algorithm>

namespace unsg {

Status status_of(int t, const std::vector<Vertex>& pursuer_locs, Vertex evader_loc,
                 const GameConfig& config) {
  const bool captured =
      std::find(pursuer_locs.begin(), pursuer_locs.end(), evader_loc) != pursuer_locs.end();
  const bool on_exit = config.graph.is_exit(evader_loc);
  if (captured && on_exit) {
    return config.capture_before_escape ? Status::PursuerWinCapture : Status::EvaderWin;
  }
  if (captured) return Status::PursuerWinCapture;
  if (on_exit) return Status::EvaderWin;
  if (t >= config.horizon) return Status::PursuerWinTimeout;
  return Status::Ongoing;
}

std::vector<Violation> validate_scenario(const Graph& graph, const GameConfig& config) {
  std::vector<Violation> violations;
  auto in_range = [&](Vertex v) { return v >= 0 && v < graph.vertex_count; };

  if (config.pursuer_starts.empty()) {
    violations.push_back({"NoPursuers", "at least one pursuer is required"});
  }
  for (std::size_t i = 0; i < config.pursuer_starts.size(); ++i) {
    if (!in_range(config.pursuer_starts[i])) {
      violations.push_back({"PositionOutOfRange",
                            "pursuer " + std::to_string(i) + " starts at " +
                                std::to_string(config.pursuer_starts[i])});
    }
  }
  if (!in_range(config.evader_start)) {
    violations.push_back(
        {"PositionOutOfRange", "evader starts at " + std::to_string(config.evader_start)});
  }
  if (graph.exits.empty()) {
    violations.push_back({"NoExits", "a playable scenario needs at least one exit"});
  }
  if (config.horizon < 1) {
    violations.push_back({"HorizonTooSmall", "horizon must be >= 1"});
  }
  return violations;
}

std::vector<Vertex> legal_moves(const GameConfig& config, Vertex v) {
  std::vector<Vertex> moves = neighbors(config.graph, v, config.allow_stay);
  if (moves.empty()) moves.push_back(v);  // dead end: forced stay
  return moves;
}

GameState initial_state(const GameConfig& config) {
  const auto violations = validate_scenario(config.graph, config);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidScenario, violations.front().message);
  }
  GameState state;
  state.t = 0;
  state.pursuer_locs = config.pursuer_starts;
  state.evader_loc = config.evader_start;
  state.status = status_of(0, state.pursuer_locs, state.evader_loc, config);
  return state;
}

std::vector<std::vector<Vertex>> joint_moves_from(const GameConfig& config,
                                                  const std::vector<Vertex>& locs) {
  std::vector<std::vector<Vertex>> per_pursuer;
  per_pursuer.reserve(locs.size());
  std::size_t total = 1;
  for (Vertex v : locs) {
    per_pursuer.push_back(legal_moves(config, v));
    total *= per_pursuer.back().size();
  }
  std::vector<std::vector<Vertex>> joint;
  joint.reserve(total);
  std::vector<std::size_t> odo(per_pursuer.size(), 0);
  for (;;) {
    std::vector<Vertex> move(per_pursuer.size());
    for (std::size_t i = 0; i < per_pursuer.size(); ++i) move[i] = per_pursuer[i][odo[i]];
    joint.push_back(std::move(move));
    std::size_t i = per_pursuer.size();
    while (i > 0) {
      --i;
      if (++odo[i] < per_pursuer[i].size()) break;
      odo[i] = 0;
      if (i == 0) return joint;
    }
  }
}

std::vector<std::vector<Vertex>> pursuer_joint_actions(const GameState& state,
                                                       const GameConfig& config) {
  if (state.terminal()) throw Error(ErrorCode::GameOver, "no actions at a terminal state");
  return joint_moves_from(config, state.pursuer_locs);
}

std::vector<Vertex> evader_actions(const GameState& state, const GameConfig& config) {
  if (state.terminal()) throw Error(ErrorCode::GameOver, "no actions at a terminal state");
  return legal_moves(config, state.evader_loc);
}

GameState step(const GameState& state, const std::vector<Vertex>& pursuer_move,
               Vertex evader_move, const GameConfig& config) {
  if (state.terminal()) throw Error(ErrorCode::GameOver, "step on a terminal state");
  if (pursuer_move.size() != state.pursuer_locs.size()) {
    throw Error(ErrorCode::IllegalMove, "joint move arity mismatch");
  }
  for (std::size_t i = 0; i < pursuer_move.size(); ++i) {
    const auto moves = legal_moves(config, state.pursuer_locs[i]);
    if (std::find(moves.begin(), moves.end(), pursuer_move[i]) == moves.end()) {
      throw Error(ErrorCode::IllegalMove,
                  "pursuer " + std::to_string(i) + " cannot move to " +
                      std::to_string(pursuer_move[i]));
    }
  }
  {
    const auto moves = legal_moves(config, state.evader_loc);
    if (std::find(moves.begin(), moves.end(), evader_move) == moves.end()) {
      throw Error(ErrorCode::IllegalMove,
                  "evader cannot move to " + std::to_string(evader_move));
    }
  }

  GameState next;
  next.t = state.t + 1;
  next.pursuer_locs = pursuer_move;
  next.evader_loc = evader_move;
  next.status = status_of(next.t, next.pursuer_locs, next.evader_loc, config);
  return next;
}

Observation observe(const GameState& state, Role role, const GameConfig& config) {
  Observation obs;
  obs.role = role;
  obs.t = state.t;
  obs.horizon = config.horizon;
  if (role == Role::Pursuer) {
    obs.own = state.pursuer_locs;
    if (config.pursuer_sees_evader()) obs.opponent = std::vector<Vertex>{state.evader_loc};
  } else {
    obs.own = {state.evader_loc};
    if (config.evader_sees_pursuers()) obs.opponent = state.pursuer_locs;
  }
  return obs;
}

double pursuer_payoff(const GameState& state) {
  switch (state.status) {
    case Status::Ongoing:
      throw Error(ErrorCode::GameNotOver, "payoff of a non-terminal state");
    case Status::PursuerWinCapture:
    case Status::PursuerWinTimeout:
      return 1.0;
    case Status::EvaderWin:
      return 0.0;
  }
  throw Error(ErrorCode::GameNotOver, "unknown status");
}

const char* status_name(Status status) {
  switch (status) {
    case Status::Ongoing: return "Ongoing";
    case Status::PursuerWinCapture: return "PursuerWinCapture";
    case Status::PursuerWinTimeout: return "PursuerWinTimeout";
    case Status::EvaderWin: return "EvaderWin";
  }
  return "?";
}

const char* info_case_name(InfoCase info_case) {
  switch (info_case) {
    case InfoCase::EvaderSeesPursuers: return "evader_sees_pursuers";
    case InfoCase::PursuerSeesEvader: return "pursuer_sees_evader";
    case InfoCase::BothSee: return "both_see";
    case InfoCase::NeitherSees: return "neither_sees";
  }
  return "?";
}

std::optional<InfoCase> info_case_from_name(const std::string& name) {
  if (name == "evader_sees_pursuers") return InfoCase::EvaderSeesPursuers;
  if (name == "pursuer_sees_evader") return InfoCase::PursuerSeesEvader;
  if (name == "both_see") return InfoCase::BothSee;
  if (name == "neither_sees") return InfoCase::NeitherSees;
  return std::nullopt;
}

}  // namespace unsg
