#include "unsg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace unsg {

namespace {

constexpr double kProbTolerance = 1e-9;

void check_distribution(const std::vector<double>& probs, std::size_t arity) {
  if (probs.size() != arity) {
    throw Error(ErrorCode::PolicyIncompatible, "distribution arity mismatch");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw Error(ErrorCode::PolicyIncompatible, "negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    throw Error(ErrorCode::PolicyIncompatible,
                "probabilities sum to " + std::to_string(sum));
  }
}

bool is_legal_move(const GameConfig& config, Vertex from, Vertex to) {
  const auto moves = legal_moves(config, from);
  return std::find(moves.begin(), moves.end(), to) != moves.end();
}

Vertex stay_or_first(const GameConfig& config, Vertex v) {
  const auto moves = legal_moves(config, v);
  if (config.allow_stay) return v;
  return moves.front();
}

}  // namespace

void validate_policy(const PursuerPolicy& policy, const GameConfig& config) {
  const int n = config.pursuer_count();
  const bool sees = config.pursuer_sees_evader();
  if (policy.keying != EvaderKeying::None && !sees) {
    throw Error(ErrorCode::PolicyIncompatible,
                "policy conditions on the evader's location but the info case hides it");
  }
  if (policy.kind == PolicyKind::IndependentMarkov) {
    if (policy.keying == EvaderKeying::History) {
      throw Error(ErrorCode::PolicyIncompatible,
                  "history keying is only defined for joint policies");
    }
    if (static_cast<int>(policy.per_pursuer.size()) != n) {
      throw Error(ErrorCode::PolicyIncompatible, "one table per pursuer required");
    }
    for (const auto& table : policy.per_pursuer) {
      for (const auto& [key, dist] : table) {
        if (key.own.size() != 1) {
          throw Error(ErrorCode::PolicyIncompatible,
                      "independent policies key on one own position");
        }
        check_distribution(dist.probs, dist.moves.size());
        for (Vertex m : dist.moves) {
          if (!is_legal_move(config, key.own[0], m)) {
            throw Error(ErrorCode::PolicyIncompatible,
                        "support contains illegal move " + std::to_string(m));
          }
        }
      }
    }
  } else {
    for (const auto& [key, dist] : policy.joint) {
      if (static_cast<int>(key.own.size()) != n) {
        throw Error(ErrorCode::PolicyIncompatible, "joint key arity mismatch");
      }
      check_distribution(dist.probs, dist.moves.size());
      for (const auto& move : dist.moves) {
        if (static_cast<int>(move.size()) != n) {
          throw Error(ErrorCode::PolicyIncompatible, "joint move arity mismatch");
        }
        for (int i = 0; i < n; ++i) {
          if (!is_legal_move(config, key.own[i], move[i])) {
            throw Error(ErrorCode::PolicyIncompatible,
                        "support contains illegal move " + std::to_string(move[i]));
          }
        }
      }
    }
  }
}

std::vector<Vertex> evader_key_view(EvaderKeying keying, const std::vector<Vertex>& route,
                                    int t) {
  switch (keying) {
    case EvaderKeying::None:
      return {};
    case EvaderKeying::CurrentPosition:
      return {route[t]};
    case EvaderKeying::History:
      return {route.begin(), route.begin() + t + 1};
  }
  return {};
}

VertexDistribution pursuer_move_distribution(const PursuerPolicy& policy,
                                             const GameConfig& config, int pursuer_index,
                                             Vertex own, const std::vector<Vertex>& evader_seen,
                                             int t) {
  const auto& table = policy.per_pursuer.at(pursuer_index);
  const auto it = table.find(ObsKey{{own}, evader_seen, t});
  if (it != table.end()) return it->second;
  if (policy.missing_key == MissingKeyRule::Stay) {
    return {{stay_or_first(config, own)}, {1.0}};
  }
  throw Error(ErrorCode::PolicyIncompatible,
              "no entry for pursuer " + std::to_string(pursuer_index) + " at vertex " +
                  std::to_string(own) + ", t=" + std::to_string(t));
}

JointDistribution joint_move_distribution(const PursuerPolicy& policy,
                                          const GameConfig& config,
                                          const std::vector<Vertex>& pursuer_locs,
                                          const std::vector<Vertex>& evader_seen, int t) {
  const auto it = policy.joint.find(ObsKey{pursuer_locs, evader_seen, t});
  if (it != policy.joint.end()) return it->second;
  if (policy.missing_key == MissingKeyRule::Stay) {
    std::vector<Vertex> move(pursuer_locs.size());
    for (std::size_t i = 0; i < pursuer_locs.size(); ++i) {
      move[i] = stay_or_first(config, pursuer_locs[i]);
    }
    return {{move}, {1.0}};
  }
  throw Error(ErrorCode::PolicyIncompatible, "no joint entry at t=" + std::to_string(t));
}

PursuerPolicy make_uniform_independent(const GameConfig& config) {
  PursuerPolicy policy;
  policy.kind = PolicyKind::IndependentMarkov;
  policy.keying = EvaderKeying::None;
  policy.per_pursuer.resize(config.pursuer_count());
  for (auto& table : policy.per_pursuer) {
    for (Vertex v = 0; v < config.graph.vertex_count; ++v) {
      const auto moves = legal_moves(config, v);
      VertexDistribution dist{moves,
                              std::vector<double>(moves.size(), 1.0 / moves.size())};
      for (int t = 0; t < config.horizon; ++t) {
        table[ObsKey{{v}, {}, t}] = dist;
      }
    }
  }
  return policy;
}

PursuerPolicy make_stay_policy(const GameConfig& config) {
  if (!config.allow_stay) {
    throw Error(ErrorCode::PolicyIncompatible, "stay policy requires allow_stay");
  }
  PursuerPolicy policy;
  policy.kind = PolicyKind::IndependentMarkov;
  policy.keying = EvaderKeying::None;
  policy.per_pursuer.resize(config.pursuer_count());
  for (auto& table : policy.per_pursuer) {
    for (Vertex v = 0; v < config.graph.vertex_count; ++v) {
      for (int t = 0; t < config.horizon; ++t) {
        table[ObsKey{{v}, {}, t}] = VertexDistribution{{v}, {1.0}};
      }
    }
  }
  return policy;
}

}  // namespace unsg
