#pragma once

#include <compare>
#include <map>
#include <vector>

#include "unsg/dynamics.hpp"

namespace unsg {

enum class PolicyKind {
  IndependentMarkov,  // one table per pursuer, keyed on that pursuer's own position
  JointMarkov,        // one table keyed on the full pursuer location tuple
};

// What part of the evader's location stream a key carries. CurrentPosition
// and History require an info case that grants the pursuer the evader's
// real-time location. History keying is what best-response policies against
// path mixtures need: the observed prefix, not just the latest vertex.
enum class EvaderKeying { None, CurrentPosition, History };

// What a table lookup does on an absent key. Best-response policies are only
// defined on observation prefixes consistent with the mixture they answer;
// Stay extends them deterministically everywhere else.
enum class MissingKeyRule { Error, Stay };

struct ObsKey {
  std::vector<Vertex> own;          // 1 entry (independent) or pursuer_count (joint)
  std::vector<Vertex> evader_seen;  // empty / current position / full prefix
  int t = 0;

  auto operator<=>(const ObsKey&) const = default;
};

struct VertexDistribution {
  std::vector<Vertex> moves;
  std::vector<double> probs;
  bool operator==(const VertexDistribution&) const = default;
};

struct JointDistribution {
  std::vector<std::vector<Vertex>> moves;
  std::vector<double> probs;
  bool operator==(const JointDistribution&) const = default;
};

// Tabular stochastic pursuer strategy. Each stored distribution sums to one
// and is supported on legal moves only; validate_policy enforces both.
struct PursuerPolicy {
  PolicyKind kind = PolicyKind::IndependentMarkov;
  EvaderKeying keying = EvaderKeying::None;
  MissingKeyRule missing_key = MissingKeyRule::Error;
  std::vector<std::map<ObsKey, VertexDistribution>> per_pursuer;
  std::map<ObsKey, JointDistribution> joint;

  bool operator==(const PursuerPolicy&) const = default;
};

// Structural and legality checks against a config; throws PolicyIncompatible.
void validate_policy(const PursuerPolicy& policy, const GameConfig& config);

// Evader observation component of a key at time t, given the route the evader
// follows. Empty under None keying.
std::vector<Vertex> evader_key_view(EvaderKeying keying, const std::vector<Vertex>& route,
                                    int t);

// Table lookups with the missing-key rule applied.
VertexDistribution pursuer_move_distribution(const PursuerPolicy& policy,
                                             const GameConfig& config, int pursuer_index,
                                             Vertex own, const std::vector<Vertex>& evader_seen,
                                             int t);
JointDistribution joint_move_distribution(const PursuerPolicy& policy,
                                          const GameConfig& config,
                                          const std::vector<Vertex>& pursuer_locs,
                                          const std::vector<Vertex>& evader_seen, int t);

// Uniform-over-legal-moves policy covering every (vertex, t) pair; keying
// None so it is legal under every info case.
PursuerPolicy make_uniform_independent(const GameConfig& config);

// Deterministic policy holding each pursuer at its current vertex for the
// whole horizon (requires allow_stay).
PursuerPolicy make_stay_policy(const GameConfig& config);

}  // namespace unsg
