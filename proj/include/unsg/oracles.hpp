#pragma once

#include "unsg/evaluation.hpp"

namespace unsg {

// Mixed strategies over the two pure-strategy spaces the restricted game is
// built from. Weights are nonnegative and sum to one (1e-9 tolerance).
struct PolicyMixture {
  std::vector<PursuerPolicy> support;
  std::vector<double> weights;
};

struct PathMixture {
  std::vector<EvaderPath> support;
  std::vector<double> weights;
};

// Merged tree of path prefixes with accumulated weights. Against a path
// mixture the pursuer's belief about the future depends on the whole observed
// prefix, not the current vertex; each node is exactly that sufficient
// statistic. Capture ends the recursion, so uncaptured branches carry the
// correct conditional weights without explicit posterior updates.
struct PrefixNode {
  Vertex vertex = 0;
  int depth = 0;
  double weight = 0.0;
  bool terminal = false;          // prefix equals a full path (an exit vertex)
  std::vector<int> children;      // node ids, ordered by child vertex
};

struct PrefixTree {
  std::vector<PrefixNode> nodes;  // node 0 is the root (evader start, depth 0)

  // Evader vertex sequence from the root to the node, inclusive.
  std::vector<Vertex> prefix_of(int node_id) const;

 private:
  friend PrefixTree build_prefix_tree(const std::vector<EvaderPath>& paths,
                                      const std::vector<double>& weights);
  std::vector<int> parents_;
};

// Zero-weight paths are dropped; duplicate paths merge with summed weight.
// Throws WeightMismatch on shape or normalization problems.
PrefixTree build_prefix_tree(const std::vector<EvaderPath>& paths,
                             const std::vector<double>& weights);

struct OracleParams {
  // Bound on distinct (prefix node, pursuer tuple) states in the backward
  // induction before it refuses with StateSpaceTooLarge.
  std::size_t state_cap = std::size_t(1) << 24;
  EvalParams eval;
};

// Best path against a pursuer mixture: argmin over the path set of the
// mixture-weighted exact catch probability, ties to the lexicographically
// smallest path. Returns the path and its value.
std::pair<EvaderPath, double> evader_best_response(const PolicyMixture& mixture,
                                                   const PathSet& path_set,
                                                   const GameConfig& config,
                                                   const OracleParams& params = {});

// Exact pursuer best response against a path mixture by backward induction
// over (prefix-tree node, joint pursuer positions). Requires an info case
// that grants the pursuer the evader's real-time location. Returns a
// deterministic JointMarkov policy keyed on (pursuer tuple, observed evader
// prefix, t) — argmax with first-in-enumeration-order tie-break, stay
// fallback off the tree — together with the root value.
std::pair<PursuerPolicy, double> pursuer_best_response(const PathMixture& mixture,
                                                       const GameConfig& config,
                                                       const OracleParams& params = {});

}  // namespace unsg
