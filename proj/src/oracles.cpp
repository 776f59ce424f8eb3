#include "unsg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "unsg/util.hpp"

namespace unsg {

namespace {

void check_weights(std::size_t support_size, const std::vector<double>& weights) {
  if (weights.size() != support_size) {
    throw Error(ErrorCode::WeightMismatch, "weights do not match support");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error(ErrorCode::WeightMismatch, "negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::WeightMismatch, "weights sum to " + std::to_string(sum));
  }
}

}  // namespace

std::vector<Vertex> PrefixTree::prefix_of(int node_id) const {
  std::vector<Vertex> prefix;
  for (int id = node_id; id >= 0; id = parents_[id]) prefix.push_back(nodes[id].vertex);
  std::reverse(prefix.begin(), prefix.end());
  return prefix;
}

PrefixTree build_prefix_tree(const std::vector<EvaderPath>& paths,
                             const std::vector<double>& weights) {
  check_weights(paths.size(), weights);
  PrefixTree tree;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    if (weights[p] <= 0.0) continue;
    const EvaderPath& path = paths[p];
    if (path.empty()) throw Error(ErrorCode::WeightMismatch, "empty path in mixture");
    if (tree.nodes.empty()) {
      tree.nodes.push_back({path.front(), 0, 0.0, false, {}});
      tree.parents_.push_back(-1);
    }
    if (tree.nodes.front().vertex != path.front()) {
      throw Error(ErrorCode::WeightMismatch, "paths in a mixture must share their start");
    }
    int node = 0;
    tree.nodes[0].weight += weights[p];
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (tree.nodes[node].terminal) {
        throw Error(ErrorCode::WeightMismatch, "a path extends past another path's end");
      }
      const Vertex v = path[i];
      // Copy out the child list: growing tree.nodes invalidates references
      // into it.
      std::vector<int> children = tree.nodes[node].children;
      auto it = std::find_if(children.begin(), children.end(),
                             [&](int c) { return tree.nodes[c].vertex == v; });
      int child;
      if (it == children.end()) {
        child = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({v, static_cast<int>(i), 0.0, false, {}});
        tree.parents_.push_back(node);
        children.push_back(child);
        std::sort(children.begin(), children.end(),
                  [&](int a, int b) { return tree.nodes[a].vertex < tree.nodes[b].vertex; });
        tree.nodes[node].children = children;
      } else {
        child = *it;
      }
      tree.nodes[child].weight += weights[p];
      node = child;
    }
    if (!tree.nodes[node].children.empty()) {
      throw Error(ErrorCode::WeightMismatch, "a path ends inside another path");
    }
    tree.nodes[node].terminal = true;
  }
  if (tree.nodes.empty()) {
    throw Error(ErrorCode::WeightMismatch, "mixture has no positive-weight path");
  }
  return tree;
}

std::pair<EvaderPath, double> evader_best_response(const PolicyMixture& mixture,
                                                   const PathSet& path_set,
                                                   const GameConfig& config,
                                                   const OracleParams& params) {
  if (path_set.paths.empty()) throw Error(ErrorCode::EmptyPathSet, "no candidate paths");
  check_weights(mixture.support.size(), mixture.weights);
  if (mixture.support.empty()) throw Error(ErrorCode::WeightMismatch, "empty mixture");

  std::vector<double> values(path_set.paths.size(), 0.0);
  parallel_for(path_set.paths.size(), [&](std::size_t j) {
    double value = 0.0;
    for (std::size_t k = 0; k < mixture.support.size(); ++k) {
      if (mixture.weights[k] <= 0.0) continue;
      value += mixture.weights[k] *
               catch_probability_exact(mixture.support[k], path_set.paths[j], config,
                                       params.eval);
    }
    values[j] = value;
  });

  std::size_t argmin = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] < values[argmin]) argmin = j;  // lexicographic order: first wins ties
  }
  return {path_set.paths[argmin], values[argmin]};
}

namespace {

// Backward induction state: which prefix node the observed evader history
// matches, and where the pursuers stand.
struct Induction {
  const GameConfig& config;
  const PrefixTree& tree;
  std::size_t state_cap;
  std::map<std::pair<int, std::vector<Vertex>>, double> memo;
  PursuerPolicy policy;

  double value(int node_id, const std::vector<Vertex>& locs) {
    const PrefixNode& node = tree.nodes[node_id];
    const Status status = status_of(node.depth, locs, node.vertex, config);
    if (status != Status::Ongoing) {
      return status == Status::EvaderWin ? 0.0 : 1.0;
    }

    const auto key = std::make_pair(node_id, locs);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    if (memo.size() >= state_cap) {
      throw Error(ErrorCode::StateSpaceTooLarge,
                  "backward induction exceeds " + std::to_string(state_cap) + " states");
    }

    double best = -1.0;
    std::vector<Vertex> best_move;
    for (const auto& move : joint_moves_from(config, locs)) {
      double val = 0.0;
      for (int child : node.children) {
        val += tree.nodes[child].weight / node.weight * value(child, move);
      }
      if (val > best) {
        best = val;
        best_move = move;
      }
    }
    memo[key] = best;
    policy.joint[ObsKey{locs, tree.prefix_of(node_id), node.depth}] =
        JointDistribution{{best_move}, {1.0}};
    return best;
  }
};

}  // namespace

std::pair<PursuerPolicy, double> pursuer_best_response(const PathMixture& mixture,
                                                       const GameConfig& config,
                                                       const OracleParams& params) {
  if (!config.pursuer_sees_evader()) {
    throw Error(ErrorCode::InfoCaseUnsupported,
                "exact pursuer best response needs the evader's real-time location");
  }
  check_weights(mixture.support.size(), mixture.weights);
  for (std::size_t k = 0; k < mixture.support.size(); ++k) {
    if (mixture.weights[k] <= 0.0) continue;
    if (mixture.support[k].front() != config.evader_start) {
      throw Error(ErrorCode::WeightMismatch, "path does not start at the evader's start");
    }
    validate_path(config.graph, mixture.support[k], PathMode::Walks, config.allow_stay);
  }

  const PrefixTree tree = build_prefix_tree(mixture.support, mixture.weights);
  Induction induction{config, tree, params.state_cap, {}, {}};
  induction.policy.kind = PolicyKind::JointMarkov;
  induction.policy.keying = EvaderKeying::History;
  induction.policy.missing_key = MissingKeyRule::Stay;

  const double root_value = induction.value(0, config.pursuer_starts);
  return {std::move(induction.policy), root_value};
}

}  // namespace unsg
