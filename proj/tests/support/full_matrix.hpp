// Test-side oracles: exhaustive equilibrium computation for tiny games.
//
// The pursuer's deterministic prefix-keyed policies are enumerated indirectly
// through the payoff rows they can realize against a fixed path set. A policy
// labels each (prefix-tree node, pursuer tuple) state with a joint move; its
// payoff row is which paths end captured. The achievable-row set is built
// bottom-up over the tree, which dedupes policies with identical payoffs and
// keeps the enumeration tractable on 3x3 games.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "unsg/meta.hpp"

namespace unsg::testing {

struct FullMatrixResult {
  PayoffMatrix matrix;  // distinct achievable rows x paths
  double value = 0.0;
};

class AchievableRows {
 public:
  using Mask = std::vector<char>;  // caught flag per global path index

  AchievableRows(const GameConfig& config, const PathSet& paths, std::size_t row_cap)
      : config_(config), paths_(paths), row_cap_(row_cap) {
    std::vector<double> uniform(paths.paths.size(),
                                1.0 / static_cast<double>(paths.paths.size()));
    tree_ = build_prefix_tree(paths.paths, uniform);
    through_.resize(tree_.nodes.size());
    for (std::size_t j = 0; j < paths.paths.size(); ++j) {
      int node = 0;
      through_[0].push_back(j);
      for (std::size_t i = 1; i < paths.paths[j].size(); ++i) {
        for (int child : tree_.nodes[node].children) {
          if (tree_.nodes[child].vertex == paths.paths[j][i]) {
            node = child;
            break;
          }
        }
        through_[node].push_back(j);
      }
    }
  }

  // Every payoff row some deterministic prefix-keyed policy can realize.
  // nullopt when the enumeration exceeds the row cap.
  std::optional<std::set<Mask>> rows() {
    overflow_ = false;
    const auto result = states(0, config_.pursuer_starts);
    if (overflow_) return std::nullopt;
    return result;
  }

 private:
  std::set<Mask> states(int node_id, const std::vector<Vertex>& locs) {
    const auto key = std::make_pair(node_id, locs);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    const PrefixNode& node = tree_.nodes[node_id];
    const Status status = status_of(node.depth, locs, node.vertex, config_);
    std::set<Mask> result;
    if (status != Status::Ongoing) {
      Mask mask(paths_.paths.size(), 0);
      const char caught = status == Status::EvaderWin ? 0 : 1;
      for (std::size_t j : through_[node_id]) mask[j] = caught;
      result.insert(std::move(mask));
    } else {
      for (const auto& move : joint_moves_from(config_, locs)) {
        // combine children independently: one sub-policy per child subtree
        std::set<Mask> combos{Mask(paths_.paths.size(), 0)};
        for (int child : tree_.nodes[node_id].children) {
          const auto child_rows = states(child, move);
          std::set<Mask> grown;
          for (const Mask& base : combos) {
            for (const Mask& add : child_rows) {
              Mask merged = base;
              for (std::size_t j : through_[child]) merged[j] = add[j];
              grown.insert(std::move(merged));
              if (grown.size() > row_cap_) {
                overflow_ = true;
                return {};
              }
            }
          }
          combos = std::move(grown);
        }
        for (const Mask& mask : combos) {
          result.insert(mask);
          if (result.size() > row_cap_) {
            overflow_ = true;
            return {};
          }
        }
      }
    }
    memo_[key] = result;
    return result;
  }

  const GameConfig& config_;
  const PathSet& paths_;
  std::size_t row_cap_;
  PrefixTree tree_;
  std::vector<std::vector<std::size_t>> through_;
  std::map<std::pair<int, std::vector<Vertex>>, std::set<Mask>> memo_;
  bool overflow_ = false;
};

// Exact value of the full game (all deterministic prefix-keyed pursuer
// policies x all paths) via the achievable-row matrix, solved to meta_eps.
// nullopt when the row enumeration is too large for a brute-force check.
inline std::optional<FullMatrixResult> brute_force_full_matrix(
    const GameConfig& config, const PathSet& paths, std::size_t row_cap = 20000,
    double meta_eps = 1e-6) {
  AchievableRows enumerator(config, paths, row_cap);
  const auto rows = enumerator.rows();
  if (!rows) return std::nullopt;

  FullMatrixResult result;
  for (const auto& mask : *rows) {
    std::vector<double> row(mask.size());
    for (std::size_t j = 0; j < mask.size(); ++j) row[j] = mask[j] ? 1.0 : 0.0;
    result.matrix = extend_with_row(result.matrix, row);
  }
  const MatrixSolution solution = solve_matrix_zero_sum(result.matrix, meta_eps, 40'000'000);
  result.value = solution.value;
  return result;
}

}  // namespace unsg::testing
