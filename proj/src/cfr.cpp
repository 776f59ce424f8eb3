#include "unsg/cfr.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace unsg {

namespace {

double terminal_payoff(Status status) {
  return status == Status::EvaderWin ? 0.0 : 1.0;
}

std::vector<double> matched_strategy(const std::vector<double>& regret) {
  std::vector<double> strategy(regret.size());
  double positive = 0.0;
  for (std::size_t a = 0; a < regret.size(); ++a) {
    strategy[a] = std::max(0.0, regret[a]);
    positive += strategy[a];
  }
  if (positive > 0.0) {
    for (double& s : strategy) s /= positive;
  } else {
    std::fill(strategy.begin(), strategy.end(), 1.0 / static_cast<double>(strategy.size()));
  }
  return strategy;
}

struct RegretEntry {
  std::vector<double> regret;
  std::vector<double> strategy_sum;
};

enum class UpdateTarget { Both, Pursuer, Evader };

struct Trainer {
  const GameConfig& config;
  CfrVariant variant;
  std::map<InfoSetKey, RegretEntry> pursuer_table;
  std::map<InfoSetKey, RegretEntry> evader_table;
  double iteration_weight = 1.0;

  std::vector<Vertex> pursuer_history;
  std::vector<Vertex> evader_history;

  RegretEntry& entry(std::map<InfoSetKey, RegretEntry>& table, InfoSetKey&& key,
                     std::size_t actions) {
    auto [it, inserted] = table.try_emplace(std::move(key));
    if (inserted) {
      it->second.regret.assign(actions, 0.0);
      it->second.strategy_sum.assign(actions, 0.0);
    }
    return it->second;
  }

  InfoSetKey pursuer_key(int t) const {
    return {Role::Pursuer, t, pursuer_history,
            config.pursuer_sees_evader() ? evader_history : std::vector<Vertex>{}};
  }
  InfoSetKey evader_key(int t) const {
    return {Role::Evader, t, evader_history,
            config.evader_sees_pursuers() ? pursuer_history : std::vector<Vertex>{}};
  }

  // One full-tree pass. Vanilla updates both players' regrets
  // simultaneously; PlusAveraging runs alternating passes, updating one
  // player per pass. Returns the pursuer value of (t, locs, evader) under
  // the current profile.
  double pass(int t, const std::vector<Vertex>& locs, Vertex evader, double reach_p,
              double reach_e, UpdateTarget target) {
    const Status status = status_of(t, locs, evader, config);
    if (status != Status::Ongoing) return terminal_payoff(status);

    const auto pursuer_moves = joint_moves_from(config, locs);
    const auto evader_moves = legal_moves(config, evader);
    RegretEntry& pe = entry(pursuer_table, pursuer_key(t), pursuer_moves.size());
    RegretEntry& ee = entry(evader_table, evader_key(t), evader_moves.size());
    const auto sp = matched_strategy(pe.regret);
    const auto se = matched_strategy(ee.regret);

    std::vector<double> pursuer_value(pursuer_moves.size(), 0.0);
    std::vector<double> evader_value(evader_moves.size(), 0.0);
    double value = 0.0;
    for (std::size_t i = 0; i < pursuer_moves.size(); ++i) {
      pursuer_history.insert(pursuer_history.end(), pursuer_moves[i].begin(),
                             pursuer_moves[i].end());
      for (std::size_t j = 0; j < evader_moves.size(); ++j) {
        evader_history.push_back(evader_moves[j]);
        const double u = pass(t + 1, pursuer_moves[i], evader_moves[j], reach_p * sp[i],
                              reach_e * se[j], target);
        evader_history.pop_back();
        pursuer_value[i] += se[j] * u;
        evader_value[j] += sp[i] * u;
        value += sp[i] * se[j] * u;
      }
      pursuer_history.resize(pursuer_history.size() - pursuer_moves[i].size());
    }

    if (target != UpdateTarget::Evader) {
      for (std::size_t i = 0; i < pursuer_moves.size(); ++i) {
        const double regret = reach_e * (pursuer_value[i] - value);
        pe.regret[i] = variant == CfrVariant::PlusAveraging
                           ? std::max(0.0, pe.regret[i] + regret)
                           : pe.regret[i] + regret;
        pe.strategy_sum[i] += iteration_weight * reach_p * sp[i];
      }
    }
    if (target != UpdateTarget::Pursuer) {
      for (std::size_t j = 0; j < evader_moves.size(); ++j) {
        const double regret = reach_p * (value - evader_value[j]);
        ee.regret[j] = variant == CfrVariant::PlusAveraging
                           ? std::max(0.0, ee.regret[j] + regret)
                           : ee.regret[j] + regret;
        ee.strategy_sum[j] += iteration_weight * reach_e * se[j];
      }
    }
    return value;
  }

  CfrProfile average_profile() const {
    CfrProfile profile;
    for (const auto& [key, e] : pursuer_table) {
      auto normalized = e.strategy_sum;
      double sum = 0.0;
      for (double s : normalized) sum += s;
      if (sum > 0.0) {
        for (double& s : normalized) s /= sum;
      } else {
        std::fill(normalized.begin(), normalized.end(),
                  1.0 / static_cast<double>(normalized.size()));
      }
      profile.pursuer.table[key] = std::move(normalized);
    }
    for (const auto& [key, e] : evader_table) {
      auto normalized = e.strategy_sum;
      double sum = 0.0;
      for (double s : normalized) sum += s;
      if (sum > 0.0) {
        for (double& s : normalized) s /= sum;
      } else {
        std::fill(normalized.begin(), normalized.end(),
                  1.0 / static_cast<double>(normalized.size()));
      }
      profile.evader.table[key] = std::move(normalized);
    }
    return profile;
  }
};

std::size_t count_nodes_recursive(const GameConfig& config, int t,
                                  const std::vector<Vertex>& locs, Vertex evader,
                                  std::size_t cap, std::size_t& count) {
  if (++count > cap) {
    throw Error(ErrorCode::TreeTooLarge,
                "game tree exceeds " + std::to_string(cap) + " nodes");
  }
  if (status_of(t, locs, evader, config) != Status::Ongoing) return count;
  for (const auto& move : joint_moves_from(config, locs)) {
    if (++count > cap) {
      throw Error(ErrorCode::TreeTooLarge,
                  "game tree exceeds " + std::to_string(cap) + " nodes");
    }
    for (Vertex e : legal_moves(config, evader)) {
      count_nodes_recursive(config, t + 1, move, e, cap, count);
    }
  }
  return count;
}

const std::vector<double>* lookup(const CfrStrategy& strategy, const InfoSetKey& key) {
  const auto it = strategy.table.find(key);
  return it == strategy.table.end() ? nullptr : &it->second;
}

double profile_value_recursive(const CfrProfile& profile, const GameConfig& config, int t,
                               const std::vector<Vertex>& locs, Vertex evader,
                               std::vector<Vertex>& phist, std::vector<Vertex>& ehist) {
  const Status status = status_of(t, locs, evader, config);
  if (status != Status::Ongoing) return terminal_payoff(status);

  const auto pursuer_moves = joint_moves_from(config, locs);
  const auto evader_moves = legal_moves(config, evader);
  const InfoSetKey pk{Role::Pursuer, t, phist,
                      config.pursuer_sees_evader() ? ehist : std::vector<Vertex>{}};
  const InfoSetKey ek{Role::Evader, t, ehist,
                      config.evader_sees_pursuers() ? phist : std::vector<Vertex>{}};
  const auto* sp = lookup(profile.pursuer, pk);
  const auto* se = lookup(profile.evader, ek);

  double value = 0.0;
  for (std::size_t i = 0; i < pursuer_moves.size(); ++i) {
    const double pi = sp ? (*sp)[i] : 1.0 / pursuer_moves.size();
    if (pi <= 0.0) continue;
    phist.insert(phist.end(), pursuer_moves[i].begin(), pursuer_moves[i].end());
    for (std::size_t j = 0; j < evader_moves.size(); ++j) {
      const double pj = se ? (*se)[j] : 1.0 / evader_moves.size();
      if (pj <= 0.0) continue;
      ehist.push_back(evader_moves[j]);
      value += pi * pj *
               profile_value_recursive(profile, config, t + 1, pursuer_moves[i],
                                       evader_moves[j], phist, ehist);
      ehist.pop_back();
    }
    phist.resize(phist.size() - pursuer_moves[i].size());
  }
  return value;
}

// Explicit tree for best-response traversals: infoset-grouped decisions need
// all member histories visible at once.
struct TreeNode {
  enum Kind : std::uint8_t { PursuerDecision, EvaderDecision, Terminal };
  Kind kind = Terminal;
  double payoff = 0.0;
  int infoset = -1;  // into the per-role infoset lists
  int depth = 0;     // 2t + stage, for deepest-first processing
  std::vector<int> children;
};

struct ExplicitTree {
  std::vector<TreeNode> nodes;
  std::map<InfoSetKey, int> pursuer_infosets;
  std::map<InfoSetKey, int> evader_infosets;
  std::vector<const InfoSetKey*> pursuer_keys;
  std::vector<const InfoSetKey*> evader_keys;
};

struct TreeBuilder {
  const GameConfig& config;
  std::size_t cap;
  ExplicitTree tree;
  std::vector<Vertex> phist;
  std::vector<Vertex> ehist;

  int infoset_id(Role role, int t) {
    auto& map = role == Role::Pursuer ? tree.pursuer_infosets : tree.evader_infosets;
    auto& keys = role == Role::Pursuer ? tree.pursuer_keys : tree.evader_keys;
    InfoSetKey key =
        role == Role::Pursuer
            ? InfoSetKey{Role::Pursuer, t, phist,
                         config.pursuer_sees_evader() ? ehist : std::vector<Vertex>{}}
            : InfoSetKey{Role::Evader, t, ehist,
                         config.evader_sees_pursuers() ? phist : std::vector<Vertex>{}};
    auto [it, inserted] = map.try_emplace(std::move(key), static_cast<int>(map.size()));
    if (inserted) keys.push_back(&it->first);
    return it->second;
  }

  int add_node(TreeNode&& node) {
    if (tree.nodes.size() >= cap) {
      throw Error(ErrorCode::TreeTooLarge,
                  "game tree exceeds " + std::to_string(cap) + " nodes");
    }
    tree.nodes.push_back(std::move(node));
    return static_cast<int>(tree.nodes.size() - 1);
  }

  int build(int t, const std::vector<Vertex>& locs, Vertex evader) {
    const Status status = status_of(t, locs, evader, config);
    if (status != Status::Ongoing) {
      return add_node({TreeNode::Terminal, terminal_payoff(status), -1, 2 * t, {}});
    }
    const int id =
        add_node({TreeNode::PursuerDecision, 0.0, infoset_id(Role::Pursuer, t), 2 * t, {}});
    for (const auto& move : joint_moves_from(config, locs)) {
      phist.insert(phist.end(), move.begin(), move.end());
      const int evader_node = add_node(
          {TreeNode::EvaderDecision, 0.0, infoset_id(Role::Evader, t), 2 * t + 1, {}});
      for (Vertex e : legal_moves(config, evader)) {
        ehist.push_back(e);
        const int child = build(t + 1, move, e);
        ehist.pop_back();
        tree.nodes[evader_node].children.push_back(child);
      }
      phist.resize(phist.size() - move.size());
      tree.nodes[id].children.push_back(evader_node);
    }
    return id;
  }
};

// Note: the evader decision node's infoset is keyed before the pursuer's
// pending move is appended to any history, which is exactly the turn-based
// conversion rule.

double best_response_value(const ExplicitTree& tree, const CfrProfile& profile,
                           Role br_role) {
  const std::size_t n = tree.nodes.size();
  std::vector<double> reach(n, 0.0);
  reach[0] = 1.0;  // root is node 0 by construction order? ensured below

  // Opponent reach: propagate from each node to its children, weighting only
  // the opponent's decisions.
  // Children always have larger ids than their parent is not guaranteed by
  // construction order, so process via explicit DFS.
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const TreeNode& node = tree.nodes[id];
    const bool br_moves = (node.kind == TreeNode::PursuerDecision && br_role == Role::Pursuer) ||
                          (node.kind == TreeNode::EvaderDecision && br_role == Role::Evader);
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      double p = 1.0;
      if (!br_moves && node.kind != TreeNode::Terminal) {
        const auto& keys =
            node.kind == TreeNode::PursuerDecision ? tree.pursuer_keys : tree.evader_keys;
        const auto& strategy =
            node.kind == TreeNode::PursuerDecision ? profile.pursuer : profile.evader;
        const auto* dist = lookup(strategy, *keys[node.infoset]);
        p = dist ? (*dist)[a] : 1.0 / node.children.size();
      }
      reach[node.children[a]] = reach[id] * p;
      stack.push_back(node.children[a]);
    }
  }

  // Deepest-first value computation with per-infoset argmax for the
  // best-responding player.
  std::vector<std::vector<int>> by_depth;
  for (std::size_t id = 0; id < n; ++id) {
    const int d = tree.nodes[id].depth;
    if (by_depth.size() <= static_cast<std::size_t>(d)) by_depth.resize(d + 1);
    by_depth[d].push_back(static_cast<int>(id));
  }

  std::vector<double> value(n, 0.0);
  const bool maximize = br_role == Role::Pursuer;
  for (int d = static_cast<int>(by_depth.size()) - 1; d >= 0; --d) {
    // Non-BR nodes and terminals resolve pointwise.
    std::map<int, std::vector<int>> br_nodes_by_infoset;
    for (int id : by_depth[d]) {
      const TreeNode& node = tree.nodes[id];
      if (node.kind == TreeNode::Terminal) {
        value[id] = node.payoff;
        continue;
      }
      const bool br_moves =
          (node.kind == TreeNode::PursuerDecision && br_role == Role::Pursuer) ||
          (node.kind == TreeNode::EvaderDecision && br_role == Role::Evader);
      if (br_moves) {
        br_nodes_by_infoset[node.infoset].push_back(id);
        continue;
      }
      const auto& keys =
          node.kind == TreeNode::PursuerDecision ? tree.pursuer_keys : tree.evader_keys;
      const auto& strategy =
          node.kind == TreeNode::PursuerDecision ? profile.pursuer : profile.evader;
      const auto* dist = lookup(strategy, *keys[node.infoset]);
      double v = 0.0;
      for (std::size_t a = 0; a < node.children.size(); ++a) {
        v += (dist ? (*dist)[a] : 1.0 / node.children.size()) * value[node.children[a]];
      }
      value[id] = v;
    }
    for (const auto& [infoset, members] : br_nodes_by_infoset) {
      const std::size_t actions = tree.nodes[members.front()].children.size();
      std::size_t best_action = 0;
      double best_score = maximize ? -1e300 : 1e300;
      for (std::size_t a = 0; a < actions; ++a) {
        double score = 0.0;
        for (int id : members) score += reach[id] * value[tree.nodes[id].children[a]];
        if (maximize ? score > best_score : score < best_score) {
          best_score = score;
          best_action = a;
        }
      }
      for (int id : members) value[id] = value[tree.nodes[id].children[best_action]];
    }
  }
  return value[0];
}

ExplicitTree build_explicit_tree(const GameConfig& config, std::size_t cap) {
  TreeBuilder builder{config, cap, {}, {}, {}};
  builder.phist = config.pursuer_starts;
  builder.ehist = {config.evader_start};
  builder.tree.nodes.reserve(1024);
  builder.build(0, config.pursuer_starts, config.evader_start);
  return std::move(builder.tree);
}

}  // namespace

std::size_t count_tree_nodes(const GameConfig& config, std::size_t cap) {
  std::size_t count = 0;
  count_nodes_recursive(config, 0, config.pursuer_starts, config.evader_start, cap, count);
  return count;
}

double profile_value(const CfrProfile& profile, const GameConfig& config) {
  std::vector<Vertex> phist = config.pursuer_starts;
  std::vector<Vertex> ehist{config.evader_start};
  return profile_value_recursive(profile, config, 0, config.pursuer_starts,
                                 config.evader_start, phist, ehist);
}

double exploitability(const CfrProfile& profile, const GameConfig& config,
                      std::size_t node_cap) {
  const ExplicitTree tree = build_explicit_tree(config, node_cap);
  const double pursuer_br = best_response_value(tree, profile, Role::Pursuer);
  const double evader_br = best_response_value(tree, profile, Role::Evader);
  return pursuer_br - evader_br;
}

CfrResult cfr_solve(const GameConfig& config, const CfrParams& params) {
  {
    const auto violations = validate_scenario(config.graph, config);
    if (!violations.empty()) {
      throw Error(ErrorCode::InvalidScenario, violations.front().message);
    }
  }
  count_tree_nodes(config, params.node_cap);

  Trainer trainer{config, params.variant, {}, {}, 1.0, config.pursuer_starts,
                  {config.evader_start}};

  CfrResult result;
  std::size_t next_check = 1;
  for (std::size_t it = 1; it <= params.iterations; ++it) {
    trainer.iteration_weight =
        params.variant == CfrVariant::PlusAveraging ? static_cast<double>(it) : 1.0;
    auto run_pass = [&](UpdateTarget target) {
      trainer.pursuer_history = config.pursuer_starts;
      trainer.evader_history = {config.evader_start};
      trainer.pass(0, config.pursuer_starts, config.evader_start, 1.0, 1.0, target);
    };
    if (params.variant == CfrVariant::PlusAveraging) {
      run_pass(UpdateTarget::Pursuer);
      run_pass(UpdateTarget::Evader);
    } else {
      run_pass(UpdateTarget::Both);
    }
    result.iterations_run = it;

    const bool scheduled = params.check_interval > 0 ? it % params.check_interval == 0
                                                     : it == next_check;
    if (scheduled || it == params.iterations) {
      if (it == next_check) next_check *= 2;
      const CfrProfile profile = trainer.average_profile();
      const double value = profile_value(profile, config);
      const double gap = exploitability(profile, config, params.node_cap);
      result.log.push_back({it, value, gap});
      result.final_exploitability = gap;
      if (params.stop_exploitability > 0.0 && gap <= params.stop_exploitability) break;
    }
  }

  result.profile = trainer.average_profile();
  result.value = profile_value(result.profile, config);
  return result;
}

void write_cfr_log_csv(const CfrResult& result, std::ostream& out) {
  out << "iteration,value,exploitability\n";
  for (const auto& row : result.log) {
    out << row.iteration << ',' << row.value << ',' << row.exploitability << '\n';
  }
}

}  // namespace unsg
