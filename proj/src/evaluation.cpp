#include "unsg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "unsg/util.hpp"

namespace unsg {

namespace {

void check_path_for_config(const EvaderPath& path, const GameConfig& config) {
  if (path.empty()) throw Error(ErrorCode::IllegalMove, "empty path");
  if (path.front() != config.evader_start) {
    throw Error(ErrorCode::IllegalMove, "path does not start at the evader's start");
  }
  validate_path(config.graph, path, PathMode::Walks, config.allow_stay);
}

// Mass at the evader's vertex at time t is captured mass; it leaves the
// surviving distribution. Arrival on the final (exit) vertex only captures
// when capture precedes escape.
bool capture_applies_at(const EvaderPath& path, int t, const GameConfig& config) {
  const bool at_exit = (t == static_cast<int>(path.size()) - 1);
  return !at_exit || config.capture_before_escape;
}

double factored_catch(const PursuerPolicy& policy, const EvaderPath& path,
                      const GameConfig& config) {
  const int k = static_cast<int>(path.size()) - 1;
  double survival_product = 1.0;
  for (int i = 0; i < config.pursuer_count(); ++i) {
    std::vector<double> occ(config.graph.vertex_count, 0.0);
    occ[config.pursuer_starts[i]] = 1.0;
    if (capture_applies_at(path, 0, config)) occ[path[0]] = 0.0;
    for (int t = 1; t <= k; ++t) {
      std::vector<double> next(config.graph.vertex_count, 0.0);
      const auto seen = evader_key_view(policy.keying, path, t - 1);
      for (Vertex v = 0; v < config.graph.vertex_count; ++v) {
        if (occ[v] <= 0.0) continue;
        const auto dist = pursuer_move_distribution(policy, config, i, v, seen, t - 1);
        for (std::size_t a = 0; a < dist.moves.size(); ++a) {
          next[dist.moves[a]] += occ[v] * dist.probs[a];
        }
      }
      if (capture_applies_at(path, t, config)) next[path[t]] = 0.0;
      occ = std::move(next);
    }
    double survival = 0.0;
    for (double mass : occ) survival += mass;
    survival_product *= survival;
  }
  return 1.0 - survival_product;
}

JointDistribution joint_dist_for(const PursuerPolicy& policy, const GameConfig& config,
                                 const std::vector<Vertex>& locs,
                                 const std::vector<Vertex>& seen, int t) {
  if (policy.kind == PolicyKind::JointMarkov) {
    return joint_move_distribution(policy, config, locs, seen, t);
  }
  // Product of the per-pursuer marginals.
  JointDistribution joint{{{}}, {1.0}};
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const auto dist =
        pursuer_move_distribution(policy, config, static_cast<int>(i), locs[i], seen, t);
    JointDistribution grown;
    grown.moves.reserve(joint.moves.size() * dist.moves.size());
    grown.probs.reserve(joint.probs.size() * dist.probs.size());
    for (std::size_t j = 0; j < joint.moves.size(); ++j) {
      for (std::size_t a = 0; a < dist.moves.size(); ++a) {
        auto move = joint.moves[j];
        move.push_back(dist.moves[a]);
        grown.moves.push_back(std::move(move));
        grown.probs.push_back(joint.probs[j] * dist.probs[a]);
      }
    }
    joint = std::move(grown);
  }
  return joint;
}

double joint_catch(const PursuerPolicy& policy, const EvaderPath& path,
                   const GameConfig& config, const EvalParams& params) {
  const int k = static_cast<int>(path.size()) - 1;
  auto contains = [](const std::vector<Vertex>& locs, Vertex v) {
    return std::find(locs.begin(), locs.end(), v) != locs.end();
  };

  std::map<std::vector<Vertex>, double> occ;
  if (!capture_applies_at(path, 0, config) || !contains(config.pursuer_starts, path[0])) {
    occ[config.pursuer_starts] = 1.0;
  }
  for (int t = 1; t <= k && !occ.empty(); ++t) {
    const auto seen = evader_key_view(policy.keying, path, t - 1);
    std::map<std::vector<Vertex>, double> next;
    for (const auto& [locs, mass] : occ) {
      const auto dist = joint_dist_for(policy, config, locs, seen, t - 1);
      for (std::size_t a = 0; a < dist.moves.size(); ++a) {
        if (capture_applies_at(path, t, config) && contains(dist.moves[a], path[t])) {
          continue;  // captured mass drops out of the surviving distribution
        }
        next[dist.moves[a]] += mass * dist.probs[a];
        if (next.size() > params.joint_state_cap) {
          throw Error(ErrorCode::StateSpaceTooLarge,
                      "joint support exceeds " + std::to_string(params.joint_state_cap));
        }
      }
    }
    occ = std::move(next);
  }
  double survival = 0.0;
  for (const auto& [locs, mass] : occ) survival += mass;
  return 1.0 - survival;
}

}  // namespace

double catch_probability_exact(const PursuerPolicy& policy, const EvaderPath& path,
                               const GameConfig& config, const EvalParams& params) {
  check_path_for_config(path, config);
  const int k = static_cast<int>(path.size()) - 1;
  if (k > config.horizon) return 1.0;  // timeout before the exit: pursuers win
  if (policy.kind == PolicyKind::IndependentMarkov) return factored_catch(policy, path, config);
  return joint_catch(policy, path, config, params);
}

double catch_probability_exact_joint(const PursuerPolicy& policy, const EvaderPath& path,
                                     const GameConfig& config, const EvalParams& params) {
  check_path_for_config(path, config);
  const int k = static_cast<int>(path.size()) - 1;
  if (k > config.horizon) return 1.0;
  return joint_catch(policy, path, config, params);
}

std::pair<double, double> catch_probability_mc(const PursuerPolicy& policy,
                                               const EvaderPath& path,
                                               const GameConfig& config,
                                               std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidScenario, "samples must be >= 1");
  check_path_for_config(path, config);

  std::size_t catches = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    auto rng = derived_rng(seed, s);
    GameState state = initial_state(config);
    while (!state.terminal()) {
      const auto seen = evader_key_view(policy.keying, path, state.t);
      std::vector<Vertex> joint_move(state.pursuer_locs.size());
      if (policy.kind == PolicyKind::IndependentMarkov) {
        for (std::size_t i = 0; i < joint_move.size(); ++i) {
          const auto dist = pursuer_move_distribution(policy, config, static_cast<int>(i),
                                                      state.pursuer_locs[i], seen, state.t);
          joint_move[i] = dist.moves[sample_index(dist.probs, rng)];
        }
      } else {
        const auto dist =
            joint_move_distribution(policy, config, state.pursuer_locs, seen, state.t);
        joint_move = dist.moves[sample_index(dist.probs, rng)];
      }
      state = step(state, joint_move, path[state.t + 1], config);
    }
    if (pursuer_payoff(state) > 0.5) ++catches;
  }
  const double n = static_cast<double>(samples);
  const double mean = static_cast<double>(catches) / n;
  double stderr_value = 0.0;
  if (samples > 1) {
    const double sample_var = n * mean * (1.0 - mean) / (n - 1.0);
    stderr_value = std::sqrt(sample_var / n);
  }
  return {mean, stderr_value};
}

EvalReport worst_case_reward(const PursuerPolicy& policy, const PathSet& path_set,
                             const GameConfig& config, const EvalParams& params) {
  if (path_set.paths.empty()) throw Error(ErrorCode::EmptyPathSet, "no paths to sweep");

  const std::size_t count = path_set.paths.size();
  std::vector<double> values(count);
  std::vector<double> errors(count, 0.0);
  std::vector<char> used_mc(count, 0);

  parallel_for(count, [&](std::size_t j) {
    const EvaderPath& path = path_set.paths[j];
    if (!params.force_mc) {
      try {
        values[j] = catch_probability_exact(policy, path, config, params);
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::StateSpaceTooLarge || !params.allow_mc_fallback) throw;
      }
    }
    const auto [mean, se] =
        catch_probability_mc(policy, path, config, params.mc_samples,
                             params.mc_seed ^ (0x9e3779b97f4a7c15ULL * (j + 1)));
    values[j] = mean;
    errors[j] = se;
    used_mc[j] = 1;
  });

  std::size_t argmin = 0;
  for (std::size_t j = 1; j < count; ++j) {
    if (values[j] < values[argmin]) argmin = j;  // path_set is lexicographic: first wins ties
  }

  EvalReport report;
  report.value = values[argmin];
  report.worst_path = path_set.paths[argmin];
  const bool any_mc = std::find(used_mc.begin(), used_mc.end(), 1) != used_mc.end();
  if (any_mc) {
    report.method = EvalMethod::MonteCarlo;
    report.stderr_value = errors[argmin];
  } else {
    report.method = policy.kind == PolicyKind::IndependentMarkov ? EvalMethod::ExactFactored
                                                                 : EvalMethod::ExactJoint;
  }
  return report;
}

const char* eval_method_name(EvalMethod method) {
  switch (method) {
    case EvalMethod::ExactFactored: return "exact_factored";
    case EvalMethod::ExactJoint: return "exact_joint";
    case EvalMethod::MonteCarlo: return "monte_carlo";
  }
  return "?";
}

std::string eval_report_csv_row(const EvalReport& report, const std::string& scenario_id) {
  std::ostringstream row;
  row << scenario_id << ',' << eval_method_name(report.method) << ',' << report.value << ',';
  if (report.stderr_value) row << *report.stderr_value;
  row << ',';
  if (report.worst_path) {
    const auto& path = *report.worst_path;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) row << ';';
      row << path[i];
    }
  }
  return row.str();
}

}  // namespace unsg
