#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "unsg/paths.hpp"
#include "unsg/policy.hpp"

namespace unsg {

enum class EvalMethod { ExactFactored, ExactJoint, MonteCarlo };

struct EvalReport {
  double value = 0.0;
  EvalMethod method = EvalMethod::ExactFactored;
  std::optional<double> stderr_value;   // Monte Carlo only
  std::optional<EvaderPath> worst_path; // sweep only
};

struct EvalParams {
  // Joint-DP support bound before the evaluator refuses and (in the sweep)
  // falls back to Monte Carlo. Exceeding it throws StateSpaceTooLarge, never
  // a silent approximation.
  std::size_t joint_state_cap = std::size_t(1) << 24;
  bool allow_mc_fallback = true;
  bool force_mc = false;
  std::size_t mc_samples = 100000;
  std::uint64_t mc_seed = 1;
};

// Exact probability that the pursuers playing `policy` catch an evader
// committed to `path`: capture at some t <= min(path length, horizon), with
// timeout counting as a catch when the path cannot finish by T. Independent
// policies use a per-pursuer survival recursion over (vertex, t); joint
// policies a sparse recursion over pursuer location tuples.
double catch_probability_exact(const PursuerPolicy& policy, const EvaderPath& path,
                               const GameConfig& config, const EvalParams& params = {});

// Joint-space recursion regardless of policy kind; the factored and joint
// routes must agree to 1e-10 on independent policies.
double catch_probability_exact_joint(const PursuerPolicy& policy, const EvaderPath& path,
                                     const GameConfig& config, const EvalParams& params = {});

// Unbiased rollout estimate with the evader scripted to the path.
// Returns (mean, standard error).
std::pair<double, double> catch_probability_mc(const PursuerPolicy& policy,
                                               const EvaderPath& path,
                                               const GameConfig& config,
                                               std::size_t samples, std::uint64_t seed);

// Minimum catch probability over the path set, with the argmin path (ties
// break to the lexicographically smallest). Path evaluations run in parallel
// and the result is identical to a sequential sweep.
EvalReport worst_case_reward(const PursuerPolicy& policy, const PathSet& path_set,
                             const GameConfig& config, const EvalParams& params = {});

const char* eval_method_name(EvalMethod method);

// CSV row: scenario id, method, value, stderr, worst path (semicolon ids).
std::string eval_report_csv_row(const EvalReport& report, const std::string& scenario_id);

}  // namespace unsg
