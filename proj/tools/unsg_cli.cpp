// Command-line front end: scenario generation, path enumeration, worst-case
// policy evaluation, and the double-oracle / CFR solvers, with CSV outputs.
//
// Exit codes: 0 success, 1 solver non-convergence, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "unsg/bench.hpp"
#include "unsg/cfr.hpp"
#include "unsg/meta.hpp"

namespace {

using namespace unsg;

constexpr int kExitOk = 0;
constexpr int kExitNonConvergence = 1;
constexpr int kExitInputError = 2;

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct ScenarioArgs {
  std::string file;
  std::string builtin;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--scenario", file, "scenario file path");
    auto* b = cmd->add_option("--builtin", builtin,
                              "bundled scenario name (easy, hard, sweep7x7)");
    f->excludes(b);
  }

  ScenarioFile load() const {
    if (!builtin.empty()) return bundled_scenario(builtin);
    if (file.empty()) {
      throw Error(ErrorCode::ParseError, "provide --scenario or --builtin");
    }
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + file + "'");
    return parse_scenario(in);
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

PursuerPolicy load_policy(const std::string& spec, const GameConfig& config) {
  if (spec == "uniform") return make_uniform_independent(config);
  if (spec == "stay") return make_stay_policy(config);
  std::ifstream in(spec);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open policy '" + spec + "'");
  PursuerPolicy policy = parse_policy(in);
  validate_policy(policy, config);
  return policy;
}

int run_gen_grid(int rows, int cols, double side_prob, double diag_prob,
                 std::uint64_t seed, const std::string& out) {
  ScenarioFile s;
  s.id = "grid_" + std::to_string(rows) + "x" + std::to_string(cols);
  s.grid_spec = {rows, cols, side_prob, diag_prob, seed};
  generate_grid(s.grid_spec);  // validates the spec before emitting a skeleton
  const int count = rows * cols;
  s.exits = {0, count - 1};
  s.pursuer_starts = {0};
  s.evader_start = count / 2;
  write_text(out, serialize_scenario(s));
  return kExitOk;
}

int run_enumerate(const ScenarioArgs& args, const std::string& mode_override,
                  int max_len_override, const std::string& out) {
  ScenarioFile s = args.load();
  if (!mode_override.empty()) {
    if (mode_override == "simple") {
      s.path_mode = PathMode::Simple;
    } else if (mode_override == "walks") {
      s.path_mode = PathMode::Walks;
    } else {
      throw Error(ErrorCode::ParseError, "--mode must be simple or walks");
    }
  }
  if (max_len_override > 0) s.max_len = max_len_override;
  const GameConfig config = scenario_config(s);
  const PathSet paths = scenario_paths(s, config);
  if (!out.empty()) {
    std::ofstream file(out);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + out + "'");
    write_paths_csv(paths, file);
  }
  std::cout << paths.paths.size() << '\n';
  return kExitOk;
}

int run_evaluate(const ScenarioArgs& args, const std::string& policy_spec, bool force_mc,
                 std::uint64_t mc_samples, std::optional<std::uint64_t> seed,
                 const std::string& out, const std::string& report_path) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioFile s = args.load();
  const GameConfig config = scenario_config(s);
  const PathSet paths = scenario_paths(s, config);
  const PursuerPolicy policy = load_policy(policy_spec, config);

  EvalParams params;
  params.force_mc = force_mc;
  params.mc_samples = mc_samples > 0 ? mc_samples : s.mc_samples;
  params.mc_seed = seed.value_or(s.seed);
  const EvalReport report = worst_case_reward(policy, paths, config, params);

  if (!report_path.empty()) {
    write_text(report_path, eval_report_csv_row(report, s.id) + "\n");
  }
  ResultRow row{s.id, "sweep", report.value, report.stderr_value.value_or(0.0),
                elapsed_ms(start), paths.paths.size()};
  write_text(out, result_csv_header(true) + "\n" + result_csv_row(row, true) + "\n");
  return kExitOk;
}

int run_solve(const ScenarioFile& s, const std::string& solver, std::size_t iters_override,
              double stop_gap, const std::string& log_path, std::ostream& rows_out,
              bool with_wall) {
  const auto start = std::chrono::steady_clock::now();
  const GameConfig config = scenario_config(s);

  if (solver == "do") {
    const PathSet paths = scenario_paths(s, config);
    DOParams params;
    params.eps = s.eps;
    params.max_iters = iters_override > 0 ? iters_override : s.max_iters;
    const DOResult result = double_oracle_solve(config, paths, params);
    if (!log_path.empty()) {
      std::ofstream log(log_path);
      if (!log) throw Error(ErrorCode::ParseError, "cannot write '" + log_path + "'");
      write_do_log_csv(result, log);
    }
    const double gap = result.log.empty()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : result.log.back().upper_bound - result.log.back().lower_bound;
    ResultRow row{s.id, "do", result.value, gap, elapsed_ms(start), result.log.size()};
    rows_out << result_csv_row(row, with_wall) << '\n';
    return result.converged ? kExitOk : kExitNonConvergence;
  }
  if (solver == "cfr") {
    CfrParams params;
    params.iterations = iters_override > 0 ? iters_override : 50000;
    params.stop_exploitability = stop_gap;
    const CfrResult result = cfr_solve(config, params);
    if (!log_path.empty()) {
      std::ofstream log(log_path);
      if (!log) throw Error(ErrorCode::ParseError, "cannot write '" + log_path + "'");
      write_cfr_log_csv(result, log);
    }
    ResultRow row{s.id, "cfr", result.value, result.final_exploitability, elapsed_ms(start),
                  result.iterations_run};
    rows_out << result_csv_row(row, with_wall) << '\n';
    return kExitOk;
  }
  throw Error(ErrorCode::ParseError, "--solver must be 'do' or 'cfr'");
}

int run_bench(const std::string& filter, const std::string& out) {
  std::ostringstream rows;
  rows << result_csv_header(false) << '\n';
  int exit_code = kExitOk;
  for (const std::string& name : bench_scenario_names()) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    const ScenarioFile s = bundled_scenario(name);
    for (const std::string& solver : bench_solvers(name)) {
      const int code = run_solve(s, solver, 0, 2e-3, "", rows, /*with_wall=*/false);
      if (code != kExitOk) exit_code = code;
    }
  }
  write_text(out, rows.str());
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pursuit-evasion games on graphs with exit nodes: deterministic engine, "
               "exact worst-case evaluation, double-oracle and CFR solvers"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-grid", "emit a grid scenario skeleton");
  int rows = 0, cols = 0;
  double side_prob = 1.0, diag_prob = 0.0;
  std::uint64_t grid_seed = 0;
  std::string gen_out;
  gen->add_option("--rows", rows, "grid rows")->required();
  gen->add_option("--cols", cols, "grid columns")->required();
  gen->add_option("--side-prob", side_prob, "side edge probability");
  gen->add_option("--diag-prob", diag_prob, "diagonal edge probability");
  gen->add_option("--seed", grid_seed, "grid sampling seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "count evader paths, optionally export");
  ScenarioArgs enum_args;
  enum_args.attach(enumerate);
  std::string enum_mode, enum_out;
  int enum_max_len = 0;
  enumerate->add_option("--mode", enum_mode, "simple or walks (overrides scenario)");
  enumerate->add_option("--max-len", enum_max_len, "maximum path length (overrides scenario)");
  enumerate->add_option("--out", enum_out, "write the path CSV here");

  auto* evaluate = app.add_subcommand("evaluate", "worst-case sweep of a pursuer policy");
  ScenarioArgs eval_args;
  eval_args.attach(evaluate);
  std::string policy_spec = "uniform", eval_out, report_path;
  bool force_mc = false;
  std::uint64_t mc_samples = 0;
  std::optional<std::uint64_t> eval_seed;
  evaluate->add_option("--policy", policy_spec, "policy file, 'uniform', or 'stay'");
  evaluate->add_flag("--mc", force_mc, "force Monte Carlo evaluation");
  evaluate->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
  evaluate->add_option("--seed", eval_seed, "override the scenario's solver seed");
  evaluate->add_option("--out", eval_out, "result CSV (default stdout)");
  evaluate->add_option("--report", report_path, "also write the evaluation report row here");

  auto* solve = app.add_subcommand("solve", "run a solver on a scenario");
  ScenarioArgs solve_args;
  solve_args.attach(solve);
  std::string solver = "do", solve_log, solve_out;
  std::size_t solve_iters = 0;
  double stop_gap = 2e-3;
  std::optional<std::uint64_t> solve_seed;
  solve->add_option("--solver", solver, "'do' or 'cfr'");
  solve->add_option("--iters", solve_iters, "iteration budget override");
  solve->add_option("--max-iters", solve_iters, "alias of --iters");
  solve->add_option("--stop-gap", stop_gap, "CFR exploitability stop threshold");
  solve->add_option("--seed", solve_seed, "override the scenario's solver seed");
  solve->add_option("--log", solve_log, "per-iteration convergence CSV");
  solve->add_option("--out", solve_out, "result CSV (default stdout)");

  auto* bench = app.add_subcommand("bench", "run the bundled benchmark table");
  std::string bench_filter, bench_out;
  bench->add_option("--filter", bench_filter, "only scenarios whose id contains this");
  bench->add_option("--out", bench_out, "output CSV (default stdout)");

  bool iters_given = false;
  try {
    app.parse(argc, argv);
    iters_given = solve->count("--iters") > 0 || solve->count("--max-iters") > 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (gen->parsed()) return run_gen_grid(rows, cols, side_prob, diag_prob, grid_seed, gen_out);
    if (enumerate->parsed()) return run_enumerate(enum_args, enum_mode, enum_max_len, enum_out);
    if (evaluate->parsed()) {
      return run_evaluate(eval_args, policy_spec, force_mc, mc_samples, eval_seed, eval_out,
                          report_path);
    }
    if (solve->parsed()) {
      ScenarioFile s = solve_args.load();
      if (solve_seed) s.seed = *solve_seed;
      std::ostringstream rows_out;
      rows_out << result_csv_header(true) << '\n';
      // --iters 0 is an explicit request for a zero-iteration run.
      std::size_t budget = solve_iters;
      if (iters_given && solve_iters == 0) {
        s.max_iters = 0;
        budget = 0;
      }
      const int code = run_solve(s, solver, budget, stop_gap, solve_log, rows_out, true);
      write_text(solve_out, rows_out.str());
      return code;
    }
    if (bench->parsed()) return run_bench(bench_filter, bench_out);
  } catch (const unsg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NonConvergence ? kExitNonConvergence : kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
