#pragma once

#include <chrono>
#include <iosfwd>

#include "unsg/oracles.hpp"

namespace unsg {

// Restricted zero-sum game over oracle-generated pure strategies: rows are
// pursuer policies, columns evader paths, entries the pursuer's exact
// expected payoff (catch probability).
struct PayoffMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major

  double at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

PayoffMatrix extend_with_row(const PayoffMatrix& matrix, const std::vector<double>& row);
PayoffMatrix extend_with_col(const PayoffMatrix& matrix, const std::vector<double>& col);

struct MatrixSolution {
  std::vector<double> row_strategy;  // maximizer
  std::vector<double> col_strategy;  // minimizer
  double value = 0.0;
  std::size_t iterations = 0;
};

// max_i (M y)_i - min_j (x M)_j; nonnegative, zero exactly at equilibrium.
double matrix_exploitability(const PayoffMatrix& matrix, const std::vector<double>& x,
                             const std::vector<double>& y);

// Regret-matching-plus self-play with alternating updates and linear
// averaging, stopped by the exploitability certificate. Throws NonConvergence
// when the iteration cap is reached first.
MatrixSolution solve_matrix_zero_sum(const PayoffMatrix& matrix, double eps,
                                     std::size_t iteration_cap = 4'000'000);

struct DOIterationLog {
  std::size_t iteration = 0;
  double value = 0.0;        // restricted-game value v
  double lower_bound = 0.0;  // v_e: evader best response vs the row mixture
  double upper_bound = 0.0;  // v_p: pursuer best response vs the column mixture
  std::size_t rows = 0;
  std::size_t cols = 0;
  double wall_ms = 0.0;
};

struct DOParams {
  double eps = 1e-4;
  std::size_t max_iters = 100;
  std::size_t meta_iteration_cap = 4'000'000;
  std::size_t seed_paths = 1;  // how many lexicographically-first paths seed the columns
  OracleParams oracle;
};

struct DOResult {
  PayoffMatrix matrix;
  std::vector<PursuerPolicy> row_policies;
  std::vector<std::size_t> col_paths;  // indices into the path set handed to the solver
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double value = 0.0;
  std::vector<DOIterationLog> log;
  bool converged = false;
};

// Double-oracle loop with exact tabular oracles: solve the restricted matrix,
// answer the column mixture with an exact pursuer best response (upper bound)
// and the row mixture with an exact evader best response over the FULL path
// set (lower bound), add any strategy that improves by more than eps/4, stop
// once the bound gap is at most eps. New-entry computation is exact and
// parallel across the opposite dimension. max_iters exhaustion returns the
// best-so-far result with converged=false rather than throwing.
DOResult double_oracle_solve(const GameConfig& config, const PathSet& path_set,
                             const DOParams& params = {});

// Columns: iteration,value,lower_bound,upper_bound,rows,cols,wall_ms.
void write_do_log_csv(const DOResult& result, std::ostream& out);

}  // namespace unsg
