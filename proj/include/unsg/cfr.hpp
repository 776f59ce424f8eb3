#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include "unsg/dynamics.hpp"

namespace unsg {

// Tabular CFR on the turn-based conversion of the simultaneous game: the
// pursuer team moves first as one player with joint actions, then the evader,
// whose information set never includes the pursuers' pending move. Positions
// determine actions, so keys carry position histories.
struct InfoSetKey {
  Role role = Role::Pursuer;
  int t = 0;
  std::vector<Vertex> own_history;  // pursuer: joint tuples flattened, evader: vertices
  std::vector<Vertex> opp_history;  // opponent positions up to t when the info case grants them

  auto operator<=>(const InfoSetKey&) const = default;
};

// Distributions over the canonical action enumeration at each information set
// (joint_moves_from order for the pursuer, legal_moves order for the evader).
struct CfrStrategy {
  std::map<InfoSetKey, std::vector<double>> table;
};

struct CfrProfile {
  CfrStrategy pursuer;
  CfrStrategy evader;
};

enum class CfrVariant {
  Vanilla,        // plain regret matching, uniform strategy averaging
  PlusAveraging,  // regret matching+ with linearly weighted averaging
};

struct CfrLogRow {
  std::size_t iteration = 0;
  double value = 0.0;
  double exploitability = 0.0;
};

struct CfrParams {
  std::size_t iterations = 10000;
  CfrVariant variant = CfrVariant::PlusAveraging;
  // Estimated tree size bound; cfr_solve and exploitability refuse bigger
  // games with TreeTooLarge.
  std::size_t node_cap = 10'000'000;
  // When positive, stop as soon as the average profile's exploitability drops
  // to this level (checked on the logging schedule).
  double stop_exploitability = 0.0;
  // Exploitability sampling points; 0 means a logarithmic schedule
  // (1, 2, 4, ... iterations) plus the final iterate.
  std::size_t check_interval = 0;
};

struct CfrResult {
  CfrProfile profile;           // normalized average strategies
  double value = 0.0;           // pursuer expected value under the average profile
  std::size_t iterations_run = 0;
  double final_exploitability = -1.0;  // -1 when never measured
  std::vector<CfrLogRow> log;
};

CfrResult cfr_solve(const GameConfig& config, const CfrParams& params = {});

// Equilibrium gap of a profile: pursuer best-response value against the
// evader's strategy minus the pursuer's value when the evader best-responds.
// Zero exactly at equilibrium, nonnegative everywhere.
double exploitability(const CfrProfile& profile, const GameConfig& config,
                      std::size_t node_cap = 10'000'000);

// Pursuer expected value of a profile (uniform play at unvisited infosets).
double profile_value(const CfrProfile& profile, const GameConfig& config);

// Number of histories in the turn-based tree; throws TreeTooLarge above cap.
std::size_t count_tree_nodes(const GameConfig& config, std::size_t cap);

// Columns: iteration,value,exploitability.
void write_cfr_log_csv(const CfrResult& result, std::ostream& out);

}  // namespace unsg
