#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "unsg/graph.hpp"

namespace unsg {

// A timed route for the evader: starts at its initial vertex, ends at the
// first exit it touches, with every consecutive pair a legal move. An evader
// path is an open-loop pure strategy.
using EvaderPath = std::vector<Vertex>;

enum class PathMode {
  Simple,  // acyclic: vertices pairwise distinct (the evaluation convention)
  Walks,   // revisits and stays allowed: the exact open-loop strategy space
};

struct PathSet {
  std::vector<EvaderPath> paths;  // lexicographic by vertex sequence, no duplicates
  PathMode mode = PathMode::Simple;
  int max_len = 0;
  // Simple mode under-approximates the open-loop strategy space; carried in
  // output metadata so downstream reports can flag non-exact sweeps.
  bool exact_strategy_space() const { return mode == PathMode::Walks; }
};

inline constexpr std::size_t kDefaultPathCap = 5'000'000;

// All routes from start to an exit taking at most max_len moves, depth-first
// in ascending-vertex order so the output is lexicographic. Stays are legal
// moves in Walks mode iff allow_stay. Exceeding the cap throws PathExplosion
// rather than truncating.
PathSet enumerate_paths(const Graph& graph, Vertex start, int max_len, PathMode mode,
                        bool allow_stay = true, std::size_t path_cap = kDefaultPathCap);

// The simplified best response used by prior solvers: pick a reachable exit
// uniformly, then one simple path to it (within max_len) uniformly.
EvaderPath sample_simplified_br(const Graph& graph, Vertex start, int max_len,
                                std::mt19937_64& rng, bool allow_stay = true,
                                std::size_t path_cap = kDefaultPathCap);

// Minimum move count from start to any exit (breadth-first); nullopt when no
// exit is reachable.
std::optional<int> shortest_exit_distance(const Graph& graph, Vertex start);

// One path per row, vertex ids separated by semicolons.
void write_paths_csv(const PathSet& set, std::ostream& out);

// Checks the path invariants against a graph: legal consecutive moves, exit
// only at the end, distinctness in Simple mode.
void validate_path(const Graph& graph, const EvaderPath& path, PathMode mode,
                   bool allow_stay);

}  // namespace unsg
