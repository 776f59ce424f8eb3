#pragma once

#include <cstdint>
#include <vector>

#include "unsg/error.hpp"

namespace unsg {

using Vertex = int;

// Arena for a pursuit game: adjacency structure plus the designated exit
// vertices the evader escapes through. Immutable after construction; share
// by const reference across threads.
struct Graph {
  int vertex_count = 0;
  std::vector<std::vector<Vertex>> adjacency;  // per-vertex neighbor lists
  std::vector<Vertex> exits;                   // sorted, unique vertex ids
  bool directed = false;
  // Optional per-edge weights, same shape as adjacency. Representational
  // only: every solver in this project ignores them.
  std::vector<std::vector<double>> weights;

  bool is_exit(Vertex v) const;
  bool has_weights() const { return !weights.empty(); }
};

// Random grid: rows*cols vertices in row-major order, each horizontal or
// vertical edge kept with probability side_exist_prob and each diagonal edge
// with probability diagonal_exist_prob.
struct GridSpec {
  int rows = 1;
  int cols = 1;
  double side_exist_prob = 1.0;
  double diagonal_exist_prob = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const GridSpec&) const = default;
};

// Validated construction from explicit neighbor lists. Throws
// OutOfRangeNeighbor, DuplicateNeighbor, or (when directed=false)
// AsymmetricUndirectedEdge; asymmetry is rejected, never repaired.
Graph from_adjacency(const std::vector<std::vector<Vertex>>& lists, bool directed);

// Same validation applied to an already-assembled Graph (exits included).
void validate_graph(const Graph& graph);

// Deterministic grid sampling: the candidate edges are visited in a fixed
// order (row-major side edges, then row-major diagonal edges, one RNG draw
// per candidate), so the seed fully determines the graph. Exits are left
// empty; scenarios fill them in.
Graph generate_grid(const GridSpec& spec);

// Movement choices from v in adjacency order; with allow_stay, v itself is
// prepended. An isolated vertex yields an empty list; game dynamics treat
// that as forced stay.
std::vector<Vertex> neighbors(const Graph& graph, Vertex v, bool allow_stay);

inline int grid_vertex(const GridSpec& spec, int row, int col) {
  return row * spec.cols + col;
}

}  // namespace unsg
