#include "unsg/graph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "unsg/util.hpp"

namespace unsg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRangeNeighbor: return "OutOfRangeNeighbor";
    case ErrorCode::AsymmetricUndirectedEdge: return "AsymmetricUndirectedEdge";
    case ErrorCode::DuplicateNeighbor: return "DuplicateNeighbor";
    case ErrorCode::OutOfRangeVertex: return "OutOfRangeVertex";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::GameOver: return "GameOver";
    case ErrorCode::GameNotOver: return "GameNotOver";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::NoFeasiblePath: return "NoFeasiblePath";
    case ErrorCode::PolicyIncompatible: return "PolicyIncompatible";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::EmptyPathSet: return "EmptyPathSet";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InfoCaseUnsupported: return "InfoCaseUnsupported";
    case ErrorCode::TreeTooLarge: return "TreeTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

bool Graph::is_exit(Vertex v) const {
  return std::binary_search(exits.begin(), exits.end(), v);
}

void validate_graph(const Graph& graph) {
  if (graph.vertex_count < 1) {
    throw Error(ErrorCode::InvalidScenario, "graph needs at least one vertex");
  }
  if (static_cast<int>(graph.adjacency.size()) != graph.vertex_count) {
    throw Error(ErrorCode::InvalidScenario, "adjacency size != vertex_count");
  }
  for (Vertex v = 0; v < graph.vertex_count; ++v) {
    std::set<Vertex> seen;
    for (Vertex w : graph.adjacency[v]) {
      if (w < 0 || w >= graph.vertex_count) {
        throw Error(ErrorCode::OutOfRangeNeighbor,
                    "vertex " + std::to_string(v) + " lists neighbor " + std::to_string(w));
      }
      if (!seen.insert(w).second) {
        throw Error(ErrorCode::DuplicateNeighbor,
                    "vertex " + std::to_string(v) + " lists neighbor " + std::to_string(w) +
                        " twice");
      }
    }
  }
  if (!graph.directed) {
    for (Vertex v = 0; v < graph.vertex_count; ++v) {
      for (Vertex w : graph.adjacency[v]) {
        const auto& back = graph.adjacency[w];
        if (std::find(back.begin(), back.end(), v) == back.end()) {
          throw Error(ErrorCode::AsymmetricUndirectedEdge,
                      std::to_string(v) + " lists " + std::to_string(w) +
                          " but not vice versa");
        }
      }
    }
  }
  for (Vertex e : graph.exits) {
    if (e < 0 || e >= graph.vertex_count) {
      throw Error(ErrorCode::OutOfRangeVertex, "exit " + std::to_string(e) + " out of range");
    }
  }
  if (!std::is_sorted(graph.exits.begin(), graph.exits.end()) ||
      std::adjacent_find(graph.exits.begin(), graph.exits.end()) != graph.exits.end()) {
    throw Error(ErrorCode::InvalidScenario, "exits must be sorted and unique");
  }
  if (graph.has_weights()) {
    if (graph.weights.size() != graph.adjacency.size()) {
      throw Error(ErrorCode::WeightMismatch, "weights shape != adjacency shape");
    }
    for (Vertex v = 0; v < graph.vertex_count; ++v) {
      if (graph.weights[v].size() != graph.adjacency[v].size()) {
        throw Error(ErrorCode::WeightMismatch,
                    "weights shape != adjacency shape at vertex " + std::to_string(v));
      }
    }
  }
}

Graph from_adjacency(const std::vector<std::vector<Vertex>>& lists, bool directed) {
  Graph graph;
  graph.vertex_count = static_cast<int>(lists.size());
  graph.adjacency = lists;
  graph.directed = directed;
  validate_graph(graph);
  return graph;
}

Graph generate_grid(const GridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    throw Error(ErrorCode::InvalidScenario, "grid needs rows >= 1 and cols >= 1");
  }
  if (spec.side_exist_prob < 0.0 || spec.side_exist_prob > 1.0 ||
      spec.diagonal_exist_prob < 0.0 || spec.diagonal_exist_prob > 1.0) {
    throw Error(ErrorCode::InvalidScenario, "edge probabilities must lie in [0,1]");
  }

  Graph graph;
  graph.vertex_count = spec.rows * spec.cols;
  graph.adjacency.assign(graph.vertex_count, {});
  graph.directed = false;

  std::mt19937_64 rng(spec.seed);
  auto add_edge = [&](int u, int v) {
    graph.adjacency[u].push_back(v);
    graph.adjacency[v].push_back(u);
  };
  auto sample = [&](int u, int v, double prob) {
    if (unit_double(rng) < prob) add_edge(u, v);
  };

  // One draw per candidate edge, in a frozen order: first all side edges
  // row-major (right, then down), then all diagonal edges row-major
  // (down-right, then down-left).
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const int u = grid_vertex(spec, r, c);
      if (c + 1 < spec.cols) sample(u, grid_vertex(spec, r, c + 1), spec.side_exist_prob);
      if (r + 1 < spec.rows) sample(u, grid_vertex(spec, r + 1, c), spec.side_exist_prob);
    }
  }
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const int u = grid_vertex(spec, r, c);
      if (r + 1 < spec.rows && c + 1 < spec.cols) {
        sample(u, grid_vertex(spec, r + 1, c + 1), spec.diagonal_exist_prob);
      }
      if (r + 1 < spec.rows && c - 1 >= 0) {
        sample(u, grid_vertex(spec, r + 1, c - 1), spec.diagonal_exist_prob);
      }
    }
  }

  for (auto& list : graph.adjacency) std::sort(list.begin(), list.end());
  return graph;
}

std::vector<Vertex> neighbors(const Graph& graph, Vertex v, bool allow_stay) {
  if (v < 0 || v >= graph.vertex_count) {
    throw Error(ErrorCode::OutOfRangeVertex, "vertex " + std::to_string(v));
  }
  std::vector<Vertex> result;
  result.reserve(graph.adjacency[v].size() + 1);
  if (allow_stay) result.push_back(v);
  result.insert(result.end(), graph.adjacency[v].begin(), graph.adjacency[v].end());
  return result;
}

}  // namespace unsg
