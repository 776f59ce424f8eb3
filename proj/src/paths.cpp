#include "unsg/paths.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <string>

#include "unsg/util.hpp"

namespace unsg {

namespace {

struct Enumerator {
  const Graph& graph;
  PathMode mode;
  bool allow_stay;
  std::size_t cap;
  int max_len;
  std::vector<Vertex> current;
  std::vector<char> visited;
  std::vector<EvaderPath>* out;

  void emit() {
    if (out->size() >= cap) {
      throw Error(ErrorCode::PathExplosion,
                  "more than " + std::to_string(cap) + " paths; raise the cap explicitly");
    }
    out->push_back(current);
  }

  // Candidate moves in ascending vertex order, so depth-first emission is
  // lexicographic. No emitted path is a prefix of another (interiors are
  // non-exit), so preorder emission needs no extra sorting.
  void extend(Vertex v, int depth) {
    if (depth == max_len) return;
    std::vector<Vertex> candidates = graph.adjacency[v];
    if (mode == PathMode::Walks && allow_stay) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (Vertex w : candidates) {
      if (mode == PathMode::Simple && visited[w]) continue;
      current.push_back(w);
      if (graph.is_exit(w)) {
        emit();
      } else {
        visited[w] = 1;
        extend(w, depth + 1);
        visited[w] = 0;
      }
      current.pop_back();
    }
  }
};

}  // namespace

PathSet enumerate_paths(const Graph& graph, Vertex start, int max_len, PathMode mode,
                        bool allow_stay, std::size_t path_cap) {
  if (max_len < 1) throw Error(ErrorCode::InvalidScenario, "max_len must be >= 1");
  if (start < 0 || start >= graph.vertex_count) {
    throw Error(ErrorCode::OutOfRangeVertex, "start " + std::to_string(start));
  }

  PathSet set;
  set.mode = mode;
  set.max_len = max_len;
  if (graph.is_exit(start)) {
    set.paths.push_back({start});  // already escaped at t=0
    return set;
  }
  Enumerator e{graph, mode, allow_stay, path_cap, max_len, {start},
               std::vector<char>(graph.vertex_count, 0), &set.paths};
  e.visited[start] = 1;
  e.extend(start, 0);
  return set;
}

EvaderPath sample_simplified_br(const Graph& graph, Vertex start, int max_len,
                                std::mt19937_64& rng, bool allow_stay,
                                std::size_t path_cap) {
  const PathSet set = enumerate_paths(graph, start, max_len, PathMode::Simple, allow_stay,
                                      path_cap);
  if (set.paths.empty()) {
    throw Error(ErrorCode::NoFeasiblePath, "no exit reachable within max_len");
  }
  // Group by terminal exit; paths stay in lexicographic order per group.
  std::map<Vertex, std::vector<const EvaderPath*>> by_exit;
  for (const EvaderPath& path : set.paths) by_exit[path.back()].push_back(&path);

  const std::size_t exit_idx = uniform_index(rng, by_exit.size());
  auto it = by_exit.begin();
  std::advance(it, static_cast<long>(exit_idx));
  const auto& group = it->second;
  return *group[uniform_index(rng, group.size())];
}

std::optional<int> shortest_exit_distance(const Graph& graph, Vertex start) {
  if (start < 0 || start >= graph.vertex_count) {
    throw Error(ErrorCode::OutOfRangeVertex, "start " + std::to_string(start));
  }
  if (graph.is_exit(start)) return 0;
  std::vector<int> dist(graph.vertex_count, -1);
  dist[start] = 0;
  std::deque<Vertex> queue{start};
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : graph.adjacency[v]) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      if (graph.is_exit(w)) return dist[w];
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

void write_paths_csv(const PathSet& set, std::ostream& out) {
  for (const EvaderPath& path : set.paths) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) out << ';';
      out << path[i];
    }
    out << '\n';
  }
}

void validate_path(const Graph& graph, const EvaderPath& path, PathMode mode,
                   bool allow_stay) {
  if (path.empty()) throw Error(ErrorCode::IllegalMove, "empty path");
  for (Vertex v : path) {
    if (v < 0 || v >= graph.vertex_count) {
      throw Error(ErrorCode::OutOfRangeVertex, "path vertex " + std::to_string(v));
    }
  }
  if (!graph.is_exit(path.back())) {
    throw Error(ErrorCode::IllegalMove, "path must end on an exit");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (graph.is_exit(path[i])) {
      throw Error(ErrorCode::IllegalMove, "path passes through an exit before its end");
    }
    const Vertex v = path[i];
    const Vertex w = path[i + 1];
    const auto& adj = graph.adjacency[v];
    const bool stay_ok = (w == v) && (allow_stay || adj.empty());
    if (!stay_ok && std::find(adj.begin(), adj.end(), w) == adj.end()) {
      throw Error(ErrorCode::IllegalMove,
                  "illegal move " + std::to_string(v) + " -> " + std::to_string(w));
    }
  }
  if (mode == PathMode::Simple) {
    EvaderPath sorted = path;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::IllegalMove, "simple path revisits a vertex");
    }
  }
}

}  // namespace unsg
