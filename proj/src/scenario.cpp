#include "unsg/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace unsg {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep, bool keep_empty) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (!keep_empty) {
    parts.erase(std::remove_if(parts.begin(), parts.end(),
                               [](const std::string& p) { return trim(p).empty(); }),
                parts.end());
  }
  return parts;
}

long long parse_int(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, key + ": not an integer: '" + s + "'");
  }
  return value;
}

double parse_double(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  try {
    std::size_t used = 0;
    const double value = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, key + ": not a number: '" + s + "'");
  }
}

bool parse_bool(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error(ErrorCode::ParseError, key + ": expected true or false, got '" + s + "'");
}

std::vector<Vertex> parse_vertex_list(const std::string& raw, const std::string& key) {
  std::string normalized = raw;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::vector<Vertex> out;
  std::istringstream in(normalized);
  std::string token;
  while (in >> token) out.push_back(static_cast<Vertex>(parse_int(token, key)));
  return out;
}

std::string join_vertices(const std::vector<Vertex>& vs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(vs[i]);
  }
  return out;
}

// Raw key/value lines with duplicate and unknown-key detection.
class KeyValueFile {
 public:
  explicit KeyValueFile(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::ParseError, "expected 'key = value', got '" + line + "'");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "entry") {
        entries_.push_back(value);
        continue;
      }
      if (!values_.emplace(key, value).second) {
        throw Error(ErrorCode::ParseError, "duplicate key '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string take(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      throw Error(ErrorCode::ParseError, "missing required key '" + key + "'");
    }
    consumed_.insert(key);
    return it->second;
  }

  std::string take_or(const std::string& key, const std::string& fallback) {
    consumed_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : values_) {
      if (!consumed_.count(key)) {
        throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
      }
    }
  }

  const std::vector<std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::vector<std::string> entries_;
};

}  // namespace

ScenarioFile parse_scenario(std::istream& in) {
  KeyValueFile file(in);
  ScenarioFile s;
  s.id = file.take_or("id", "scenario");

  const std::string kind = file.take("graph.kind");
  if (kind == "grid") {
    s.grid = true;
    s.grid_spec.rows = static_cast<int>(parse_int(file.take("graph.rows"), "graph.rows"));
    s.grid_spec.cols = static_cast<int>(parse_int(file.take("graph.cols"), "graph.cols"));
    s.grid_spec.side_exist_prob = parse_double(file.take("graph.side_prob"), "graph.side_prob");
    s.grid_spec.diagonal_exist_prob =
        parse_double(file.take("graph.diag_prob"), "graph.diag_prob");
    s.grid_spec.seed =
        static_cast<std::uint64_t>(parse_int(file.take("graph.seed"), "graph.seed"));
  } else if (kind == "adjacency") {
    s.grid = false;
    s.directed = parse_bool(file.take_or("graph.directed", "false"), "graph.directed");
    const std::string lists = file.take("graph.adjacency");
    for (const std::string& part : split(lists, ';', /*keep_empty=*/true)) {
      s.adjacency.push_back(parse_vertex_list(part, "graph.adjacency"));
    }
  } else {
    throw Error(ErrorCode::ParseError, "graph.kind must be 'grid' or 'adjacency'");
  }

  s.exits = parse_vertex_list(file.take("exits"), "exits");
  s.pursuer_starts = parse_vertex_list(file.take("pursuer_starts"), "pursuer_starts");
  s.evader_start = static_cast<Vertex>(parse_int(file.take("evader_start"), "evader_start"));
  s.horizon = static_cast<int>(parse_int(file.take("horizon"), "horizon"));

  const std::string info = file.take_or("info_case", "pursuer_sees_evader");
  const auto info_case = info_case_from_name(info);
  if (!info_case) throw Error(ErrorCode::ParseError, "unknown info_case '" + info + "'");
  s.info_case = *info_case;
  s.allow_stay = parse_bool(file.take_or("allow_stay", "true"), "allow_stay");
  s.capture_before_escape =
      parse_bool(file.take_or("capture_before_escape", "true"), "capture_before_escape");

  const std::string mode = file.take_or("eval.path_mode", "simple");
  if (mode == "simple") {
    s.path_mode = PathMode::Simple;
  } else if (mode == "walks") {
    s.path_mode = PathMode::Walks;
  } else {
    throw Error(ErrorCode::ParseError, "eval.path_mode must be 'simple' or 'walks'");
  }
  s.max_len = static_cast<int>(
      parse_int(file.take_or("eval.max_len", std::to_string(s.horizon)), "eval.max_len"));
  s.path_cap = static_cast<std::size_t>(
      parse_int(file.take_or("eval.path_cap", std::to_string(kDefaultPathCap)),
                "eval.path_cap"));

  s.eps = parse_double(file.take_or("solver.eps", "0.0001"), "solver.eps");
  s.max_iters = static_cast<std::size_t>(
      parse_int(file.take_or("solver.max_iters", "100"), "solver.max_iters"));
  s.mc_samples = static_cast<std::size_t>(
      parse_int(file.take_or("solver.mc_samples", "100000"), "solver.mc_samples"));
  s.seed =
      static_cast<std::uint64_t>(parse_int(file.take_or("solver.seed", "1"), "solver.seed"));

  file.reject_unknown();
  return s;
}

ScenarioFile parse_scenario_string(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

std::string serialize_scenario(const ScenarioFile& s) {
  std::ostringstream out;
  out << "id = " << s.id << '\n';
  if (s.grid) {
    out << "graph.kind = grid\n";
    out << "graph.rows = " << s.grid_spec.rows << '\n';
    out << "graph.cols = " << s.grid_spec.cols << '\n';
    out << "graph.side_prob = " << format_double(s.grid_spec.side_exist_prob) << '\n';
    out << "graph.diag_prob = " << format_double(s.grid_spec.diagonal_exist_prob) << '\n';
    out << "graph.seed = " << s.grid_spec.seed << '\n';
  } else {
    out << "graph.kind = adjacency\n";
    out << "graph.directed = " << (s.directed ? "true" : "false") << '\n';
    out << "graph.adjacency = ";
    for (std::size_t v = 0; v < s.adjacency.size(); ++v) {
      if (v) out << "; ";
      out << join_vertices(s.adjacency[v], " ");
    }
    out << '\n';
  }
  out << "exits = " << join_vertices(s.exits, " ") << '\n';
  out << "pursuer_starts = " << join_vertices(s.pursuer_starts, " ") << '\n';
  out << "evader_start = " << s.evader_start << '\n';
  out << "horizon = " << s.horizon << '\n';
  out << "info_case = " << info_case_name(s.info_case) << '\n';
  out << "allow_stay = " << (s.allow_stay ? "true" : "false") << '\n';
  out << "capture_before_escape = " << (s.capture_before_escape ? "true" : "false") << '\n';
  out << "eval.path_mode = " << (s.path_mode == PathMode::Simple ? "simple" : "walks") << '\n';
  out << "eval.max_len = " << s.max_len << '\n';
  out << "eval.path_cap = " << s.path_cap << '\n';
  out << "solver.eps = " << format_double(s.eps) << '\n';
  out << "solver.max_iters = " << s.max_iters << '\n';
  out << "solver.mc_samples = " << s.mc_samples << '\n';
  out << "solver.seed = " << s.seed << '\n';
  return out.str();
}

GameConfig scenario_config(const ScenarioFile& s) {
  GameConfig config;
  config.graph = s.grid ? generate_grid(s.grid_spec) : from_adjacency(s.adjacency, s.directed);
  config.graph.exits = s.exits;
  std::sort(config.graph.exits.begin(), config.graph.exits.end());
  config.graph.exits.erase(
      std::unique(config.graph.exits.begin(), config.graph.exits.end()),
      config.graph.exits.end());
  validate_graph(config.graph);
  config.pursuer_starts = s.pursuer_starts;
  config.evader_start = s.evader_start;
  config.horizon = s.horizon;
  config.info_case = s.info_case;
  config.allow_stay = s.allow_stay;
  config.capture_before_escape = s.capture_before_escape;

  const auto violations = validate_scenario(config.graph, config);
  if (!violations.empty()) {
    std::string message;
    for (const auto& v : violations) {
      if (!message.empty()) message += "; ";
      message += v.code + ": " + v.message;
    }
    throw Error(ErrorCode::InvalidScenario, message);
  }
  return config;
}

PathSet scenario_paths(const ScenarioFile& s, const GameConfig& config) {
  return enumerate_paths(config.graph, config.evader_start, s.max_len, s.path_mode,
                         config.allow_stay, s.path_cap);
}

namespace {

ObsKey parse_obs_key(std::map<std::string, std::string>& fields, bool independent) {
  ObsKey key;
  if (independent) {
    key.own = {static_cast<Vertex>(parse_int(fields.at("own"), "own"))};
  } else {
    for (const std::string& part : split(fields.at("own"), ',', false)) {
      key.own.push_back(static_cast<Vertex>(parse_int(part, "own")));
    }
  }
  key.t = static_cast<int>(parse_int(fields.at("t"), "t"));
  if (fields.count("ev")) {
    for (const std::string& part : split(fields.at("ev"), ';', false)) {
      key.evader_seen.push_back(static_cast<Vertex>(parse_int(part, "ev")));
    }
  }
  return key;
}

}  // namespace

PursuerPolicy parse_policy(std::istream& in) {
  KeyValueFile file(in);
  PursuerPolicy policy;

  const std::string kind = file.take("kind");
  if (kind == "independent") {
    policy.kind = PolicyKind::IndependentMarkov;
  } else if (kind == "joint") {
    policy.kind = PolicyKind::JointMarkov;
  } else {
    throw Error(ErrorCode::ParseError, "kind must be 'independent' or 'joint'");
  }

  const std::string keying = file.take_or("keying", "none");
  if (keying == "none") {
    policy.keying = EvaderKeying::None;
  } else if (keying == "current") {
    policy.keying = EvaderKeying::CurrentPosition;
  } else if (keying == "history") {
    policy.keying = EvaderKeying::History;
  } else {
    throw Error(ErrorCode::ParseError, "keying must be none, current, or history");
  }

  const std::string missing = file.take_or("missing_key", "error");
  if (missing == "error") {
    policy.missing_key = MissingKeyRule::Error;
  } else if (missing == "stay") {
    policy.missing_key = MissingKeyRule::Stay;
  } else {
    throw Error(ErrorCode::ParseError, "missing_key must be 'error' or 'stay'");
  }

  const int pursuers =
      static_cast<int>(parse_int(file.take("pursuers"), "pursuers"));
  if (pursuers < 1) throw Error(ErrorCode::ParseError, "pursuers must be >= 1");
  const bool independent = policy.kind == PolicyKind::IndependentMarkov;
  if (independent) policy.per_pursuer.resize(pursuers);

  for (const std::string& entry : file.entries()) {
    const auto arrow = entry.find("->");
    if (arrow == std::string::npos) {
      throw Error(ErrorCode::ParseError, "entry needs '->': '" + entry + "'");
    }
    std::map<std::string, std::string> fields;
    {
      std::istringstream left(entry.substr(0, arrow));
      std::string token;
      while (left >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
          throw Error(ErrorCode::ParseError, "bad entry field '" + token + "'");
        }
        fields[token.substr(0, eq)] = token.substr(eq + 1);
      }
    }
    try {
      const ObsKey key = parse_obs_key(fields, independent);
      std::istringstream right(entry.substr(arrow + 2));
      std::string token;
      if (independent) {
        const int p = static_cast<int>(parse_int(fields.at("p"), "p"));
        if (p < 0 || p >= pursuers) throw Error(ErrorCode::ParseError, "p out of range");
        VertexDistribution dist;
        while (right >> token) {
          const auto colon = token.rfind(':');
          dist.moves.push_back(
              static_cast<Vertex>(parse_int(token.substr(0, colon), "move")));
          dist.probs.push_back(parse_double(token.substr(colon + 1), "prob"));
        }
        policy.per_pursuer[p][key] = std::move(dist);
      } else {
        JointDistribution dist;
        while (right >> token) {
          const auto colon = token.rfind(':');
          std::vector<Vertex> move;
          for (const std::string& part : split(token.substr(0, colon), ',', false)) {
            move.push_back(static_cast<Vertex>(parse_int(part, "move")));
          }
          dist.moves.push_back(std::move(move));
          dist.probs.push_back(parse_double(token.substr(colon + 1), "prob"));
        }
        policy.joint[key] = std::move(dist);
      }
    } catch (const std::out_of_range&) {
      throw Error(ErrorCode::ParseError, "entry missing a field: '" + entry + "'");
    }
  }
  file.reject_unknown();
  return policy;
}

namespace {

void write_key_fields(std::ostringstream& out, const ObsKey& key, bool independent) {
  out << "own=";
  if (independent) {
    out << key.own[0];
  } else {
    for (std::size_t i = 0; i < key.own.size(); ++i) {
      if (i) out << ',';
      out << key.own[i];
    }
  }
  out << " t=" << key.t;
  if (!key.evader_seen.empty()) {
    out << " ev=";
    for (std::size_t i = 0; i < key.evader_seen.size(); ++i) {
      if (i) out << ';';
      out << key.evader_seen[i];
    }
  }
}

}  // namespace

std::string serialize_policy(const PursuerPolicy& policy) {
  std::ostringstream out;
  const bool independent = policy.kind == PolicyKind::IndependentMarkov;
  out << "kind = " << (independent ? "independent" : "joint") << '\n';
  out << "keying = "
      << (policy.keying == EvaderKeying::None
              ? "none"
              : policy.keying == EvaderKeying::CurrentPosition ? "current" : "history")
      << '\n';
  out << "missing_key = " << (policy.missing_key == MissingKeyRule::Error ? "error" : "stay")
      << '\n';
  std::size_t pursuers = independent ? policy.per_pursuer.size()
                                     : (policy.joint.empty()
                                            ? 1
                                            : policy.joint.begin()->first.own.size());
  out << "pursuers = " << pursuers << '\n';
  if (independent) {
    for (std::size_t p = 0; p < policy.per_pursuer.size(); ++p) {
      for (const auto& [key, dist] : policy.per_pursuer[p]) {
        std::ostringstream line;
        line << "p=" << p << ' ';
        write_key_fields(line, key, true);
        line << " ->";
        for (std::size_t a = 0; a < dist.moves.size(); ++a) {
          line << ' ' << dist.moves[a] << ':' << format_double(dist.probs[a]);
        }
        out << "entry = " << line.str() << '\n';
      }
    }
  } else {
    for (const auto& [key, dist] : policy.joint) {
      std::ostringstream line;
      write_key_fields(line, key, false);
      line << " ->";
      for (std::size_t a = 0; a < dist.moves.size(); ++a) {
        line << ' ';
        for (std::size_t i = 0; i < dist.moves[a].size(); ++i) {
          if (i) line << ',';
          line << dist.moves[a][i];
        }
        line << ':' << format_double(dist.probs[a]);
      }
      out << "entry = " << line.str() << '\n';
    }
  }
  return out.str();
}

std::string result_csv_header(bool with_wall_time) {
  return with_wall_time ? "scenario,solver,value,gap,wall_ms,iterations"
                        : "scenario,solver,value,gap,iterations";
}

std::string result_csv_row(const ResultRow& row, bool with_wall_time) {
  std::ostringstream out;
  out << row.scenario_id << ',' << row.solver << ',' << format_double(row.value) << ','
      << format_double(row.gap) << ',';
  if (with_wall_time) out << format_double(row.wall_ms) << ',';
  out << row.iterations;
  return out.str();
}

}  // namespace unsg
