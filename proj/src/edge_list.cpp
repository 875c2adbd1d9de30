#include "degmatch/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "degmatch/generators.hpp"

namespace degmatch {

ParseError::ParseError(const std::string& source, std::size_t line,
                       const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_id(std::string_view token, std::int64_t& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = s.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = s.size();
    tokens.push_back(s.substr(start, stop - start));
    pos = stop;
  }
  return tokens;
}

// Sorted unique ids and the id -> dense index map.
std::pair<std::vector<std::int64_t>, std::unordered_map<std::int64_t, NodeIndex>>
compact(std::vector<std::int64_t> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<std::int64_t, NodeIndex> index;
  index.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    index.emplace(ids[k], static_cast<NodeIndex>(k));
  }
  return {std::move(ids), std::move(index)};
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in, EdgeListKind kind,
                            const std::string& source) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_ws(body);
    if (tokens.size() != 2) {
      throw ParseError(source, line_no, "expected two integer ids, got '" +
                                            std::string(body) + "'");
    }
    std::int64_t a = 0, b = 0;
    if (!parse_id(tokens[0], a) || !parse_id(tokens[1], b)) {
      throw ParseError(source, line_no,
                       "malformed id in '" + std::string(body) + "'");
    }
    if (a < 0 || b < 0) {
      throw ParseError(source, line_no,
                       "negative id in '" + std::string(body) + "'");
    }
    raw.emplace_back(a, b);
  }

  LoadedGraph out;
  if (kind == EdgeListKind::bipartite) {
    std::vector<std::int64_t> left, right;
    for (const auto& [a, b] : raw) {
      left.push_back(a);
      right.push_back(b);
    }
    auto [left_ids, left_index] = compact(std::move(left));
    auto [right_ids, right_index] = compact(std::move(right));
    BipartiteGraph::AdjacencyLists adjacency(right_ids.size());
    for (const auto& [a, b] : raw) {
      adjacency[right_index.at(b)].push_back(left_index.at(a));
    }
    for (auto& list : adjacency) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    out.graph = BipartiteGraph(left_ids.size(), std::move(adjacency));
    out.offline_ids = std::move(left_ids);
    out.online_ids = std::move(right_ids);
  } else {
    std::vector<std::int64_t> all;
    for (const auto& [a, b] : raw) {
      all.push_back(a);
      all.push_back(b);
    }
    auto [ids, index] = compact(std::move(all));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) {
      std::size_t i = index.at(a), j = index.at(b);
      if (i > j) std::swap(i, j);
      edges.emplace_back(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.graph = bipartite_double_cover(edges, ids.size());
    out.offline_ids = ids;
    out.online_ids = std::move(ids);
  }
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, EdgeListKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path.string());
  return parse_edge_list(in, kind, path.string());
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g,
                     std::span<const std::int64_t> offline_ids,
                     std::span<const std::int64_t> online_ids) {
  auto offline_id = [&](NodeIndex u) -> std::int64_t {
    return offline_ids.empty() ? u : offline_ids[u];
  };
  auto online_id = [&](NodeIndex v) -> std::int64_t {
    return online_ids.empty() ? v : online_ids[v];
  };
  for (std::size_t v = 0; v < g.m_online(); ++v) {
    for (NodeIndex u : g.neighbors(static_cast<NodeIndex>(v))) {
      out << offline_id(u) << ' ' << online_id(static_cast<NodeIndex>(v)) << '\n';
    }
  }
}

void save_edge_list(const std::filesystem::path& path, const BipartiteGraph& g,
                    std::span<const std::int64_t> offline_ids,
                    std::span<const std::int64_t> online_ids) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list " + path.string());
  out << "# offline online\n";
  write_edge_list(out, g, offline_ids, online_ids);
}

DegreePredictor first_snapshot_predictor(
    const LoadedGraph& first, std::span<const std::int64_t> target_offline_ids) {
  const auto deg = first.graph.offline_degrees();
  std::unordered_map<std::int64_t, double> known;
  known.reserve(first.offline_ids.size());
  for (std::size_t k = 0; k < first.offline_ids.size(); ++k) {
    known.emplace(first.offline_ids[k], static_cast<double>(deg[k]));
  }
  std::vector<double> sigma;
  sigma.reserve(target_offline_ids.size());
  for (std::int64_t id : target_offline_ids) {
    auto it = known.find(id);
    sigma.push_back(it == known.end() ? 1.0 : it->second);
  }
  return DegreePredictor(std::move(sigma));
}

}  // namespace degmatch
