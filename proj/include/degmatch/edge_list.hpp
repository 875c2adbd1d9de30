#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "degmatch/graph.hpp"

namespace degmatch {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class EdgeListKind {
  /// "u v": u is an offline id, v an online id.
  bipartite,
  /// "a b": an undirected edge; the result is the bipartite double cover.
  undirected,
};

/// A graph plus the original ids of its dense indices, so predictors can be
/// joined across snapshots that share an id universe.
struct LoadedGraph {
  BipartiteGraph graph;
  std::vector<std::int64_t> offline_ids;
  std::vector<std::int64_t> online_ids;
};

/// Whitespace-separated integer pairs, one per line. Blank lines and lines
/// starting with '#' are ignored. Ids are compacted to dense indices in
/// increasing id order; repeated edges are kept once. Throws ParseError with
/// the line number on malformed lines or negative ids.
LoadedGraph parse_edge_list(std::istream& in, EdgeListKind kind,
                            const std::string& source = "<stream>");
LoadedGraph load_edge_list(const std::filesystem::path& path,
                           EdgeListKind kind = EdgeListKind::bipartite);

/// One "u v" line per edge, ids taken from the given maps (dense indices
/// when the maps are empty). Online nodes are written in index order.
void write_edge_list(std::ostream& out, const BipartiteGraph& g,
                     std::span<const std::int64_t> offline_ids = {},
                     std::span<const std::int64_t> online_ids = {});
void save_edge_list(const std::filesystem::path& path, const BipartiteGraph& g,
                    std::span<const std::int64_t> offline_ids = {},
                    std::span<const std::int64_t> online_ids = {});

/// sigma over `target_offline_ids`: the node's degree in `first` if it
/// appears there, otherwise 1.
DegreePredictor first_snapshot_predictor(
    const LoadedGraph& first, std::span<const std::int64_t> target_offline_ids);

}  // namespace degmatch
