#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace annealbench {

struct Edge {
  std::uint32_t u;
  std::uint32_t v;
  double weight = 1.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph. Edges are stored with u < v, sorted, unique.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Validates endpoints, rejects self-loops and duplicates, orders each edge.
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;
  bool has_edge(std::size_t u, std::size_t v) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// "p <nodes> <edges>" header, then "u v w" lines (0-based). '#' starts a comment.
WeightedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const WeightedGraph& g, const std::string& header = {});

/// DIMACS clique/graph format: "c" comments, "p edge N M", "e u v" (1-based).
WeightedGraph read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const WeightedGraph& g, const std::string& header = {});

/// Complement on the same vertex set, unit weights.
WeightedGraph complement(const WeightedGraph& g);

}  // namespace annealbench
