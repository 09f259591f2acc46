#include "annealbench/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"

namespace annealbench {

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw DomainError("self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n_)
      throw DimensionError("edge endpoint " + std::to_string(e.v) + " >= node count " +
                           std::to_string(n_));
    if (!std::isfinite(e.weight) || e.weight == 0.0)
      throw DomainError("edge weights must be finite and non-zero");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw DomainError("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                        std::to_string(edges_[i].v) + ")");
}

std::vector<std::size_t> WeightedGraph::degrees() const {
  std::vector<std::size_t> d(n_, 0);
  for (const auto& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::size_t WeightedGraph::max_degree() const {
  const auto d = degrees();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

bool WeightedGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(),
                            Edge{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), 0},
                            [](const Edge& a, const Edge& b) {
                              return a.u != b.u ? a.u < b.u : a.v < b.v;
                            });
}

namespace {

void write_header(std::ostream& out, const std::string& header, char mark) {
  if (header.empty()) return;
  std::istringstream ss(header);
  std::string line;
  while (std::getline(ss, line)) out << mark << ' ' << line << '\n';
}

std::uint32_t node_id(std::int64_t v, std::size_t n) {
  if (v < 0 || static_cast<std::size_t>(v) >= n)
    throw ParseError("node id " + std::to_string(v) + " out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in) {
  std::string line;
  bool header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].starts_with('#')) continue;
    if (tok[0] == "p") {
      if (header || tok.size() != 3) throw ParseError("malformed edge-list header");
      n = static_cast<std::size_t>(parse_int(tok[1]));
      m = static_cast<std::size_t>(parse_int(tok[2]));
      header = true;
      edges.reserve(m);
      continue;
    }
    if (!header) throw ParseError("edge line before 'p <nodes> <edges>' header");
    if (tok.size() != 2 && tok.size() != 3) throw ParseError("edge line must read 'u v [w]'");
    Edge e{node_id(parse_int(tok[0]), n), node_id(parse_int(tok[1]), n),
           tok.size() == 3 ? parse_real(tok[2]) : 1.0};
    edges.push_back(e);
  }
  if (!header) throw ParseError("missing 'p <nodes> <edges>' header");
  if (edges.size() != m)
    throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return WeightedGraph(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const WeightedGraph& g, const std::string& header) {
  write_header(out, header, '#');
  out << "p " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
}

WeightedGraph read_dimacs(std::istream& in) {
  std::string line;
  bool header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c" || tok[0].starts_with('#')) continue;
    if (tok[0] == "p") {
      if (header || tok.size() != 4) throw ParseError("malformed DIMACS problem line");
      if (tok[1] != "edge" && tok[1] != "col")
        throw ParseError("unsupported DIMACS problem type '" + tok[1] + "'");
      n = static_cast<std::size_t>(parse_int(tok[2]));
      m = static_cast<std::size_t>(parse_int(tok[3]));
      header = true;
      edges.reserve(m);
      continue;
    }
    if (tok[0] == "e") {
      if (!header) throw ParseError("edge line before DIMACS problem line");
      if (tok.size() != 3) throw ParseError("DIMACS edge line must read 'e u v'");
      const auto u = parse_int(tok[1]) - 1, v = parse_int(tok[2]) - 1;
      edges.push_back({node_id(u, n), node_id(v, n), 1.0});
      continue;
    }
    throw ParseError("unexpected DIMACS line: " + line);
  }
  if (!header) throw ParseError("missing DIMACS problem line");
  // Some published files list an edge in both orientations.
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  if (edges.size() != m)
    throw ParseError("DIMACS header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return WeightedGraph(n, std::move(edges));
}

void write_dimacs(std::ostream& out, const WeightedGraph& g, const std::string& header) {
  write_header(out, header, 'c');
  out << "p edge " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

WeightedGraph complement(const WeightedGraph& g) {
  const auto n = g.node_count();
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) edges.push_back({u, v, 1.0});
  return WeightedGraph(n, std::move(edges));
}

}  // namespace annealbench
