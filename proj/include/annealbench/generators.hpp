#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "annealbench/graph.hpp"
#include "annealbench/qap.hpp"

namespace annealbench {

enum class WeightMode { unit, plus_minus_one, uniform01, source };
enum class Skew { none, pareto8020 };

WeightMode weight_mode_from_string(const std::string& s);
Skew skew_from_string(const std::string& s);
std::string to_string(WeightMode m);
std::string to_string(Skew s);

/// Ideal Chimera graph: m x m grid of K_{t,t} cells.
WeightedGraph gen_chimera(std::size_t m, std::size_t t = 4);

/// Keeps n uniformly chosen nodes, relabelled in original order.
WeightedGraph subgraph_sample(const WeightedGraph& g, std::size_t n, std::uint64_t seed,
                              WeightMode weights = WeightMode::unit);

WeightedGraph gnm_random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

/// Strictly increasing degrees from 1 to max_degree on a geometric grid.
std::vector<std::size_t> degree_sweep(std::size_t count = 32, std::size_t max_degree = 140);
std::size_t edges_for_degree(std::size_t n, std::size_t degree);

QapInstance gen_tinyqap(std::size_t n, std::uint64_t seed = 1234);

/// Hamming graph: vertices are bit-words, adjacent when Hamming distance >= d.
WeightedGraph gen_hamming(std::size_t bits, std::size_t min_distance);

struct OrderSet {
  std::size_t n_skus = 0;
  std::vector<std::vector<std::uint32_t>> orders;
  std::size_t line_count() const;
  friend bool operator==(const OrderSet&, const OrderSet&) = default;
};

OrderSet gen_orders(std::size_t n_skus, std::size_t n_orders, std::size_t lines_per_order,
                    Skew skew, std::uint64_t seed);

/// Line-draw probability of each SKU under the given skew.
std::vector<double> sku_weights(std::size_t n_skus, Skew skew);

/// "order_id,sku" rows, 0-based ids.
void write_orders_csv(std::ostream& out, const OrderSet& o, const std::string& header = {});
OrderSet read_orders_csv(std::istream& in, std::size_t n_skus = 0);

/// Flat key/value description of a generator run, embedded as a header comment.
struct GeneratorSpec {
  std::string family;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string describe() const;
};

}  // namespace annealbench
