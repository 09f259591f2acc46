#include "annealbench/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"
#include "annealbench/rng.hpp"

namespace annealbench {

WeightMode weight_mode_from_string(const std::string& s) {
  if (s == "unit") return WeightMode::unit;
  if (s == "pm1") return WeightMode::plus_minus_one;
  if (s == "uniform") return WeightMode::uniform01;
  if (s == "source") return WeightMode::source;
  throw ParameterError("unknown weight mode '" + s + "' (unit|pm1|uniform|source)");
}

Skew skew_from_string(const std::string& s) {
  if (s == "none") return Skew::none;
  if (s == "pareto8020") return Skew::pareto8020;
  throw ParameterError("unknown skew '" + s + "' (none|pareto8020)");
}

std::string to_string(WeightMode m) {
  switch (m) {
    case WeightMode::unit: return "unit";
    case WeightMode::plus_minus_one: return "pm1";
    case WeightMode::uniform01: return "uniform";
    case WeightMode::source: return "source";
  }
  return "unit";
}

std::string to_string(Skew s) { return s == Skew::none ? "none" : "pareto8020"; }

WeightedGraph gen_chimera(std::size_t m, std::size_t t) {
  if (m < 1 || t < 1) throw ParameterError("chimera needs m >= 1 and t >= 1");
  auto id = [&](std::size_t r, std::size_t c, std::size_t shore, std::size_t k) {
    return static_cast<std::uint32_t>(((r * m + c) * 2 + shore) * t + k);
  };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t a = 0; a < t; ++a)
        for (std::size_t b = 0; b < t; ++b) edges.push_back({id(r, c, 0, a), id(r, c, 1, b), 1.0});
      for (std::size_t k = 0; k < t; ++k) {
        if (r + 1 < m) edges.push_back({id(r, c, 0, k), id(r + 1, c, 0, k), 1.0});
        if (c + 1 < m) edges.push_back({id(r, c, 1, k), id(r, c + 1, 1, k), 1.0});
      }
    }
  return WeightedGraph(2 * m * m * t, std::move(edges));
}

WeightedGraph subgraph_sample(const WeightedGraph& g, std::size_t n, std::uint64_t seed,
                              WeightMode weights) {
  const auto total = g.node_count();
  if (n > total)
    throw ParameterError("cannot keep " + std::to_string(n) + " of " + std::to_string(total) +
                         " nodes");
  auto rng = Rng::stream(seed, "subgraph.remove");
  std::vector<std::uint32_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = static_cast<std::uint32_t>(i);
  rng.shuffle(order.begin(), order.end());
  std::vector<bool> keep(total, true);
  for (std::size_t i = 0; i < total - n; ++i) keep[order[i]] = false;
  std::vector<std::uint32_t> relabel(total, 0);
  std::uint32_t next = 0;
  for (std::size_t v = 0; v < total; ++v)
    if (keep[v]) relabel[v] = next++;

  auto wrng = Rng::stream(seed, "subgraph.weights");
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!keep[e.u] || !keep[e.v]) continue;
    double w = e.weight;
    if (weights == WeightMode::unit) w = 1.0;
    if (weights == WeightMode::plus_minus_one) w = wrng.bernoulli(0.5) ? 1.0 : -1.0;
    if (weights == WeightMode::uniform01) w = wrng.uniform_open_closed();
    edges.push_back({relabel[e.u], relabel[e.v], w});
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph gnm_random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > pairs)
    throw ParameterError("m=" + std::to_string(m) + " exceeds n(n-1)/2=" + std::to_string(pairs));
  auto rng = Rng::stream(seed, "gnm.edges");
  auto pair_of = [n](std::size_t idx) {
    // Row-major enumeration of the strict upper triangle.
    std::size_t u = 0, row = n - 1;
    while (idx >= row) {
      idx -= row;
      ++u;
      --row;
    }
    return Edge{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(u + 1 + idx), 1.0};
  };
  std::vector<Edge> edges;
  edges.reserve(m);
  if (pairs <= (std::size_t{1} << 22)) {
    std::vector<std::uint32_t> idx(pairs);
    for (std::size_t i = 0; i < pairs; ++i) idx[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + rng.below(pairs - i);
      std::swap(idx[i], idx[j]);
      edges.push_back(pair_of(idx[i]));
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (edges.size() < m) {
      const auto k = rng.below(pairs);
      if (seen.insert(k).second) edges.push_back(pair_of(k));
    }
  }
  return WeightedGraph(n, std::move(edges));
}

std::vector<std::size_t> degree_sweep(std::size_t count, std::size_t max_degree) {
  if (count < 1 || max_degree < count) throw ParameterError("degree sweep needs max_degree >= count");
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    auto v = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(max_degree), t)));
    if (!d.empty() && v <= d.back()) v = d.back() + 1;
    d.push_back(v);
  }
  if (d.back() != max_degree) throw ParameterError("degree sweep overshoots its maximum");
  return d;
}

std::size_t edges_for_degree(std::size_t n, std::size_t degree) { return n * degree / 2; }

QapInstance gen_tinyqap(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw ParameterError("TinyQAP size must be at least 3");
  auto prng = Rng::stream(seed, "tinyqap.points", n);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) {
    p.first = prng.uniform();
    p.second = prng.uniform();
  }
  Matrix d = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = i == j ? 0.0 : std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
  auto frng = Rng::stream(seed, "tinyqap.flow", n);
  Matrix m = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = frng.uniform();
  Matrix f = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = i == j ? 0.0 : (m(i, j) + m(j, i)) / 2.0;
  return QapInstance(std::move(f), std::move(d));
}

WeightedGraph gen_hamming(std::size_t bits, std::size_t min_distance) {
  if (bits < 1 || bits > 20) throw ParameterError("hamming graph needs 1 <= bits <= 20");
  const std::size_t n = std::size_t{1} << bits;
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (static_cast<std::size_t>(std::popcount(u ^ v)) >= min_distance)
        edges.push_back({u, v, 1.0});
  return WeightedGraph(n, std::move(edges));
}

std::size_t OrderSet::line_count() const {
  std::size_t c = 0;
  for (const auto& o : orders) c += o.size();
  return c;
}

std::vector<double> sku_weights(std::size_t n_skus, Skew skew) {
  std::vector<double> w(n_skus, n_skus ? 1.0 / static_cast<double>(n_skus) : 0.0);
  if (skew == Skew::pareto8020 && n_skus > 1) {
    const auto top = static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(n_skus)));
    if (top < n_skus) {
      for (std::size_t i = 0; i < n_skus; ++i)
        w[i] = i < top ? 0.8 / static_cast<double>(top)
                       : 0.2 / static_cast<double>(n_skus - top);
    }
  }
  return w;
}

OrderSet gen_orders(std::size_t n_skus, std::size_t n_orders, std::size_t lines_per_order,
                    Skew skew, std::uint64_t seed) {
  if (n_skus == 0) throw ParameterError("need at least one SKU");
  if (lines_per_order == 0 || lines_per_order > n_skus)
    throw ParameterError("lines_per_order must be in [1, n_skus]");
  // Which SKUs are the popular ones is itself random.
  std::vector<std::uint32_t> rank(n_skus);
  for (std::size_t i = 0; i < n_skus; ++i) rank[i] = static_cast<std::uint32_t>(i);
  if (skew != Skew::none) Rng::stream(seed, "orders.rank").shuffle(rank.begin(), rank.end());
  const auto by_rank = sku_weights(n_skus, skew);
  std::vector<double> weight(n_skus);
  for (std::size_t r = 0; r < n_skus; ++r) weight[rank[r]] = by_rank[r];

  auto rng = Rng::stream(seed, "orders.lines");
  OrderSet out;
  out.n_skus = n_skus;
  out.orders.reserve(n_orders);
  std::vector<double> w;
  for (std::size_t o = 0; o < n_orders; ++o) {
    w = weight;
    double mass = 0.0;
    for (double v : w) mass += v;
    std::vector<std::uint32_t> order;
    for (std::size_t l = 0; l < lines_per_order; ++l) {
      double u = rng.uniform() * mass;
      std::size_t pick = n_skus;
      for (std::size_t s = 0; s < n_skus; ++s) {
        if (w[s] <= 0.0) continue;
        pick = s;
        if (u < w[s]) break;
        u -= w[s];
      }
      order.push_back(static_cast<std::uint32_t>(pick));
      mass -= w[pick];
      w[pick] = 0.0;
    }
    std::sort(order.begin(), order.end());
    out.orders.push_back(std::move(order));
  }
  return out;
}

void write_orders_csv(std::ostream& out, const OrderSet& o, const std::string& header) {
  if (!header.empty()) {
    std::istringstream ss(header);
    std::string line;
    while (std::getline(ss, line)) out << "# " << line << '\n';
  }
  out << "# skus " << o.n_skus << '\n';
  out << "order_id,sku\n";
  for (std::size_t i = 0; i < o.orders.size(); ++i)
    for (auto s : o.orders[i]) out << i << ',' << s << '\n';
}

OrderSet read_orders_csv(std::istream& in, std::size_t n_skus) {
  OrderSet o;
  std::string line;
  std::size_t declared = 0;
  bool header = false;
  std::uint32_t max_sku = 0;
  bool any = false;
  while (std::getline(in, line)) {
    if (line.starts_with("# skus ")) {
      declared = static_cast<std::size_t>(parse_int(split_ws(line.substr(7))[0]));
      continue;
    }
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].starts_with('#')) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "order_id" || tok[1] != "sku")
        throw ParseError("orders CSV must start with 'order_id,sku'");
      header = true;
      continue;
    }
    if (tok.size() != 2) throw ParseError("orders CSV row must have two fields");
    const auto id = parse_int(tok[0]);
    const auto sku = parse_int(tok[1]);
    if (id < 0 || sku < 0) throw ParseError("negative id in orders CSV");
    if (static_cast<std::size_t>(id) >= o.orders.size()) o.orders.resize(static_cast<std::size_t>(id) + 1);
    auto& ord = o.orders[static_cast<std::size_t>(id)];
    if (std::find(ord.begin(), ord.end(), static_cast<std::uint32_t>(sku)) != ord.end())
      throw ParseError("SKU repeated within order " + tok[0]);
    ord.push_back(static_cast<std::uint32_t>(sku));
    max_sku = std::max(max_sku, static_cast<std::uint32_t>(sku));
    any = true;
  }
  if (!header) throw ParseError("missing orders CSV header");
  o.n_skus = n_skus ? n_skus : declared ? declared : (any ? max_sku + 1u : 0u);
  if (any && max_sku >= o.n_skus) throw ParseError("SKU id outside the declared universe");
  for (auto& ord : o.orders) std::sort(ord.begin(), ord.end());
  return o;
}

std::string GeneratorSpec::describe() const {
  std::string s = "family=" + family + " seed=" + std::to_string(seed);
  for (const auto& [k, v] : params) s += " " + k + "=" + v;
  return s;
}

}  // namespace annealbench
