#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "annealbench/errors.hpp"
#include "annealbench/generators.hpp"
#include "annealbench/solvers.hpp"
#include "../oracles.hpp"

using namespace annealbench;

TEST_CASE("Chimera counts") {
  CHECK(gen_chimera(1).node_count() == 8);
  CHECK(gen_chimera(1).edge_count() == 16);
  CHECK(gen_chimera(2).node_count() == 32);
  CHECK(gen_chimera(2).edge_count() == 80);
  const auto g = gen_chimera(16, 4);
  CHECK(g.node_count() == 2048);
  CHECK(g.edge_count() == 6016);
  CHECK(g.max_degree() == 6);
}

TEST_CASE("subgraph sampling is induced") {
  const auto g = gen_chimera(16, 4);
  CHECK(subgraph_sample(g, g.node_count(), 9) == g);
  const auto s = subgraph_sample(g, 204, 11);
  CHECK(s.node_count() == 204);
  CHECK(s.edge_count() <= 6016);
  CHECK(s.edge_count() > 0);
  CHECK_THROWS_AS(subgraph_sample(g, 3000, 1), ParameterError);


  // Tag each source edge with its endpoints, then check that the sample is the
  // order-preserving induced subgraph on the survivors it reveals.
  std::vector<Edge> tagged;
  for (const auto& e : g.edges()) tagged.push_back({e.u, e.v, e.u * 4096.0 + e.v + 1.0});
  const WeightedGraph tg(g.node_count(), tagged);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto sub = subgraph_sample(tg, 1500, seed, WeightMode::source);
    std::map<std::uint32_t, std::uint32_t> to_new;
    bool consistent = true;
    for (const auto& e : sub.edges()) {
      const auto w = static_cast<std::uint64_t>(e.weight - 1.0);
      const auto u = static_cast<std::uint32_t>(w / 4096), v = static_cast<std::uint32_t>(w % 4096);
      consistent &= to_new.emplace(u, e.u).first->second == e.u;
      consistent &= to_new.emplace(v, e.v).first->second == e.v;
    }
    CHECK(consistent);
    std::uint32_t prev = 0;
    bool first = true, increasing = true;
    for (auto [o, nw] : to_new) {
      if (!first) increasing &= nw > prev;
      prev = nw, first = false;
    }
    CHECK(increasing);
    std::size_t induced = 0;
    for (const auto& e : g.edges())
      if (to_new.count(e.u) && to_new.count(e.v)) {
        ++induced;
        CHECK(sub.has_edge(to_new[e.u], to_new[e.v]));
      }
    CHECK(induced == sub.edge_count());
  }
}

TEST_CASE("subgraph weight modes") {
  const auto g = gen_chimera(2, 4);
  const auto pm = subgraph_sample(g, 32, 3, WeightMode::plus_minus_one);
  for (const auto& e : pm.edges()) CHECK(std::abs(e.weight) == 1.0);
  const auto uni = subgraph_sample(g, 32, 3, WeightMode::uniform01);
  for (const auto& e : uni.edges())
    CHECK((e.weight > 0.0 && e.weight <= 1.0));
}

TEST_CASE("gnm validity") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto g = gnm_random_graph(30, 100, s);
    CHECK(g.edge_count() == 100);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& e : g.edges()) {
      CHECK(e.u < e.v);
      CHECK(seen.insert({e.u, e.v}).second);
    }
  }
  CHECK(gnm_random_graph(10, 45, 1).edge_count() == 45);
  CHECK_THROWS_AS(gnm_random_graph(10, 46, 1), ParameterError);
}

TEST_CASE("degree sweep sizes") {
  CHECK(edges_for_degree(145, 140) == 10150);
  CHECK(edges_for_degree(145, 1) == 72);
  CHECK(edges_for_degree(145, 144) == 10440);
  const auto d = degree_sweep(32, 140);
  CHECK(d.size() == 32);
  CHECK(d.front() == 1);
  CHECK(d.back() == 140);
  CHECK(std::is_sorted(d.begin(), d.end()));
  CHECK(std::adjacent_find(d.begin(), d.end()) == d.end());
  for (auto deg : d) {
    const auto m = edges_for_degree(145, deg);
    CHECK(2 * m / 145 <= deg);
    CHECK(deg - 2 * m / 145 <= 1);
  }
}

TEST_CASE("TinyQAP construction") {
  const auto inst = gen_tinyqap(7, 1234);
  const auto n = inst.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(inst.flow(i, i) == 0.0);
    CHECK(inst.dist(i, i) == 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(inst.flow(i, j) == inst.flow(j, i));
      CHECK((inst.flow(i, j) >= 0.0 && inst.flow(i, j) < 1.0));
      for (std::size_t k = 0; k < n; ++k) CHECK(inst.dist(i, k) <= inst.dist(i, j) + inst.dist(j, k) + 1e-12);
    }
  }
  CHECK(gen_tinyqap(7, 1234) == inst);
  CHECK_FALSE(gen_tinyqap(7, 1235) == inst);
  CHECK_THROWS_AS(gen_tinyqap(2), ParameterError);
}

constexpr double TINYQAP3_FROZEN = 1.0557060959233384;

TEST_CASE("TinyQAP n=3 frozen optimum") {
  const auto inst = gen_tinyqap(3, 1234);
  std::vector<std::vector<double>> F(3, std::vector<double>(3)), D = F;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) F[i][j] = inst.flow(i, j), D[i][j] = inst.dist(i, j);
  double best = 1e300;
  for (const auto& p : oracle::all_permutations(3)) best = std::min(best, oracle::qap_value(F, D, p));
  CHECK(brute_force_qap(inst).energy == doctest::Approx(best).epsilon(1e-12));
  CHECK(best == doctest::Approx(TINYQAP3_FROZEN).epsilon(1e-12));
}

TEST_CASE("uniform orders are valid") {
  const auto o = gen_orders(10, 10, 3, Skew::none, 4);
  CHECK(o.orders.size() == 10);
  for (const auto& ord : o.orders) {
    CHECK(ord.size() == 3);
    CHECK(std::set<std::uint32_t>(ord.begin(), ord.end()).size() == 3);
    for (auto s : ord) CHECK(s < 10);
  }
  CHECK(o.line_count() == 30);
  CHECK_THROWS_AS(gen_orders(3, 5, 4, Skew::none, 1), ParameterError);
}

TEST_CASE("pareto orders put 80 percent of lines on 20 percent of SKUs") {
  const auto w = sku_weights(100, Skew::pareto8020);
  std::vector<double> sorted = w;
  std::sort(sorted.rbegin(), sorted.rend());
  CHECK(std::accumulate(sorted.begin(), sorted.begin() + 20, 0.0) == doctest::Approx(0.8));

  const auto o = gen_orders(100, 10000, 1, Skew::pareto8020, 21);
  std::vector<double> count(100, 0.0);
  for (const auto& ord : o.orders)
    for (auto s : ord) count[s] += 1.0;
  std::sort(count.rbegin(), count.rend());
  const double share = std::accumulate(count.begin(), count.begin() + 20, 0.0) / static_cast<double>(o.line_count());
  CHECK(share == doctest::Approx(0.8).epsilon(0.025));
  CHECK(std::abs(share - 0.8) <= 0.02);
}

TEST_CASE("WH-8 scale") {
  const auto o = gen_orders(8, 20, 3, Skew::pareto8020, 2);
  CHECK(o.n_skus == 8);
  for (const auto& ord : o.orders)
    for (auto s : ord) CHECK(s < 8);
}

TEST_CASE("serialisation is deterministic and round trips") {
  auto dump = [](std::uint64_t seed) {
    std::ostringstream ss;
    write_orders_csv(ss, gen_orders(50, 30, 4, Skew::pareto8020, seed), "orders seed=" + std::to_string(seed));
    return ss.str();
  };
  CHECK(dump(3) == dump(3));
  std::istringstream in(dump(3));
  CHECK(read_orders_csv(in) == gen_orders(50, 30, 4, Skew::pareto8020, 3));
  std::ostringstream a, b;
  write_edge_list(a, gnm_random_graph(40, 100, 8));
  write_edge_list(b, gnm_random_graph(40, 100, 8));
  CHECK(a.str() == b.str());
}

TEST_CASE("Hamming graph") {
  const auto g = gen_hamming(8, 4);
  CHECK(g.node_count() == 256);
  CHECK(g.edge_count() == 20864);
  CHECK(g.has_edge(0, 15));
  CHECK_FALSE(g.has_edge(0, 7));
}
