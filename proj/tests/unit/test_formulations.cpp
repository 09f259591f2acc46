#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "annealbench/errors.hpp"
#include "annealbench/formulations.hpp"
#include "annealbench/generators.hpp"
#include "../oracles.hpp"

using namespace annealbench;

namespace {

WeightedGraph path3() { return WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> r(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 1.0}}), DomainError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}}), DomainError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1.0}}), DimensionError);
  const WeightedGraph g(3, {{2, 0, 1.0}, {1, 0, 1.0}});
  CHECK(g.edges()[0] == Edge{0, 1, 1.0});
  CHECK(g.edges()[1] == Edge{0, 2, 1.0});
  CHECK(g.max_degree() == 2);
}

TEST_CASE("edge list and DIMACS parsing") {
  std::istringstream ok("# c\np 3 2\n0 1 2.5\n1 2\n");
  const auto g = read_edge_list(ok);
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0].weight == 2.5);
  std::istringstream bad("p 3 3\n0 1\n1 2\n");
  CHECK_THROWS_AS(read_edge_list(bad), ParseError);
  std::istringstream dim("c hello\np edge 4 3\ne 1 2\ne 2 3\ne 4 1\n");
  const auto d = read_dimacs(dim);
  CHECK(d.node_count() == 4);
  CHECK(d.has_edge(0, 3));
  std::istringstream dim_bad("p edge 4 2\ne 1 2\n");
  CHECK_THROWS_AS(read_dimacs(dim_bad), ParseError);
  std::stringstream rt;
  write_dimacs(rt, d, "round trip");
  CHECK(read_dimacs(rt) == d);
}

TEST_CASE("single edge cut") {
  const WeightedGraph g(2, {{0, 1, 1.0}});
  CHECK(cut_value(g, Bits{0, 1}) == 1.0);
  CHECK(cut_value(g, Bits{0, 0}) == 0.0);
}

TEST_CASE("triangle maximum cut is 2 and the QUBO negates the cut") {
  const WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const auto p = maxcut_to_qubo(g);
  CHECK(p.sense == Sense::maximize);
  CHECK(p.total_constraints == 0);
  double best = 0.0;
  oracle::for_each_bits(3, [&](const Bits& x) {
    int cut = 0;
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}}) cut += x[u] != x[v];
    best = std::max(best, static_cast<double>(cut));
    CHECK(p.reported_energy(energy(p.qubo, x)) == cut);
  });
  CHECK(best == 2.0);
}

TEST_CASE("maxcut argmin equals the best bipartition") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = subgraph_sample(gnm_random_graph(10, 20, s), 10, s, WeightMode::uniform01);
    const auto p = maxcut_to_qubo(g);
    double best_cut = 0.0, best_e = 1e300;
    oracle::for_each_bits(10, [&](const Bits& x) {
      double c = 0.0;
      for (const auto& e : g.edges()) c += x[e.u] != x[e.v] ? e.weight : 0.0;
      best_cut = std::max(best_cut, c);
      best_e = std::min(best_e, energy(p.qubo, x));
    });
    CHECK(-best_e == doctest::Approx(best_cut));
  }
}

TEST_CASE("complete graph on 145 nodes") {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < 145; ++i)
    for (std::uint32_t j = i + 1; j < 145; ++j) e.push_back({i, j, 1.0});
  const auto p = maxcut_to_qubo(WeightedGraph(145, e));
  CHECK(p.size() == 145);
  CHECK(p.qubo.quadratic_term_count() == 10440);
}

TEST_CASE("MVC single edge by hand") {
  const auto p = mvc_to_qubo(WeightedGraph(2, {{0, 1, 1.0}}), 2.0);
  CHECK(energy(p.qubo, Bits{1, 0}) == 1.0);
  CHECK(energy(p.qubo, Bits{0, 1}) == 1.0);
  CHECK(energy(p.qubo, Bits{0, 0}) == 2.0);
  CHECK(energy(p.qubo, Bits{1, 1}) == 2.0);
}

TEST_CASE("MVC path minimum is the middle node") {
  const auto p = mvc_to_qubo(path3(), 2.0);
  double best = 1e300;
  Bits arg;
  oracle::for_each_bits(3, [&](const Bits& x) {
    const double e = energy(p.qubo, x);
    if (e < best) best = e, arg = x;
  });
  CHECK(best == 1.0);
  CHECK(arg == Bits{0, 1, 0});
}

TEST_CASE("MVC alpha rules") {
  CHECK_THROWS_AS(mvc_to_qubo(path3(), 1.0), ParameterError);
  CHECK_THROWS_AS(mvc_to_qubo(path3(), 0.5), ParameterError);
  CHECK(mvc_to_qubo(path3(), std::nullopt).penalty == 2.0);
  CHECK_THROWS_AS(mvc_to_qubo(WeightedGraph(3, {{0, 1, 1.0}}), std::nullopt), ParameterError);
}

TEST_CASE("MVC violations") {
  CHECK(mvc_violations(path3(), Bits{0, 1, 0}) == 0);
  CHECK(mvc_violations(path3(), Bits{0, 0, 0}) == 2);
  CHECK_THROWS_AS(mvc_violations(path3(), Bits{0, 0}), DimensionError);
  const auto g = gnm_random_graph(12, 30, 5);
  auto rng = Rng::stream(5, "x");
  for (int t = 0; t < 100; ++t) {
    const auto x = oracle::bits_of(rng.next(), 12);
    std::size_t naive = 0;
    for (std::size_t u = 0; u < 12; ++u)
      for (std::size_t v = u + 1; v < 12; ++v)
        if (g.has_edge(u, v) && !x[u] && !x[v]) ++naive;
    CHECK(mvc_violations(g, x) == naive);
  }
}

TEST_CASE("MVC pseudo energy splits into cover size and penalty") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto g = gnm_random_graph(12, 25, s);
    const auto p = mvc_to_qubo(g, std::nullopt);
    auto rng = Rng::stream(s, "x");
    for (int t = 0; t < 50; ++t) {
      const auto x = oracle::bits_of(rng.next(), 12);
      const double pe = pseudo_energy(static_cast<double>(cover_size(x)),
                                      p.penalty * static_cast<double>(mvc_violations(g, x)));
      CHECK(energy(p.qubo, x) == doctest::Approx(pe));
    }
  }
}

TEST_CASE("QAP objective QUBO small cases") {
  const QapInstance one(Matrix(1, 1, 0.0), Matrix(1, 1, 4.0));
  CHECK(qap_objective_qubo(one).size() == 1);
  CHECK(energy(qap_objective_qubo(one), Bits{1}) == 0.0);

  Matrix f(2, 2, 0.0), d(2, 2, 0.0);
  f(0, 1) = f(1, 0) = 1.0;
  d(0, 1) = d(1, 0) = 3.0;
  const QapInstance two(f, d);
  const auto q = qap_objective_qubo(two);
  CHECK(energy(q, permutation_to_bits(Permutation{0, 1})) == 6.0);
  CHECK(energy(q, permutation_to_bits(Permutation{1, 0})) == 6.0);
  CHECK_THROWS_AS(QapInstance(Matrix(2, 2), Matrix(3, 3)), DimensionError);
}

TEST_CASE("TinyQAP n=3 QUBO energies equal direct summation") {
  const auto inst = gen_tinyqap(3, 1234);
  const auto q = qap_objective_qubo(inst);
  const auto full = qap_to_qubo(inst, std::nullopt);
  const auto F = rows_of(inst.flow), D = rows_of(inst.dist);
  for (const auto& p : oracle::all_permutations(3)) {
    const double direct = oracle::qap_value(F, D, p);
    CHECK(energy(q, permutation_to_bits(p)) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(energy(full.qubo, permutation_to_bits(p)) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(qap_objective(inst, p) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("find_index is a bijection") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<int> seen(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) seen.at(find_index(i, k, n))++;
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("constraint matrix layout") {
  const auto a1 = prepare_matrix_a(1);
  CHECK(a1.rows() == 2);
  CHECK(a1.cols() == 1);
  CHECK(a1(0, 0) == 1.0);
  CHECK(a1(1, 0) == 1.0);
  CHECK(prepare_vector_b(1) == std::vector<double>{1.0, 1.0});

  const auto a2 = prepare_matrix_a(2);
  CHECK(a2.rows() == 4);
  CHECK(a2.row(0)[0] == 1.0);
  CHECK(a2.row(0)[1] == 1.0);
  CHECK(a2.row(0)[2] == 0.0);
  CHECK(a2.row(2)[0] == 1.0);
  CHECK(a2.row(2)[2] == 1.0);
  CHECK(a2.row(2)[1] == 0.0);

  for (std::size_t n = 1; n <= 6; ++n) {
    const auto a = prepare_matrix_a(n);
    const auto b = prepare_vector_b(n);
    std::size_t nonzero_rows = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const auto row = a.row(r);
      nonzero_rows += std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; });
    }
    CHECK(nonzero_rows == 2 * n);
    auto perms = n <= 4 ? oracle::all_permutations(n) : std::vector<std::vector<std::uint32_t>>{};
    if (n > 4) {
      auto rng = Rng::stream(n, "perm");
      for (int t = 0; t < 20; ++t) {
        std::vector<std::uint32_t> p(n);
        std::iota(p.begin(), p.end(), 0u);
        rng.shuffle(p.begin(), p.end());
        perms.push_back(p);
      }
    }
    for (const auto& p : perms) {
      Bits x(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) x[i * n + p[i]] = 1;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * x[c];
        if (b[r] != 0.0 || s != 0.0) CHECK(s == b[r]);
      }
    }
  }
}

TEST_CASE("penalty QUBO equals P times the squared residual") {
  for (std::size_t n : {2u, 3u}) {
    const auto a = prepare_matrix_a(n);
    const auto b = prepare_vector_b(n);
    const double P = n == 2 ? 1.0 : 7.0;
    const auto q = a_to_q(a, b, P);
    CHECK(energy(q, Bits(n * n, 0)) == doctest::Approx(2.0 * static_cast<double>(n) * P));
    if (n == 2) {
      CHECK(energy(q, permutation_to_bits(Permutation{0, 1})) == 0.0);
      CHECK(energy(q, permutation_to_bits(Permutation{1, 0})) == 0.0);
    }
    auto rng = Rng::stream(n, "residual");
    for (int t = 0; t < 200; ++t) {
      const auto x = oracle::bits_of(rng.next(), n * n);
      double r2 = 0.0;
      for (std::size_t r = 0; r < a.rows(); ++r) {
        double s = -b[r];
        for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * x[c];
        r2 += s * s;
      }
      CHECK(oracle::close(energy(q, x), P * r2));
    }
  }
  CHECK_THROWS_AS(a_to_q(prepare_matrix_a(2), prepare_vector_b(2), 0.0), ParameterError);
  CHECK_THROWS_AS(a_to_q(prepare_matrix_a(2), prepare_vector_b(3), 1.0), DimensionError);
}

TEST_CASE("QAP QUBO on permutations equals the objective") {
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto inst = gen_tinyqap(n, 99);
    const auto p = qap_to_qubo(inst, std::nullopt);
    CHECK(p.total_constraints == 2 * n);
    CHECK(p.penalty == doctest::Approx(static_cast<double>(n) * qap_objective_qubo(inst).max_abs_coefficient()));
    for (const auto& perm : oracle::all_permutations(n)) {
      CHECK(oracle::close(energy(p.qubo, permutation_to_bits(perm)), qap_objective(inst, perm), 1e-12));
      CHECK(p.feasible(permutation_to_bits(perm)));
    }
  }
  CHECK_THROWS_AS(qap_to_qubo(gen_tinyqap(3), -1.0), ParameterError);
}

TEST_CASE("TinyQAP n=3: the six lowest configurations are the permutations") {
  const auto p = qap_to_qubo(gen_tinyqap(3, 1234), std::nullopt);
  std::vector<std::pair<double, Bits>> all;
  oracle::for_each_bits(9, [&](const Bits& x) { all.emplace_back(energy(p.qubo, x), x); });
  std::sort(all.begin(), all.end());
  for (int i = 0; i < 6; ++i) CHECK(qap_violations(3, all[i].second) == 0);
  CHECK(all[6].first > all[5].first);
}

TEST_CASE("QAP violations") {
  CHECK(qap_violations(3, permutation_to_bits(Permutation{2, 0, 1})) == 0);
  CHECK(qap_violations(3, Bits(9, 0)) == 6);
  CHECK(qap_violations(3, Bits(9, 1)) == 6);
  CHECK_THROWS_AS(qap_violations(3, Bits(8, 0)), DimensionError);
}

TEST_CASE("QAPLIB round trip and solution files") {
  const auto inst = gen_tinyqap(5, 3);
  std::stringstream ss;
  write_qaplib(ss, inst, "tiny");
  CHECK(read_qaplib(ss) == inst);
  std::istringstream short_file("3\n1 2 3\n");
  CHECK_THROWS_AS(read_qaplib(short_file), ParseError);
  std::istringstream sln("3 10\n2 3 1\n");
  const auto s = read_qaplib_solution(sln);
  CHECK(s.value == 10.0);
  CHECK(s.perm == Permutation{1, 2, 0});
}

TEST_CASE("tai12a optimum from QAPLIB files when present") {
  const std::filesystem::path dir = ANNEALBENCH_DATA_DIR "/qaplib";
  if (!std::filesystem::exists(dir / "tai12a.dat") || !std::filesystem::exists(dir / "tai12a.sln")) {
    MESSAGE("tai12a.dat/.sln not found under " << dir.string() << "; check not run");
    return;
  }
  std::ifstream d(dir / "tai12a.dat"), s(dir / "tai12a.sln");
  const auto inst = read_qaplib(d);
  const auto sol = read_qaplib_solution(s);
  CHECK(qap_objective(inst, sol.perm) == sol.value);
  CHECK(sol.value == 224416.0);
}
