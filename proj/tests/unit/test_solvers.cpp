#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "annealbench/errors.hpp"
#include "annealbench/formulations.hpp"
#include "annealbench/generators.hpp"
#include "annealbench/solvers.hpp"
#include "annealbench/thread_pool.hpp"
#include "../oracles.hpp"

using namespace annealbench;

namespace {

QuboProblem single(double c) { return generic_problem(QuboMatrix(1, {{0, 0, c}})); }

QuboProblem path_mvc() { return mvc_to_qubo(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 2.0); }

double best_energy(const SampleSet& s) { return s.samples[s.best_index()].energy; }

void check_consistent(const QuboProblem& p, const SampleSet& s) {
  for (const auto& x : s.samples) CHECK(oracle::close(x.energy, energy(p.qubo, x.bits)));
}

}  // namespace

TEST_CASE("SA single basin") {
  SaConfig cfg;
  cfg.num_reads = 20;
  cfg.sweeps = 10;
  const auto s = simulated_annealing(single(5.0), cfg);
  CHECK(s.size() == 20);
  for (const auto& x : s.samples) {
    CHECK(x.bits == Bits{0});
    CHECK(x.energy == 0.0);
  }
}

TEST_CASE("SA, PT and tabu find the path cover") {
  const auto p = path_mvc();
  SaConfig sa;
  sa.num_reads = 10;
  sa.sweeps = 100;
  CHECK(best_energy(simulated_annealing(p, sa)) == 1.0);
  PtConfig pt;
  pt.replicas = 4;
  pt.iterations = 200;
  CHECK(best_energy(parallel_tempering(p, pt)) == 1.0);
  TabuConfig tb;
  tb.max_iterations = 50;
  tb.restarts = 3;
  CHECK(best_energy(tabu_search(p, tb)) == 1.0);
}

TEST_CASE("tabu single variable") {
  TabuConfig cfg;
  cfg.restarts = 2;
  cfg.max_iterations = 5;
  const auto s = tabu_search(single(-3.0), cfg);
  CHECK(s.samples[s.best_index()].bits == Bits{1});
  CHECK(best_energy(s) == -3.0);
}

TEST_CASE("PT on a two-bit landscape") {
  const auto p = generic_problem(QuboMatrix(2, {{0, 0, 1.0}, {1, 1, -2.0}, {0, 1, 0.5}}));
  PtConfig cfg;
  cfg.replicas = 8;
  cfg.iterations = 100;
  const auto s = parallel_tempering(p, cfg);
  for (const auto& x : s.samples) {
    CHECK(x.bits == Bits{0, 1});
    CHECK(x.energy == -2.0);
  }
}

TEST_CASE("solvers on small random QUBOs agree with enumeration") {
  int sa_hits = 0, pt_hits = 0, tabu_hits = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    const auto d = oracle::random_qubo(12, 500 + t);
    const auto p = generic_problem(oracle::to_matrix(d));
    const double opt = oracle::min_energy(d);
    SaConfig sa;
    sa.num_reads = 20;
    sa.sweeps = 200;
    sa.seed = t;
    const auto s1 = simulated_annealing(p, sa);
    check_consistent(p, s1);
    sa_hits += best_energy(s1) == opt;
    PtConfig pt;
    pt.replicas = 8;
    pt.iterations = 2000;
    pt.seed = t;
    const auto s2 = parallel_tempering(p, pt);
    check_consistent(p, s2);
    pt_hits += best_energy(s2) == opt;
    TabuConfig tb;
    tb.max_iterations = 1000;
    tb.restarts = 3;
    tb.seed = t;
    const auto s3 = tabu_search(p, tb);
    check_consistent(p, s3);
    tabu_hits += best_energy(s3) == opt;
    for (const auto& s : {s1, s2, s3})
      for (const auto& x : s.samples) CHECK(x.energy >= opt);
  }
  CHECK(sa_hits >= 9);
  CHECK(pt_hits >= 9);
  CHECK(tabu_hits >= 9);
}

TEST_CASE("tabu matches enumeration on n=16 QUBOs") {
  int hits = 0;
  for (int t = 0; t < 20; ++t) {
    const auto d = oracle::random_qubo(16, 900 + t);
    TabuConfig tb;
    tb.tenure = 10;
    tb.max_iterations = 10000;
    tb.restarts = 1;
    tb.seed = t;
    hits += best_energy(tabu_search(generic_problem(oracle::to_matrix(d)), tb)) == oracle::min_energy(d);
  }
  CHECK(hits >= 18);
}

TEST_CASE("parallel-trial acceptance probabilities") {
  // Three uphill candidates with deltas 1, 2, 3 at beta = 0.7: each is accepted
  // independently with exp(-beta d) and one is chosen uniformly among those.
  const QuboMatrix q(3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}});
  const double beta = 0.7;
  const double p[3] = {std::exp(-beta), std::exp(-2 * beta), std::exp(-3 * beta)};
  double expect[3] = {0, 0, 0};
  for (std::uint64_t m = 1; m < 8; ++m) {
    double pr = 1.0;
    int cnt = 0;
    for (int k = 0; k < 3; ++k) {
      const bool acc = (m >> k) & 1u;
      pr *= acc ? p[k] : 1 - p[k];
      cnt += acc;
    }
    for (int k = 0; k < 3; ++k)
      if ((m >> k) & 1u) expect[k] += pr / cnt;
  }
  Rng rng(17);
  std::vector<std::uint32_t> scratch;
  const int trials = 200000;
  int hits[3] = {0, 0, 0};
  for (int t = 0; t < trials; ++t) {
    FlipState s(q, Bits{0, 0, 0});
    if (auto k = parallel_trial_step(s, beta, 0.0, rng, scratch)) hits[*k]++;
  }
  for (int k = 0; k < 3; ++k) CHECK(std::abs(hits[k] / double(trials) - expect[k]) < 0.005);

  // An offset shifts every delta down.
  int flips = 0;
  const QuboMatrix single(1, {{0, 0, 2.0}});
  for (int t = 0; t < trials; ++t) {
    FlipState s(single, Bits{0});
    flips += parallel_trial_step(s, 1.0, 1.5, rng, scratch).has_value();
  }
  CHECK(std::abs(flips / double(trials) - std::exp(-0.5)) < 0.005);
}

TEST_CASE("parallel-trial acceptance with many rare candidates") {
  // Forty uphill candidates with acceptance between 2e-2 and 1e-4, plus one
  // with acceptance near 1e-30.
  const std::size_t n = 41;
  const double beta = 1.5;
  std::vector<QuboMatrix::Term> terms;
  std::vector<double> p(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = k + 1 < n ? 2.5 + 0.1 * k : 46.0;
    terms.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k), d});
    p[k] = std::exp(-beta * d);
  }
  const QuboMatrix q(n, terms);
  // P(k chosen) = p_k * E[1 / (1 + accepted others)], by a count distribution.
  std::vector<double> expect(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> dist{1.0};
    for (std::size_t o = 0; o < n; ++o) {
      if (o == k) continue;
      std::vector<double> next(dist.size() + 1, 0.0);
      for (std::size_t c = 0; c < dist.size(); ++c) {
        next[c] += dist[c] * (1 - p[o]);
        next[c + 1] += dist[c] * p[o];
      }
      dist = std::move(next);
    }
    for (std::size_t c = 0; c < dist.size(); ++c) expect[k] += p[k] * dist[c] / double(c + 1);
  }
  double none = 1.0;
  for (double pk : p) none *= 1 - pk;

  Rng rng(23);
  std::vector<std::uint32_t> scratch;
  const int trials = 400000;
  std::vector<int> hits(n, 0);
  int idle = 0;
  for (int t = 0; t < trials; ++t) {
    FlipState s(q, Bits(n, 0));
    if (auto k = parallel_trial_step(s, beta, 0.0, rng, scratch)) hits[*k]++;
    else ++idle;
  }
  CHECK(std::abs(idle / double(trials) - none) < 0.004);
  for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(hits[k] / double(trials) - expect[k]) < 0.0015);
  CHECK(hits[n - 1] == 0);
}

TEST_CASE("PT with one replica and no exchange is parallel-trial annealing at fixed beta") {
  const auto d = oracle::random_qubo(10, 77);
  const auto p = generic_problem(oracle::to_matrix(d));
  PtConfig cfg;
  cfg.replicas = 1;
  cfg.iterations = 500;
  cfg.swap_interval = 0;
  cfg.beta_ladder = {0.3};
  cfg.seed = 5;
  cfg.initial_state = oracle::bits_of(0x2a5, 10);
  const auto s = parallel_tempering(p, cfg);

  FlipState st(p.qubo, cfg.initial_state);
  auto rng = Rng::stream(5, "pt.walker", 0);
  std::vector<std::uint32_t> scratch;
  Bits best = st.bits();
  double best_e = st.energy();
  for (std::size_t i = 0; i < cfg.iterations; ++i)
    if (parallel_trial_step(st, 0.3, 0.0, rng, scratch) && st.energy() < best_e) best_e = st.energy(), best = st.bits();
  CHECK(s.samples[0].bits == best);
}

TEST_CASE("best-so-far traces are non-increasing") {
  const auto p = generic_problem(oracle::to_matrix(oracle::random_qubo(14, 3)));
  std::vector<double> pt_trace;
  PtConfig pt;
  pt.replicas = 4;
  pt.iterations = 5000;
  pt.trace_every = 100;
  pt.trace = [&](std::size_t, std::size_t, double b) { pt_trace.push_back(b); };
  parallel_tempering(p, pt);
  CHECK(pt_trace.size() == 50);
  CHECK(std::is_sorted(pt_trace.rbegin(), pt_trace.rend()));

  std::vector<std::vector<double>> sa_traces(8);
  SaConfig sa;
  sa.num_reads = 8;
  sa.sweeps = 50;
  sa.trace = [&](std::size_t i, std::size_t, double b) { sa_traces.at(i).push_back(b); };
  simulated_annealing(p, sa);
  for (const auto& v : sa_traces) {
    CHECK_FALSE(v.empty());
    CHECK(std::is_sorted(v.rbegin(), v.rend()));
  }

  std::vector<std::vector<double>> tb_traces(4);
  TabuConfig tb;
  tb.restarts = 4;
  tb.max_iterations = 300;
  tb.trace = [&](std::size_t i, std::size_t, double b) { tb_traces.at(i).push_back(b); };
  tabu_search(p, tb);
  for (const auto& v : tb_traces) {
    CHECK_FALSE(v.empty());
    CHECK(std::is_sorted(v.rbegin(), v.rend()));
  }
}

TEST_CASE("solver results do not depend on the thread count") {
  const auto p = generic_problem(oracle::to_matrix(oracle::random_qubo(20, 8, 0.5)));
  auto run_all = [&] {
    SaConfig sa;
    sa.num_reads = 16;
    sa.sweeps = 100;
    sa.seed = 3;
    PtConfig pt;
    pt.replicas = 8;
    pt.iterations = 1000;
    pt.swap_interval = 10;
    pt.seed = 3;
    TabuConfig tb;
    tb.restarts = 5;
    tb.max_iterations = 200;
    tb.seed = 3;
    std::vector<Bits> all;
    for (const auto& s : {simulated_annealing(p, sa), parallel_tempering(p, pt), tabu_search(p, tb),
                          random_sampler(p, 10, 3)})
      for (const auto& x : s.samples) all.push_back(x.bits);
    return all;
  };
  set_thread_count(1);
  const auto one = run_all();
  set_thread_count(4);
  const auto four = run_all();
  set_thread_count(0);
  CHECK(one == four);
}

TEST_CASE("random sampler") {
  const auto qp = qap_to_qubo(gen_tinyqap(5, 1), std::nullopt);
  const auto s = random_sampler(qp, 50, 2);
  CHECK(s.size() == 50);
  for (const auto& x : s.samples) {
    CHECK(qap_violations(5, x.bits) == 0);
    CHECK(x.feasible);
  }
  const auto one = random_sampler(maxcut_to_qubo(WeightedGraph(1, {})), 20, 1);
  for (const auto& x : one.samples) CHECK(x.bits.size() == 1);
  CHECK_THROWS_AS(random_sampler(qp, 0, 1), ParameterError);
}

TEST_CASE("configuration checks") {
  SaConfig sa;
  sa.sweeps = 0;
  CHECK_THROWS_AS(simulated_annealing(single(1.0), sa), ParameterError);
  sa.sweeps = 10;
  sa.beta_range = BetaRange{2.0, 1.0};
  CHECK_THROWS_AS(simulated_annealing(single(1.0), sa), ParameterError);
  TabuConfig tb;
  tb.tenure = 0;
  CHECK_THROWS_AS(tabu_search(single(1.0), tb), ParameterError);
  PtConfig pt;
  pt.beta_ladder = {1.0, 2.0};
  pt.replicas = 3;
  CHECK_THROWS_AS(parallel_tempering(single(1.0), pt), ParameterError);
  CHECK_THROWS_AS(simulated_annealing(generic_problem(QuboMatrix(0, {})), SaConfig{}), EmptyInputError);
}

TEST_CASE("auto beta range") {
  const QuboMatrix q(2, {{0, 0, 1.0}, {1, 1, -4.0}, {0, 1, 0.5}});
  const auto r = auto_beta_range(q);
  CHECK(r.hot == doctest::Approx(std::log(2.0) / 4.5));
  CHECK(r.cold == doctest::Approx(std::log(100.0) / 0.5));
  const auto l = geometric_ladder(1.0, 8.0, 4);
  CHECK(l[1] == doctest::Approx(2.0));
  CHECK(l[3] == doctest::Approx(8.0));
}

TEST_CASE("QUBO brute force") {
  const QuboMatrix q(2, {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, -3.0}});
  const auto o = brute_force_qubo(q);
  CHECK(o.x == Bits{1, 1});
  CHECK(o.energy == -1.0);
  const auto tri = maxcut_to_qubo(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  CHECK(tri.reported_energy(brute_force_qubo(tri.qubo).energy) == 2.0);
  CHECK(brute_force_qubo(path_mvc().qubo).energy == 1.0);
  // Ties resolve to the lexicographically smallest vector.
  CHECK(brute_force_qubo(QuboMatrix(3, {})).x == Bits{0, 0, 0});
  CHECK(brute_force_qubo(QuboMatrix(2, {{0, 0, -1.0}, {1, 1, -1.0}, {0, 1, 1.0}})).x == Bits{0, 1});
  CHECK_THROWS_AS(brute_force_qubo(QuboMatrix(25, {})), CapacityError);
  for (int t = 0; t < 10; ++t) {
    const auto d = oracle::random_qubo(14, 40 + t, 0.7);
    CHECK(brute_force_qubo(oracle::to_matrix(d)).energy == oracle::min_energy(d));
  }
}

TEST_CASE("minimiser enumeration") {
  const auto p = path_mvc();
  const auto m = enumerate_minimizers(p.qubo);
  REQUIRE(m.size() == 1);
  CHECK(m[0] == Bits{0, 1, 0});
  const auto all = enumerate_minimizers(QuboMatrix(3, {}));
  CHECK(all.size() == 8);
}

TEST_CASE("QAP brute force") {
  const QapInstance one(Matrix(1, 1, 0.0), Matrix(1, 1, 2.0));
  CHECK(brute_force_qap(one).perm == Permutation{0});
  CHECK(brute_force_qap(one).energy == 0.0);
  Matrix f(2, 2, 0.0), d(2, 2, 0.0);
  f(0, 1) = f(1, 0) = 1.0;
  d(0, 1) = d(1, 0) = 3.0;
  const auto o = brute_force_qap(QapInstance(f, d));
  CHECK(o.energy == 6.0);
  CHECK(o.perm == Permutation{0, 1});
  CHECK(all_optimal_permutations(QapInstance(f, d)).size() == 2);
  CHECK_THROWS_AS(brute_force_qap(gen_tinyqap(11)), CapacityError);
}

TEST_CASE("TinyQAP n=8: permutation enumeration agrees with the QUBO restricted to permutations") {
  const auto inst = gen_tinyqap(8, 1234);
  const auto q = qap_to_qubo(inst, std::nullopt);
  double best = 1e300;
  std::size_t evaluations = 0;
  for (const auto& p : oracle::all_permutations(8)) {
    best = std::min(best, energy(q.qubo, permutation_to_bits(p)));
    ++evaluations;
  }
  CHECK(evaluations == 40320);
  CHECK(brute_force_qap(inst).energy == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("permutation annealer") {
  Matrix f(2, 2, 0.0), d(2, 2, 0.0);
  f(0, 1) = 5.0;
  d(0, 1) = 1.0;
  d(1, 0) = 4.0;
  const QapInstance two(f, d);
  QapObjective obj2(two);
  PermAnnealConfig c2;
  c2.iterations = 10;
  const auto r2 = permutation_annealer(obj2, c2);
  CHECK(r2.value == 5.0);
  CHECK(r2.perm == Permutation{0, 1});

  const auto inst = gen_tinyqap(8, 1234);
  const double opt = brute_force_qap(inst).energy;
  QapObjective obj(inst);
  PermAnnealConfig cfg;
  cfg.iterations = 100000;
  cfg.seed = 1;
  const auto r = permutation_annealer(obj, cfg);
  CHECK(is_permutation(r.perm));
  CHECK(r.value == doctest::Approx(qap_objective(inst, r.perm)));
  CHECK(r.value <= 1.05 * opt);

  PermAnnealConfig bad;
  bad.iterations = 0;
  CHECK_THROWS_AS(permutation_annealer(obj, bad), ParameterError);
}

TEST_CASE("QAP swap deltas match recomputation") {
  const auto inst = gen_tinyqap(7, 4);
  QapObjective obj(inst);
  Permutation p{3, 1, 4, 0, 6, 2, 5};
  double v = obj.reset(p);
  auto rng = Rng::stream(4, "swaps");
  for (int t = 0; t < 200; ++t) {
    const auto i = rng.below(7), j = rng.below(7);
    const double dlt = obj.swap_delta(i, j);
    std::swap(p[i], p[j]);
    CHECK(v + dlt == doctest::Approx(qap_objective(inst, p)));
    obj.commit_swap(i, j);
    v += dlt;
  }
}
