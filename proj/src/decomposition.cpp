#include "annealbench/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"
#include "annealbench/rng.hpp"
#include "annealbench/thread_pool.hpp"

namespace annealbench {

std::vector<std::vector<std::uint32_t>> Partition::subsets() const {
  std::vector<std::vector<std::uint32_t>> out(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(static_cast<std::uint32_t>(i));
  return out;
}

void Partition::validate() const {
  if (k == 0 || assignment.size() % k != 0)
    throw DomainError("partition size must be a multiple of k");
  std::vector<std::size_t> count(k, 0);
  for (auto a : assignment) {
    if (a >= k) throw DomainError("subset index out of range");
    ++count[a];
  }
  for (auto c : count)
    if (c != capacity()) throw DomainError("partition subsets must all hold n/k elements");
}

PartitionMethod partition_method_from_string(const std::string& s) {
  if (s == "auto") return PartitionMethod::automatic;
  if (s == "anneal") return PartitionMethod::anneal;
  if (s == "greedy") return PartitionMethod::greedy;
  if (s == "exhaustive") return PartitionMethod::exhaustive;
  throw ParameterError("unknown partition method '" + s + "' (auto|anneal|greedy|exhaustive)");
}

std::string to_string(PartitionMethod m) {
  switch (m) {
    case PartitionMethod::automatic: return "auto";
    case PartitionMethod::anneal: return "anneal";
    case PartitionMethod::greedy: return "greedy";
    case PartitionMethod::exhaustive: return "exhaustive";
  }
  return "auto";
}

MatchMode match_mode_from_string(const std::string& s) {
  if (s == "random") return MatchMode::random;
  if (s == "exhaustive") return MatchMode::exhaustive;
  throw ParameterError("unknown matching mode '" + s + "' (random|exhaustive)");
}

double intra_weight(const Matrix& w, const Partition& p) {
  if (w.rows() != p.size() || !w.is_square()) throw DimensionError("matrix and partition disagree");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j && p.assignment[i] == p.assignment[j]) s += w(i, j);
  return s;
}

namespace {

void check_k(std::size_t n, std::size_t k) {
  if (k == 0 || n == 0 || n % k != 0)
    throw ParameterError("k=" + std::to_string(k) + " does not divide n=" + std::to_string(n));
}

// Symmetrised weights with a zero diagonal; the partition objective is
// sum over ordered pairs, i.e. twice the upper triangle of this matrix.
Matrix symmetrised(const Matrix& w, double sign) {
  const auto n = w.rows();
  Matrix s = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s(i, j) = sign * 0.5 * (w(i, j) + w(j, i));
  return s;
}

Partition exhaustive_partition(const Matrix& w, std::size_t k) {
  const auto n = w.rows();
  const auto s = n / k;
  if (n > 16) throw CapacityError("exhaustive partitioning limited to n <= 16");
  std::vector<std::uint32_t> cur(n, 0), best;
  std::vector<std::size_t> fill(k, 0);
  double best_val = -std::numeric_limits<double>::infinity();
  // Subsets are opened in order so every partition is visited once.
  auto rec = [&](auto&& self, std::size_t i, std::size_t opened, double val) -> void {
    if (i == n) {
      if (val > best_val) {
        best_val = val;
        best = cur;
      }
      return;
    }
    for (std::size_t l = 0; l < std::min(opened + 1, k); ++l) {
      if (fill[l] == s) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < i; ++j)
        if (cur[j] == l) gain += 2.0 * w(i, j);
      cur[i] = static_cast<std::uint32_t>(l);
      ++fill[l];
      self(self, i + 1, std::max(opened, l + 1), val + gain);
      --fill[l];
    }
  };
  rec(rec, 0, 0, 0.0);
  return {best, k};
}

Partition greedy_partition(const Matrix& w, std::size_t k) {
  const auto n = w.rows();
  const auto s = n / k;
  Partition p{std::vector<std::uint32_t>(n, 0), k};
  if (s == 1) {
    std::iota(p.assignment.begin(), p.assignment.end(), 0u);
    return p;
  }
  constexpr std::uint32_t none = ~0u;
  std::vector<std::uint32_t> where(n, none);
  std::vector<std::size_t> fill(k, 0);
  std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(w(i, j), i, j);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::size_t seeded = 0;
  for (const auto& [v, i, j] : pairs) {
    if (seeded == k) break;
    if (where[i] != none || where[j] != none) continue;
    where[i] = where[j] = static_cast<std::uint32_t>(seeded);
    fill[seeded] = 2;
    ++seeded;
  }
  // marginal[i*k + l]: weight between item i and current members of subset l.
  std::vector<double> marginal(n * k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (where[j] != none && i != j) marginal[i * k + where[j]] += w(i, j);
  for (std::size_t left = n - 2 * seeded; left > 0; --left) {
    std::size_t bi = n, bl = k;
    double bv = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (where[i] != none) continue;
      for (std::size_t l = 0; l < k; ++l)
        if (fill[l] < s && marginal[i * k + l] > bv) {
          bv = marginal[i * k + l];
          bi = i;
          bl = l;
        }
    }
    where[bi] = static_cast<std::uint32_t>(bl);
    ++fill[bl];
    for (std::size_t i = 0; i < n; ++i)
      if (i != bi) marginal[i * k + bl] += w(i, bi);
  }
  p.assignment = where;
  return p;
}

// Pairwise swap refinement until no swap improves the objective.
void refine_swaps(const Matrix& w, Partition& p, std::size_t max_passes = 100) {
  const auto n = p.size(), k = p.k;
  if (k < 2) return;
  std::vector<double> sum(n * k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum[i * k + p.assignment[j]] += w(i, j);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto a = p.assignment[i], b = p.assignment[j];
        if (a == b) continue;
        const double gain = (sum[i * k + b] - w(i, j)) - sum[i * k + a] +
                            (sum[j * k + a] - w(i, j)) - sum[j * k + b];
        if (gain <= 1e-12 * (1.0 + std::abs(sum[i * k + a]))) continue;
        for (std::size_t m = 0; m < n; ++m) {
          if (m != i) {
            sum[m * k + a] -= w(m, i);
            sum[m * k + b] += w(m, i);
          }
          if (m != j) {
            sum[m * k + b] -= w(m, j);
            sum[m * k + a] += w(m, j);
          }
        }
        p.assignment[i] = b;
        p.assignment[j] = a;
        improved = true;
      }
    if (!improved) break;
  }
}

Partition anneal_partition(const Matrix& w, std::size_t k, const PartitionOptions& opt) {
  const auto n = w.rows();
  const auto s = n / k;
  double wmax = 0.0;
  for (double v : w.data()) wmax = std::max(wmax, std::abs(v));
  const double penalty = static_cast<double>(n) * (wmax > 0.0 ? wmax : 1.0);
  auto var = [k](std::size_t i, std::size_t l) { return i * k + l; };
  QuboBuilder b(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w(i, j) != 0.0)
        for (std::size_t l = 0; l < k; ++l) b.add(var(i, l), var(j, l), -2.0 * w(i, j));
  // One subset per element.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      b.add_linear(var(i, l), -penalty);
      for (std::size_t m = l + 1; m < k; ++m) b.add(var(i, l), var(i, m), 2.0 * penalty);
    }
    b.add_offset(penalty);
  }
  // Exactly s elements per subset.
  const double sd = static_cast<double>(s);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      b.add_linear(var(i, l), penalty * (1.0 - 2.0 * sd));
      for (std::size_t j = i + 1; j < n; ++j) b.add(var(i, l), var(j, l), 2.0 * penalty);
    }
    b.add_offset(penalty * sd * sd);
  }
  const auto prob = generic_problem(std::move(b).build());
  PtConfig cfg;
  cfg.replicas = opt.anneal_replicas;
  cfg.iterations = opt.anneal_iterations;
  cfg.seed = opt.seed;
  const auto samples = parallel_tempering(prob, cfg);
  const auto& x = samples.samples[samples.best_index()].bits;

  constexpr std::uint32_t none = ~0u;
  std::vector<std::uint32_t> where(n, none);
  std::vector<std::size_t> fill(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t chosen = k, cnt = 0;
    for (std::size_t l = 0; l < k; ++l)
      if (x[var(i, l)]) {
        ++cnt;
        chosen = l;
      }
    if (cnt == 1 && fill[chosen] < s) {
      where[i] = static_cast<std::uint32_t>(chosen);
      ++fill[chosen];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (where[i] != none) continue;
    std::size_t bl = k;
    double bv = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < k; ++l) {
      if (fill[l] == s) continue;
      double g = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (where[j] == l) g += w(i, j);
      if (g > bv) {
        bv = g;
        bl = l;
      }
    }
    where[i] = static_cast<std::uint32_t>(bl);
    ++fill[bl];
  }
  return {where, k};
}

Partition partition_maximize(const Matrix& raw, double sign, std::size_t k, const PartitionOptions& opt) {
  if (!raw.is_square()) throw DimensionError("partition needs a square matrix");
  check_k(raw.rows(), k);
  const auto n = raw.rows();
  const Matrix w = symmetrised(raw, sign);
  if (k == 1) return {std::vector<std::uint32_t>(n, 0), 1};
  auto method = opt.method;
  if (method == PartitionMethod::automatic) {
    // Greedy alone above 512 elements; otherwise the better of greedy and anneal.
    Partition g = greedy_partition(w, k);
    if (opt.refine) refine_swaps(w, g);
    if (n <= 512) {
      Partition a = anneal_partition(w, k, opt);
      if (opt.refine) refine_swaps(w, a);
      if (intra_weight(w, a) > intra_weight(w, g)) g = std::move(a);
    }
    g.validate();
    return g;
  }
  Partition p;
  switch (method) {
    case PartitionMethod::exhaustive: return exhaustive_partition(w, k);
    case PartitionMethod::anneal: p = anneal_partition(w, k, opt); break;
    default: p = greedy_partition(w, k); break;
  }
  if (opt.refine) refine_swaps(w, p);
  p.validate();
  return p;
}

}  // namespace

Partition partition_items(const Matrix& flow, std::size_t k, const PartitionOptions& opt) {
  return partition_maximize(flow, 1.0, k, opt);
}

Partition partition_locations(const Matrix& dist, std::size_t k, const PartitionOptions& opt) {
  return partition_maximize(dist, -1.0, k, opt);
}

SubQap extract_sub_qap(const QapInstance& inst, const std::vector<std::uint32_t>& items,
                       const std::vector<std::uint32_t>& locations) {
  if (items.size() != locations.size()) throw DimensionError("sub-QAP item/location count mismatch");
  const auto s = items.size();
  Matrix f = Matrix::square(s), d = Matrix::square(s);
  for (std::size_t p = 0; p < s; ++p)
    for (std::size_t q = 0; q < s; ++q) {
      f(p, q) = inst.flow(items[p], items[q]);
      d(p, q) = inst.dist(locations[p], locations[q]);
    }
  return {QapInstance(std::move(f), std::move(d)), items, locations};
}

std::vector<std::uint32_t> match_subsets(const QapInstance& inst, const Partition& items,
                                         const Partition& locations, MatchMode mode,
                                         std::uint64_t seed) {
  if (items.k != locations.k) throw ParameterError("item and location partitions differ in k");
  const auto k = items.k;
  std::vector<std::uint32_t> m(k);
  std::iota(m.begin(), m.end(), 0u);
  if (mode == MatchMode::random) {
    auto rng = Rng::stream(seed, "match.random");
    rng.shuffle(m.begin(), m.end());
    return m;
  }
  if (k > 8) throw CapacityError("exhaustive matching limited to k <= 8");
  const auto is = items.subsets(), ls = locations.subsets();
  // proxy[a*k + b]: sub-QAP energy of pair (a, b) under a seeded random permutation.
  std::vector<double> proxy(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto sub = extract_sub_qap(inst, is[a], ls[b]);
      Permutation perm(sub.inst.size());
      std::iota(perm.begin(), perm.end(), 0u);
      auto rng = Rng::stream(seed, "match.proxy", a * k + b);
      rng.shuffle(perm.begin(), perm.end());
      proxy[a * k + b] = qap_objective(sub.inst, perm);
    }
  std::vector<std::uint32_t> best = m;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t a = 0; a < k; ++a) c += proxy[a * k + m[a]];
    if (c < best_cost) {
      best_cost = c;
      best = m;
    }
  } while (std::next_permutation(m.begin(), m.end()));
  return best;
}

Permutation repair_to_permutation(BitsView x, std::size_t n) {
  if (x.size() != n * n) throw DimensionError("assignment length must be n^2");
  Permutation perm(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pick = n;
    for (std::size_t k = 0; k < n && pick == n; ++k)
      if (x[find_index(i, k, n)] && !used[k]) pick = k;
    for (std::size_t k = 0; k < n && pick == n; ++k)
      if (!used[k]) pick = k;
    used[pick] = true;
    perm[i] = static_cast<std::uint32_t>(pick);
  }
  return perm;
}

ExteriorPenaltyResult exterior_penalty_solve(const QapInstance& inst,
                                             const ExteriorPenaltyOptions& opt,
                                             std::uint64_t seed) {
  if ((opt.alpha0 && !(*opt.alpha0 > 0.0)) || !(opt.beta > 1.0) || opt.max_rounds < 1)
    throw ParameterError("exterior penalty needs alpha0 > 0, beta > 1, max_rounds >= 1");
  const auto n = inst.size();
  ExteriorPenaltyResult res;
  Bits warm;
  double alpha = opt.alpha0 ? *opt.alpha0 : qap_auto_penalty(inst);
  if (alpha == 0.0) alpha = 1.0;
  for (std::size_t round = 0; round < opt.max_rounds; ++round) {
    res.rounds = round + 1;
    res.penalty = alpha;
    const auto prob = qap_to_qubo(inst, alpha);
    const auto round_seed = Rng::stream(seed, "epm.round", round).next();
    const auto samples = opt.solver.run(prob, round_seed, warm);
    std::size_t best = samples.size(), best_feasible = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples.samples[i];
      if (best == samples.size() || s.energy < samples.samples[best].energy) best = i;
      if (s.feasible &&
          (best_feasible == samples.size() || s.energy < samples.samples[best_feasible].energy))
        best_feasible = i;
    }
    if (best_feasible != samples.size()) {
      res.perm = bits_to_permutation(samples.samples[best_feasible].bits, n);
      res.feasible = true;
      res.energy = qap_objective(inst, res.perm);
      return res;
    }
    warm = samples.samples[best].bits;
    alpha *= opt.beta;
  }
  res.perm = repair_to_permutation(warm, n);
  res.feasible = false;
  res.energy = qap_objective(inst, res.perm);
  return res;
}

void write_plan(std::ostream& out, const DecompositionPlan& plan) {
  auto list = [&](const char* key, const auto& v) {
    out << key;
    for (auto x : v) out << ' ' << x;
    out << '\n';
  };
  out << "k " << plan.item_partition.k << '\n';
  list("items", plan.item_partition.assignment);
  list("locations", plan.location_partition.assignment);
  list("matching", plan.matching);
  list("seeds", plan.sub_seeds);
}

namespace {

DecompositionPlan assemble_plan(const QapInstance& inst, Partition items, Partition locs,
                                std::vector<std::uint32_t> matching, std::vector<std::uint64_t> seeds) {
  DecompositionPlan plan{std::move(items), std::move(locs), std::move(matching), {}, std::move(seeds)};
  const auto is = plan.item_partition.subsets(), ls = plan.location_partition.subsets();
  for (std::size_t a = 0; a < plan.item_partition.k; ++a)
    plan.sub_qaps.push_back(extract_sub_qap(inst, is[a], ls[plan.matching[a]]));
  return plan;
}

}  // namespace

DecompositionPlan read_plan(std::istream& in, const QapInstance& inst) {
  std::string line;
  std::size_t k = 0;
  std::vector<std::uint32_t> items, locs, matching;
  std::vector<std::uint64_t> seeds;
  while (std::getline(in, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].starts_with('#')) continue;
    auto fill32 = [&](std::vector<std::uint32_t>& v) {
      for (std::size_t i = 1; i < tok.size(); ++i) v.push_back(static_cast<std::uint32_t>(parse_int(tok[i])));
    };
    if (tok[0] == "k") k = static_cast<std::size_t>(parse_int(tok.at(1)));
    else if (tok[0] == "items") fill32(items);
    else if (tok[0] == "locations") fill32(locs);
    else if (tok[0] == "matching") fill32(matching);
    else if (tok[0] == "seeds")
      for (std::size_t i = 1; i < tok.size(); ++i) seeds.push_back(std::stoull(tok[i]));
    else throw ParseError("unknown plan key '" + tok[0] + "'");
  }
  Partition ip{items, k}, lp{locs, k};
  ip.validate();
  lp.validate();
  if (ip.size() != inst.size() || lp.size() != inst.size()) throw ParseError("plan does not match instance size");
  std::vector<std::uint32_t> sorted = matching;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != k) throw ParseError("plan matching is not a bijection");
  if (seeds.size() != k) throw ParseError("plan needs one seed per sub-QAP");
  return assemble_plan(inst, std::move(ip), std::move(lp), std::move(matching), std::move(seeds));
}

DecomposeResult solve_decomposed(const QapInstance& inst, const DecomposeOptions& opt) {
  const auto n = inst.size();
  check_k(n, opt.k);
  auto io = opt.item_partition;
  io.seed = Rng::stream(opt.seed, "decomp.items").next();
  auto items = partition_items(inst.flow, opt.k, io);
  Partition locs;
  if (opt.fixed_locations) {
    locs = *opt.fixed_locations;
    locs.validate();
    if (locs.k != opt.k || locs.size() != n) throw ParameterError("fixed location partition does not fit");
  } else {
    auto lo = opt.location_partition;
    lo.seed = Rng::stream(opt.seed, "decomp.locations").next();
    locs = partition_locations(inst.dist, opt.k, lo);
  }
  auto matching = match_subsets(inst, items, locs, opt.match, Rng::stream(opt.seed, "decomp.match").next());
  std::vector<std::uint64_t> seeds(opt.k);
  for (std::size_t a = 0; a < opt.k; ++a) seeds[a] = Rng::stream(opt.seed, "decomp.sub", a).next();

  DecomposeResult res;
  res.plan = assemble_plan(inst, std::move(items), std::move(locs), std::move(matching), std::move(seeds));
  res.sub_results.resize(opt.k);
  parallel_for(opt.k, [&](std::size_t a) {
    res.sub_results[a] = exterior_penalty_solve(res.plan.sub_qaps[a].inst, opt.sub_solver, res.plan.sub_seeds[a]);
  });
  res.perm.assign(n, 0);
  for (std::size_t a = 0; a < opt.k; ++a) {
    const auto& sub = res.plan.sub_qaps[a];
    for (std::size_t p = 0; p < sub.item_ids.size(); ++p)
      res.perm[sub.item_ids[p]] = sub.location_ids[res.sub_results[a].perm[p]];
  }
  check_permutation(res.perm, n);
  res.energy = qap_objective(inst, res.perm);
  return res;
}

BlockStructure verify_block_structure(const Matrix& dist, const std::vector<std::uint32_t>& column) {
  if (!dist.is_square() || column.size() != dist.rows())
    throw DimensionError("column map must cover every location");
  std::optional<double> delta, big_m;
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
  for (std::size_t i = 0; i < dist.rows(); ++i)
    for (std::size_t j = 0; j < dist.rows(); ++j) {
      if (i == j) continue;
      auto& slot = column[i] == column[j] ? delta : big_m;
      if (!slot) slot = dist(i, j);
      else if (!same(*slot, dist(i, j))) return {};
    }
  BlockStructure b{true, delta.value_or(0.0), big_m.value_or(0.0)};
  if (!delta) b.delta = b.big_m;
  if (!big_m) b.big_m = b.delta;
  return b;
}

Matrix block_distance(std::size_t n, std::size_t k, double delta, double big_m, double diagonal) {
  check_k(n, k);
  const auto s = n / k;
  Matrix d = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = i == j ? diagonal : (i / s == j / s ? delta : big_m);
  return d;
}

}  // namespace annealbench
