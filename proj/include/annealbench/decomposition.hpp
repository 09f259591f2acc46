#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "annealbench/matrix.hpp"
#include "annealbench/qap.hpp"
#include "annealbench/solvers.hpp"

namespace annealbench {

/// Balanced assignment of n elements to k subsets of size s = n / k.
struct Partition {
  std::vector<std::uint32_t> assignment;
  std::size_t k = 0;

  std::size_t size() const noexcept { return assignment.size(); }
  std::size_t capacity() const noexcept { return k ? assignment.size() / k : 0; }
  /// Members of each subset in increasing element order.
  std::vector<std::vector<std::uint32_t>> subsets() const;
  void validate() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

enum class PartitionMethod { automatic, anneal, greedy, exhaustive };
PartitionMethod partition_method_from_string(const std::string& s);
std::string to_string(PartitionMethod m);

/// Sum over ordered pairs i != j in the same subset of w[i][j].
double intra_weight(const Matrix& w, const Partition& p);

struct PartitionOptions {
  PartitionMethod method = PartitionMethod::automatic;
  std::uint64_t seed = 0;
  /// Sampler settings for the anneal method.
  std::size_t anneal_iterations = 20000;
  std::size_t anneal_replicas = 16;
  bool refine = true;
};

/// Maximises intra-subset flow.
Partition partition_items(const Matrix& flow, std::size_t k, const PartitionOptions& opt = {});
/// Minimises intra-subset distance.
Partition partition_locations(const Matrix& dist, std::size_t k,
                              const PartitionOptions& opt = {});

struct SubQap {
  QapInstance inst;
  std::vector<std::uint32_t> item_ids;
  std::vector<std::uint32_t> location_ids;
};

SubQap extract_sub_qap(const QapInstance& inst, const std::vector<std::uint32_t>& items,
                       const std::vector<std::uint32_t>& locations);

enum class MatchMode { random, exhaustive };
MatchMode match_mode_from_string(const std::string& s);

/// matching[item subset] = location subset.
std::vector<std::uint32_t> match_subsets(const QapInstance& inst, const Partition& items,
                                         const Partition& locations, MatchMode mode,
                                         std::uint64_t seed);

struct ExteriorPenaltyOptions {
  std::optional<double> alpha0 = 10000.0;  // empty: n * max|C| of the objective
  double beta = 1.5;
  std::size_t max_rounds = 12;
  SolverSpec solver;
};

struct ExteriorPenaltyResult {
  Permutation perm;
  bool feasible = false;  // false: perm came from the repair step
  std::size_t rounds = 0;
  double penalty = 0.0;
  double energy = 0.0;
};

ExteriorPenaltyResult exterior_penalty_solve(const QapInstance& inst,
                                             const ExteriorPenaltyOptions& opt,
                                             std::uint64_t seed);

/// Nearest permutation to a (possibly infeasible) assignment matrix.
Permutation repair_to_permutation(BitsView x, std::size_t n);

struct DecompositionPlan {
  Partition item_partition;
  Partition location_partition;
  std::vector<std::uint32_t> matching;
  std::vector<SubQap> sub_qaps;
  std::vector<std::uint64_t> sub_seeds;
};

void write_plan(std::ostream& out, const DecompositionPlan& plan);
DecompositionPlan read_plan(std::istream& in, const QapInstance& inst);

struct DecomposeOptions {
  std::size_t k = 1;
  PartitionOptions item_partition;
  PartitionOptions location_partition;
  /// When set, used instead of partitioning locations.
  std::optional<Partition> fixed_locations;
  MatchMode match = MatchMode::random;
  ExteriorPenaltyOptions sub_solver;
  std::uint64_t seed = 0;
};

struct DecomposeResult {
  DecompositionPlan plan;
  Permutation perm;
  double energy = 0.0;
  std::vector<ExteriorPenaltyResult> sub_results;
};

DecomposeResult solve_decomposed(const QapInstance& inst, const DecomposeOptions& opt);

struct BlockStructure {
  bool block_constant = false;
  double delta = 0.0;
  double big_m = 0.0;
};

/// Checks that off-diagonal distances are one value inside columns and one across.
BlockStructure verify_block_structure(const Matrix& dist, const std::vector<std::uint32_t>& column);

/// Block-constant distance matrix: columns of equal size, delta inside, M across.
Matrix block_distance(std::size_t n, std::size_t k, double delta, double big_m,
                      double diagonal = 0.0);

}  // namespace annealbench
