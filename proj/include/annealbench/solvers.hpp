#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "annealbench/formulations.hpp"
#include "annealbench/qap.hpp"
#include "annealbench/qubo.hpp"
#include "annealbench/rng.hpp"

namespace annealbench {

/// Called with (read or replica index, iteration, best energy so far).
using TraceHook = std::function<void(std::size_t, std::size_t, double)>;

struct BetaRange {
  double hot;
  double cold;
};

/// ln(2)/max field for the hot end and ln(100)/min nonzero coefficient for
/// the cold end.
BetaRange auto_beta_range(const QuboMatrix& q);
std::vector<double> geometric_ladder(double first, double last, std::size_t count);

struct SaConfig {
  std::size_t num_reads = 100;
  std::size_t sweeps = 1000;
  std::optional<BetaRange> beta_range;  // nullopt: auto
  std::vector<double> beta_schedule;    // non-empty overrides the geometric ladder
  std::uint64_t seed = 0;
  Bits initial_state;  // empty: uniform random start per read
  TraceHook trace;
  void validate() const;
};

struct PtConfig {
  std::size_t replicas = 128;
  std::size_t iterations = 100000;
  std::optional<BetaRange> beta_range;
  std::vector<double> beta_ladder;  // non-empty overrides; size must equal replicas
  std::size_t swap_interval = 100;  // 0 disables replica exchange
  double offset_increase_rate = 0.0;
  std::uint64_t seed = 0;
  Bits initial_state;
  TraceHook trace;
  std::size_t trace_every = 1000;
  void validate() const;
};

struct TabuConfig {
  std::size_t tenure = 10;
  std::size_t max_iterations = 10000;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  Bits initial_state;
  TraceHook trace;
  void validate() const;
};

struct PermAnnealConfig {
  std::size_t iterations = 100000;
  double t0 = 0.0;     // <= 0: estimated from random swap deltas
  double t_end = 0.0;  // <= 0: t0 * 1e-3
  std::uint64_t seed = 0;
  /// Called with (iteration, best objective so far) every trace_every iterations.
  std::function<void(std::size_t, double)> trace;
  std::size_t trace_every = 1000;
  void validate() const;
};

SampleSet simulated_annealing(const QuboProblem& p, const SaConfig& cfg);
SampleSet parallel_tempering(const QuboProblem& p, const PtConfig& cfg);
SampleSet tabu_search(const QuboProblem& p, const TabuConfig& cfg);
SampleSet random_sampler(const QuboProblem& p, std::size_t reads, std::uint64_t seed);

/// Single-bit-flip walker with incrementally maintained local fields.
class FlipState {
 public:
  FlipState(const QuboMatrix& q, Bits x);
  const Bits& bits() const noexcept { return x_; }
  double energy() const noexcept { return energy_; }
  double delta(std::size_t k) const noexcept { return x_[k] ? -field_[k] : field_[k]; }
  void flip(std::size_t k) noexcept;

 private:
  const QuboMatrix* q_;
  Bits x_;
  std::vector<double> field_;
  double energy_;
};

/// One parallel-trial step at inverse temperature beta with a dynamic
/// offset. Returns the flipped index, or nullopt when nothing was accepted.
std::optional<std::size_t> parallel_trial_step(FlipState& s, double beta, double offset, Rng& rng,
                                               std::vector<std::uint32_t>& scratch);

struct QuboOptimum {
  Bits x;
  double energy;
};
/// Exact minimiser by Gray-code enumeration; lexicographically smallest on ties.
QuboOptimum brute_force_qubo(const QuboMatrix& q, std::size_t max_n = 24);
/// Every configuration whose energy is within tol of the minimum.
std::vector<Bits> enumerate_minimizers(const QuboMatrix& q, double tol = -1.0,
                                       std::size_t max_n = 24);

struct QapOptimum {
  Permutation perm;
  double energy;
};
/// Exact minimiser over all n! permutations; lexicographically smallest on ties.
QapOptimum brute_force_qap(const QapInstance& inst, std::size_t max_n = 10);
/// Every optimal permutation (within tol).
std::vector<Permutation> all_optimal_permutations(const QapInstance& inst, double tol = 1e-9,
                                                  std::size_t max_n = 10);

/// Objective over permutations with incremental swap moves.
class PermutationObjective {
 public:
  virtual ~PermutationObjective() = default;
  virtual std::size_t size() const = 0;
  /// Sets the current permutation and returns its value.
  virtual double reset(std::span<const std::uint32_t> perm) = 0;
  /// Value change if positions i and j exchange their entries.
  virtual double swap_delta(std::size_t i, std::size_t j) = 0;
  virtual void commit_swap(std::size_t i, std::size_t j) = 0;
};

class QapObjective final : public PermutationObjective {
 public:
  explicit QapObjective(const QapInstance& inst) : inst_(&inst) {}
  std::size_t size() const override { return inst_->size(); }
  double reset(std::span<const std::uint32_t> perm) override;
  double swap_delta(std::size_t i, std::size_t j) override;
  void commit_swap(std::size_t i, std::size_t j) override;

 private:
  const QapInstance* inst_;
  Permutation perm_;
};

struct PermAnnealResult {
  Permutation perm;
  double value;
};

/// Swap-move annealing over permutations; returns the best permutation seen.
PermAnnealResult permutation_annealer(PermutationObjective& obj, const PermAnnealConfig& cfg,
                                      std::optional<Permutation> start = std::nullopt);

/// A configured QUBO sampler, used where the algorithm is a parameter.
struct SolverSpec {
  enum class Kind { sa, pt, tabu, random };
  Kind kind = Kind::sa;
  SaConfig sa;
  PtConfig pt;
  TabuConfig tabu;
  std::size_t random_reads = 100;

  /// Runs the solver; seed and warm start replace the ones in the config.
  SampleSet run(const QuboProblem& p, std::uint64_t seed, const Bits& initial = {}) const;
  std::string label() const;
};

SolverSpec::Kind solver_kind_from_string(const std::string& s);
std::string to_string(SolverSpec::Kind k);

}  // namespace annealbench
