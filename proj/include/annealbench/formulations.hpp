#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "annealbench/graph.hpp"
#include "annealbench/matrix.hpp"
#include "annealbench/metrics.hpp"
#include "annealbench/qap.hpp"
#include "annealbench/qubo.hpp"

namespace annealbench {

enum class ProblemKind { maxcut, mvc, qap, generic };

std::string to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

/// A QUBO bound to the problem it encodes. Feasibility and violations are
/// computed from the source data only. All solvers minimise qubo energy;
/// reported_energy() converts to the problem's own sense.
struct QuboProblem {
  QuboMatrix qubo;
  ProblemKind kind = ProblemKind::generic;
  Sense sense = Sense::minimize;
  std::shared_ptr<const WeightedGraph> graph;
  std::shared_ptr<const QapInstance> qap;
  std::size_t total_constraints = 0;
  double penalty = 0.0;

  std::size_t size() const noexcept { return qubo.size(); }
  std::size_t violations(BitsView x) const;
  bool feasible(BitsView x) const { return violations(x) == 0; }
  double reported_energy(double qubo_energy) const {
    return sense == Sense::maximize ? -qubo_energy : qubo_energy;
  }
  /// Fills energy, feasible and violations of every sample from its bits.
  void annotate(SampleSet& s) const;
};

QuboProblem generic_problem(QuboMatrix q);

/// Cut weight of the bipartition x.
double cut_value(const WeightedGraph& g, BitsView x);
QuboProblem maxcut_to_qubo(const WeightedGraph& g);

/// alpha = nullopt selects the maximum degree.
QuboProblem mvc_to_qubo(const WeightedGraph& g, std::optional<double> alpha = std::nullopt);
std::size_t mvc_violations(const WeightedGraph& g, BitsView x);
std::size_t cover_size(BitsView x);

QuboMatrix qap_objective_qubo(const QapInstance& inst);
Matrix prepare_matrix_a(std::size_t n);
std::vector<double> prepare_vector_b(std::size_t n);
/// QUBO of P * ||A x - b||^2 with the constant carried in the offset.
QuboMatrix a_to_q(const Matrix& a, const std::vector<double>& b, double penalty);
/// n * max |C| over the folded objective coefficients.
double qap_auto_penalty(const QapInstance& inst);
QuboProblem qap_to_qubo(const QapInstance& inst, std::optional<double> penalty = std::nullopt);
std::size_t qap_violations(std::size_t n, BitsView x);

}  // namespace annealbench
