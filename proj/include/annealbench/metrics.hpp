#pragma once

#include <cstddef>
#include <optional>

#include "annealbench/qubo.hpp"

namespace annealbench {

enum class Sense { minimize, maximize };

struct MetricsSummary {
  double mean_energy = 0.0;
  double best_energy = 0.0;
  double std_energy = 0.0;
  double p_f = 0.0;
  double mean_violation_pct = 0.0;
  /// Set when no sample was feasible; the energy statistics then cover all
  /// samples (pseudo energies).
  bool none_feasible = false;
  std::size_t sample_count = 0;
  std::size_t feasible_count = 0;
  std::optional<double> normalized_mean;
  std::optional<double> normalized_best;
};

/// Statistics over the feasible samples of s. Energies are taken as stored;
/// best is the minimum for Sense::minimize, the maximum otherwise. When a
/// reference energy is given, normalised values are energy / reference.
MetricsSummary summarize(const SampleSet& s, Sense sense,
                         std::optional<double> reference_energy = std::nullopt);

/// 100 * feasible / total.
double probability_of_feasibility(std::size_t feasible, std::size_t total);

/// 100 * violations / total_constraints.
double violation_percentage(std::size_t violations, std::size_t total_constraints);

/// Objective energy plus the active penalty energy.
double pseudo_energy(double objective_energy, double penalty_energy);

}  // namespace annealbench
