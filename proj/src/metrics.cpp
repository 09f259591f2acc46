#include "annealbench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "annealbench/errors.hpp"

namespace annealbench {

double probability_of_feasibility(std::size_t feasible, std::size_t total) {
  if (total == 0) throw EmptyInputError("no samples");
  if (feasible > total) throw DomainError("feasible count exceeds total");
  return 100.0 * static_cast<double>(feasible) / static_cast<double>(total);
}

double violation_percentage(std::size_t violations, std::size_t total_constraints) {
  if (total_constraints == 0)
    throw DomainError("violation percentage is undefined without constraints");
  return 100.0 * static_cast<double>(violations) / static_cast<double>(total_constraints);
}

double pseudo_energy(double objective_energy, double penalty_energy) {
  return objective_energy + penalty_energy;
}

MetricsSummary summarize(const SampleSet& s, Sense sense, std::optional<double> reference_energy) {
  if (s.empty()) throw EmptyInputError("cannot summarize an empty sample set");
  if (reference_energy && *reference_energy == 0.0)
    throw DomainError("reference energy must be non-zero for normalisation");

  MetricsSummary m;
  m.sample_count = s.size();
  for (const auto& x : s.samples) m.feasible_count += x.feasible ? 1 : 0;
  m.p_f = probability_of_feasibility(m.feasible_count, m.sample_count);
  m.none_feasible = m.feasible_count == 0;

  if (s.total_constraints > 0) {
    double acc = 0.0;
    for (const auto& x : s.samples) acc += violation_percentage(x.violations, s.total_constraints);
    m.mean_violation_pct = acc / static_cast<double>(s.size());
  }

  std::vector<double> pool;
  pool.reserve(s.size());
  for (const auto& x : s.samples)
    if (x.feasible || m.none_feasible) pool.push_back(x.energy);

  double sum = 0.0;
  for (double e : pool) sum += e;
  m.mean_energy = sum / static_cast<double>(pool.size());
  double var = 0.0;
  for (double e : pool) var += (e - m.mean_energy) * (e - m.mean_energy);
  m.std_energy = std::sqrt(var / static_cast<double>(pool.size()));
  m.best_energy = sense == Sense::minimize ? *std::min_element(pool.begin(), pool.end())
                                           : *std::max_element(pool.begin(), pool.end());
  if (reference_energy) {
    m.normalized_mean = m.mean_energy / *reference_energy;
    m.normalized_best = m.best_energy / *reference_energy;
  }
  return m;
}

}  // namespace annealbench
