#include "annealbench/formulations.hpp"

#include <algorithm>
#include <cmath>

#include "annealbench/errors.hpp"

namespace annealbench {

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::maxcut: return "maxcut";
    case ProblemKind::mvc: return "mvc";
    case ProblemKind::qap: return "qap";
    case ProblemKind::generic: return "qubo";
  }
  return "qubo";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "maxcut") return ProblemKind::maxcut;
  if (s == "mvc") return ProblemKind::mvc;
  if (s == "qap") return ProblemKind::qap;
  if (s == "qubo") return ProblemKind::generic;
  throw ParameterError("unknown problem kind '" + s + "'");
}

std::size_t QuboProblem::violations(BitsView x) const {
  check_bits(qubo, x);
  switch (kind) {
    case ProblemKind::mvc: return mvc_violations(*graph, x);
    case ProblemKind::qap: return qap_violations(qap->size(), x);
    default: return 0;
  }
}

void QuboProblem::annotate(SampleSet& s) const {
  s.total_constraints = total_constraints;
  for (auto& smp : s.samples) {
    smp.energy = energy(qubo, smp.bits);
    smp.violations = violations(smp.bits);
    smp.feasible = smp.violations == 0;
  }
}

QuboProblem generic_problem(QuboMatrix q) {
  QuboProblem p;
  p.qubo = std::move(q);
  return p;
}

double cut_value(const WeightedGraph& g, BitsView x) {
  if (x.size() != g.node_count()) throw DimensionError("bit-vector length != node count");
  double c = 0.0;
  for (const auto& e : g.edges())
    if (x[e.u] != x[e.v]) c += e.weight;
  return c;
}

QuboProblem maxcut_to_qubo(const WeightedGraph& g) {
  QuboBuilder b(g.node_count());
  b.reserve(3 * g.edge_count());
  for (const auto& e : g.edges()) {
    b.add_linear(e.u, -e.weight);
    b.add_linear(e.v, -e.weight);
    b.add(e.u, e.v, 2.0 * e.weight);
  }
  QuboProblem p;
  p.qubo = std::move(b).build();
  p.kind = ProblemKind::maxcut;
  p.sense = Sense::maximize;
  p.graph = std::make_shared<const WeightedGraph>(g);
  return p;
}

QuboProblem mvc_to_qubo(const WeightedGraph& g, std::optional<double> alpha) {
  const double a = alpha ? *alpha : static_cast<double>(g.max_degree());
  if (!(a > 1.0))
    throw ParameterError("MVC penalty alpha must exceed 1 (got " + std::to_string(a) + ")");
  const auto deg = g.degrees();
  QuboBuilder b(g.node_count());
  b.reserve(g.node_count() + g.edge_count());
  for (std::size_t i = 0; i < g.node_count(); ++i)
    b.add_linear(i, 1.0 - a * static_cast<double>(deg[i]));
  for (const auto& e : g.edges()) b.add(e.u, e.v, a);
  b.add_offset(a * static_cast<double>(g.edge_count()));
  QuboProblem p;
  p.qubo = std::move(b).build();
  p.kind = ProblemKind::mvc;
  p.graph = std::make_shared<const WeightedGraph>(g);
  p.total_constraints = g.edge_count();
  p.penalty = a;
  return p;
}

std::size_t mvc_violations(const WeightedGraph& g, BitsView x) {
  if (x.size() != g.node_count()) throw DimensionError("bit-vector length != node count");
  std::size_t v = 0;
  for (const auto& e : g.edges())
    if (!x[e.u] && !x[e.v]) ++v;
  return v;
}

std::size_t cover_size(BitsView x) {
  return static_cast<std::size_t>(std::count(x.begin(), x.end(), std::uint8_t{1}));
}

namespace {

void add_objective(QuboBuilder& b, const QapInstance& inst) {
  const auto n = inst.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double f = inst.flow(i, j);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double d = inst.dist(k, l);
          if (d != 0.0) b.add(find_index(i, k, n), find_index(j, l, n), f * d);
        }
    }
}

struct SparseRow {
  std::vector<std::pair<std::size_t, double>> entries;
  double rhs = 0.0;
};

// P * (a.x - b)^2 for each row, expanded with x_i^2 = x_i.
void add_penalty_rows(QuboBuilder& b, const std::vector<SparseRow>& rows, double penalty) {
  for (const auto& r : rows) {
    for (std::size_t p = 0; p < r.entries.size(); ++p) {
      const auto [i, ai] = r.entries[p];
      b.add_linear(i, penalty * (ai * ai - 2.0 * r.rhs * ai));
      for (std::size_t q = p + 1; q < r.entries.size(); ++q) {
        const auto [j, aj] = r.entries[q];
        b.add(i, j, penalty * 2.0 * ai * aj);
      }
    }
    b.add_offset(penalty * r.rhs * r.rhs);
  }
}

std::vector<SparseRow> assignment_rows(std::size_t n) {
  std::vector<SparseRow> rows(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      rows[i].entries.emplace_back(find_index(i, k, n), 1.0);
      rows[n + k].entries.emplace_back(find_index(i, k, n), 1.0);
    }
  for (auto& r : rows) {
    r.rhs = 1.0;
    std::sort(r.entries.begin(), r.entries.end());
  }
  return rows;
}

}  // namespace

QuboMatrix qap_objective_qubo(const QapInstance& inst) {
  const auto n = inst.size();
  QuboBuilder b(n * n);
  add_objective(b, inst);
  return std::move(b).build();
}

Matrix prepare_matrix_a(std::size_t n) {
  if (n == 0) throw ParameterError("QAP size must be at least 1");
  const auto vars = n * n;
  Matrix a(std::max(vars, 2 * n), vars, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      a(i, find_index(i, k, n)) = 1.0;
      a(n + k, find_index(i, k, n)) = 1.0;
    }
  return a;
}

std::vector<double> prepare_vector_b(std::size_t n) {
  if (n == 0) throw ParameterError("QAP size must be at least 1");
  std::vector<double> b(std::max(n * n, 2 * n), 0.0);
  std::fill(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(2 * n), 1.0);
  return b;
}

QuboMatrix a_to_q(const Matrix& a, const std::vector<double>& b, double penalty) {
  if (!(penalty > 0.0)) throw ParameterError("penalty must be positive");
  if (b.size() != a.rows()) throw DimensionError("b length must equal the row count of A");
  std::vector<SparseRow> rows;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow sr;
    sr.rhs = b[r];
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] != 0.0) sr.entries.emplace_back(c, row[c]);
    if (!sr.entries.empty() || sr.rhs != 0.0) rows.push_back(std::move(sr));
  }
  QuboBuilder builder(a.cols());
  add_penalty_rows(builder, rows, penalty);
  return std::move(builder).build();
}

double qap_auto_penalty(const QapInstance& inst) {
  return static_cast<double>(inst.size()) * qap_objective_qubo(inst).max_abs_coefficient();
}

QuboProblem qap_to_qubo(const QapInstance& inst, std::optional<double> penalty) {
  const auto n = inst.size();
  if (n == 0) throw ParameterError("empty QAP instance");
  QuboBuilder b(n * n);
  add_objective(b, inst);
  double p = 0.0;
  if (penalty) {
    p = *penalty;
  } else {
    p = qap_auto_penalty(inst);
    // An all-zero objective still needs a positive weight.
    if (p == 0.0) p = 1.0;
  }
  if (!(p > 0.0)) throw ParameterError("QAP penalty must be positive");
  add_penalty_rows(b, assignment_rows(n), p);
  QuboProblem prob;
  prob.qubo = std::move(b).build();
  prob.kind = ProblemKind::qap;
  prob.qap = std::make_shared<const QapInstance>(inst);
  prob.total_constraints = 2 * n;
  prob.penalty = p;
  return prob;
}

std::size_t qap_violations(std::size_t n, BitsView x) {
  if (x.size() != n * n) throw DimensionError("assignment length must be n^2");
  std::size_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t row = 0, col = 0;
    for (std::size_t k = 0; k < n; ++k) {
      row += x[find_index(i, k, n)];
      col += x[find_index(k, i, n)];
    }
    v += (row != 1) + (col != 1);
  }
  return v;
}

}  // namespace annealbench
