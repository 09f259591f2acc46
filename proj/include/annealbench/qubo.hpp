#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace annealbench {

using Bits = std::vector<std::uint8_t>;
using BitsView = std::span<const std::uint8_t>;

/// Sparse upper-triangular QUBO. Interactions Q[i][j] + Q[j][i] are folded
/// into the (min(i,j), max(i,j)) slot; diagonal entries act as linear terms.
/// Immutable once built. A symmetric adjacency index is kept alongside the
/// canonical term list so single-flip deltas cost O(degree).
class QuboMatrix {
 public:
  struct Term {
    std::uint32_t i;
    std::uint32_t j;
    double value;
    friend bool operator==(const Term&, const Term&) = default;
  };
  struct Neighbor {
    std::uint32_t index;
    double weight;
  };

  QuboMatrix() = default;
  /// Terms may be unordered, duplicated, or given with i > j; they are
  /// normalised, summed, and exact zeros are dropped.
  QuboMatrix(std::size_t n, std::vector<Term> terms, double offset = 0.0);

  std::size_t size() const noexcept { return n_; }
  double offset() const noexcept { return offset_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::span<const double> linear() const noexcept { return linear_; }
  std::span<const Neighbor> neighbors(std::size_t k) const noexcept {
    return {adjacency_.data() + adj_start_[k], adj_start_[k + 1] - adj_start_[k]};
  }

  /// Stored coefficient for the pair (order-insensitive); 0 if absent.
  double coefficient(std::size_t i, std::size_t j) const;
  std::size_t quadratic_term_count() const noexcept { return quadratic_terms_; }
  double max_abs_coefficient() const noexcept;
  double mean_abs_coefficient() const noexcept;

  friend bool operator==(const QuboMatrix& a, const QuboMatrix& b) {
    return a.n_ == b.n_ && a.offset_ == b.offset_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_ = 0;
  double offset_ = 0.0;
  std::vector<Term> terms_;
  std::vector<double> linear_;
  std::vector<std::size_t> adj_start_{0};
  std::vector<Neighbor> adjacency_;
  std::size_t quadratic_terms_ = 0;
};

/// Accumulates coefficients, then freezes them into a QuboMatrix.
class QuboBuilder {
 public:
  explicit QuboBuilder(std::size_t n) : n_(n) {}
  void add(std::size_t i, std::size_t j, double value);
  void add_linear(std::size_t i, double value) { add(i, i, value); }
  void add_offset(double value) { offset_ += value; }
  void reserve(std::size_t terms) { terms_.reserve(terms); }
  std::size_t size() const noexcept { return n_; }
  QuboMatrix build() &&;

 private:
  std::size_t n_;
  double offset_ = 0.0;
  std::vector<QuboMatrix::Term> terms_;
};

/// offset + sum_{i<=j} Q_ij x_i x_j.
double energy(const QuboMatrix& q, BitsView x);

/// energy(flip(x, k)) - energy(x), in O(degree of k).
double delta_energy(const QuboMatrix& q, BitsView x, std::size_t k);

/// Validates length and that every entry is 0 or 1.
void check_bits(const QuboMatrix& q, BitsView x);

struct BinarySample {
  Bits bits;
  double energy = 0.0;
  bool feasible = true;
  std::size_t violations = 0;
};

struct SampleSet {
  std::vector<BinarySample> samples;
  double solve_seconds = 0.0;
  std::string solver_label;
  std::size_t total_constraints = 0;

  bool empty() const noexcept { return samples.empty(); }
  std::size_t size() const noexcept { return samples.size(); }
  /// Index of the lowest-energy sample (first on ties).
  std::size_t best_index() const;
  /// Checks the shared-length and non-negative-time invariants.
  void validate() const;
};

/// Line-oriented text form: "n <count> offset <real>" then "i j coeff" lines.
void write_qubo(std::ostream& out, const QuboMatrix& q);
QuboMatrix read_qubo(std::istream& in);

}  // namespace annealbench
