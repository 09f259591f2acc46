#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "annealbench/matrix.hpp"
#include "annealbench/qubo.hpp"

namespace annealbench {

using Permutation = std::vector<std::uint32_t>;

/// Flow and distance matrices of equal order. perm[i] is the location of item i.
struct QapInstance {
  Matrix flow;
  Matrix dist;

  QapInstance() = default;
  QapInstance(Matrix f, Matrix d);
  std::size_t size() const noexcept { return flow.rows(); }
  friend bool operator==(const QapInstance&, const QapInstance&) = default;
};

/// sum_{i,j} F[i][j] * D[perm[i]][perm[j]].
double qap_objective(const QapInstance& inst, std::span<const std::uint32_t> perm);

constexpr std::size_t find_index(std::size_t i, std::size_t k, std::size_t n) noexcept {
  return i * n + k;
}

bool is_permutation(std::span<const std::uint32_t> perm);
void check_permutation(std::span<const std::uint32_t> perm, std::size_t n);

/// Permutation matrix bits, x[i*n + perm[i]] = 1.
Bits permutation_to_bits(std::span<const std::uint32_t> perm);
/// Exact decode; empty result if x is not a permutation matrix.
Permutation bits_to_permutation(BitsView x, std::size_t n);

/// QAPLIB layout: n, then F row-major, then D row-major.
QapInstance read_qaplib(std::istream& in);
void write_qaplib(std::ostream& out, const QapInstance& inst, const std::string& header = {});

/// QAPLIB .sln layout: "n value" then the 1-based permutation.
struct QapSolution {
  std::size_t n = 0;
  double value = 0.0;
  Permutation perm;
};
QapSolution read_qaplib_solution(std::istream& in);

}  // namespace annealbench
