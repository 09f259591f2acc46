#pragma once

// Independent reference computations used by the tests. They work on dense
// matrices and plain enumeration and share no code paths with the library.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "annealbench/qubo.hpp"
#include "annealbench/rng.hpp"

namespace oracle {

using annealbench::Bits;

struct DenseQubo {
  std::size_t n = 0;
  std::vector<double> q;  // row-major n x n, read as x^T Q x
  double offset = 0.0;
  double& at(std::size_t i, std::size_t j) { return q[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return q[i * n + j]; }
};

inline double eval(const DenseQubo& d, const Bits& x) {
  double e = d.offset;
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j)
      if (x[i] && x[j]) e += d.at(i, j);
  return e;
}

inline annealbench::QuboMatrix to_matrix(const DenseQubo& d) {
  std::vector<annealbench::QuboMatrix::Term> t;
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j)
      if (d.at(i, j) != 0.0) t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), d.at(i, j)});
  return annealbench::QuboMatrix(d.n, std::move(t), d.offset);
}

// Integer-valued couplings so optima are exact and ties are visible.
inline DenseQubo random_qubo(std::size_t n, std::uint64_t seed, double density = 1.0) {
  auto rng = annealbench::Rng::stream(seed, "test.qubo");
  DenseQubo d{n, std::vector<double>(n * n, 0.0), 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (i == j || rng.uniform() < density) d.at(i, j) = static_cast<double>(static_cast<int>(rng.below(21)) - 10);
  return d;
}

inline Bits bits_of(std::uint64_t mask, std::size_t n) {
  Bits x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1u;
  return x;
}

inline double min_energy(const DenseQubo& d) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << d.n); ++m) best = std::min(best, eval(d, bits_of(m, d.n)));
  return best;
}

inline void for_each_bits(std::size_t n, const std::function<void(const Bits&)>& f) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) f(bits_of(m, n));
}

inline std::vector<std::vector<std::uint32_t>> all_permutations(std::size_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline double qap_value(const std::vector<std::vector<double>>& f, const std::vector<std::vector<double>>& d,
                        const std::vector<std::uint32_t>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) s += f[i][j] * d[p[i]][p[j]];
  return s;
}

// Smallest vertex cover size by subset enumeration.
inline std::size_t min_cover(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::size_t best = n;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (auto [u, v] : edges)
      if (!((m >> u) & 1u) && !((m >> v) & 1u)) {
        ok = false;
        break;
      }
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(m)));
  }
  return best;
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
