#include "annealbench/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"

namespace annealbench {

QuboMatrix::QuboMatrix(std::size_t n, std::vector<Term> terms, double offset)
    : n_(n), offset_(offset) {
  if (n_ > std::size_t{UINT32_MAX}) throw CapacityError("too many QUBO variables");
  for (auto& t : terms) {
    if (t.i > t.j) std::swap(t.i, t.j);
    if (t.j >= n_)
      throw DimensionError("QUBO term (" + std::to_string(t.i) + "," + std::to_string(t.j) +
                           ") out of range for n=" + std::to_string(n_));
    if (!std::isfinite(t.value)) throw DomainError("non-finite QUBO coefficient");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  terms_.reserve(terms.size());
  for (std::size_t k = 0; k < terms.size();) {
    Term acc = terms[k];
    std::size_t m = k + 1;
    while (m < terms.size() && terms[m].i == acc.i && terms[m].j == acc.j) acc.value += terms[m++].value;
    if (acc.value != 0.0) terms_.push_back(acc);
    k = m;
  }

  linear_.assign(n_, 0.0);
  std::vector<std::size_t> degree(n_, 0);
  for (const auto& t : terms_) {
    if (t.i == t.j) {
      linear_[t.i] = t.value;
    } else {
      ++degree[t.i];
      ++degree[t.j];
      ++quadratic_terms_;
    }
  }
  adj_start_.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < n_; ++k) adj_start_[k + 1] = adj_start_[k] + degree[k];
  adjacency_.resize(adj_start_[n_]);
  std::vector<std::size_t> fill(adj_start_.begin(), adj_start_.end() - 1);
  for (const auto& t : terms_) {
    if (t.i == t.j) continue;
    adjacency_[fill[t.i]++] = {t.j, t.value};
    adjacency_[fill[t.j]++] = {t.i, t.value};
  }
}

double QuboMatrix::coefficient(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionError("coefficient index out of range");
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{i, j},
                             [](const Term& t, const std::pair<std::size_t, std::size_t>& key) {
                               return t.i != key.first ? t.i < key.first : t.j < key.second;
                             });
  if (it != terms_.end() && it->i == i && it->j == j) return it->value;
  return 0.0;
}

double QuboMatrix::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.value));
  return m;
}

double QuboMatrix::mean_abs_coefficient() const noexcept {
  if (terms_.empty()) return 0.0;
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.value);
  return s / static_cast<double>(terms_.size());
}

void QuboBuilder::add(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw DimensionError("QUBO builder index out of range");
  if (value == 0.0) return;
  if (i > j) std::swap(i, j);
  terms_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), value});
}

QuboMatrix QuboBuilder::build() && { return QuboMatrix(n_, std::move(terms_), offset_); }

void check_bits(const QuboMatrix& q, BitsView x) {
  if (x.size() != q.size())
    throw DimensionError("bit-vector length " + std::to_string(x.size()) +
                         " does not match QUBO size " + std::to_string(q.size()));
  for (auto b : x)
    if (b > 1) throw DomainError("bit-vector entries must be 0 or 1");
}

double energy(const QuboMatrix& q, BitsView x) {
  check_bits(q, x);
  double e = q.offset();
  for (const auto& t : q.terms())
    if (x[t.i] && x[t.j]) e += t.value;
  return e;
}

double delta_energy(const QuboMatrix& q, BitsView x, std::size_t k) {
  if (k >= q.size()) throw DimensionError("flip index out of range");
  if (x.size() != q.size()) throw DimensionError("bit-vector length mismatch");
  double field = q.linear()[k];
  for (const auto& nb : q.neighbors(k))
    if (x[nb.index]) field += nb.weight;
  return x[k] ? -field : field;
}

std::size_t SampleSet::best_index() const {
  if (samples.empty()) throw EmptyInputError("sample set is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].energy < samples[best].energy) best = i;
  return best;
}

void SampleSet::validate() const {
  if (solve_seconds < 0.0) throw DomainError("negative solve time");
  if (samples.empty()) return;
  const auto n = samples.front().bits.size();
  for (const auto& s : samples)
    if (s.bits.size() != n) throw DimensionError("samples of differing length in one set");
}

void write_qubo(std::ostream& out, const QuboMatrix& q) {
  out << "n " << q.size() << " offset " << format_real(q.offset()) << '\n';
  for (const auto& t : q.terms()) out << t.i << ' ' << t.j << ' ' << format_real(t.value) << '\n';
}

QuboMatrix read_qubo(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  double offset = 0.0;
  bool header = false;
  std::vector<QuboMatrix::Term> terms;
  while (std::getline(in, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].starts_with('#')) continue;
    if (!header) {
      if (tok.size() != 4 || tok[0] != "n" || tok[2] != "offset")
        throw ParseError("QUBO header must read 'n <count> offset <real>'");
      const auto count = parse_int(tok[1]);
      if (count < 0) throw ParseError("negative QUBO size");
      n = static_cast<std::size_t>(count);
      offset = parse_real(tok[3]);
      header = true;
      continue;
    }
    if (tok.size() != 3) throw ParseError("QUBO term line must read 'i j coeff'");
    const auto i = parse_int(tok[0]);
    const auto j = parse_int(tok[1]);
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n)
      throw ParseError("QUBO term index out of range");
    terms.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), parse_real(tok[2])});
  }
  if (!header) throw ParseError("missing QUBO header");
  return QuboMatrix(n, std::move(terms), offset);
}

}  // namespace annealbench
