#include "annealbench/qap.hpp"

#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"

namespace annealbench {

QapInstance::QapInstance(Matrix f, Matrix d) : flow(std::move(f)), dist(std::move(d)) {
  if (!flow.is_square() || !dist.is_square() || flow.rows() != dist.rows())
    throw DimensionError("flow and distance must be square matrices of equal order");
  for (double v : flow.data())
    if (!std::isfinite(v)) throw DomainError("non-finite flow entry");
  for (double v : dist.data())
    if (!std::isfinite(v) || v < 0.0) throw DomainError("distance entries must be finite and >= 0");
}

double qap_objective(const QapInstance& inst, std::span<const std::uint32_t> perm) {
  const auto n = inst.size();
  check_permutation(perm, n);
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto fi = inst.flow.row(i);
    const auto di = inst.dist.row(perm[i]);
    for (std::size_t j = 0; j < n; ++j) e += fi[j] * di[perm[j]];
  }
  return e;
}

bool is_permutation(std::span<const std::uint32_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

void check_permutation(std::span<const std::uint32_t> perm, std::size_t n) {
  if (perm.size() != n)
    throw DimensionError("permutation length " + std::to_string(perm.size()) + " != " +
                         std::to_string(n));
  if (!is_permutation(perm)) throw DomainError("not a permutation");
}

Bits permutation_to_bits(std::span<const std::uint32_t> perm) {
  const auto n = perm.size();
  Bits x(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) x[find_index(i, perm[i], n)] = 1;
  return x;
}

Permutation bits_to_permutation(BitsView x, std::size_t n) {
  if (x.size() != n * n) throw DimensionError("assignment length must be n^2");
  Permutation perm(n);
  std::vector<int> col(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int count = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (x[find_index(i, k, n)]) {
        ++count;
        ++col[k];
        perm[i] = static_cast<std::uint32_t>(k);
      }
    if (count != 1) return {};
  }
  for (int c : col)
    if (c != 1) return {};
  return perm;
}

namespace {

std::vector<std::string> all_tokens(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = split_ws(line);
    if (!t.empty() && t[0].starts_with('#')) continue;
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  return out;
}

}  // namespace

QapInstance read_qaplib(std::istream& in) {
  const auto tok = all_tokens(in);
  if (tok.empty()) throw ParseError("empty QAPLIB file");
  const auto n64 = parse_int(tok[0]);
  if (n64 < 1) throw ParseError("QAPLIB size must be positive");
  const auto n = static_cast<std::size_t>(n64);
  if (tok.size() != 1 + 2 * n * n)
    throw ParseError("QAPLIB file declares n=" + std::to_string(n) + " but holds " +
                     std::to_string(tok.size() - 1) + " matrix entries");
  Matrix f = Matrix::square(n), d = Matrix::square(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    f(k / n, k % n) = parse_real(tok[1 + k]);
    d(k / n, k % n) = parse_real(tok[1 + n * n + k]);
  }
  return QapInstance(std::move(f), std::move(d));
}

void write_qaplib(std::ostream& out, const QapInstance& inst, const std::string& header) {
  if (!header.empty()) {
    std::istringstream ss(header);
    std::string line;
    while (std::getline(ss, line)) out << "# " << line << '\n';
  }
  const auto n = inst.size();
  out << n << "\n\n";
  for (const Matrix* m : {&inst.flow, &inst.dist}) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << format_real((*m)(i, j));
      out << '\n';
    }
    out << '\n';
  }
}

QapSolution read_qaplib_solution(std::istream& in) {
  const auto tok = all_tokens(in);
  if (tok.size() < 2) throw ParseError("QAPLIB solution needs 'n value'");
  QapSolution s;
  s.n = static_cast<std::size_t>(parse_int(tok[0]));
  s.value = parse_real(tok[1]);
  if (tok.size() == 2 + s.n) {
    for (std::size_t i = 0; i < s.n; ++i) {
      const auto p = parse_int(tok[2 + i]);
      if (p < 1 || static_cast<std::size_t>(p) > s.n) throw ParseError("solution index out of range");
      s.perm.push_back(static_cast<std::uint32_t>(p - 1));
    }
    if (!is_permutation(s.perm)) throw ParseError("solution is not a permutation");
  } else if (tok.size() != 2) {
    throw ParseError("QAPLIB solution has the wrong number of entries");
  }
  return s;
}

}  // namespace annealbench
