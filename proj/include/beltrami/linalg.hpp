#ifndef BELTRAMI_LINALG_HPP
#define BELTRAMI_LINALG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace beltrami {

/// Sparse row: (column, value) pairs, sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Integer>>;
using RationalVector = std::vector<Rational>;

namespace detail {

inline void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// r <- p_lead * r - r_lead * p, eliminating the shared leading column.
inline SparseRow eliminate(const SparseRow& r, const SparseRow& p) {
  const Integer& a = p.front().second;
  const Integer& b = r.front().second;
  SparseRow out;
  out.reserve(r.size() + p.size());
  auto i = r.begin(), j = p.begin();
  while (i != r.end() || j != p.end()) {
    if (j == p.end() || (i != r.end() && i->first < j->first)) {
      out.emplace_back(i->first, a * i->second);
      ++i;
    } else if (i == r.end() || j->first < i->first) {
      out.emplace_back(j->first, -b * j->second);
      ++j;
    } else {
      Integer v = a * i->second - b * j->second;
      if (sgn(v) != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Clears denominators of a rational row, giving a primitive integer row.
inline SparseRow integer_row(const std::vector<std::pair<int, Rational>>& entries) {
  Integer l = 1;
  for (const auto& [c, q] : entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  SparseRow row;
  for (const auto& [c, q] : entries) {
    if (sgn(q) == 0) continue;
    Integer v = q.get_num() * (l / q.get_den());
    row.emplace_back(c, std::move(v));
  }
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  detail::make_primitive(row);
  return row;
}

/// Row echelon form built by fraction-free integer elimination. Rows are inserted one at a
/// time; the pivot of each stored row is its first nonzero column (deterministic order).
class Echelon {
 public:
  explicit Echelon(int columns) : columns_(columns) {}

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(pivots_.size()); }

  /// Returns true when the row was independent of the rows seen so far.
  bool add_row(SparseRow row) {
    detail::make_primitive(row);
    while (!row.empty()) {
      if (row.back().first >= columns_) throw std::out_of_range("row column out of range");
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        pivots_.emplace(row.front().first, std::move(row));
        return true;
      }
      row = detail::eliminate(row, it->second);
      detail::make_primitive(row);
    }
    return false;
  }

  bool add_row(const std::vector<std::pair<int, Rational>>& entries) { return add_row(integer_row(entries)); }

  bool is_pivot(int col) const { return pivots_.count(col) > 0; }

  /// Basis of the right nullspace: one vector per free column, with a 1 in that column.
  std::vector<RationalVector> nullspace() const {
    std::vector<RationalVector> basis;
    for (int free = 0; free < columns_; ++free) {
      if (is_pivot(free)) continue;
      RationalVector x(columns_, Rational(0));
      x[free] = 1;
      back_substitute(x);
      basis.push_back(std::move(x));
    }
    return basis;
  }

  /// Solves for pivot variables given the free ones already placed in x.
  void back_substitute(RationalVector& x) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [col, row] = *it;
      Rational acc = 0;
      for (std::size_t k = 1; k < row.size(); ++k) acc += Rational(row[k].second) * x[row[k].first];
      x[col] = -acc / Rational(row.front().second);
    }
  }

 private:
  int columns_;
  std::map<int, SparseRow> pivots_;
};

/// Dense rational matrix helpers (row-major).
using RationalMatrix = std::vector<RationalVector>;

inline int rank(const RationalMatrix& rows, int columns) {
  Echelon e(columns);
  for (const auto& r : rows) {
    std::vector<std::pair<int, Rational>> entries;
    for (int c = 0; c < columns; ++c)
      if (sgn(r[c]) != 0) entries.emplace_back(c, r[c]);
    e.add_row(entries);
  }
  return e.rank();
}

/// Solves sum_j x_j * columns[j] = target exactly; nullopt when target is outside the span.
/// With dependent columns the free coordinates are set to zero.
inline std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& columns,
                                                   const RationalVector& target) {
  const int n = static_cast<int>(columns.size());
  const std::size_t m = target.size();
  Echelon e(n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<int, Rational>> entries;
    for (int j = 0; j < n; ++j)
      if (sgn(columns[j][i]) != 0) entries.emplace_back(j, columns[j][i]);
    if (sgn(target[i]) != 0) entries.emplace_back(n, target[i]);
    e.add_row(entries);
  }
  if (e.is_pivot(n)) return std::nullopt;
  RationalVector x(n + 1, Rational(0));
  x[n] = -1;
  e.back_substitute(x);
  x.pop_back();
  return x;
}

}  // namespace beltrami

#endif  // BELTRAMI_LINALG_HPP
