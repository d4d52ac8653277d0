#ifndef BELTRAMI_LIEALG_HPP
#define BELTRAMI_LIEALG_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bases.hpp"
#include "linalg.hpp"
#include "symmetry.hpp"

namespace beltrami {

/// [X,Y]^i = X(Y^i) - Y(X^i).
inline GeneratorField bracket(const GeneratorField& X, const GeneratorField& Y) {
  GeneratorField out;
  for (int i = 0; i < 6; ++i) out.c[i] = X.apply(Y.c[i]) - Y.apply(X.c[i]);
  return out;
}

class NotClosed : public std::runtime_error {
 public:
  NotClosed(int i, int j, const GeneratorField& residual)
      : std::runtime_error("bracket [" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           "] leaves the span: " + to_string(residual)),
        i_(i), j_(j), residual_(residual) {}
  int i() const { return i_; }
  int j() const { return j_; }
  const GeneratorField& residual() const { return residual_; }

 private:
  int i_, j_;
  GeneratorField residual_;
};

/// [X_i, X_j] = sum_k constants[i][j][k] X_k.
struct LieAlgebraTable {
  std::vector<std::string> names;
  std::vector<GeneratorField> basis;
  std::vector<std::vector<RationalVector>> constants;

  int dim() const { return static_cast<int>(basis.size()); }
  const Rational& c(int i, int j, int k) const { return constants[i][j][k]; }
};

namespace detail {

inline std::vector<RationalVector> dense_columns(const std::vector<GeneratorField>& basis, FieldIndex& index) {
  std::vector<std::vector<std::pair<int, Rational>>> sparse;
  for (const auto& X : basis) sparse.push_back(field_coordinates(X, index));
  std::vector<RationalVector> cols;
  for (const auto& s : sparse) {
    RationalVector v(index.size(), Rational(0));
    for (const auto& [k, q] : s) v[k] = q;
    cols.push_back(std::move(v));
  }
  return cols;
}

}  // namespace detail

inline LieAlgebraTable structure_constants(const std::vector<NamedField>& named) {
  LieAlgebraTable t;
  for (const auto& n : named) {
    t.names.push_back(n.name);
    t.basis.push_back(n.field);
  }
  const int n = t.dim();
  FieldIndex index;
  auto cols = detail::dense_columns(t.basis, index);
  const std::size_t fixed = index.size();
  if (field_rank(t.basis) != n) throw std::invalid_argument("basis fields are linearly dependent");
  t.constants.assign(n, std::vector<RationalVector>(n, RationalVector(n, Rational(0))));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      GeneratorField br = bracket(t.basis[i], t.basis[j]);
      auto coords = field_coordinates(br, index);
      if (index.size() != fixed) throw NotClosed(i, j, br);
      RationalVector target(fixed, Rational(0));
      for (const auto& [k, q] : coords) target[k] = q;
      auto sol = solve_in_span(cols, target);
      if (!sol) throw NotClosed(i, j, br);
      for (int k = 0; k < n; ++k) {
        t.constants[i][j][k] = (*sol)[k];
        t.constants[j][i][k] = -(*sol)[k];
      }
    }
  return t;
}

/// Exact Jacobi identity on the structure constants.
inline bool jacobi_check(const LieAlgebraTable& t) {
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational s = 0;
          for (int m = 0; m < n; ++m)
            s += t.c(i, j, m) * t.c(m, k, l) + t.c(j, k, m) * t.c(m, i, l) + t.c(k, i, m) * t.c(m, j, l);
          if (sgn(s) != 0) return false;
        }
  return true;
}

inline bool is_subalgebra(const LieAlgebraTable& t, const std::vector<int>& subset) {
  std::set<int> in(subset.begin(), subset.end());
  for (int i : subset)
    for (int j : subset)
      for (int k = 0; k < t.dim(); ++k)
        if (!in.count(k) && sgn(t.c(i, j, k)) != 0) return false;
  return true;
}

/// Matrix of ad(X_i): column j holds the coordinates of [X_i, X_j].
inline Eigen::MatrixXd ad_matrix(const LieAlgebraTable& t, int i) {
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m(k, j) = t.c(i, j, k).get_d();
  return m;
}

/// Coordinates of Ad(exp(eps X_i)) X_j = exp(-eps ad X_i) X_j = X_j - eps [X_i,X_j] + ...
inline Eigen::VectorXd adjoint_numeric(const LieAlgebraTable& t, int i, int j, double eps) {
  Eigen::MatrixXd e = (-eps * ad_matrix(t, i)).exp();
  return e.col(j);
}

// ---------------------------------------------------------------------------
// Closed form over the dictionary {1, eps, eps^2, cos eps, sin eps, e^eps, e^-eps}

inline constexpr int dictionary_size = 7;

inline double dictionary_value(int d, double eps) {
  switch (d) {
    case 0: return 1.0;
    case 1: return eps;
    case 2: return eps * eps;
    case 3: return std::cos(eps);
    case 4: return std::sin(eps);
    case 5: return std::exp(eps);
    default: return std::exp(-eps);
  }
}

inline Expression dictionary_expression(int d) {
  const Expression e(sym::eps);
  switch (d) {
    case 0: return Expression(1);
    case 1: return e;
    case 2: return pow(e, 2);
    case 3: return cos(e);
    case 4: return sin(e);
    case 5: return exp(e);
    default: return exp(-e);
  }
}

class NoClosedForm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient functions of Ad(exp(eps X_i)) X_j on each basis element.
struct AdjointEntry {
  int source = 0, target = 0;
  std::vector<std::array<Rational, dictionary_size>> coefficients;  // per basis element

  Expression coefficient(int k) const {
    Expression acc(0);
    for (int d = 0; d < dictionary_size; ++d)
      if (sgn(coefficients[k][d]) != 0) acc = acc + Expression(coefficients[k][d]) * dictionary_expression(d);
    return acc;
  }

  double evaluate(int k, double eps) const {
    double s = 0;
    for (int d = 0; d < dictionary_size; ++d) s += coefficients[k][d].get_d() * dictionary_value(d, eps);
    return s;
  }
};

inline AdjointEntry adjoint_closed_form(const LieAlgebraTable& t, int i, int j) {
  const int n = t.dim();
  constexpr int samples = 12;
  Eigen::MatrixXd D(samples, dictionary_size);
  Eigen::MatrixXd Y(samples, n);
  std::array<double, samples> eps{};
  for (int s = 0; s < samples; ++s) {
    eps[s] = -1.3 + 2.6 * s / (samples - 1) + 0.01;
    for (int d = 0; d < dictionary_size; ++d) D(s, d) = dictionary_value(d, eps[s]);
    Y.row(s) = adjoint_numeric(t, i, j, eps[s]).transpose();
  }
  Eigen::MatrixXd fit = D.colPivHouseholderQr().solve(Y);
  AdjointEntry entry{i, j, {}};
  entry.coefficients.resize(n);
  for (int k = 0; k < n; ++k)
    for (int d = 0; d < dictionary_size; ++d) {
      Rational q = approximate_rational(fit(d, k), 1000);
      entry.coefficients[k][d] = std::abs(q.get_d()) < 1e-12 ? Rational(0) : q;
    }
  double worst = 0;
  for (int s = 0; s < samples; ++s)
    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(entry.evaluate(k, eps[s]) - Y(s, k)));
  if (worst > 1e-9)
    throw NoClosedForm("no closed form for Ad(" + t.names[i] + ")" + t.names[j] + ", residual " +
                       std::to_string(worst));
  return entry;
}

// ---------------------------------------------------------------------------
// Printing

/// sum_k coeff_k * X_k as text; coefficients are expressions (constants or eps functions).
inline std::string combination_string(const std::vector<Expression>& coeffs, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Expression& c = coeffs[k];
    if (c.is_zero()) continue;
    std::string term;
    bool negative = false;
    if (c.is_one()) {
      term = names[k];
    } else if (c.is_constant() && c.value() == -1) {
      term = names[k];
      negative = true;
    } else if (c.kind() == NodeKind::add) {
      term = "(" + to_string(c) + ")*" + names[k];
    } else {
      std::string s = to_string(c);
      if (s[0] == '-') {
        negative = true;
        s.erase(0, 1);
      }
      term = s + "*" + names[k];
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

inline std::string bracket_string(const LieAlgebraTable& t, int i, int j) {
  std::vector<Expression> c;
  for (int k = 0; k < t.dim(); ++k) c.emplace_back(t.c(i, j, k));
  return combination_string(c, t.names);
}

inline std::string adjoint_string(const LieAlgebraTable& t, const AdjointEntry& e) {
  std::vector<Expression> c;
  for (int k = 0; k < t.dim(); ++k) c.push_back(e.coefficient(k));
  return combination_string(c, t.names);
}

/// Aligned grid with a header row; cell(i, j) supplies the entries.
template <class Cell>
std::string grid(const std::string& corner, const std::vector<std::string>& rows,
                 const std::vector<std::string>& cols, Cell cell) {
  std::vector<std::vector<std::string>> cells(rows.size() + 1, std::vector<std::string>(cols.size() + 1));
  cells[0][0] = corner;
  for (std::size_t j = 0; j < cols.size(); ++j) cells[0][j + 1] = cols[j];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cells[i + 1][0] = rows[i];
    for (std::size_t j = 0; j < cols.size(); ++j) cells[i + 1][j + 1] = cell(static_cast<int>(i), static_cast<int>(j));
  }
  std::vector<std::size_t> width(cols.size() + 1, 0);
  for (const auto& r : cells)
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  std::ostringstream os;
  for (const auto& r : cells) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      os << std::left << std::setw(static_cast<int>(width[j])) << r[j];
      if (j + 1 < r.size()) os << " | ";
    }
    os << "\n";
  }
  return os.str();
}

inline std::string bracket_grid(const LieAlgebraTable& t) {
  return grid("[.,.]", t.names, t.names, [&](int i, int j) { return bracket_string(t, i, j); });
}

}  // namespace beltrami

#endif  // BELTRAMI_LIEALG_HPP
