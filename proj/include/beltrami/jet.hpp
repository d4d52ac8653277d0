#ifndef BELTRAMI_JET_HPP
#define BELTRAMI_JET_HPP

#include <array>
#include <stdexcept>
#include <string>

#include "poly.hpp"

namespace beltrami {

inline constexpr std::array<const char*, 6> component_names{"zeta", "eta", "theta", "phi", "lambda", "psi"};

/// Point-symmetry vector field X = zeta d/dx + eta d/dy + theta d/dz + phi d/du + lambda d/dv + psi d/dw.
struct GeneratorField {
  std::array<Poly, 6> c;

  GeneratorField() = default;
  explicit GeneratorField(std::array<Poly, 6> coeffs) : c(std::move(coeffs)) {}

  static GeneratorField from_expressions(const std::array<Expression, 6>& e) {
    GeneratorField g;
    for (int i = 0; i < 6; ++i) {
      g.c[i] = normalize(e[i]);
      if (any_symbol(g.c[i], [](Symbol s) { return is_jet(s) || kind(s) == SymbolKind::second_jet; }))
        throw std::invalid_argument(std::string("jet symbol in generator coefficient ") + component_names[i]);
    }
    return g;
  }

  /// Field whose coefficients are the formal symbols zeta, ..., psi.
  static GeneratorField generic() {
    GeneratorField g;
    for (int i = 0; i < 6; ++i) g.c[i] = Poly(sym::generator(i));
    return g;
  }

  Expression zeta() const { return to_expression(c[0]); }
  Expression eta() const { return to_expression(c[1]); }
  Expression theta() const { return to_expression(c[2]); }
  Expression phi() const { return to_expression(c[3]); }
  Expression lambda() const { return to_expression(c[4]); }
  Expression psi() const { return to_expression(c[5]); }

  bool is_zero() const {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }

  /// X(F) as a derivation on functions of (x,y,z,u,v,w).
  Poly apply(const Poly& F) const {
    Poly out;
    for (int i = 0; i < 6; ++i)
      if (!c[i].is_zero()) out += c[i] * differentiate(F, sym::base(i));
    return out;
  }

  friend bool operator==(const GeneratorField& a, const GeneratorField& b) { return a.c == b.c; }
  friend GeneratorField operator+(const GeneratorField& a, const GeneratorField& b) {
    GeneratorField r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend GeneratorField operator-(const GeneratorField& a, const GeneratorField& b) {
    GeneratorField r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend GeneratorField operator*(const Rational& s, const GeneratorField& a) {
    GeneratorField r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i].scaled(s);
    return r;
  }
  friend GeneratorField operator*(const Poly& s, const GeneratorField& a) {
    GeneratorField r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] * s;
    return r;
  }
};

inline std::string to_string(const GeneratorField& X) {
  static const char* dirs[] = {"x", "y", "z", "u", "v", "w"};
  std::string out;
  for (int i = 0; i < 6; ++i) {
    if (X.c[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(X.c[i]) + ")*d" + dirs[i];
  }
  return out.empty() ? "0" : out;
}

/// First prolongation: coefficient of d/d(u^dep_axis) stored at index 3*dep + axis,
/// i.e. Phi^x, Phi^y, Phi^z, Lambda^x, ..., Psi^z.
struct ProlongedField {
  GeneratorField base;
  std::array<Poly, 9> jet;

  const Poly& coefficient(int dep, int axis) const { return jet[3 * dep + axis]; }

  /// pr X applied to a function of base and first-jet symbols.
  Poly apply(const Poly& F) const {
    Poly out = base.apply(F);
    for (int d = 0; d < 3; ++d)
      for (int a = 0; a < 3; ++a) {
        const Poly& coeff = jet[3 * d + a];
        if (!coeff.is_zero()) out += coeff * differentiate(F, sym::jet(d, a));
      }
    return out;
  }
};

inline bool contains_jets(const Poly& p) {
  return any_symbol(p, [](Symbol s) { return is_jet(s) || kind(s) == SymbolKind::second_jet; });
}

/// D_axis e for e free of jets: partial in the axis plus the chain terms through u, v, w.
inline Poly total_derivative(const Poly& e, int axis) {
  if (contains_jets(e)) throw OrderOverflow("total derivative of an expression containing jets");
  Poly out = differentiate(e, sym::independent(axis));
  for (int d = 0; d < 3; ++d) {
    Poly pd = differentiate(e, sym::dependent(d));
    if (!pd.is_zero()) out += Poly(sym::jet(d, axis)) * pd;
  }
  return out;
}

inline Expression total_derivative(const Expression& e, int axis) {
  return to_expression(total_derivative(normalize(e), axis));
}

namespace detail {

// Total derivative allowed to raise first jets into transient second jets.
inline Poly total_derivative_with_jets(const Poly& e, int axis) {
  if (any_symbol(e, [](Symbol s) { return kind(s) == SymbolKind::second_jet; }))
    throw OrderOverflow("total derivative of a second-order jet");
  Poly out = differentiate(e, sym::independent(axis));
  for (int d = 0; d < 3; ++d) {
    Poly pd = differentiate(e, sym::dependent(d));
    if (!pd.is_zero()) out += Poly(sym::jet(d, axis)) * pd;
    for (int j = 0; j < 3; ++j) {
      Poly pj = differentiate(e, sym::jet(d, j));
      if (!pj.is_zero()) out += Poly(sym::second_jet(d, axis, j)) * pj;
    }
  }
  return out;
}

}  // namespace detail

/// Phi^i_a = D_i phi_a - sum_j u^a_j D_i xi^j.
inline ProlongedField first_prolongation(const GeneratorField& X) {
  ProlongedField P{X, {}};
  std::array<Poly, 3> Dxi[3];
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) Dxi[j][i] = total_derivative(X.c[j], i);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      Poly coeff = total_derivative(X.c[3 + a], i);
      for (int j = 0; j < 3; ++j)
        if (!Dxi[j][i].is_zero()) coeff -= Poly(sym::jet(a, j)) * Dxi[j][i];
      P.jet[3 * a + i] = std::move(coeff);
    }
  return P;
}

/// Same coefficients through the characteristic Q_a = phi_a - sum_j xi^j u^a_j:
/// Phi^i_a = D_i Q_a + sum_j xi^j u^a_ij. Second-order jets must cancel.
inline ProlongedField first_prolongation_characteristic(const GeneratorField& X) {
  ProlongedField P{X, {}};
  for (int a = 0; a < 3; ++a) {
    Poly Q = X.c[3 + a];
    for (int j = 0; j < 3; ++j) Q -= X.c[j] * Poly(sym::jet(a, j));
    for (int i = 0; i < 3; ++i) {
      Poly coeff = detail::total_derivative_with_jets(Q, i);
      for (int j = 0; j < 3; ++j) coeff += X.c[j] * Poly(sym::second_jet(a, i, j));
      if (any_symbol(coeff, [](Symbol s) { return kind(s) == SymbolKind::second_jet; }))
        throw std::logic_error("second-order jets did not cancel in prolongation coefficient");
      P.jet[3 * a + i] = std::move(coeff);
    }
  }
  return P;
}

}  // namespace beltrami

#endif  // BELTRAMI_JET_HPP
