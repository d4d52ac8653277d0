#ifndef BELTRAMI_POLY_HPP
#define BELTRAMI_POLY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"

namespace beltrami {

/// Normalization met a residue that is not polynomial in the registered atoms.
class NotPolynomial : public std::domain_error {
 public:
  NotPolynomial(const std::string& what, std::string subtree)
      : std::domain_error(what + ": " + subtree), subtree_(std::move(subtree)) {}
  const std::string& subtree() const { return subtree_; }

 private:
  std::string subtree_;
};

class Poly;
struct FuncAtom;

/// A polynomial variable: either a registered symbol or an opaque function application.
struct Atom {
  int sym = -1;
  std::shared_ptr<const FuncAtom> fn;
  bool is_symbol() const { return fn == nullptr; }
  bool is(Symbol s) const { return fn == nullptr && sym == s.id; }
};

struct Factor {
  Atom atom;
  long exp = 0;
};

struct Monomial {
  std::vector<Factor> factors;  // sorted by atom order, no zero exponents

  long degree() const {
    long d = 0;
    for (const auto& f : factors) d += f.exp;
    return d;
  }
  long exponent_of(Symbol s) const {
    for (const auto& f : factors)
      if (f.atom.is(s)) return f.exp;
    return 0;
  }
  bool empty() const { return factors.empty(); }
};

int compare(const Atom& a, const Atom& b);
int compare(const Monomial& a, const Monomial& b);
int compare(const Poly& a, const Poly& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

/// Canonical sparse polynomial over exact rationals. Products are reduced by the
/// registered rewrites: R^2 -> u^2+v^2+w^2, b^2 -> 1-a^2, cos(t)^2 -> 1-sin(t)^2,
/// sqrt(t)^2 -> t, and all exponential atoms of a monomial merge into one exp(sum).
/// Negative powers of R are tolerated transiently (see clear_radical).
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  Poly() = default;
  Poly(const Rational& c) {
    if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}
  Poly(int c) : Poly(Rational(c)) {}
  Poly(Symbol s) { terms_.emplace(Monomial{{Factor{Atom{s.id, nullptr}, 1}}}, Rational(1)); }

  static Poly atom(const Atom& a, long exp = 1) {
    Poly p;
    if (exp == 0) return Poly(1);
    p.accumulate(Monomial{{Factor{a, exp}}}, Rational(1));
    return p;
  }
  static Poly term(const Monomial& m, const Rational& c) {
    Poly p;
    p.accumulate(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  /// Largest monomial in the graded order.
  const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }

  friend bool operator==(const Poly& a, const Poly& b) { return compare(a, b) == 0; }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.accumulate(multiply(ma, mb), ca * cb);
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& s) const {
    if (sgn(s) == 0) return Poly();
    Poly p = *this;
    for (auto& [m, c] : p.terms_) c *= s;
    return p;
  }

  Poly pow(long n) const;

  /// Adds c * raw after applying the rewrite rules to the raw monomial.
  void accumulate(const Monomial& raw, const Rational& c);

  static Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    auto i = a.factors.begin(), j = b.factors.begin();
    while (i != a.factors.end() && j != b.factors.end()) {
      int c = compare(i->atom, j->atom);
      if (c < 0) out.factors.push_back(*i++);
      else if (c > 0) out.factors.push_back(*j++);
      else {
        long e = i->exp + j->exp;
        if (e != 0) out.factors.push_back(Factor{i->atom, e});
        ++i;
        ++j;
      }
    }
    out.factors.insert(out.factors.end(), i, a.factors.end());
    out.factors.insert(out.factors.end(), j, b.factors.end());
    return out;
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

struct FuncAtom {
  FuncKind kind;
  Poly arg;
};

inline int compare(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  for (; i != a.terms().end(); ++i, ++j) {
    int c = compare(i->first, j->first);
    if (c != 0) return c;
    int d = cmp(i->second, j->second);
    if (d != 0) return d < 0 ? -1 : 1;
  }
  return 0;
}

inline int compare(const Atom& a, const Atom& b) {
  if (a.is_symbol() && b.is_symbol()) return a.sym < b.sym ? -1 : (a.sym > b.sym ? 1 : 0);
  if (a.is_symbol()) return -1;
  if (b.is_symbol()) return 1;
  if (a.fn == b.fn) return 0;
  if (a.fn->kind != b.fn->kind) return a.fn->kind < b.fn->kind ? -1 : 1;
  return compare(a.fn->arg, b.fn->arg);
}

// Graded lexicographic; earlier atoms are more significant.
inline int compare(const Monomial& a, const Monomial& b) {
  long da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto i = a.factors.begin(), j = b.factors.begin();
  while (i != a.factors.end() && j != b.factors.end()) {
    int c = compare(i->atom, j->atom);
    if (c == 0) {
      if (i->exp != j->exp) return i->exp < j->exp ? -1 : 1;
      ++i;
      ++j;
    } else if (c < 0) {
      return i->exp > 0 ? 1 : -1;
    } else {
      return j->exp > 0 ? -1 : 1;
    }
  }
  if (i != a.factors.end()) return i->exp > 0 ? 1 : -1;
  if (j != b.factors.end()) return j->exp > 0 ? -1 : 1;
  return 0;
}

namespace detail {

inline const Poly& radical_square() {
  static const Poly s = Poly(sym::u) * Poly(sym::u) + Poly(sym::v) * Poly(sym::v) + Poly(sym::w) * Poly(sym::w);
  return s;
}

inline const Poly& trig_parameter_rule() {
  static const Poly s = Poly(1) - Poly(sym::a) * Poly(sym::a);
  return s;
}

inline Atom func_atom(FuncKind k, Poly arg) {
  return Atom{-1, std::make_shared<const FuncAtom>(FuncAtom{k, std::move(arg)})};
}

}  // namespace detail

/// Builds f(arg) with constant folding; sqrt(u^2+v^2+w^2) becomes R.
inline Poly make_func(FuncKind k, const Poly& arg) {
  if (arg.is_zero()) {
    if (k == FuncKind::sin || k == FuncKind::sqrt) return Poly();
    return Poly(1);
  }
  if (k == FuncKind::sqrt) {
    if (arg.is_constant()) {
      Rational root;
      if (exact_sqrt(arg.constant_term(), root)) return Poly(root);
    }
    if (arg == detail::radical_square()) return Poly(sym::R);
  }
  return Poly::atom(detail::func_atom(k, arg));
}

inline void Poly::accumulate(const Monomial& raw, const Rational& c) {
  if (sgn(c) == 0) return;
  // Merge exponential atoms into a single exp(sum of arguments).
  int exp_count = 0;
  bool exp_needs_merge = false;
  for (const auto& f : raw.factors) {
    if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::exp) {
      ++exp_count;
      if (f.exp != 1) exp_needs_merge = true;
    }
  }
  if (exp_count > 1 || exp_needs_merge) {
    Poly arg;
    Monomial rest;
    for (const auto& f : raw.factors) {
      if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::exp) arg += f.atom.fn->arg.scaled(Rational(f.exp));
      else rest.factors.push_back(f);
    }
    if (!arg.is_zero()) rest = multiply(rest, Monomial{{Factor{detail::func_atom(FuncKind::exp, arg), 1}}});
    accumulate(rest, c);
    return;
  }
  for (std::size_t i = 0; i < raw.factors.size(); ++i) {
    const Factor& f = raw.factors[i];
    if (f.exp < 2) continue;
    const Poly* rule = nullptr;
    Poly owned;
    if (f.atom.is(sym::R)) {
      rule = &detail::radical_square();
    } else if (f.atom.is(sym::b)) {
      rule = &detail::trig_parameter_rule();
    } else if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::cos) {
      Poly s = make_func(FuncKind::sin, f.atom.fn->arg);
      owned = Poly(1) - s * s;
      rule = &owned;
    } else if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::sqrt) {
      rule = &f.atom.fn->arg;
    }
    if (!rule) continue;
    Monomial rest = raw;
    long half = f.exp / 2;
    if (f.exp % 2 == 0) rest.factors.erase(rest.factors.begin() + static_cast<long>(i));
    else rest.factors[i].exp = 1;
    Poly expansion = rule->pow(half);
    for (const auto& [m, cm] : expansion.terms_) accumulate(multiply(rest, m), c * cm);
    return;
  }
  add_term(raw, c);
}

inline Poly Poly::pow(long n) const {
  if (n < 0) throw std::domain_error("negative power of a polynomial; invert first");
  Poly result(1), base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Inverse of a single-term polynomial whose atoms are only R and exponentials.
inline std::optional<Poly> invert(const Poly& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& [m, c] = *p.terms().begin();
  Monomial inv;
  for (const auto& f : m.factors) {
    if (f.atom.is(sym::R)) {
      inv.factors.push_back(Factor{f.atom, -f.exp});
    } else if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::exp) {
      inv.factors.push_back(Factor{detail::func_atom(FuncKind::exp, f.atom.fn->arg.scaled(Rational(-f.exp))), 1});
    } else {
      return std::nullopt;
    }
  }
  std::sort(inv.factors.begin(), inv.factors.end(),
            [](const Factor& x, const Factor& y) { return compare(x.atom, y.atom) < 0; });
  return Poly::term(inv, Rational(1 / c));
}

inline Poly power(const Poly& p, long n) {
  if (n >= 0) return p.pow(n);
  auto inv = invert(p);
  if (!inv) throw NotPolynomial("non-invertible denominator", "<poly>");
  return inv->pow(-n);
}

// ---------------------------------------------------------------------------
// Conversion to and from expressions

inline Expression to_expression(const Poly& p);

inline Expression atom_expression(const Atom& a) {
  if (a.is_symbol()) return Expression(Symbol{a.sym});
  return Expression::func(a.fn->kind, to_expression(a.fn->arg));
}

inline Expression to_expression(const Monomial& m) {
  std::vector<Expression> fs;
  for (const auto& f : m.factors) fs.push_back(pow(atom_expression(f.atom), f.exp));
  return Expression::mul(std::move(fs));
}

/// Terms in descending monomial order.
inline Expression to_expression(const Poly& p) {
  std::vector<Expression> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back(Expression::mul({Expression(it->second), to_expression(it->first)}));
  return Expression::add(std::move(terms));
}

inline std::string to_string(const Poly& p) { return to_string(to_expression(p)); }

namespace detail {

inline Poly to_poly(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::constant: return Poly(e.value());
    case NodeKind::symbol: return Poly(e.symbol());
    case NodeKind::add: {
      Poly acc;
      for (const auto& t : e.args()) acc += to_poly(t);
      return acc;
    }
    case NodeKind::mul: {
      Poly acc(1);
      for (const auto& t : e.args()) acc = acc * to_poly(t);
      return acc;
    }
    case NodeKind::pow: {
      Poly b = to_poly(e.args()[0]);
      if (e.exponent() >= 0) return b.pow(e.exponent());
      auto inv = invert(b);
      if (!inv) throw NotPolynomial("non-polynomial residue", to_string(e));
      return inv->pow(-e.exponent());
    }
    case NodeKind::func: return make_func(e.func_kind(), to_poly(e.args()[0]));
  }
  return Poly();
}

}  // namespace detail

inline long min_radical_exponent(const Poly& p) {
  long m = 0;
  for (const auto& [mono, c] : p.terms()) m = std::min(m, mono.exponent_of(sym::R));
  return m;
}

struct ClearedPoly {
  Poly poly;
  long radical_multiplier = 0;  // poly = original * R^radical_multiplier
};

/// Multiplies through by the smallest power of R that removes every R denominator.
inline ClearedPoly clear_radical(const Poly& p) {
  long m = min_radical_exponent(p);
  if (m == 0) return {p, 0};
  // shift exponents termwise; multiplying by R^-m as a Poly would expand it first
  Monomial shift{{Factor{Atom{sym::R.id, nullptr}, -m}}};
  Poly out;
  for (const auto& [mono, c] : p.terms()) out.accumulate(Poly::multiply(mono, shift), c);
  return {out, -m};
}

/// Canonical polynomial normal form. Throws NotPolynomial for non-polynomial residue,
/// including R left in a denominator (use normalize_cleared for those).
inline Poly normalize(const Expression& e) {
  Poly p = detail::to_poly(e);
  if (min_radical_exponent(p) < 0) throw NotPolynomial("R in a denominator", to_string(e));
  return p;
}

inline ClearedPoly normalize_cleared(const Expression& e) { return clear_radical(detail::to_poly(e)); }

/// Laurent-in-R form without clearing; intermediate results only.
inline Poly to_poly_laurent(const Expression& e) { return detail::to_poly(e); }

// ---------------------------------------------------------------------------
// Calculus on normal forms

inline Poly symbol_derivative_poly(Symbol s, Symbol t) {
  if (s == t) return Poly(1);
  const SymbolInfo& si = info(s);
  if (si.kind == SymbolKind::radical) {
    if (t == sym::u || t == sym::v || t == sym::w) return Poly(t) * Poly::atom(Atom{sym::R.id, nullptr}, -1);
    return Poly();
  }
  if (si.kind == SymbolKind::formal) return detail::to_poly(symbol_derivative(s, t));
  return Poly();
}

inline Poly differentiate(const Poly& p, Symbol s) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const Factor& f = m.factors[i];
      Poly d;
      if (f.atom.is_symbol()) {
        d = symbol_derivative_poly(Symbol{f.atom.sym}, s);
      } else {
        Poly da = differentiate(f.atom.fn->arg, s);
        if (da.is_zero()) continue;
        switch (f.atom.fn->kind) {
          case FuncKind::sin: d = make_func(FuncKind::cos, f.atom.fn->arg) * da; break;
          case FuncKind::cos: d = -(make_func(FuncKind::sin, f.atom.fn->arg) * da); break;
          case FuncKind::exp: d = Poly::atom(f.atom) * da; break;
          case FuncKind::sqrt:
            throw NotPolynomial("derivative of an opaque square root", to_string(atom_expression(f.atom)));
        }
      }
      if (d.is_zero()) continue;
      Monomial rest = m;
      if (f.exp == 1) rest.factors.erase(rest.factors.begin() + static_cast<long>(i));
      else rest.factors[i].exp -= 1;
      out += Poly::term(rest, c * f.exp) * d;
    }
  }
  return out;
}

inline Poly substitute(const Poly& p, const std::map<Symbol, Poly>& bindings) {
  if (bindings.empty()) return p;
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term(c);
    Monomial untouched;
    for (const auto& f : m.factors) {
      if (f.atom.is_symbol()) {
        auto it = bindings.find(Symbol{f.atom.sym});
        if (it == bindings.end()) {
          untouched.factors.push_back(f);
        } else {
          term = term * power(it->second, f.exp);
        }
      } else {
        Poly arg = substitute(f.atom.fn->arg, bindings);
        if (arg == f.atom.fn->arg) untouched.factors.push_back(f);
        else term = term * power(make_func(f.atom.fn->kind, arg), f.exp);
      }
    }
    out += Poly::term(untouched, Rational(1)) * term;
  }
  return out;
}

inline bool contains_symbol(const Poly& p, Symbol s) {
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors) {
      if (f.atom.is(s)) return true;
      if (!f.atom.is_symbol() && contains_symbol(f.atom.fn->arg, s)) return true;
    }
  return false;
}

inline bool contains_function_atoms(const Poly& p) {
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors)
      if (!f.atom.is_symbol()) return true;
  return false;
}

inline bool any_symbol(const Poly& p, const std::function<bool(Symbol)>& pred) {
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors) {
      if (f.atom.is_symbol() && pred(Symbol{f.atom.sym})) return true;
      if (!f.atom.is_symbol() && any_symbol(f.atom.fn->arg, pred)) return true;
    }
  return false;
}

inline double eval_numeric(const Poly& p, const NumericPoint& pt) { return eval_numeric(to_expression(p), pt); }

using CoefficientMap = std::map<Monomial, Poly, MonomialLess>;

/// Splits p = sum over monomials in the selected symbols of monomial * coefficient.
inline CoefficientMap collect(const Poly& p, const std::function<bool(Symbol)>& selected) {
  CoefficientMap out;
  for (const auto& [m, c] : p.terms()) {
    Monomial key, rest;
    for (const auto& f : m.factors) {
      if (f.atom.is_symbol() && selected(Symbol{f.atom.sym})) key.factors.push_back(f);
      else rest.factors.push_back(f);
    }
    out[key] += Poly::term(rest, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

/// Expression-level collect: coefficients of monomials in `vars`.
inline std::map<Monomial, Expression, MonomialLess> collect(const Expression& e, const std::set<Symbol>& vars) {
  Poly p = normalize(e);
  std::map<Monomial, Expression, MonomialLess> out;
  for (const auto& [m, c] : collect(p, [&](Symbol s) { return vars.count(s) > 0; })) out.emplace(m, to_expression(c));
  return out;
}

// ---------------------------------------------------------------------------
// Exact square roots

namespace detail {

inline std::optional<Poly> monomial_sqrt(const Monomial& m, const Rational& c) {
  Rational root;
  if (!exact_sqrt(c, root)) return std::nullopt;
  Monomial out;
  for (const auto& f : m.factors) {
    if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::exp) {
      out.factors.push_back(Factor{func_atom(FuncKind::exp, f.atom.fn->arg.scaled(make_rational(f.exp, 2))), 1});
    } else {
      if (f.exp % 2 != 0) return std::nullopt;
      out.factors.push_back(Factor{f.atom, f.exp / 2});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& x, const Factor& y) { return compare(x.atom, y.atom) < 0; });
  return Poly::term(out, root);
}

inline std::optional<Poly> monomial_quotient(const Monomial& num, const Rational& cn, const Monomial& den,
                                             const Rational& cd) {
  Monomial inv;
  for (const auto& f : den.factors) {
    if (!f.atom.is_symbol() && f.atom.fn->kind == FuncKind::exp)
      inv.factors.push_back(Factor{func_atom(FuncKind::exp, f.atom.fn->arg.scaled(Rational(-f.exp))), 1});
    else
      inv.factors.push_back(Factor{f.atom, -f.exp});
  }
  std::sort(inv.factors.begin(), inv.factors.end(),
            [](const Factor& x, const Factor& y) { return compare(x.atom, y.atom) < 0; });
  Monomial q = Poly::multiply(num, inv);
  for (const auto& f : q.factors) {
    bool is_exp = !f.atom.is_symbol() && f.atom.fn->kind == FuncKind::exp;
    if (f.exp < 0 && !is_exp && !f.atom.is(sym::R)) return std::nullopt;
  }
  Poly t = Poly::term(q, cn / cd);
  if (t.size() != 1) return std::nullopt;
  return t;
}

}  // namespace detail

/// Square root r with r*r == p and positive leading coefficient, when one exists.
inline std::optional<Poly> exact_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  const auto& [lm, lc] = p.leading();
  auto root = detail::monomial_sqrt(lm, lc);
  if (!root) return std::nullopt;
  const auto lead_root = root->leading();
  const Rational two_lc = lead_root.second * 2;
  const std::size_t limit = 4 * p.size() + 8;
  for (std::size_t iter = 0; iter < limit; ++iter) {
    Poly rem = p - (*root) * (*root);
    if (rem.is_zero()) return root;
    const auto& [rm, rc] = rem.leading();
    auto t = detail::monomial_quotient(rm, rc, lead_root.first, two_lc);
    if (!t) return std::nullopt;
    if (compare(t->leading().first, lead_root.first) >= 0) return std::nullopt;
    *root += *t;
  }
  return std::nullopt;
}

/// Quotient p / d when d divides p exactly (leading-term division).
inline std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
  if (d.is_zero()) return std::nullopt;
  const auto lead = d.leading();
  Poly q, rem = p;
  const std::size_t limit = 4 * (p.size() + 1) * (d.size() + 1) + 64;
  for (std::size_t iter = 0; iter < limit; ++iter) {
    if (rem.is_zero()) return q;
    const auto& [rm, rc] = rem.leading();
    auto t = detail::monomial_quotient(rm, rc, lead.first, lead.second);
    if (!t) return std::nullopt;
    Poly next = rem - (*t) * d;
    if (!next.is_zero() && compare(next.leading().first, rm) >= 0) return std::nullopt;
    q += *t;
    rem = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rational forms

/// num / den with polynomial parts; used where denominators are not monomials in R.
struct RationalForm {
  Poly num;
  Poly den = Poly(1);

  void simplify() {
    if (den.is_constant() || den.size() == 1) {
      if (auto inv = invert(den)) {
        num = num * *inv;
        den = Poly(1);
      }
    }
  }
  bool is_polynomial() const { return den == Poly(1); }

  /// Divides out q from numerator and denominator as often as it divides both.
  void cancel(const Poly& q) {
    if (q.is_constant() || q.is_zero()) return;
    while (!den.is_constant()) {
      auto n = exact_divide(num, q);
      if (!n) return;
      auto d = exact_divide(den, q);
      if (!d) return;
      num = std::move(*n);
      den = std::move(*d);
    }
    simplify();
  }

  friend RationalForm operator+(const RationalForm& a, const RationalForm& b) {
    RationalForm r;
    if (a.den == b.den) r = {a.num + b.num, a.den};
    else r = {a.num * b.den + b.num * a.den, a.den * b.den};
    r.simplify();
    return r;
  }
  friend RationalForm operator-(const RationalForm& a, const RationalForm& b) {
    return a + RationalForm{-b.num, b.den};
  }
  friend RationalForm operator*(const RationalForm& a, const RationalForm& b) {
    RationalForm r{a.num * b.num, a.den * b.den};
    r.simplify();
    return r;
  }
  RationalForm reciprocal() const {
    if (num.is_zero()) throw std::domain_error("division by zero");
    RationalForm r{den, num};
    r.simplify();
    return r;
  }
  /// Zero test; R factors in the numerator are cleared first.
  bool is_zero() const { return clear_radical(num).poly.is_zero(); }
};

inline RationalForm rationalize(const Expression& e, const std::map<Symbol, RationalForm>& bindings = {}) {
  switch (e.kind()) {
    case NodeKind::constant: return {Poly(e.value())};
    case NodeKind::symbol: {
      auto it = bindings.find(e.symbol());
      if (it != bindings.end()) return it->second;
      return {Poly(e.symbol())};
    }
    case NodeKind::add: {
      RationalForm acc{Poly()};
      for (const auto& t : e.args()) acc = acc + rationalize(t, bindings);
      return acc;
    }
    case NodeKind::mul: {
      RationalForm acc{Poly(1)};
      for (const auto& t : e.args()) acc = acc * rationalize(t, bindings);
      return acc;
    }
    case NodeKind::pow: {
      RationalForm b = rationalize(e.args()[0], bindings);
      long n = e.exponent();
      if (n < 0) {
        b = b.reciprocal();
        n = -n;
      }
      RationalForm r{b.num.pow(n), b.den.pow(n)};
      r.simplify();
      return r;
    }
    case NodeKind::func: {
      RationalForm a = rationalize(e.args()[0], bindings);
      if (!a.is_polynomial()) throw NotPolynomial("function of a rational argument", to_string(e));
      return {make_func(e.func_kind(), a.num)};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Equality with numeric fallback

struct EqualityVerdict {
  bool equal = false;
  bool symbolic = true;  // false when decided by numeric sampling
};

/// Decides a == b. Normal forms decide when they vanish or contain no opaque functions;
/// otherwise the difference is sampled at 20 random points (tolerance 1e-9).
inline EqualityVerdict expressions_equal(const Expression& a, const Expression& b, std::uint64_t seed = 7) {
  if (a == b) return {true, true};
  Expression diff = a - b;
  try {
    RationalForm r = rationalize(diff);
    Poly n = clear_radical(r.num).poly;
    if (n.is_zero()) return {true, true};
    if (!contains_function_atoms(n)) return {false, true};
  } catch (const NotPolynomial&) {
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  auto syms = free_symbols(diff);
  int accepted = 0;
  for (int attempt = 0; attempt < 200 && accepted < 20; ++attempt) {
    NumericPoint pt;
    for (Symbol s : syms) pt.set(s, dist(rng));
    try {
      double va = eval_numeric(a, pt), vb = eval_numeric(b, pt);
      if (!std::isfinite(va) || !std::isfinite(vb)) continue;
      if (std::abs(va - vb) > 1e-9 * (1 + std::abs(va))) return {false, false};
      ++accepted;
    } catch (const EvaluationError&) {
    }
  }
  return {accepted == 20, false};
}

}  // namespace beltrami

#endif  // BELTRAMI_POLY_HPP
