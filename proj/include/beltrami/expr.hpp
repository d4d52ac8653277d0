#ifndef BELTRAMI_EXPR_HPP
#define BELTRAMI_EXPR_HPP

#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "symbol.hpp"

namespace beltrami {

enum class FuncKind { sin, cos, exp, sqrt };

inline const char* func_name(FuncKind k) {
  switch (k) {
    case FuncKind::sin: return "sin";
    case FuncKind::cos: return "cos";
    case FuncKind::exp: return "exp";
    case FuncKind::sqrt: return "sqrt";
  }
  return "?";
}

enum class NodeKind { constant, symbol, add, mul, pow, func };

/// Raised when a formal symbol would need a derivative of order two, which no symbol represents.
class OrderOverflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Immutable symbolic expression. Constructors apply a light canonicalization
/// (flattening, constant folding, unit elimination) so printing and reparsing is stable.
class Expression {
 public:
  Expression() : Expression(Rational(0)) {}
  Expression(const Rational& q) {
    auto n = std::make_shared<Node>(NodeKind::constant);
    n->value = q;
    node_ = std::move(n);
  }
  Expression(long n) : Expression(Rational(n)) {}
  Expression(int n) : Expression(Rational(n)) {}
  Expression(Symbol s) {
    auto n = std::make_shared<Node>(NodeKind::symbol);
    n->sym = s;
    node_ = std::move(n);
  }

  static Expression add(std::vector<Expression> terms);
  static Expression mul(std::vector<Expression> factors);
  static Expression pow(const Expression& base, long exponent);
  static Expression func(FuncKind k, const Expression& arg);

  NodeKind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  Symbol symbol() const { return node_->sym; }
  long exponent() const { return node_->exponent; }
  FuncKind func_kind() const { return node_->fn; }
  std::span<const Expression> args() const { return node_->args; }

  bool is_constant() const { return kind() == NodeKind::constant; }
  bool is_zero() const { return is_constant() && sgn(value()) == 0; }
  bool is_one() const { return is_constant() && value() == 1; }

  friend bool operator==(const Expression& a, const Expression& b) { return structurally_equal(a, b); }

  friend Expression operator+(const Expression& a, const Expression& b) { return add({a, b}); }
  friend Expression operator-(const Expression& a, const Expression& b) {
    return add({a, mul({Expression(-1), b})});
  }
  friend Expression operator*(const Expression& a, const Expression& b) { return mul({a, b}); }
  friend Expression operator/(const Expression& a, const Expression& b) { return mul({a, pow(b, -1)}); }
  Expression operator-() const { return mul({Expression(-1), *this}); }

 private:
  struct Node {
    explicit Node(NodeKind k) : kind(k) {}
    NodeKind kind;
    Rational value;
    Symbol sym;
    long exponent = 0;
    FuncKind fn = FuncKind::sin;
    std::vector<Expression> args;
  };

  static Expression make(NodeKind k, std::vector<Expression> args, long exponent = 0,
                         FuncKind fn = FuncKind::sin) {
    auto n = std::make_shared<Node>(k);
    n->args = std::move(args);
    n->exponent = exponent;
    n->fn = fn;
    Expression e;
    e.node_ = std::move(n);
    return e;
  }

  static bool structurally_equal(const Expression& a, const Expression& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case NodeKind::constant: return a.value() == b.value();
      case NodeKind::symbol: return a.symbol() == b.symbol();
      case NodeKind::pow:
        if (a.exponent() != b.exponent()) return false;
        break;
      case NodeKind::func:
        if (a.func_kind() != b.func_kind()) return false;
        break;
      default: break;
    }
    if (a.args().size() != b.args().size()) return false;
    for (size_t i = 0; i < a.args().size(); ++i)
      if (!structurally_equal(a.args()[i], b.args()[i])) return false;
    return true;
  }

  std::shared_ptr<const Node> node_;
};

inline Expression Expression::add(std::vector<Expression> terms) {
  std::vector<Expression> flat;
  Rational c = 0;
  for (auto& t : terms) {
    if (t.kind() == NodeKind::add) {
      for (const auto& s : t.args()) {
        if (s.is_constant()) c += s.value();
        else flat.push_back(s);
      }
    } else if (t.is_constant()) {
      c += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (sgn(c) != 0) flat.emplace_back(c);
  if (flat.empty()) return Expression(0);
  if (flat.size() == 1) return flat.front();
  return make(NodeKind::add, std::move(flat));
}

inline Expression Expression::mul(std::vector<Expression> factors) {
  std::vector<Expression> flat;
  Rational c = 1;
  for (auto& f : factors) {
    if (f.kind() == NodeKind::mul) {
      for (const auto& s : f.args()) {
        if (s.is_constant()) c *= s.value();
        else flat.push_back(s);
      }
    } else if (f.is_constant()) {
      c *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (sgn(c) == 0) return Expression(0);
  if (flat.empty()) return Expression(c);
  if (c != 1) flat.insert(flat.begin(), Expression(c));
  if (flat.size() == 1) return flat.front();
  return make(NodeKind::mul, std::move(flat));
}

inline Expression Expression::pow(const Expression& base, long exponent) {
  if (exponent == 0) return Expression(1);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    if (sgn(base.value()) == 0) {
      if (exponent < 0) throw std::domain_error("division by zero");
      return Expression(0);
    }
    Rational r = 1;
    Rational b = exponent > 0 ? base.value() : Rational(1 / base.value());
    for (long i = 0; i < std::labs(exponent); ++i) r *= b;
    return Expression(r);
  }
  if (base.kind() == NodeKind::pow) return pow(base.args()[0], base.exponent() * exponent);
  return make(NodeKind::pow, {base}, exponent);
}

inline Expression Expression::func(FuncKind k, const Expression& arg) {
  if (arg.is_constant()) {
    const Rational& q = arg.value();
    if (sgn(q) == 0) {
      if (k == FuncKind::sin || k == FuncKind::sqrt) return Expression(0);
      return Expression(1);
    }
    Rational root;
    if (k == FuncKind::sqrt && exact_sqrt(q, root)) return Expression(root);
  }
  return make(NodeKind::func, {arg}, 0, k);
}

inline Expression pow(const Expression& b, long n) { return Expression::pow(b, n); }
inline Expression sin(const Expression& e) { return Expression::func(FuncKind::sin, e); }
inline Expression cos(const Expression& e) { return Expression::func(FuncKind::cos, e); }
inline Expression exp(const Expression& e) { return Expression::func(FuncKind::exp, e); }
inline Expression sqrt(const Expression& e) { return Expression::func(FuncKind::sqrt, e); }
inline Expression rational(long p, long q = 1) { return Expression(make_rational(p, q)); }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int precedence(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::add: return 1;
    case NodeKind::mul: return 2;
    case NodeKind::pow: return e.exponent() < 0 ? 2 : 3;
    case NodeKind::constant:
      if (sgn(e.value()) < 0) return 2;
      return is_integer(e.value()) ? 4 : 2;
    default: return 4;
  }
}

inline bool is_negative_term(const Expression& e) {
  if (e.is_constant()) return sgn(e.value()) < 0;
  if (e.kind() == NodeKind::mul) {
    const auto& lead = e.args()[0];
    return lead.is_constant() && sgn(lead.value()) < 0;
  }
  return false;
}

void print(std::ostream& os, const Expression& e, int outer);

inline void print_child(std::ostream& os, const Expression& e, int needed) {
  if (precedence(e) < needed) {
    os << '(';
    print(os, e, 0);
    os << ')';
  } else {
    print(os, e, needed);
  }
}

// Prints the non-constant factors of a product; `leading` marks that nothing was printed yet.
inline void print_factors(std::ostream& os, std::span<const Expression> fs, bool leading) {
  for (const auto& f : fs) {
    if (f.kind() == NodeKind::pow && f.exponent() < 0) {
      if (leading) os << '1';
      os << '/';
      print_child(os, Expression::pow(f.args()[0], -f.exponent()), 3);
    } else {
      if (!leading) os << '*';
      print_child(os, f, 3);
    }
    leading = false;
  }
}

inline void print_mul(std::ostream& os, std::span<const Expression> fs, bool negate) {
  if (fs.empty()) return;
  if (fs[0].is_constant()) {
    Rational c = negate ? Rational(-fs[0].value()) : fs[0].value();
    auto rest = fs.subspan(1);
    if (c == -1) {
      os << '-';
      print_factors(os, rest, true);
    } else if (c == 1) {
      print_factors(os, rest, true);
    } else {
      os << c.get_str();
      print_factors(os, rest, false);
    }
  } else {
    if (negate) os << '-';
    print_factors(os, fs, true);
  }
}

inline void print(std::ostream& os, const Expression& e, int outer) {
  (void)outer;
  switch (e.kind()) {
    case NodeKind::constant: os << e.value().get_str(); break;
    case NodeKind::symbol: os << name(e.symbol()); break;
    case NodeKind::func:
      os << func_name(e.func_kind()) << '(';
      print(os, e.args()[0], 0);
      os << ')';
      break;
    case NodeKind::pow:
      if (e.exponent() < 0) {
        print_factors(os, std::span<const Expression>(&e, 1), true);
      } else {
        print_child(os, e.args()[0], 4);
        os << '^' << e.exponent();
      }
      break;
    case NodeKind::mul: print_mul(os, e.args(), false); break;
    case NodeKind::add: {
      bool first = true;
      for (const auto& t : e.args()) {
        bool neg = is_negative_term(t);
        if (!first) os << (neg ? " - " : " + ");
        if (t.is_constant()) {
          Rational c = (!first && neg) ? Rational(-t.value()) : t.value();
          os << c.get_str();
        } else if (t.kind() == NodeKind::mul) {
          print_mul(os, t.args(), !first && neg);
        } else {
          print_child(os, t, 2);
        }
        first = false;
      }
      break;
    }
  }
}

}  // namespace detail

/// Canonical infix form in the same grammar the parser accepts.
inline std::string to_string(const Expression& e) {
  std::ostringstream os;
  detail::print(os, e, 0);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Expression& e) { return os << to_string(e); }

// ---------------------------------------------------------------------------
// Calculus and evaluation

/// Partial derivative of a single symbol with respect to another, as an expression.
inline Expression symbol_derivative(Symbol s, Symbol t) {
  if (s == t) return Expression(1);
  const SymbolInfo& si = info(s);
  if (si.kind == SymbolKind::radical) {
    if (t == sym::u || t == sym::v || t == sym::w) return Expression(t) / Expression(sym::R);
    return Expression(0);
  }
  if (si.kind == SymbolKind::formal) {
    bool depends = si.family == 0 ? (t == sym::u || t == sym::v || t == sym::w) : is_base(t);
    if (!depends) return Expression(0);
    if (si.wrt >= 0)
      throw OrderOverflow("second derivative of formal function '" + si.name + "' is not representable");
    if (si.family == 0) return Expression(Symbol{sym::f_begin + t.id - 2});
    return Expression(sym::generator(si.family - 1, t.id));
  }
  return Expression(0);
}

inline Expression differentiate(const Expression& e, Symbol s) {
  switch (e.kind()) {
    case NodeKind::constant: return Expression(0);
    case NodeKind::symbol: return symbol_derivative(e.symbol(), s);
    case NodeKind::add: {
      std::vector<Expression> terms;
      for (const auto& t : e.args()) terms.push_back(differentiate(t, s));
      return Expression::add(std::move(terms));
    }
    case NodeKind::mul: {
      std::vector<Expression> terms;
      auto fs = e.args();
      for (size_t i = 0; i < fs.size(); ++i) {
        Expression d = differentiate(fs[i], s);
        if (d.is_zero()) continue;
        std::vector<Expression> prod(fs.begin(), fs.end());
        prod[i] = d;
        terms.push_back(Expression::mul(std::move(prod)));
      }
      return Expression::add(std::move(terms));
    }
    case NodeKind::pow: {
      const Expression& b = e.args()[0];
      Expression db = differentiate(b, s);
      if (db.is_zero()) return Expression(0);
      return Expression::mul({Expression(e.exponent()), Expression::pow(b, e.exponent() - 1), db});
    }
    case NodeKind::func: {
      const Expression& a = e.args()[0];
      Expression da = differentiate(a, s);
      if (da.is_zero()) return Expression(0);
      switch (e.func_kind()) {
        case FuncKind::sin: return cos(a) * da;
        case FuncKind::cos: return -(sin(a) * da);
        case FuncKind::exp: return e * da;
        case FuncKind::sqrt: return Expression::mul({rational(1, 2), Expression::pow(e, -1), da});
      }
    }
  }
  return Expression(0);
}

/// Simultaneous substitution.
inline Expression substitute(const Expression& e, const std::map<Symbol, Expression>& bindings) {
  if (bindings.empty()) return e;
  switch (e.kind()) {
    case NodeKind::constant: return e;
    case NodeKind::symbol: {
      auto it = bindings.find(e.symbol());
      return it == bindings.end() ? e : it->second;
    }
    case NodeKind::add:
    case NodeKind::mul: {
      std::vector<Expression> out;
      for (const auto& a : e.args()) out.push_back(substitute(a, bindings));
      return e.kind() == NodeKind::add ? Expression::add(std::move(out)) : Expression::mul(std::move(out));
    }
    case NodeKind::pow: return Expression::pow(substitute(e.args()[0], bindings), e.exponent());
    case NodeKind::func: return Expression::func(e.func_kind(), substitute(e.args()[0], bindings));
  }
  return e;
}

inline void collect_symbols(const Expression& e, std::vector<bool>& seen) {
  if (e.kind() == NodeKind::symbol) {
    seen[e.symbol().id] = true;
    return;
  }
  for (const auto& a : e.args()) collect_symbols(a, seen);
}

inline std::vector<Symbol> free_symbols(const Expression& e) {
  std::vector<bool> seen(sym::count, false);
  collect_symbols(e, seen);
  std::vector<Symbol> out;
  for (int i = 0; i < sym::count; ++i)
    if (seen[i]) out.push_back(Symbol{i});
  return out;
}

inline bool depends_on(const Expression& e, Symbol s) {
  if (e.kind() == NodeKind::symbol) return e.symbol() == s;
  for (const auto& a : e.args())
    if (depends_on(a, s)) return true;
  return false;
}

class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense numeric assignment indexed by symbol id; NaN marks unbound.
class NumericPoint {
 public:
  NumericPoint() : values_(sym::count, std::nan("")) {}
  NumericPoint(const std::map<Symbol, double>& m) : NumericPoint() {
    for (auto [s, v] : m) set(s, v);
  }
  void set(Symbol s, double v) { values_[s.id] = v; }
  bool bound(Symbol s) const { return !std::isnan(values_[s.id]); }
  double operator[](Symbol s) const { return values_[s.id]; }

 private:
  std::vector<double> values_;
};

inline double eval_numeric(const Expression& e, const NumericPoint& p) {
  switch (e.kind()) {
    case NodeKind::constant: return e.value().get_d();
    case NodeKind::symbol: {
      Symbol s = e.symbol();
      if (p.bound(s)) return p[s];
      if (s == sym::R && p.bound(sym::u) && p.bound(sym::v) && p.bound(sym::w))
        return std::sqrt(p[sym::u] * p[sym::u] + p[sym::v] * p[sym::v] + p[sym::w] * p[sym::w]);
      throw EvaluationError("unbound symbol '" + name(s) + "'");
    }
    case NodeKind::add: {
      double acc = 0;
      for (const auto& t : e.args()) acc += eval_numeric(t, p);
      return acc;
    }
    case NodeKind::mul: {
      double acc = 1;
      for (const auto& t : e.args()) acc *= eval_numeric(t, p);
      return acc;
    }
    case NodeKind::pow: {
      double b = eval_numeric(e.args()[0], p);
      if (e.exponent() < 0 && b == 0.0) throw EvaluationError("division by zero");
      return std::pow(b, static_cast<double>(e.exponent()));
    }
    case NodeKind::func: {
      double a = eval_numeric(e.args()[0], p);
      switch (e.func_kind()) {
        case FuncKind::sin: return std::sin(a);
        case FuncKind::cos: return std::cos(a);
        case FuncKind::exp: return std::exp(a);
        case FuncKind::sqrt:
          if (a < 0) throw EvaluationError("sqrt of negative value");
          return std::sqrt(a);
      }
    }
  }
  return 0.0;
}

inline double eval_numeric(const Expression& e, const std::map<Symbol, double>& point) {
  return eval_numeric(e, NumericPoint(point));
}

}  // namespace beltrami

#endif  // BELTRAMI_EXPR_HPP
