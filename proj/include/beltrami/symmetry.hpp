#ifndef BELTRAMI_SYMMETRY_HPP
#define BELTRAMI_SYMMETRY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jet.hpp"
#include "linalg.hpp"
#include "parse.hpp"

namespace beltrami {

enum class FMode { symbolic, radical, custom };

/// First-order system Delta_nu = 0 in (x,y,z,u,v,w) and the nine first jets, with the
/// dependent jets solved for on the solution manifold.
struct PdeSystem {
  std::string name;
  std::vector<Poly> residuals;
  std::map<Symbol, Poly> elimination;
  FMode f_mode = FMode::custom;
  Poly f;

  std::vector<Symbol> free_jets() const {
    std::vector<Symbol> out;
    for (int d = 0; d < 3; ++d)
      for (int a = 0; a < 3; ++a)
        if (!elimination.count(sym::jet(d, a))) out.push_back(sym::jet(d, a));
    return out;
  }
};

namespace detail {

inline Poly jet_poly(int dep, int axis) { return Poly(sym::jet(dep, axis)); }

inline PdeSystem curl_system(std::string name, Poly f, FMode mode, bool solenoidal) {
  PdeSystem s;
  s.name = std::move(name);
  s.f_mode = mode;
  s.f = f;
  const Poly u(sym::u), v(sym::v), w(sym::w);
  // w_y - v_z = u f, u_z - w_x = v f, v_x - u_y = w f
  s.residuals.push_back(jet_poly(2, 1) - jet_poly(1, 2) - u * f);
  s.residuals.push_back(jet_poly(0, 2) - jet_poly(2, 0) - v * f);
  s.residuals.push_back(jet_poly(1, 0) - jet_poly(0, 1) - w * f);
  s.elimination[sym::jet(2, 1)] = jet_poly(1, 2) + u * f;
  s.elimination[sym::jet(0, 2)] = jet_poly(2, 0) + v * f;
  s.elimination[sym::jet(1, 0)] = jet_poly(0, 1) + w * f;
  if (solenoidal) {
    s.residuals.push_back(jet_poly(0, 0) + jet_poly(1, 1) + jet_poly(2, 2));
    s.elimination[sym::jet(0, 0)] = -(jet_poly(1, 1) + jet_poly(2, 2));
  }
  return s;
}

}  // namespace detail

/// curl B = f B with f(u,v,w) kept as the formal symbols f, f_u, f_v, f_w.
inline PdeSystem curl_f_system() { return detail::curl_system("curl-f", Poly(sym::f), FMode::symbolic, false); }

/// curl B = |B| B.
inline PdeSystem curl_abs_b_system() {
  return detail::curl_system("curl-absB", Poly(sym::R), FMode::radical, false);
}

/// curl B = |B| B together with div B = 0; symbolic_f keeps f formal instead.
inline PdeSystem blair_system(bool symbolic_f = false) {
  if (symbolic_f) return detail::curl_system("blair-f", Poly(sym::f), FMode::symbolic, true);
  return detail::curl_system("blair", Poly(sym::R), FMode::radical, true);
}

/// curl B = f B (optionally with div B = 0) for a concrete f(u,v,w).
inline PdeSystem curl_system_with(const Expression& f, bool solenoidal = false) {
  Poly fp = to_poly_laurent(f);
  if (any_symbol(fp, [](Symbol s) { return !(s == sym::u || s == sym::v || s == sym::w || s == sym::R); }))
    throw std::invalid_argument("f must depend on u, v, w only");
  return detail::curl_system(solenoidal ? "blair-custom" : "curl-custom", fp, FMode::custom, solenoidal);
}

inline PdeSystem custom_system(std::string name, std::vector<Poly> residuals, std::map<Symbol, Poly> elimination) {
  PdeSystem s;
  s.name = std::move(name);
  s.residuals = std::move(residuals);
  s.elimination = std::move(elimination);
  return s;
}

inline PdeSystem system_by_name(const std::string& n) {
  if (n == "curl-f") return curl_f_system();
  if (n == "curl-absB") return curl_abs_b_system();
  if (n == "blair") return blair_system();
  if (n == "blair-f") return blair_system(true);
  throw std::invalid_argument("unknown system '" + n + "'");
}

// ---------------------------------------------------------------------------
// Invariance and determining equations

inline std::vector<Poly> invariance_residuals(const PdeSystem& sys, const GeneratorField& X) {
  ProlongedField P = first_prolongation(X);
  std::vector<Poly> out;
  for (const auto& d : sys.residuals) out.push_back(P.apply(d));
  return out;
}

inline std::vector<Poly> restrict_to_solutions(const std::vector<Poly>& residuals, const PdeSystem& sys) {
  std::vector<Poly> out;
  for (const auto& r : residuals) out.push_back(substitute(r, sys.elimination));
  return out;
}

struct DeterminingEquation {
  Poly equation;
  int residual = 0;        // index of the Delta it came from
  std::string jet_monomial;  // "1" for the jet-free part
  long radical_multiplier = 0;
};

struct DeterminingSystem {
  std::string system;
  std::vector<DeterminingEquation> equations;
};

inline bool is_generator_symbol(Symbol s) { return s.id >= sym::gen_begin && s.id < sym::count; }
inline bool is_f_symbol(Symbol s) { return s.id >= sym::f_begin && s.id < sym::gen_begin; }

/// Scales p so its leading coefficient is 1.
inline Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading().second);
}

inline std::string monomial_string(const Monomial& m) {
  if (m.empty()) return "1";
  return to_string(to_expression(m));
}

/// Coefficients of the free-jet monomials of the restricted invariance residuals of a
/// generic field, cleared of R denominators and deduplicated up to a rational factor.
inline DeterminingSystem determining_system(const PdeSystem& sys) {
  DeterminingSystem out{sys.name, {}};
  auto restricted = restrict_to_solutions(invariance_residuals(sys, GeneratorField::generic()), sys);
  std::set<Poly, decltype([](const Poly& a, const Poly& b) { return compare(a, b) < 0; })> seen;
  for (std::size_t nu = 0; nu < restricted.size(); ++nu) {
    auto coeffs = collect(restricted[nu], [](Symbol s) { return is_jet(s); });
    // jet-free part first, then by increasing jet monomial
    for (const auto& [m, c] : coeffs) {
      ClearedPoly cp = clear_radical(c);
      Poly key = monic(cp.poly);
      if (key.is_zero() || !seen.insert(key).second) continue;
      out.equations.push_back({cp.poly, static_cast<int>(nu), monomial_string(m), cp.radical_multiplier});
    }
  }
  return out;
}

/// Replaces the formal f, f_u, f_v, f_w by a concrete f(u,v,w) and its derivatives.
inline DeterminingSystem specialize_f(const DeterminingSystem& det, const Expression& f, const std::string& label) {
  Poly fp = to_poly_laurent(f);
  std::map<Symbol, Poly> b{{sym::f, fp},
                           {sym::f_u, differentiate(fp, sym::u)},
                           {sym::f_v, differentiate(fp, sym::v)},
                           {sym::f_w, differentiate(fp, sym::w)}};
  DeterminingSystem out{det.system + " with f = " + label, {}};
  for (const auto& e : det.equations) {
    ClearedPoly cp = clear_radical(substitute(e.equation, b));
    if (cp.poly.is_zero()) continue;
    out.equations.push_back({cp.poly, e.residual, e.jet_monomial, e.radical_multiplier + cp.radical_multiplier});
  }
  return out;
}

/// Bindings of the formal generator symbols (and their first derivatives) to X.
inline std::map<Symbol, Poly> generator_bindings(const GeneratorField& X) {
  std::map<Symbol, Poly> b;
  for (int c = 0; c < 6; ++c) {
    b[sym::generator(c)] = X.c[c];
    for (int j = 0; j < 6; ++j) b[sym::generator(c, j)] = differentiate(X.c[c], sym::base(j));
  }
  return b;
}

inline Poly substitute_generator(const Poly& eq, const GeneratorField& X) {
  return clear_radical(substitute(eq, generator_bindings(X))).poly;
}

struct GeneratorVerdict {
  bool ok = true;
  int failing_index = -1;
  Poly failing_value;
};

inline GeneratorVerdict verify_generator(const GeneratorField& X, const DeterminingSystem& det) {
  for (std::size_t i = 0; i < det.equations.size(); ++i) {
    Poly r = substitute_generator(det.equations[i].equation, X);
    if (!r.is_zero()) return {false, static_cast<int>(i), r};
  }
  return {};
}

inline GeneratorVerdict verify_generator(const GeneratorField& X, const PdeSystem& sys) {
  return verify_generator(X, determining_system(sys));
}

// ---------------------------------------------------------------------------
// Polynomial ansatz

class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::size_t unknowns, std::size_t limit)
      : std::runtime_error("ansatz needs " + std::to_string(unknowns) + " unknowns (limit " +
                           std::to_string(limit) + ")"),
        unknowns_(unknowns) {}
  std::size_t unknowns() const { return unknowns_; }

 private:
  std::size_t unknowns_;
};

/// All monomials of total degree <= degree in x, y, z, u, v, w, ascending.
inline std::vector<Poly> base_monomials(int degree) {
  std::vector<Poly> out;
  std::vector<Poly> layer{Poly(1)};
  out.push_back(Poly(1));
  for (int d = 1; d <= degree; ++d) {
    std::set<Poly, decltype([](const Poly& a, const Poly& b) { return compare(a, b) < 0; })> next;
    for (const auto& m : layer)
      for (int i = 0; i < 6; ++i) next.insert(m * Poly(sym::base(i)));
    layer.assign(next.begin(), next.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct AnsatzMatrix {
  std::vector<Poly> monomials;  // unknown index = component * monomials.size() + monomial index
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  int columns = 0;
};

inline constexpr std::size_t ansatz_unknown_limit = 3000;

/// Homogeneous linear system on the ansatz coefficients, one row per (equation, monomial).
inline AnsatzMatrix ansatz_matrix(const DeterminingSystem& det, int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  std::size_t unknowns = 6 * binomial(6 + static_cast<std::size_t>(degree), static_cast<std::size_t>(degree));
  if (unknowns > ansatz_unknown_limit) throw ResourceError(unknowns, ansatz_unknown_limit);
  AnsatzMatrix A;
  A.monomials = base_monomials(degree);
  const int M = static_cast<int>(A.monomials.size());
  A.columns = 6 * M;
  // derivatives of each ansatz monomial, indexed [monomial][wrt]
  std::vector<std::array<Poly, 6>> dm(M);
  for (int k = 0; k < M; ++k)
    for (int j = 0; j < 6; ++j) dm[k][j] = differentiate(A.monomials[k], sym::base(j));

  for (const auto& de : det.equations) {
    if (any_symbol(de.equation, is_f_symbol))
      throw std::invalid_argument("polynomial ansatz needs a concrete f");
    auto lin = collect(de.equation, is_generator_symbol);
    std::array<std::vector<std::pair<int, Poly>>, 6> parts;  // component -> (wrt, coefficient)
    for (const auto& [key, coeff] : lin) {
      if (key.factors.size() != 1 || key.factors[0].exp != 1)
        throw std::logic_error("determining equation is not linear in the generator");
      const SymbolInfo& si = info(Symbol{key.factors[0].atom.sym});
      parts[si.family - 1].emplace_back(si.wrt, coeff);
    }
    std::map<Monomial, std::vector<std::pair<int, Rational>>, MonomialLess> block;
    for (int comp = 0; comp < 6; ++comp) {
      if (parts[comp].empty()) continue;
      for (int k = 0; k < M; ++k) {
        Poly val;
        for (const auto& [wrt, coeff] : parts[comp]) {
          const Poly& m = wrt < 0 ? A.monomials[k] : dm[k][wrt];
          if (!m.is_zero()) val += coeff * m;
        }
        for (const auto& [mono, c] : val.terms()) block[mono].emplace_back(comp * M + k, c);
      }
    }
    for (auto& [mono, row] : block) A.rows.push_back(std::move(row));
  }
  return A;
}

struct AnsatzSolution {
  std::vector<GeneratorField> basis;
  int dimension = 0;
  int unknowns = 0;
  int rank = 0;
  std::size_t rows = 0;
};

inline AnsatzSolution solve_polynomial_ansatz(const DeterminingSystem& det, int degree) {
  AnsatzMatrix A = ansatz_matrix(det, degree);
  Echelon e(A.columns);
  for (const auto& row : A.rows) e.add_row(row);
  AnsatzSolution sol;
  sol.unknowns = A.columns;
  sol.rank = e.rank();
  sol.rows = A.rows.size();
  const int M = static_cast<int>(A.monomials.size());
  for (const auto& vec : e.nullspace()) {
    GeneratorField g;
    for (int col = 0; col < A.columns; ++col)
      if (sgn(vec[col]) != 0) g.c[col / M] += A.monomials[col % M].scaled(vec[col]);
    sol.basis.push_back(std::move(g));
  }
  sol.dimension = static_cast<int>(sol.basis.size());
  return sol;
}

inline AnsatzSolution solve_polynomial_ansatz(const PdeSystem& sys, int degree) {
  if (sys.f_mode == FMode::symbolic) throw std::invalid_argument("polynomial ansatz needs a concrete f");
  return solve_polynomial_ansatz(determining_system(sys), degree);
}

struct ComponentMonomialLess {
  bool operator()(const std::pair<int, Monomial>& a, const std::pair<int, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return compare(a.second, b.second) < 0;
  }
};
using FieldIndex = std::map<std::pair<int, Monomial>, int, ComponentMonomialLess>;

/// Coordinates of a field in a fixed monomial basis; used for exact span comparisons.
inline std::vector<std::pair<int, Rational>> field_coordinates(
    const GeneratorField& X, FieldIndex& index) {
  std::vector<std::pair<int, Rational>> row;
  for (int c = 0; c < 6; ++c)
    for (const auto& [m, q] : X.c[c].terms()) {
      auto key = std::make_pair(c, m);
      auto it = index.find(key);
      if (it == index.end()) it = index.emplace(key, static_cast<int>(index.size())).first;
      row.emplace_back(it->second, q);
    }
  return row;
}

/// Exact rank of a list of generator fields over the rationals.
inline int field_rank(const std::vector<GeneratorField>& fields) {
  FieldIndex index;
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  for (const auto& X : fields) rows.push_back(field_coordinates(X, index));
  Echelon e(static_cast<int>(index.size()));
  for (const auto& r : rows) e.add_row(r);
  return e.rank();
}

inline bool same_span(const std::vector<GeneratorField>& a, const std::vector<GeneratorField>& b) {
  std::vector<GeneratorField> all = a;
  all.insert(all.end(), b.begin(), b.end());
  int r = field_rank(all);
  return field_rank(a) == r && field_rank(b) == r;
}

// ---------------------------------------------------------------------------
// Maximal rank

/// Minimum numeric rank of the Jacobian of Delta with respect to (x,y,z,u,v,w, jets) over
/// random points of the solution manifold. Formal f symbols get random values.
inline int maximal_rank_check(const PdeSystem& sys, int samples, std::uint64_t seed = 11) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::vector<Symbol> cols;
  for (int i = 0; i < 6; ++i) cols.push_back(sym::base(i));
  for (int d = 0; d < 3; ++d)
    for (int a = 0; a < 3; ++a) cols.push_back(sym::jet(d, a));
  const int rows = static_cast<int>(sys.residuals.size());
  std::vector<std::vector<Expression>> J(rows);
  for (int r = 0; r < rows; ++r)
    for (Symbol s : cols) J[r].push_back(to_expression(differentiate(sys.residuals[r], s)));
  std::map<Symbol, Expression> elim;
  for (const auto& [s, p] : sys.elimination) elim.emplace(s, to_expression(p));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  int best = static_cast<int>(cols.size());
  for (int n = 0; n < samples; ++n) {
    NumericPoint pt;
    double norm2 = 0;
    do {
      for (int i = 0; i < 6; ++i) pt.set(sym::base(i), dist(rng));
      norm2 = pt[sym::u] * pt[sym::u] + pt[sym::v] * pt[sym::v] + pt[sym::w] * pt[sym::w];
    } while (norm2 < 0.01);
    for (int i = sym::f_begin; i < sym::gen_begin; ++i) pt.set(Symbol{i}, dist(rng));
    for (Symbol s : sys.free_jets()) pt.set(s, dist(rng));
    for (const auto& [s, e] : elim) pt.set(s, eval_numeric(e, pt));
    Eigen::MatrixXd m(rows, static_cast<int>(cols.size()));
    for (int r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) m(r, static_cast<int>(c)) = eval_numeric(J[r][c], pt);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-8) ++rank;
    best = std::min(best, rank);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Inverse problem: which f make curl B = f B, div B = 0 invariant under a given group

/// One linear constraint c0*f + c1*f_u + c2*f_v + c3*f_w = 0.
struct FConstraint {
  std::array<Poly, 4> c;
  std::string provenance;
};

struct FConstraintSystem {
  std::vector<FConstraint> constraints;
};

inline const std::array<Symbol, 4>& f_symbols() {
  static const std::array<Symbol, 4> s{sym::f, sym::f_u, sym::f_v, sym::f_w};
  return s;
}

inline FConstraintSystem f_constraints_from_group(const std::vector<NamedField>& generators) {
  PdeSystem sys = blair_system(true);
  FConstraintSystem out;
  std::set<std::array<Poly, 4>, decltype([](const std::array<Poly, 4>& a, const std::array<Poly, 4>& b) {
             for (int i = 0; i < 4; ++i)
               if (int c = compare(a[i], b[i])) return c < 0;
             return false;
           })>
      seen;
  for (const auto& g : generators) {
    auto restricted = restrict_to_solutions(invariance_residuals(sys, g.field), sys);
    for (std::size_t nu = 0; nu < restricted.size(); ++nu) {
      for (const auto& [m, coeff] : collect(restricted[nu], [](Symbol s) { return is_jet(s); })) {
        FConstraint fc;
        for (const auto& [key, c] : collect(coeff, is_f_symbol)) {
          if (key.factors.size() != 1 || key.factors[0].exp != 1)
            throw std::logic_error("constraint is not linear in f and its derivatives");
          fc.c[Symbol{key.factors[0].atom.sym}.id - sym::f_begin] = c;
        }
        // scale so the first nonzero entry has leading coefficient 1
        Rational s;
        for (const auto& p : fc.c)
          if (!p.is_zero()) {
            s = 1 / p.leading().second;
            break;
          }
        if (sgn(s) == 0) continue;
        for (auto& p : fc.c) p = p.scaled(s);
        if (!seen.insert(fc.c).second) continue;
        fc.provenance = g.name + ", residual " + std::to_string(nu + 1) + ", " + monomial_string(m);
        out.constraints.push_back(std::move(fc));
      }
    }
  }
  return out;
}

struct NamedFConstraint {
  std::string name;
  std::array<Poly, 4> c;
};

/// uf_u+vf_v+wf_w = f and the three rotational constraints.
inline std::vector<NamedFConstraint> reference_f_constraints() {
  const Poly u(sym::u), v(sym::v), w(sym::w);
  return {
      {"Euler constraint u*f_u + v*f_v + w*f_w = f", {Poly(-1), u, v, w}},
      {"rotation constraint u*f_v - v*f_u = 0", {Poly(), -v, u, Poly()}},
      {"rotation constraint v*f_w - w*f_v = 0", {Poly(), Poly(), -w, v}},
      {"rotation constraint u*f_w - w*f_u = 0", {Poly(), -w, Poly(), u}},
  };
}

namespace detail {

inline Poly apply_constraint(const std::array<Poly, 4>& c, const Poly& F) {
  Poly out = c[0] * F;
  for (int i = 0; i < 3; ++i)
    if (!c[i + 1].is_zero()) out += c[i + 1] * differentiate(F, sym::dependent(i));
  return clear_radical(out).poly;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
  return make_rational(num(rng), den(rng));
}

inline int rank_at_point(const std::vector<std::array<Poly, 4>>& rows, const std::map<Symbol, Poly>& pt) {
  Echelon e(4);
  for (const auto& r : rows) {
    std::vector<std::pair<int, Rational>> entries;
    for (int i = 0; i < 4; ++i) {
      Poly val = substitute(r[i], pt);
      if (!val.is_constant()) throw std::logic_error("constraint coefficient did not evaluate to a number");
      if (!val.is_zero()) entries.emplace_back(i, val.constant_term());
    }
    e.add_row(entries);
  }
  return e.rank();
}

}  // namespace detail

struct FSolutionReport {
  bool equivalent_to_reference = false;  // same row space as the four reference constraints
  int generic_rank = 0;
  bool radical_in_kernel = false;         // (u^2+v^2+w^2, u, v, w) annihilates every constraint
  std::string family;                     // description of the full solution set
};

/// Exact analysis of the derived constraints at random rational points; the kernel
/// (u^2+v^2+w^2, u, v, w) with rank 3 means grad log f = grad log R, so f = c*R.
inline FSolutionReport analyze_f_constraints(const FConstraintSystem& sys, int points = 8, std::uint64_t seed = 5) {
  FSolutionReport rep;
  const Poly u(sym::u), v(sym::v), w(sym::w);
  const std::array<Poly, 4> kernel{u * u + v * v + w * w, u, v, w};
  std::vector<std::array<Poly, 4>> derived, reference, both;
  for (const auto& c : sys.constraints) derived.push_back(c.c);
  for (const auto& c : reference_f_constraints()) reference.push_back(c.c);
  both = derived;
  both.insert(both.end(), reference.begin(), reference.end());

  rep.radical_in_kernel = true;
  for (const auto& r : derived) {
    Poly s;
    for (int i = 0; i < 4; ++i) s += r[i] * kernel[i];
    if (!s.is_zero()) rep.radical_in_kernel = false;
  }
  std::mt19937_64 rng(seed);
  rep.equivalent_to_reference = true;
  rep.generic_rank = 4;
  for (int n = 0; n < points; ++n) {
    std::map<Symbol, Poly> pt;
    for (int i = 0; i < 6; ++i) pt[sym::base(i)] = Poly(detail::random_rational(rng));
    int rd = detail::rank_at_point(derived, pt);
    int rr = detail::rank_at_point(reference, pt);
    int rb = detail::rank_at_point(both, pt);
    if (rd != rb || rr != rb) rep.equivalent_to_reference = false;
    rep.generic_rank = std::min(rep.generic_rank, rd);
  }
  if (rep.radical_in_kernel && rep.generic_rank == 3)
    rep.family = "f = c*R, c constant (R = sqrt(u^2+v^2+w^2))";
  else if (rep.generic_rank == 4)
    rep.family = "f = 0 only";
  else
    rep.family = "undetermined";
  return rep;
}

struct FVerdict {
  bool ok = true;
  std::string failing;  // name of the first violated constraint
  int failing_derived = -1;
};

/// Substitutes f and its first derivatives into every derived constraint.
inline FVerdict verify_f(const Expression& f_expr, const FConstraintSystem& sys) {
  Poly F = to_poly_laurent(f_expr);
  if (any_symbol(F, [](Symbol s) { return !(s == sym::u || s == sym::v || s == sym::w || s == sym::R); }))
    throw std::invalid_argument("f must depend on u, v, w only");
  FVerdict verdict;
  for (std::size_t i = 0; i < sys.constraints.size(); ++i)
    if (!detail::apply_constraint(sys.constraints[i].c, F).is_zero()) {
      verdict.ok = false;
      verdict.failing_derived = static_cast<int>(i);
      break;
    }
  if (verdict.ok) return verdict;
  for (const auto& ref : reference_f_constraints())
    if (!detail::apply_constraint(ref.c, F).is_zero()) {
      verdict.failing = ref.name;
      return verdict;
    }
  verdict.failing = "derived constraint: " + sys.constraints[verdict.failing_derived].provenance;
  return verdict;
}

}  // namespace beltrami

#endif  // BELTRAMI_SYMMETRY_HPP
