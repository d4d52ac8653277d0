#ifndef BELTRAMI_FIXTURES_HPP
#define BELTRAMI_FIXTURES_HPP

#include <array>
#include <fstream>
#include <map>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liealg.hpp"
#include "parse.hpp"

#ifndef BELTRAMI_FIXTURE_DIR
#define BELTRAMI_FIXTURE_DIR "fixtures"
#endif

namespace beltrami {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string default_fixture_dir() { return BELTRAMI_FIXTURE_DIR; }

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline std::pair<std::string, std::string> split_once(const std::string& s, const std::string& sep,
                                                      const std::string& where) {
  auto p = s.find(sep);
  if (p == std::string::npos) throw FixtureError(where + ": missing '" + sep + "'");
  return {trim(s.substr(0, p)), trim(s.substr(p + sep.size()))};
}

inline int basis_index(const std::string& name, const std::string& where) {
  static const std::regex re("X([0-9]+)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw FixtureError(where + ": expected a basis name, got '" + name + "'");
  return std::stoi(m[1]) - 1;
}

inline Expression parse_or_throw(const std::string& text, const std::string& where) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw FixtureError(where + ": " + e.what());
  }
}

}  // namespace detail

/// Non-empty, non-comment lines with "file:line" tags.
inline std::vector<std::pair<std::string, std::string>> read_fixture_lines(const std::string& dir,
                                                                           const std::string& name) {
  std::string path = dir + "/" + name;
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace_back(name + ":" + std::to_string(n), t);
  }
  return out;
}

/// Parses "c1*X1 + f(eps)*X2 - ..." into per-basis coefficients (at most 10 basis names).
inline std::vector<Poly> parse_combination(const std::string& text, int dim, const std::string& where = "") {
  static const std::regex re("X([0-9]+)");
  std::string replaced = std::regex_replace(text, re, "C$1");
  Poly p;
  try {
    p = normalize(parse(replaced));
  } catch (const ParseError& e) {
    throw FixtureError(where + ": " + e.what());
  }
  std::vector<Poly> out(dim);
  for (const auto& [key, c] : collect(p, [](Symbol s) { return s.id >= sym::C(1).id && s.id <= sym::C(10).id; })) {
    if (key.factors.size() != 1 || key.factors[0].exp != 1)
      throw FixtureError(where + ": '" + text + "' is not a linear combination of basis fields");
    int k = key.factors[0].atom.sym - sym::C(1).id;
    if (k >= dim) throw FixtureError(where + ": basis index out of range in '" + text + "'");
    out[k] = c;
  }
  return out;
}

struct PairEntry {
  int i = 0, j = 0;
  std::string text;
  std::vector<Poly> coefficients;
  std::string where;
};

/// Lines "Xi,Xj -> combination".
inline std::vector<PairEntry> load_pair_table(const std::string& dir, const std::string& name, int dim) {
  std::vector<PairEntry> out;
  for (const auto& [where, line] : read_fixture_lines(dir, name)) {
    auto [lhs, rhs] = detail::split_once(line, "->", where);
    auto names = detail::split(lhs, ',');
    if (names.size() != 2) throw FixtureError(where + ": expected 'Xi,Xj'");
    PairEntry e{detail::basis_index(names[0], where), detail::basis_index(names[1], where), rhs,
                parse_combination(rhs, dim, where), where};
    out.push_back(std::move(e));
  }
  return out;
}

/// Lines "Xi,Xj" (subalgebra lists, exception lists).
inline std::vector<std::vector<int>> load_index_sets(const std::string& dir, const std::string& name) {
  std::vector<std::vector<int>> out;
  for (const auto& [where, line] : read_fixture_lines(dir, name)) {
    std::vector<int> set;
    for (const auto& n : detail::split(line, ',')) set.push_back(detail::basis_index(n, where));
    out.push_back(std::move(set));
  }
  return out;
}

/// Lines "Xk: zeta, eta, theta, phi, lambda, psi".
inline std::vector<NamedField> load_basis(const std::string& dir, const std::string& name) {
  std::vector<NamedField> out;
  for (const auto& [where, line] : read_fixture_lines(dir, name)) {
    auto [label, body] = detail::split_once(line, ":", where);
    auto parts = detail::split(body, ',');
    if (parts.size() != 6) throw FixtureError(where + ": expected six coefficients");
    std::array<Expression, 6> e;
    for (int i = 0; i < 6; ++i) e[i] = detail::parse_or_throw(parts[i], where);
    out.push_back({label, GeneratorField::from_expressions(e)});
  }
  return out;
}

/// Lines "zeta = ...", ..., "psi = ...".
inline GeneratorField load_family(const std::string& dir, const std::string& name) {
  std::array<Expression, 6> e;
  std::array<bool, 6> seen{};
  for (const auto& [where, line] : read_fixture_lines(dir, name)) {
    auto [label, body] = detail::split_once(line, "=", where);
    int idx = -1;
    for (int i = 0; i < 6; ++i)
      if (label == component_names[i]) idx = i;
    if (idx < 0) throw FixtureError(where + ": unknown component '" + label + "'");
    e[idx] = detail::parse_or_throw(body, where);
    seen[idx] = true;
  }
  for (int i = 0; i < 6; ++i)
    if (!seen[i]) throw FixtureError(name + ": missing component " + component_names[i]);
  return GeneratorField::from_expressions(e);
}

/// The members of a family with constants C1..C10: one field per constant that occurs.
inline std::vector<NamedField> split_family(const GeneratorField& family) {
  std::vector<NamedField> out;
  for (int i = 1; i <= 10; ++i) {
    GeneratorField g;
    for (int c = 0; c < 6; ++c) {
      Poly coeff = differentiate(family.c[c], sym::C(i));
      if (contains_symbol(coeff, sym::C(i))) throw FixtureError("family is not linear in C" + std::to_string(i));
      g.c[c] = coeff;
    }
    if (!g.is_zero()) out.push_back({"C" + std::to_string(i), g});
  }
  return out;
}

struct NamedEquation {
  std::string name;
  Expression expr;  // lhs - rhs
};

/// Lines "[name:] lhs = rhs" or "[name:] expr".
inline std::vector<NamedEquation> load_equations(const std::string& dir, const std::string& name) {
  std::vector<NamedEquation> out;
  int n = 0;
  for (const auto& [where, line] : read_fixture_lines(dir, name)) {
    ++n;
    std::string label = "equation " + std::to_string(n), body = line;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      label = detail::trim(line.substr(0, colon));
      body = detail::trim(line.substr(colon + 1));
    }
    Expression e;
    if (auto eq = body.find('='); eq != std::string::npos)
      e = detail::parse_or_throw(body.substr(0, eq), where) - detail::parse_or_throw(body.substr(eq + 1), where);
    else
      e = detail::parse_or_throw(body, where);
    out.push_back({label, e});
  }
  return out;
}

/// Equations of a fixture as a determining system, one per line.
inline DeterminingSystem fixture_system(const std::string& dir, const std::string& name) {
  DeterminingSystem d{name, {}};
  for (const auto& e : load_equations(dir, name)) {
    ClearedPoly cp = normalize_cleared(e.expr);
    d.equations.push_back({cp.poly, 0, e.name, cp.radical_multiplier});
  }
  return d;
}

/// Number of equations a generator (or family) fails to annihilate.
inline int annihilation_failures(const DeterminingSystem& d, const GeneratorField& family) {
  int bad = 0;
  for (const auto& e : d.equations)
    if (!substitute_generator(e.equation, family).is_zero()) ++bad;
  return bad;
}

struct FieldFixture {
  std::string name;
  std::array<Expression, 3> uvw;
};

/// Lines "name: u, v, w".
inline std::vector<FieldFixture> load_fields(const std::string& dir, const std::string& name) {
  std::vector<FieldFixture> out;
  for (const auto& [where, line] : read_fixture_lines(dir, name)) {
    auto [label, body] = detail::split_once(line, ":", where);
    auto parts = detail::split(body, ',');
    if (parts.size() != 3) throw FixtureError(where + ": expected three components");
    out.push_back({label, {detail::parse_or_throw(parts[0], where), detail::parse_or_throw(parts[1], where),
                           detail::parse_or_throw(parts[2], where)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table comparison

struct Mismatch {
  int i = 0, j = 0;
  std::string expected, computed;
  bool documented = false;
};

enum class DiffStatus { clean = 0, documented_only = 1, new_mismatch = 3 };

struct TableDiff {
  int compared = 0;
  std::vector<Mismatch> mismatches;

  DiffStatus status() const {
    bool undocumented = false;
    for (const auto& m : mismatches) undocumented |= !m.documented;
    if (undocumented) return DiffStatus::new_mismatch;
    return mismatches.empty() ? DiffStatus::clean : DiffStatus::documented_only;
  }
};

inline const char* status_name(DiffStatus s) {
  switch (s) {
    case DiffStatus::clean: return "clean";
    case DiffStatus::documented_only: return "documented-mismatch-only";
    default: return "new-mismatch";
  }
}

inline bool is_documented(const std::vector<std::vector<int>>& exceptions, int i, int j) {
  for (const auto& e : exceptions)
    if (e.size() == 2 && e[0] == i && e[1] == j) return true;
  return false;
}

inline TableDiff compare_brackets(const LieAlgebraTable& t, const std::vector<PairEntry>& fixture,
                                  const std::vector<std::vector<int>>& exceptions = {}) {
  TableDiff d;
  for (const auto& e : fixture) {
    if (e.i >= t.dim() || e.j >= t.dim()) continue;
    ++d.compared;
    bool same = true;
    for (int k = 0; k < t.dim(); ++k)
      if (!(e.coefficients[k] == Poly(t.c(e.i, e.j, k)))) same = false;
    if (!same) d.mismatches.push_back({e.i, e.j, e.text, bracket_string(t, e.i, e.j), is_documented(exceptions, e.i, e.j)});
  }
  return d;
}

inline TableDiff compare_adjoint(const LieAlgebraTable& t, const std::vector<AdjointEntry>& computed,
                                 const std::vector<PairEntry>& fixture,
                                 const std::vector<std::vector<int>>& exceptions = {}) {
  TableDiff d;
  for (const auto& e : fixture) {
    const AdjointEntry* c = nullptr;
    for (const auto& a : computed)
      if (a.source == e.i && a.target == e.j) c = &a;
    if (!c) continue;
    ++d.compared;
    bool same = true;
    for (int k = 0; k < t.dim(); ++k)
      if (!(e.coefficients[k] == normalize(c->coefficient(k)))) same = false;
    if (!same) d.mismatches.push_back({e.i, e.j, e.text, adjoint_string(t, *c), is_documented(exceptions, e.i, e.j)});
  }
  return d;
}

}  // namespace beltrami

#endif  // BELTRAMI_FIXTURES_HPP
