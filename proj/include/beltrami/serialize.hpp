#ifndef BELTRAMI_SERIALIZE_HPP
#define BELTRAMI_SERIALIZE_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "liealg.hpp"
#include "solutions.hpp"
#include "symmetry.hpp"

namespace beltrami {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// LaTeX

namespace detail {

inline std::string latex_symbol(Symbol s) {
  static const char* greek[] = {"zeta", "eta", "theta", "phi", "lambda", "psi", "eps", "beta", "gamma"};
  std::string n = name(s);
  std::string head = n, tail;
  if (auto p = n.find('_'); p != std::string::npos) {
    head = n.substr(0, p);
    tail = n.substr(p + 1);
  }
  for (const char* gname : greek)
    if (head == gname) head = head == "eps" ? "\\varepsilon" : "\\" + head;
  if (head.size() > 1 && head[0] == 'C') head = "C_{" + head.substr(1) + "}";
  return tail.empty() ? head : head + "_{" + tail + "}";
}

inline std::string latex_rational(const Rational& q) {
  if (is_integer(q)) return q.get_str();
  Rational a = abs(q);
  std::string s = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
  return sgn(q) < 0 ? "-" + s : s;
}

void latex(std::ostringstream& os, const Expression& e);

inline void latex_child(std::ostringstream& os, const Expression& e, int needed) {
  if (precedence(e) < needed) {
    os << "\\left(";
    latex(os, e);
    os << "\\right)";
  } else {
    latex(os, e);
  }
}

inline void latex_product(std::ostringstream& os, std::span<const Expression> fs, bool negate) {
  Rational c = 1;
  std::vector<Expression> num, den;
  for (const auto& f : fs) {
    if (f.is_constant()) c *= f.value();
    else if (f.kind() == NodeKind::pow && f.exponent() < 0) den.push_back(Expression::pow(f.args()[0], -f.exponent()));
    else num.push_back(f);
  }
  if (negate) c = -c;
  if (sgn(c) < 0) {
    os << '-';
    c = -c;
  }
  auto body = [&](const std::vector<Expression>& v, const Rational& k) {
    std::ostringstream inner;
    bool first = true;
    if (k != 1 || v.empty()) {
      inner << k.get_str();
      first = false;
    }
    for (const auto& f : v) {
      if (!first) inner << "\\,";
      latex_child(inner, f, 3);
      first = false;
    }
    return inner.str();
  };
  if (den.empty() && is_integer(c)) {
    os << body(num, c);
  } else {
    os << "\\frac{" << body(num, c.get_num()) << "}{" << body(den, c.get_den()) << "}";
  }
}

inline void latex(std::ostringstream& os, const Expression& e) {
  switch (e.kind()) {
    case NodeKind::constant: os << latex_rational(e.value()); break;
    case NodeKind::symbol: os << latex_symbol(e.symbol()); break;
    case NodeKind::func:
      if (e.func_kind() == FuncKind::sqrt) {
        os << "\\sqrt{";
        latex(os, e.args()[0]);
        os << "}";
      } else if (e.func_kind() == FuncKind::exp) {
        os << "e^{";
        latex(os, e.args()[0]);
        os << "}";
      } else {
        os << "\\" << func_name(e.func_kind()) << "\\left(";
        latex(os, e.args()[0]);
        os << "\\right)";
      }
      break;
    case NodeKind::pow:
      if (e.exponent() < 0) {
        latex_product(os, std::span<const Expression>(&e, 1), false);
      } else {
        latex_child(os, e.args()[0], 4);
        os << "^{" << e.exponent() << "}";
      }
      break;
    case NodeKind::mul: latex_product(os, e.args(), false); break;
    case NodeKind::add: {
      bool first = true;
      for (const auto& t : e.args()) {
        bool neg = is_negative_term(t);
        if (!first) os << (neg ? " - " : " + ");
        if (t.is_constant()) os << latex_rational((!first && neg) ? Rational(-t.value()) : t.value());
        else if (t.kind() == NodeKind::mul) latex_product(os, t.args(), !first && neg);
        else latex_child(os, t, 2);
        first = false;
      }
      break;
    }
  }
}

}  // namespace detail

inline std::string to_latex(const Expression& e) {
  std::ostringstream os;
  detail::latex(os, e);
  return os.str();
}

inline std::string to_latex(const Poly& p) { return to_latex(to_expression(p)); }

/// One row per equation: index, source residual, jet monomial, equation = 0.
inline std::string determining_latex(const DeterminingSystem& det) {
  std::ostringstream os;
  os << "\\begin{tabular}{r|c|c|l}\n";
  os << "\\# & $\\Delta$ & monomial & equation \\\\\n\\hline\n";
  for (std::size_t i = 0; i < det.equations.size(); ++i) {
    const auto& e = det.equations[i];
    std::string mono = e.jet_monomial;
    for (auto& ch : mono)
      if (ch == '*') ch = ' ';
    os << i + 1 << " & $\\Delta_{" << e.residual + 1 << "}$ & $" << mono << "$ & $" << to_latex(e.equation)
       << " = 0$ \\\\\n";
  }
  os << "\\end{tabular}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const GeneratorField& X) {
  json j = json::object();
  for (int i = 0; i < 6; ++i) j[component_names[i]] = to_string(X.c[i]);
  return j;
}

inline json to_json(const DeterminingSystem& det) {
  json eqs = json::array();
  for (const auto& e : det.equations)
    eqs.push_back({{"equation", to_string(e.equation)},
                   {"residual", e.residual},
                   {"jet_monomial", e.jet_monomial},
                   {"radical_multiplier", e.radical_multiplier}});
  return {{"system", det.system}, {"count", det.equations.size()}, {"equations", eqs}};
}

inline json to_json(const LieAlgebraTable& t) {
  json rows = json::array();
  for (int i = 0; i < t.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < t.dim(); ++j) row.push_back(bracket_string(t, i, j));
    rows.push_back(row);
  }
  json constants = json::array();
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j)
      for (int k = 0; k < t.dim(); ++k)
        if (sgn(t.c(i, j, k)) != 0) constants.push_back({i + 1, j + 1, k + 1, t.c(i, j, k).get_str()});
  return {{"basis", t.names}, {"brackets", rows}, {"constants", constants}};
}

inline json to_json(const LieAlgebraTable& t, const std::vector<AdjointEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back({{"source", t.names[e.source]}, {"target", t.names[e.target]}, {"value", adjoint_string(t, e)}});
  return out;
}

inline json to_json(const TableDiff& d) {
  json mm = json::array();
  for (const auto& m : d.mismatches)
    mm.push_back({{"i", m.i + 1},
                  {"j", m.j + 1},
                  {"expected", m.expected},
                  {"computed", m.computed},
                  {"documented", m.documented}});
  return {{"compared", d.compared}, {"status", status_name(d.status())}, {"mismatches", mm}};
}

inline json to_json(const ResidualReport& r) {
  json comps = json::array();
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    comps.push_back({{"value", to_string(r.residuals[i])},
                     {"zero", static_cast<bool>(r.zero[i])},
                     {"mode", r.mode[i] == ResidualMode::symbolic ? "symbolic" : "numeric"}});
  return {{"zero", r.all_zero()}, {"max_abs", r.max_abs}, {"components", comps}};
}

// ---------------------------------------------------------------------------
// Schema check
//
// A schema is a JSON value mirroring the document: strings name a type
// ("string", "number", "integer", "boolean", "array", "object", "any"),
// objects list required keys, and a one-element array gives the element schema.

inline bool matches_schema(const json& doc, const json& schema, std::string* where = nullptr,
                           const std::string& path = "$") {
  auto fail = [&](const std::string& why) {
    if (where) *where = path + ": " + why;
    return false;
  };
  if (schema.is_string()) {
    const std::string t = schema.get<std::string>();
    bool ok = t == "any" || (t == "string" && doc.is_string()) || (t == "number" && doc.is_number()) ||
              (t == "integer" && doc.is_number_integer()) || (t == "boolean" && doc.is_boolean()) ||
              (t == "array" && doc.is_array()) || (t == "object" && doc.is_object());
    return ok ? true : fail("expected " + t);
  }
  if (schema.is_array()) {
    if (!doc.is_array()) return fail("expected array");
    for (std::size_t i = 0; i < doc.size(); ++i)
      if (!matches_schema(doc[i], schema[0], where, path + "[" + std::to_string(i) + "]")) return false;
    return true;
  }
  if (!doc.is_object()) return fail("expected object");
  for (const auto& [key, sub] : schema.items()) {
    if (!doc.contains(key)) return fail("missing key '" + key + "'");
    if (!matches_schema(doc[key], sub, where, path + "." + key)) return false;
  }
  return true;
}

inline json diff_schema() {
  return {{"compared", "integer"},
          {"status", "string"},
          {"mismatches",
           json::array({{{"i", "integer"}, {"j", "integer"}, {"expected", "string"}, {"computed", "string"},
                         {"documented", "boolean"}}})}};
}

inline json residual_schema() {
  return {{"zero", "boolean"},
          {"max_abs", "number"},
          {"components", json::array({{{"value", "string"}, {"zero", "boolean"}, {"mode", "string"}}})}};
}

inline json field_schema() {
  json f = json::object();
  for (const char* c : component_names) f[c] = "string";
  return f;
}

/// Output schema of each CLI subcommand's --json document.
inline json command_schema(const std::string& command) {
  const json head = {{"command", "string"}, {"exit_code", "integer"}};
  json s;
  if (command == "determining") {
    s = {{"system", "string"},
         {"count", "integer"},
         {"equations", json::array({{{"equation", "string"},
                                     {"residual", "integer"},
                                     {"jet_monomial", "string"},
                                     {"radical_multiplier", "integer"}}})}};
  } else if (command == "solve-ansatz") {
    s = {{"system", "string"},   {"degree", "integer"},
         {"unknowns", "integer"}, {"dimension", "integer"},
         {"basis", json::array({field_schema()})}};
  } else if (command == "verify-generator") {
    s = {{"system", "string"}, {"generator", field_schema()}, {"ok", "boolean"}};
  } else if (command == "bracket-table") {
    s = {{"basis", json::array({"string"})},
         {"brackets", json::array({json::array({"string"})})},
         {"constants", "array"},
         {"jacobi", "boolean"},
         {"fixture", diff_schema()}};
  } else if (command == "adjoint") {
    s = {{"basis", json::array({"string"})}, {"mode", "string"}};
  } else if (command == "verify-solution") {
    s = {{"solution", "string"},
         {"system", "string"},
         {"field", json::array({"string"})},
         {"residual", residual_schema()},
         {"divergence", "string"}};
  } else if (command == "reduce") {
    s = {{"kind", "string"},
         {"subgroup", "string"},
         {"ansatz", "string"},
         {"rhs", json::array({"string"})},
         {"steps", "integer"},
         {"blew_up", "boolean"},
         {"table", json::array({json::array({"number"})})}};
  } else if (command == "check-f") {
    s = {{"f", "string"}, {"ok", "boolean"}, {"constraints", json::array({"string"})}};
  } else if (command == "all") {
    s = {{"checks", json::array({{{"name", "string"}, {"ok", "boolean"}, {"detail", "string"}}})}};
  } else {
    return head;
  }
  for (const auto& [k, v] : head.items()) s[k] = v;
  return s;
}

}  // namespace beltrami

#endif  // BELTRAMI_SERIALIZE_HPP
