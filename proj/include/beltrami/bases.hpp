#ifndef BELTRAMI_BASES_HPP
#define BELTRAMI_BASES_HPP

#include <array>
#include <string>
#include <vector>

#include "jet.hpp"
#include "parse.hpp"

namespace beltrami {

struct NamedField {
  std::string name;
  GeneratorField field;
};

namespace detail {

// Coefficients (zeta, eta, theta, phi, lambda, psi) of X1..X10 in the expression DSL.
inline const std::array<std::array<const char*, 6>, 10>& conformal_basis_text() {
  static const std::array<std::array<const char*, 6>, 10> text{{
      {"-y", "x", "0", "-v", "u", "0"},
      {"0", "-z", "y", "0", "-w", "v"},
      {"-z", "0", "x", "-w", "0", "u"},
      {"1", "0", "0", "0", "0", "0"},
      {"0", "1", "0", "0", "0", "0"},
      {"0", "0", "1", "0", "0", "0"},
      {"x", "y", "z", "-u", "-v", "-w"},
      {"2*x*z", "2*y*z", "z^2-x^2-y^2", "2*(x*w-z*u)", "2*(y*w-z*v)", "-2*(x*u+y*v+z*w)"},
      {"x*y", "(y^2-x^2-z^2)/2", "y*z", "x*v-y*u", "-(x*u+y*v+z*w)", "z*v-y*w"},
      {"(x^2-y^2-z^2)/2", "x*y", "x*z", "-(x*u+y*v+z*w)", "y*u-x*v", "z*u-x*w"},
  }};
  return text;
}

}  // namespace detail

inline GeneratorField parse_generator(const std::array<std::string, 6>& text) {
  std::array<Expression, 6> e;
  for (int i = 0; i < 6; ++i) e[i] = parse(text[i]);
  return GeneratorField::from_expressions(e);
}

/// X_index for index in 1..10.
inline GeneratorField basis_field(int index) {
  const auto& t = detail::conformal_basis_text().at(static_cast<std::size_t>(index - 1));
  return parse_generator({t[0], t[1], t[2], t[3], t[4], t[5]});
}

/// First n fields X1..Xn; n = 10 spans the symmetries of curl B = |B| B, n = 7 those of the Blair system.
inline std::vector<NamedField> basis(int n) {
  std::vector<NamedField> out;
  for (int i = 1; i <= n; ++i) out.push_back({"X" + std::to_string(i), basis_field(i)});
  return out;
}

inline std::vector<NamedField> basis_b10() { return basis(10); }
inline std::vector<NamedField> basis_b7() { return basis(7); }

inline std::vector<GeneratorField> fields(const std::vector<NamedField>& named) {
  std::vector<GeneratorField> out;
  for (const auto& n : named) out.push_back(n.field);
  return out;
}

}  // namespace beltrami

#endif  // BELTRAMI_BASES_HPP
