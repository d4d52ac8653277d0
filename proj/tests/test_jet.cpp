#include <gtest/gtest.h>

#include "beltrami/bases.hpp"
#include "beltrami/jet.hpp"
#include "random_expr.hpp"

using namespace beltrami;

namespace {
Poly P(const char* s) { return normalize(parse(s)); }
}  // namespace

TEST(Prolongation, RotationAndScaling) {
  ProlongedField p1 = first_prolongation(basis_field(1));
  // X1 = -y d/dx + x d/dy - v d/du + u d/dv
  EXPECT_EQ(p1.coefficient(0, 0), P("-u_y - v_x"));
  EXPECT_EQ(p1.coefficient(0, 2), P("-v_z"));
  EXPECT_EQ(p1.coefficient(1, 1), P("u_y + v_x"));
  ProlongedField p7 = first_prolongation(basis_field(7));
  for (int d = 0; d < 3; ++d)
    for (int a = 0; a < 3; ++a) EXPECT_EQ(p7.coefficient(d, a), Poly(sym::jet(d, a)).scaled(-2));
}

TEST(Prolongation, TranslationsHaveNoJetPart) {
  for (int k = 4; k <= 6; ++k) {
    ProlongedField p = first_prolongation(basis_field(k));
    for (const auto& c : p.jet) EXPECT_TRUE(c.is_zero());
  }
}

TEST(Prolongation, CharacteristicRouteAgrees) {
  for (int k = 1; k <= 10; ++k) {
    GeneratorField X = basis_field(k);
    ProlongedField a = first_prolongation(X), b = first_prolongation_characteristic(X);
    for (int i = 0; i < 9; ++i) EXPECT_EQ(a.jet[i], b.jet[i]) << "X" << k << " slot " << i;
  }
  GeneratorField g;
  g.c[0] = P("x*u^2 + z");
  g.c[4] = P("y*w - x^3");
  ProlongedField a = first_prolongation(g), b = first_prolongation_characteristic(g);
  for (int i = 0; i < 9; ++i) EXPECT_EQ(a.jet[i], b.jet[i]);
}

TEST(TotalDerivative, ChainRule) {
  EXPECT_EQ(total_derivative(P("x*u + v^2"), 0), P("u + x*u_x + 2*v*v_x"));
  EXPECT_EQ(total_derivative(P("z*w"), 2), P("w + z*w_z"));
  EXPECT_THROW(total_derivative(P("u_x"), 0), OrderOverflow);
}

TEST(Generator, ApplyIsDerivation) {
  GeneratorField X = basis_field(8);
  Poly f = P("x*u + y^2"), g = P("z*w - v");
  EXPECT_EQ(X.apply(f * g), X.apply(f) * g + f * X.apply(g));
}
