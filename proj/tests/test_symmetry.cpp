#include <gtest/gtest.h>

#include <random>

#include "beltrami/bases.hpp"
#include "beltrami/fixtures.hpp"
#include "beltrami/symmetry.hpp"
#include "random_expr.hpp"

using namespace beltrami;

namespace {

const std::string dir = default_fixture_dir();

GeneratorField random_combination(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d(-6, 6);
  GeneratorField g;
  for (int k = 1; k <= n; ++k) g = g + Rational(d(rng), 1 + (d(rng) + 6) % 4) * basis_field(k);
  return g;
}

}  // namespace

TEST(Determining, CurlFShape) {
  DeterminingSystem det = determining_system(curl_f_system());
  EXPECT_EQ(det.equations.size(), 15u);
  for (const auto& e : det.equations) {
    EXPECT_FALSE(e.equation.is_zero());
    // linear and homogeneous in the generator unknowns
    for (const auto& [key, c] : collect(e.equation, is_generator_symbol)) {
      ASSERT_EQ(key.factors.size(), 1u);
      EXPECT_EQ(key.factors[0].exp, 1);
    }
  }
}

TEST(Determining, ConstantFamilyAnnihilatesBothSystems) {
  DeterminingSystem det = specialize_f(determining_system(curl_f_system()), Expression(sym::R), "R");
  DeterminingSystem fx = specialize_f(fixture_system(dir, "eq10.txt"), Expression(sym::R), "R");
  EXPECT_EQ(fx.equations.size(), 14u);
  GeneratorField family = load_family(dir, "family13.txt");
  EXPECT_EQ(annihilation_failures(det, family), 0);
  EXPECT_EQ(annihilation_failures(fx, family), 0);
  EXPECT_EQ(solve_polynomial_ansatz(det, 2).dimension, 10);
  EXPECT_EQ(solve_polynomial_ansatz(fx, 2).dimension, 10);
}

TEST(Determining, SpecializingMatchesDirectSystem) {
  auto a = solve_polynomial_ansatz(specialize_f(determining_system(curl_f_system()), Expression(sym::R), "R"), 2);
  auto b = solve_polynomial_ansatz(curl_abs_b_system(), 2);
  EXPECT_TRUE(same_span(a.basis, b.basis));
}

TEST(Ansatz, CurlAbsBAlgebra) {
  auto sol = solve_polynomial_ansatz(curl_abs_b_system(), 2);
  EXPECT_EQ(sol.dimension, 10);
  auto b10 = fields(basis(10));
  EXPECT_EQ(field_rank(b10), 10);
  EXPECT_EQ(field_rank(sol.basis), 10);
  EXPECT_TRUE(same_span(sol.basis, b10));
  EXPECT_TRUE(same_span(fields(split_family(load_family(dir, "family13.txt"))), b10));
  EXPECT_TRUE(same_span(fields(load_basis(dir, "basis12.txt")), b10));
}

TEST(Ansatz, BlairAlgebra) {
  auto sol = solve_polynomial_ansatz(blair_system(), 2);
  EXPECT_EQ(sol.dimension, 7);
  auto b7 = fields(basis(7));
  EXPECT_TRUE(same_span(sol.basis, b7));
  EXPECT_TRUE(same_span(fields(split_family(load_family(dir, "family16.txt"))), b7));
  EXPECT_TRUE(same_span(fields(load_basis(dir, "basis15.txt")), b7));
  EXPECT_FALSE(same_span(sol.basis, fields(basis(10))));
}

TEST(Ansatz, LowDegrees) {
  EXPECT_EQ(solve_polynomial_ansatz(curl_abs_b_system(), 0).dimension, 3);
  EXPECT_EQ(solve_polynomial_ansatz(curl_abs_b_system(), 1).dimension, 7);
  EXPECT_EQ(solve_polynomial_ansatz(blair_system(), 0).dimension, 3);
}

TEST(Ansatz, Limits) {
  EXPECT_THROW(solve_polynomial_ansatz(curl_abs_b_system(), 6), ResourceError);
  EXPECT_THROW(solve_polynomial_ansatz(curl_abs_b_system(), -1), std::invalid_argument);
  EXPECT_THROW(solve_polynomial_ansatz(curl_f_system(), 2), std::invalid_argument);
}

TEST(VerifyGenerator, RandomElementsOfTheSpan) {
  std::mt19937_64 rng(31);
  DeterminingSystem curl = determining_system(curl_abs_b_system());
  DeterminingSystem blair = determining_system(blair_system());
  for (int n = 0; n < 50; ++n) {
    EXPECT_TRUE(verify_generator(random_combination(rng, 10), curl).ok);
    EXPECT_TRUE(verify_generator(random_combination(rng, 7), blair).ok);
  }
}

TEST(VerifyGenerator, NegativeControls) {
  DeterminingSystem curl = determining_system(curl_abs_b_system());
  DeterminingSystem blair = determining_system(blair_system());
  for (int k = 8; k <= 10; ++k) EXPECT_FALSE(verify_generator(basis_field(k), blair).ok) << "X" << k;
  std::mt19937_64 rng(32);
  for (int n = 0; n < 20; ++n) {
    GeneratorField g = random_combination(rng, 10);
    GeneratorField bad = g;
    bad.c[n % 6] += normalize(parse(n % 2 ? "x^2" : "u*y"));
    EXPECT_FALSE(verify_generator(bad, curl).ok);
  }
  // scaling without the matching field weight
  GeneratorField s;
  s.c[0] = Poly(sym::x);
  s.c[1] = Poly(sym::y);
  s.c[2] = Poly(sym::z);
  auto v = verify_generator(s, curl);
  EXPECT_FALSE(v.ok);
  EXPECT_FALSE(v.failing_value.is_zero());
}

TEST(MaximalRank, BothSystems) {
  EXPECT_EQ(maximal_rank_check(curl_abs_b_system(), 100), 3);
  EXPECT_EQ(maximal_rank_check(blair_system(), 100), 4);
  EXPECT_THROW(maximal_rank_check(blair_system(), 0), std::invalid_argument);
}

TEST(FConstraints, RadicalIsTheOnlyFamily) {
  FConstraintSystem sys = f_constraints_from_group(basis(7));
  EXPECT_FALSE(sys.constraints.empty());
  FSolutionReport rep = analyze_f_constraints(sys);
  EXPECT_TRUE(rep.equivalent_to_reference);
  EXPECT_TRUE(rep.radical_in_kernel);
  EXPECT_EQ(rep.generic_rank, 3);
  EXPECT_EQ(rep.family, "f = c*R, c constant (R = sqrt(u^2+v^2+w^2))");

  EXPECT_TRUE(verify_f(parse("R"), sys).ok);
  EXPECT_TRUE(verify_f(parse("-3/2*sqrt(u^2+v^2+w^2)"), sys).ok);
  for (const char* bad : {"1", "u", "u^2+v^2+w^2", "R^3", "u+v+w"}) {
    FVerdict v = verify_f(parse(bad), sys);
    EXPECT_FALSE(v.ok) << bad;
    EXPECT_FALSE(v.failing.empty()) << bad;
  }
  EXPECT_EQ(verify_f(parse("1"), sys).failing, "Euler constraint u*f_u + v*f_v + w*f_w = f");
  EXPECT_THROW(verify_f(parse("x*u"), sys), std::invalid_argument);
}

// Reference constraints checked directly: Euler's relation for degree-1 homogeneous,
// rotation invariance for functions of R alone.
TEST(FConstraints, ReferenceSetAgainstHandValues) {
  auto refs = reference_f_constraints();
  ASSERT_EQ(refs.size(), 4u);
  Poly R(sym::R), u(sym::u);
  for (const auto& r : refs) {
    Poly val = r.c[0] * R;
    for (int i = 0; i < 3; ++i) val += r.c[i + 1] * differentiate(R, sym::dependent(i));
    EXPECT_TRUE(clear_radical(val).poly.is_zero()) << r.name;
  }
  Poly val = refs[1].c[0] * u + refs[1].c[1] * differentiate(u, sym::u);
  EXPECT_FALSE(val.is_zero());
}
