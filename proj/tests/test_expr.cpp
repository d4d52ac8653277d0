#include <gtest/gtest.h>

#include <cmath>

#include "beltrami/parse.hpp"
#include "random_expr.hpp"

using namespace beltrami;
using beltrami::testing::ExprGen;

namespace {

const std::vector<Symbol> xyz{sym::x, sym::y, sym::z};

NumericPoint point(double x, double y, double z) { return NumericPoint({{sym::x, x}, {sym::y, y}, {sym::z, z}}); }

}  // namespace

TEST(Parse, Precedence) {
  EXPECT_EQ(to_string(parse("-x^2")), "-x^2");
  EXPECT_DOUBLE_EQ(eval_numeric(parse("-x^2"), point(3, 0, 0)), -9);
  EXPECT_DOUBLE_EQ(eval_numeric(parse("2^3^2"), NumericPoint()), 512);
  EXPECT_DOUBLE_EQ(eval_numeric(parse("1 - 2 - 3"), NumericPoint()), -4);
  EXPECT_DOUBLE_EQ(eval_numeric(parse("12/3/2"), NumericPoint()), 2);
  EXPECT_DOUBLE_EQ(eval_numeric(parse("x*y^2/z"), point(2, 3, 4)), 4.5);
  EXPECT_EQ(parse("x*(y+z)"), parse("x*(y+z)*1") * 1);
  EXPECT_EQ(parse("012"), Expression(12));
}

TEST(Parse, Symbols) {
  EXPECT_EQ(parse("u_x").symbol(), sym::jet(0, 0));
  EXPECT_EQ(parse("w_z").symbol(), sym::jet(2, 2));
  EXPECT_EQ(parse("zeta_u").symbol(), sym::generator(0, 3));
  EXPECT_EQ(parse("C7").symbol(), sym::C(7));
  EXPECT_EQ(parse("R").symbol(), sym::R);
  EXPECT_EQ(parse("f_w").symbol(), sym::f_w);
}

TEST(Parse, Errors) {
  for (const char* bad : {"", "x+", "(x", "x)", "sin x", "foo(x)", "q", "x^y", "x^(1/2)", "1/0", "u_xx", "3 $ 4"})
    EXPECT_THROW(parse(bad), ParseError) << bad;
  try {
    parse("x + + ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
}

TEST(Parse, RoundTripFixed) {
  for (const char* s : {"sin(z)", "8*(x*z - y)/(1 + x^2 + y^2 + z^2)^2", "-1/2*C10*(x^2 - y^2 - z^2)",
                        "exp(-eps)*sin(exp(-eps)*z)", "a*cos(a*z - b*y)", "(-2)^3*x", "u/R"}) {
    Expression e = parse(s);
    EXPECT_EQ(parse(to_string(e)), e) << s << " -> " << to_string(e);
  }
}

TEST(Parse, RoundTripRandom) {
  ExprGen gen(101, {sym::x, sym::y, sym::z, sym::u, sym::eps, sym::C(3)});
  for (int i = 0; i < 500; ++i) {
    Expression e = gen(4);
    std::string s = to_string(e);
    Expression back = parse(s);
    EXPECT_EQ(back, e) << s;
    EXPECT_EQ(to_string(back), s);
  }
}

TEST(Expression, ConstantFolding) {
  EXPECT_TRUE((Expression(sym::x) * 0).is_zero());
  EXPECT_EQ(Expression(sym::x) * 1, Expression(sym::x));
  EXPECT_EQ(Expression(sym::x) + 0, Expression(sym::x));
  EXPECT_EQ(parse("2*3 + 1"), Expression(7));
  EXPECT_EQ(sin(Expression(0)), Expression(0));
  EXPECT_EQ(cos(Expression(0)), Expression(1));
  EXPECT_EQ(sqrt(Expression(rational(9, 4))), Expression(rational(3, 2)));
}

TEST(Differentiate, Rules) {
  EXPECT_EQ(to_string(differentiate(parse("x^3"), sym::x)), "3*x^2");
  EXPECT_EQ(differentiate(parse("sin(x)"), sym::x), parse("cos(x)"));
  EXPECT_EQ(differentiate(parse("y"), sym::x), Expression(0));
  EXPECT_DOUBLE_EQ(eval_numeric(differentiate(parse("1/x"), sym::x), point(2, 0, 0)), -0.25);
  // R = sqrt(u^2+v^2+w^2)
  Expression dR = differentiate(Expression(sym::R), sym::u);
  EXPECT_DOUBLE_EQ(eval_numeric(dR, NumericPoint({{sym::u, 3}, {sym::v, 4}, {sym::w, 0}})), 0.6);
}

TEST(Differentiate, FormalSymbols) {
  EXPECT_EQ(differentiate(Expression(sym::f), sym::u), Expression(sym::f_u));
  EXPECT_EQ(differentiate(Expression(sym::generator(1)), sym::z), Expression(sym::generator(1, 2)));
  EXPECT_THROW(differentiate(Expression(sym::f_u), sym::v), OrderOverflow);
  EXPECT_THROW(differentiate(Expression(sym::generator(2, 0)), sym::x), OrderOverflow);
}

// Central differences with step 1e-5; agreement to 1e-6 relative.
TEST(Differentiate, FiniteDifferences) {
  ExprGen gen(202, xyz);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 200; ++i) {
    Expression e = gen(4);
    double p[3] = {coord(gen.rng()), coord(gen.rng()), coord(gen.rng())};
    for (int axis = 0; axis < 3; ++axis) {
      Expression d = differentiate(e, sym::independent(axis));
      const double h = 1e-5;
      double lo[3] = {p[0], p[1], p[2]}, hi[3] = {p[0], p[1], p[2]};
      lo[axis] -= h;
      hi[axis] += h;
      double exact, fd;
      try {
        exact = eval_numeric(d, point(p[0], p[1], p[2]));
        fd = (eval_numeric(e, point(hi[0], hi[1], hi[2])) - eval_numeric(e, point(lo[0], lo[1], lo[2]))) / (2 * h);
      } catch (const EvaluationError&) {
        continue;
      }
      if (!std::isfinite(exact) || std::abs(exact) > 1e6) continue;
      EXPECT_NEAR(fd, exact, 1e-6 * std::max(1.0, std::abs(exact))) << to_string(e) << " axis " << axis;
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
}

TEST(Differentiate, Linearity) {
  ExprGen gen(303, xyz);
  for (int i = 0; i < 100; ++i) {
    Expression f = gen(3), g = gen(3);
    Expression c = gen.constant();
    Expression lhs = differentiate(c * f + g, sym::y);
    Expression rhs = c * differentiate(f, sym::y) + differentiate(g, sym::y);
    NumericPoint pt = point(0.3, -0.7, 1.1);
    try {
      double a = eval_numeric(lhs, pt), b = eval_numeric(rhs, pt);
      EXPECT_NEAR(a, b, 1e-9 * (1 + std::abs(a)));
    } catch (const EvaluationError&) {
    }
  }
}

TEST(Substitute, Basic) {
  Expression e = parse("x^2 + y");
  Expression s = substitute(e, {{sym::x, parse("z+1")}});
  EXPECT_DOUBLE_EQ(eval_numeric(s, point(0, 2, 3)), 18);
  EXPECT_FALSE(depends_on(s, sym::x));
  EXPECT_TRUE(depends_on(s, sym::z));
}

TEST(Evaluate, Errors) {
  EXPECT_THROW(eval_numeric(parse("x"), NumericPoint()), EvaluationError);
  EXPECT_THROW(eval_numeric(parse("1/x"), point(0, 0, 0)), EvaluationError);
  EXPECT_THROW(eval_numeric(parse("sqrt(x)"), point(-1, 0, 0)), EvaluationError);
}

TEST(Rational, Helpers) {
  EXPECT_EQ(parse_decimal("0.25"), make_rational(1, 4));
  EXPECT_EQ(parse_decimal("-3"), Rational(-3));
  EXPECT_EQ(parse_decimal("1/5"), make_rational(1, 5));
  EXPECT_EQ(parse_decimal("0.0625"), make_rational(1, 16));
  EXPECT_EQ(parse_decimal("-010/4"), make_rational(-5, 2));
  EXPECT_THROW(parse_decimal("abc"), std::invalid_argument);
  EXPECT_EQ(approximate_rational(0.5, 1000), make_rational(1, 2));
  EXPECT_EQ(approximate_rational(-1.0 / 3.0 + 1e-13, 1000), make_rational(-1, 3));
  Rational root;
  EXPECT_TRUE(exact_sqrt(make_rational(9, 16), root));
  EXPECT_EQ(root, make_rational(3, 4));
  EXPECT_FALSE(exact_sqrt(Rational(2), root));
}
