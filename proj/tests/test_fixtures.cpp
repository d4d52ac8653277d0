#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "beltrami/bases.hpp"
#include "beltrami/fixtures.hpp"
#include "random_expr.hpp"

using namespace beltrami;
namespace fs = std::filesystem;

namespace {

const std::string dir = default_fixture_dir();

class ScratchDir : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = fs::temp_directory_path() / ("beltrami_fx_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  void TearDown() override { fs::remove_all(path_); }
  void write(const std::string& name, const std::string& body) { std::ofstream(path_ / name) << body; }
  std::string dir() const { return path_.string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST(Fixtures, ShippedFilesLoad) {
  EXPECT_EQ(load_pair_table(dir, "b10_brackets.txt", 10).size(), 100u);
  EXPECT_EQ(load_pair_table(dir, "b7_adjoint.txt", 7).size(), 49u);
  EXPECT_EQ(load_index_sets(dir, "b10_exceptions.txt").size(), 3u);
  EXPECT_EQ(load_basis(dir, "basis12.txt").size(), 10u);
  EXPECT_EQ(load_basis(dir, "basis15.txt").size(), 7u);
  EXPECT_EQ(load_equations(dir, "eq10.txt").size(), 14u);
  EXPECT_EQ(split_family(load_family(dir, "family13.txt")).size(), 10u);
  EXPECT_EQ(split_family(load_family(dir, "family16.txt")).size(), 7u);
  EXPECT_GE(load_fields(dir, "solutions.txt").size(), 7u);
}

TEST(Fixtures, Basis12IsTheConformalBasis) {
  auto b = load_basis(dir, "basis12.txt");
  for (int k = 0; k < 10; ++k)
    for (int c = 0; c < 6; ++c) EXPECT_EQ(b[k].field.c[c], basis_field(k + 1).c[c]) << b[k].name << " " << c;
}

TEST(Fixtures, Combination) {
  auto c = parse_combination("2*X3 - cos(eps)*X10 + X1/2", 10);
  EXPECT_EQ(c[2], Poly(2));
  EXPECT_EQ(c[0], Poly(Rational(1, 2)));
  EXPECT_EQ(c[9], normalize(parse("-cos(eps)")));
  EXPECT_TRUE(c[4].is_zero());
  EXPECT_THROW(parse_combination("X1*X2", 10), FixtureError);
  EXPECT_THROW(parse_combination("X1 + 1", 10), FixtureError);
  EXPECT_THROW(parse_combination("X8", 7), FixtureError);
  EXPECT_THROW(parse_combination("X1 +", 7), FixtureError);
}

TEST(Fixtures, SplitFamily) {
  GeneratorField fam;
  fam.c[0] = normalize(parse("C1 + C2*y"));
  fam.c[3] = normalize(parse("C2*v"));
  auto parts = split_family(fam);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[1].name, "C2");
  EXPECT_EQ(parts[1].field.c[0], Poly(sym::y));
  fam.c[1] = normalize(parse("C3^2"));
  EXPECT_THROW(split_family(fam), FixtureError);
}

TEST_F(ScratchDir, ErrorsCarryLocation) {
  EXPECT_THROW(read_fixture_lines(dir(), "missing.txt"), FixtureError);
  write("pairs.txt", "# comment\n\nX1,X2 -> X3\nX1 X2 -> X3\n");
  try {
    load_pair_table(dir(), "pairs.txt", 3);
    FAIL() << "expected FixtureError";
  } catch (const FixtureError& e) {
    EXPECT_NE(std::string(e.what()).find("pairs.txt:4"), std::string::npos) << e.what();
  }
  write("arrow.txt", "X1,X2 X3\n");
  EXPECT_THROW(load_pair_table(dir(), "arrow.txt", 3), FixtureError);
  write("basis.txt", "X1: 1, 0, 0\n");
  EXPECT_THROW(load_basis(dir(), "basis.txt"), FixtureError);
  write("family.txt", "zeta = x\neta = y\n");
  EXPECT_THROW(load_family(dir(), "family.txt"), FixtureError);
  write("family2.txt", "kappa = x\n");
  EXPECT_THROW(load_family(dir(), "family2.txt"), FixtureError);
  write("sets.txt", "Y1,X2\n");
  EXPECT_THROW(load_index_sets(dir(), "sets.txt"), FixtureError);
  write("fields.txt", "F: sin(z), cos(z\n");
  EXPECT_THROW(load_fields(dir(), "fields.txt"), FixtureError);
  write("eqs.txt", "E1: x + = 0\n");
  EXPECT_THROW(load_equations(dir(), "eqs.txt"), FixtureError);
}

TEST_F(ScratchDir, EquationsAndLabels) {
  write("eqs.txt", "first: x^2 = y\nx - 1\n");
  auto eqs = load_equations(dir(), "eqs.txt");
  ASSERT_EQ(eqs.size(), 2u);
  EXPECT_EQ(eqs[0].name, "first");
  EXPECT_EQ(eqs[1].name, "equation 2");
  EXPECT_EQ(normalize(eqs[0].expr), normalize(parse("x^2 - y")));
}
