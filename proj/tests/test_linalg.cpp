#include <gtest/gtest.h>

#include <random>

#include "beltrami/linalg.hpp"

using namespace beltrami;

namespace {

// Plain dense Gauss-Jordan over the rationals; returns the rank.
int dense_rank(RationalMatrix m, int cols) {
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (sgn(m[i][c]) != 0) p = i;
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (int k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int true_rank) {
  std::uniform_int_distribution<int> d(-4, 4);
  RationalMatrix basis(true_rank, RationalVector(cols));
  for (auto& row : basis)
    for (auto& q : row) q = Rational(d(rng), 1 + (d(rng) + 4) % 3);
  RationalMatrix m(rows, RationalVector(cols, Rational(0)));
  for (auto& row : m)
    for (const auto& b : basis) {
      Rational s = d(rng);
      for (int k = 0; k < cols; ++k) row[k] += s * b[k];
    }
  return m;
}

}  // namespace

TEST(Echelon, RankMatchesDenseOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    int rows = 2 + t % 7, cols = 3 + t % 5, r = t % 4;
    RationalMatrix m = random_matrix(rng, rows, cols, r);
    EXPECT_EQ(rank(m, cols), dense_rank(m, cols));
  }
}

TEST(Echelon, NullspaceAnnihilates) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    int rows = 3 + t % 5, cols = 4 + t % 6;
    RationalMatrix m = random_matrix(rng, rows, cols, 1 + t % 3);
    Echelon e(cols);
    for (const auto& row : m) {
      std::vector<std::pair<int, Rational>> entries;
      for (int c = 0; c < cols; ++c)
        if (sgn(row[c]) != 0) entries.emplace_back(c, row[c]);
      e.add_row(entries);
    }
    auto ns = e.nullspace();
    EXPECT_EQ(static_cast<int>(ns.size()), cols - dense_rank(m, cols));
    for (const auto& x : ns)
      for (const auto& row : m) {
        Rational s = 0;
        for (int c = 0; c < cols; ++c) s += row[c] * x[c];
        EXPECT_EQ(sgn(s), 0);
      }
    RationalMatrix stacked = ns;
    EXPECT_EQ(dense_rank(stacked, cols), static_cast<int>(ns.size()));
  }
}

TEST(Echelon, DependentRowsReported) {
  Echelon e(3);
  EXPECT_TRUE(e.add_row({{0, Rational(1)}, {1, Rational(2)}}));
  EXPECT_FALSE(e.add_row({{0, Rational(-3)}, {1, Rational(-6)}}));
  EXPECT_FALSE(e.add_row(std::vector<std::pair<int, Rational>>{}));
  EXPECT_THROW(e.add_row({{5, Rational(1)}}), std::out_of_range);
  EXPECT_EQ(e.rank(), 1);
}

TEST(SolveInSpan, ExactCoordinates) {
  std::vector<RationalVector> cols{{1, 0, 1}, {0, 1, 1}};
  auto x = solve_in_span(cols, {Rational(1, 2), Rational(3), Rational(7, 2)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational(1, 2));
  EXPECT_EQ((*x)[1], Rational(3));
  EXPECT_FALSE(solve_in_span(cols, {1, 0, 0}).has_value());
}
