#include "extmukai/exact.hpp"

#include <random>

#include "gtest/gtest.h"

namespace extmukai {
namespace {

RatMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_diagonal_chain(const RatMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && sgn(d(i, j)) != 0) return false;
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Integer a = d(i, i).get_num(), b = d(i + 1, i + 1).get_num();
    if (sgn(a) < 0 || sgn(b) < 0) return false;
    if (sgn(a) == 0 && sgn(b) != 0) return false;
    if (sgn(a) != 0 && !mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) return false;
  }
  return true;
}

TEST(Rational, SerializesInLowestTerms) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
  EXPECT_EQ(to_string(parse_rational("4/-6")), "-2/3");
  EXPECT_EQ(to_string(parse_rational("0")), "0");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Smith, AlreadyDiagonal) {
  SmithForm s = smith_normal_form(RatMatrix{{2, 0}, {0, 0}});
  EXPECT_EQ(s.D, (RatMatrix{{2, 0}, {0, 0}}));
}

TEST(Smith, Unimodular) {
  SmithForm s = smith_normal_form(RatMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(s.D, RatMatrix::identity(2));
}

TEST(Smith, RankOneDeltaGram) {
  // <2-2n> for n = 3
  SmithForm s = smith_normal_form(RatMatrix{{-4}});
  EXPECT_EQ(s.D, (RatMatrix{{4}}));
}

TEST(Smith, RejectsNonIntegral) { EXPECT_THROW(smith_normal_form(RatMatrix{{Rational(1, 2)}}), Error); }

TEST(Smith, RandomMatricesSatisfyContract) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    RatMatrix m = random_int_matrix(rng, r, c, -9, 9);
    SmithForm s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    EXPECT_TRUE(is_diagonal_chain(s.D)) << s.D;
  }
}

TEST(Kernel, IdentityHasNone) { EXPECT_TRUE(kernel_basis(RatMatrix::identity(3)).empty()); }

TEST(Kernel, ZeroMatrixHasFull) { EXPECT_EQ(kernel_basis(RatMatrix(2, 3)).size(), 3u); }

TEST(Kernel, RandomKernelsAnnihilateAndHaveRightCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    RatMatrix m = random_int_matrix(rng, 3, 6, -3, 3);
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < 6; ++j) m(2, j) = m(0, j) + m(1, j);
    auto k = kernel_basis(m);
    EXPECT_EQ(k.size(), 6 - rank(m));
    for (const auto& v : k) EXPECT_TRUE(is_zero(m * v));
  }
}

TEST(Solve, IdentityReturnsRightHandSide) {
  RatVector b{Rational(1, 3), Rational(-2), Rational(5, 7)};
  EXPECT_EQ(solve_linear(RatMatrix::identity(3), b), b);
}

TEST(Solve, InconsistentSystemHasNoSolution) {
  RatMatrix a{{1, 1}, {1, 1}};
  EXPECT_FALSE(solve_linear(a, ints({1, 2})).has_value());
}

TEST(Solve, SolutionsSubstituteBack) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    RatMatrix a = random_int_matrix(rng, 4, 4, -5, 5);
    RatVector x{Rational(trial), Rational(1, 2), Rational(-3, 5), Rational(2)};
    RatVector b = a * x;
    auto y = solve_linear(a, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(a * *y, b);
  }
}

TEST(Inverse, MatchesIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix a = random_int_matrix(rng, 5, 5, -4, 4);
    if (sgn(determinant(a)) == 0) continue;
    EXPECT_EQ(a * inverse(a), RatMatrix::identity(5));
  }
  EXPECT_THROW(inverse(RatMatrix(2, 2)), Error);
}

TEST(Determinant, KnownValues) {
  EXPECT_EQ(determinant(RatMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(RatMatrix{{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(determinant(RatMatrix{{Rational(1, 2), 0}, {0, 4}}), 2);
}

TEST(IntegerKernel, IsSaturated) {
  // x + 2y = 0 over Z: generated by (2,-1) (not (4,-2))
  auto k = integer_kernel(RatMatrix{{2, 4}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(content(k[0]), 1);
  EXPECT_EQ(k[0][0] + 2 * k[0][1], 0);
}

TEST(LatticeBasis, SpanOfGenerators) {
  auto b = lattice_basis({ints({2, 0}), ints({0, 2}), ints({1, 1})}, 2);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(abs(determinant(RatMatrix::from_rows(b))), 2);
  auto h = lattice_basis({RatVector{Rational(1, 2), 0}, ints({0, 3})}, 2);
  EXPECT_EQ(abs(determinant(RatMatrix::from_rows(h))), Rational(3, 2));
}

}  // namespace
}  // namespace extmukai
