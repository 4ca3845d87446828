#include "extmukai/lattice.hpp"

#include "gtest/gtest.h"

namespace extmukai {
namespace {

TEST(StandardLattice, U) {
  QuadLattice u = standard_lattice("U");
  EXPECT_EQ(determinant(u.gram), -1);
  EXPECT_EQ(signature(u.gram), (Signature{1, 1, 0}));
}

TEST(StandardLattice, K3IsEvenUnimodularRank22) {
  QuadLattice k3 = standard_lattice("K3");
  EXPECT_EQ(k3.rank(), 22u);
  EXPECT_EQ(determinant(k3.gram), -1);
  EXPECT_TRUE(is_even(k3));
  EXPECT_EQ(signature(k3.gram), (Signature{3, 19, 0}));
}

TEST(StandardLattice, E8MinusIsNegativeDefiniteUnimodular) {
  QuadLattice e8 = standard_lattice("E8_minus");
  EXPECT_EQ(determinant(e8.gram), 1);
  EXPECT_EQ(signature(e8.gram), (Signature{0, 8, 0}));
  // Bourbaki order: node 2 meets node 4, node 1 meets node 3
  EXPECT_EQ(e8.gram(1, 3), 1);
  EXPECT_EQ(e8.gram(0, 2), 1);
  EXPECT_EQ(e8.gram(0, 1), 0);
}

TEST(StandardLattice, A1) {
  EXPECT_EQ(standard_lattice("A1(-2)").gram, (RatMatrix{{-2}}));
  EXPECT_THROW(standard_lattice("A1(0)"), Error);
  EXPECT_THROW(standard_lattice("D4"), Error);
}

TEST(StandardLattice, MukaiK3) {
  QuadLattice m = standard_lattice("MukaiK3");
  EXPECT_EQ(m.rank(), 24u);
  EXPECT_EQ(abs(determinant(m.gram)), 1);
  // <(1,0,1),(1,0,1)> = -2
  RatVector v = unit_vector(24, 0) + unit_vector(24, 23);
  EXPECT_EQ(pairing(m, v, v), -2);
}

TEST(Discriminant, UnimodularIsTrivial) { EXPECT_TRUE(discriminant_group(standard_lattice("U")).trivial()); }

TEST(Discriminant, DeltaLatticeN3) {
  DiscGroup d = discriminant_group(lattice_a1(-4));
  ASSERT_EQ(d.cyclic_orders.size(), 1u);
  EXPECT_EQ(d.cyclic_orders[0], 4);
  // generator delta/4 has q = -4/16 = -1/4 = 7/4 mod 2
  EXPECT_EQ(d.q_values[0], Rational(7, 4));
}

TEST(Discriminant, OrderIsAbsDeterminant) {
  RatMatrix g = direct_sum(direct_sum(gram_u(), RatMatrix{{2, 1}, {1, -4}}), RatMatrix{{-6}});
  QuadLattice l = make_lattice("t", g);
  EXPECT_EQ(Rational(discriminant_group(l).order()), abs(determinant(g)));
  EXPECT_THROW(discriminant_group(make_lattice("odd", RatMatrix{{1}})), Error);
  EXPECT_THROW(discriminant_group(make_lattice("frac", RatMatrix{{Rational(1, 2)}})), Error);
}

TEST(Divisibility, Basics) {
  QuadLattice l = make_lattice("t", direct_sum(gram_u(), RatMatrix{{-4}}));
  EXPECT_EQ(divisibility(l, ints({0, 0, 1})), 4);
  EXPECT_EQ(divisibility(l, ints({1, 0, 0})), 1);
  EXPECT_EQ(divisibility(l, ints({2, 0, 0})), 2);
  EXPECT_THROW(divisibility(l, ints({0, 0, 0})), Error);
}

TEST(Primitivity, Basics) {
  QuadLattice l = standard_lattice("U");
  EXPECT_TRUE(is_primitive(l, ints({1, 1})));
  EXPECT_FALSE(is_primitive(l, ints({3, 3})));
  EXPECT_THROW(is_primitive(l, ints({0, 0})), Error);
}

TEST(OrthogonalComplement, MukaiVectorPerp) {
  QuadLattice m = standard_lattice("MukaiK3");
  for (int n = 2; n <= 5; ++n) {
    RatVector v = zero_vector(24);
    v[0] = 1;
    v[23] = 1 - n;
    QuadLattice p = orthogonal_complement(m, {v});
    EXPECT_EQ(p.rank(), 23u);
    EXPECT_EQ(abs(determinant(p.gram)), 2 * n - 2);
  }
}

TEST(OrthogonalComplement, WholeLatticeGivesZero) {
  QuadLattice u = standard_lattice("U");
  EXPECT_EQ(orthogonal_complement(u, {ints({1, 0}), ints({0, 1})}).rank(), 0u);
}

TEST(OrthogonalComplement, IsSaturated) {
  QuadLattice l = make_lattice("t", direct_sum(gram_u(), gram_u()));
  QuadLattice p = orthogonal_complement(l, {ints({2, 2, 0, 0})});
  QuadLattice s = saturation(l, p.embedding->basis.columns());
  EXPECT_TRUE(same_lattice(p, s));
}

TEST(BruteForce, UToItself) {
  QuadLattice u = standard_lattice("U");
  auto m = brute_force_isometric(u, u, 1);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->transpose() * u.gram * *m, u.gram);
}

TEST(BruteForce, DeterminantObstruction) {
  QuadLattice a = make_lattice("poincare", RatMatrix{{2, 2}, {2, 0}});
  EXPECT_FALSE(brute_force_isometric(a, standard_lattice("U"), 5).has_value());
}

TEST(BruteForce, SignatureObstruction) {
  EXPECT_FALSE(brute_force_isometric(lattice_a1(-2), lattice_a1(2), 5).has_value());
}

TEST(BruteForce, FindsNontrivialChangeOfBasis) {
  QuadLattice a = make_lattice("a", RatMatrix{{2, 1}, {1, -2}});
  QuadLattice b = make_lattice("b", RatMatrix{{2, 3}, {3, 2}});  // same lattice, basis (e1, e1+e2)
  auto m = brute_force_isometric(a, b, 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->transpose() * b.gram * *m, a.gram);
  EXPECT_THROW(brute_force_isometric(standard_lattice("E8_minus"), standard_lattice("E8_minus"), 1), Error);
}

}  // namespace
}  // namespace extmukai
