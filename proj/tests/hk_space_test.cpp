#include "extmukai/hk_space.hpp"

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace extmukai {
namespace {

using testing::random_h2;
using testing::random_ints;

TEST(DeformationTypes, BuiltInInvariants) {
  for (int n = 2; n <= 5; ++n) {
    DeformationType k = k3n_type(n);
    EXPECT_EQ(k.c_X, 1);
    EXPECT_EQ(k.r_X, frac(n + 3, 4));
    EXPECT_EQ(k.b2(), 23u);
    EXPECT_EQ(k.h2_gram(22, 22), 2 - 2 * n);
    DeformationType m = kumn_type(n);
    EXPECT_EQ(m.c_X, n + 1);
    EXPECT_EQ(m.r_X, frac(n + 1, 4));
    EXPECT_EQ(m.b2(), 7u);
    EXPECT_EQ(m.h2_gram(6, 6), -2 * n - 2);
  }
  EXPECT_EQ(k3n_type(1).b2(), 22u);
  EXPECT_EQ(og10_type().b2(), 24u);
  EXPECT_EQ(og10_type().r_X, 2);
  EXPECT_EQ(og6_type().b2(), 8u);
  EXPECT_EQ(og6_type().c_X, 4);
  EXPECT_EQ(og6_type().r_X, 1);
  EXPECT_THROW(deformation_type("K3", 2), Error);
  EXPECT_THROW(custom_type(2, 0, 1, gram_u()), Error);
}

TEST(ExtSpace, GramLayout) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  EXPECT_EQ(s.dim(), 25u);
  EXPECT_EQ(s.pair(s.alpha(), s.beta()), -1);
  EXPECT_EQ(s.square(s.alpha()), 0);
  EXPECT_EQ(s.square(s.beta()), 0);
  for (std::size_t i = 0; i < s.b2(); ++i) {
    EXPECT_EQ(s.pair(s.alpha(), s.h2_basis(i)), 0);
    EXPECT_EQ(s.pair(s.beta(), s.h2_basis(i)), 0);
  }
  EXPECT_EQ(s.square(s.delta()), -2);
  EXPECT_THROW(s.h2(zero_vector(3)), Error);
  EXPECT_THROW(make_ext_space(kumn_type(2)).delta(), Error);
}

TEST(ExtVectors, LineBundleExamples) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  ExtVector o = ext_vector_line_bundle(s, zero_vector(23));
  EXPECT_EQ(o.coords, s.alpha() + Rational(5, 4) * s.beta());
  EXPECT_EQ(o.tag, OrbitTag::line_bundle);
  ExtVector d = ext_vector_line_bundle(s, s.h2_part(s.delta()));
  EXPECT_EQ(d.coords, s.alpha() + s.delta() + Rational(1, 4) * s.beta());
  EXPECT_THROW(ext_vector_line_bundle(s, zero_vector(5)), Error);
}

TEST(ExtVectors, LineBundleSquare) {
  std::mt19937_64 rng(17);
  for (auto dt : {k3n_type(2), k3n_type(4), kumn_type(2), og10_type(), og6_type()}) {
    ExtMukaiSpace s = make_ext_space(dt);
    for (int t = 0; t < 20; ++t) {
      ExtVector v = ext_vector_line_bundle(s, random_ints(rng, s.b2(), -4, 4));
      EXPECT_EQ(s.square(v.coords), -2 * dt.r_X);
    }
  }
}

TEST(ExtVectors, Point) {
  ExtMukaiSpace s = make_ext_space(kumn_type(3));
  ExtVector p = ext_vector_point(s);
  EXPECT_EQ(p.coords, s.beta());
  EXPECT_EQ(p.tag, OrbitTag::kx_orbit);
  EXPECT_EQ(s.square(p.coords), 0);
  EXPECT_EQ(s.pair(p.coords, ext_vector_line_bundle(s, zero_vector(s.b2())).coords), -1);
}

TEST(ExtVectors, TagValidation) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  EXPECT_NO_THROW(make_ext_vector(s, s.beta(), OrbitTag::kx_orbit));
  EXPECT_THROW(make_ext_vector(s, s.alpha() + s.beta(), OrbitTag::kx_orbit), Error);
  EXPECT_THROW(make_ext_vector(s, s.alpha() + s.beta(), OrbitTag::O_orbit), Error);
  EXPECT_NO_THROW(make_ext_vector(s, s.alpha() + Rational(5, 4) * s.beta(), OrbitTag::O_orbit));
}

TEST(Signum, Rules) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  RatVector lambda = s.h2_basis(0);
  RatVector omega = ints({0, 1}), omega_neg = ints({0, -1});
  omega.resize(23);
  omega_neg.resize(23);
  RatVector v = s.alpha() + lambda + Rational(3) * s.beta();
  EXPECT_EQ(signum_normalize(s, {-v, OrbitTag::plain}, std::nullopt, 1).coords, v);
  EXPECT_EQ(signum_normalize(s, {v, OrbitTag::plain}, std::nullopt, -1).coords, -v);

  RatVector w = lambda + Rational(2) * s.beta();  // b(omega, lambda) = 1
  EXPECT_EQ(signum_normalize(s, {w, OrbitTag::plain}, omega, 1).coords, w);
  EXPECT_EQ(signum_normalize(s, {w, OrbitTag::plain}, omega_neg, 1).coords, -w);
  EXPECT_THROW(signum_normalize(s, {w, OrbitTag::plain}, std::nullopt, 1), Error);
  EXPECT_THROW(signum_normalize(s, {s.h2_basis(5), OrbitTag::plain}, omega, 1), Error);

  EXPECT_EQ(signum_normalize(s, {Rational(-3) * s.beta(), OrbitTag::plain}, std::nullopt, 1).coords,
            Rational(3) * s.beta());
  EXPECT_THROW(signum_normalize(s, {s.beta(), OrbitTag::plain}, std::nullopt, 2), Error);
}

class LatticesTest : public ::testing::TestWithParam<int> {};

TEST_P(LatticesTest, BasicShape) {
  const int n = GetParam();
  ExtMukaiSpace s = make_ext_space(k3n_type(n));
  K3nLattices l = k3n_lattices(s);
  EXPECT_EQ(s.square(l.alpha_t), 0);
  EXPECT_EQ(s.pair(l.alpha_t, s.beta()), -1);
  EXPECT_EQ(s.pair(l.alpha_t, l.delta_t), 0);
  EXPECT_EQ(s.square(l.delta_t), 2 - 2 * n);
  EXPECT_EQ(abs(determinant(l.lambda_s.gram)), 1);
  EXPECT_TRUE(is_even(l.lambda_s));
  EXPECT_EQ(index_in(l.lambda, l.lambda_g), 2);
  for (const auto& b : ambient_basis(l.lambda_lb)) EXPECT_TRUE(contains(l.lambda_g, b));
}

TEST_P(LatticesTest, LambdaIsTheShiftedIntegralLattice) {
  const int n = GetParam();
  ExtMukaiSpace s = make_ext_space(k3n_type(n));
  K3nLattices l = k3n_lattices(s);
  Isometry b = b_field(s.space, Rational(-1, 2) * s.delta());
  std::vector<RatVector> img;
  for (const auto& v : ambient_basis(integral_lattice(s))) img.push_back(b(v));
  EXPECT_TRUE(same_lattice(l.lambda, lattice_with_basis("B(Htilde)", s.gram(), img)));
}

TEST_P(LatticesTest, DiscriminantAndDivisibility) {
  const int n = GetParam();
  ExtMukaiSpace s = make_ext_space(k3n_type(n));
  K3nLattices l = k3n_lattices(s);
  DiscGroup a = discriminant_group(l.lambda);
  ASSERT_EQ(a.cyclic_orders.size(), 1u);
  EXPECT_EQ(a.cyclic_orders[0], 2 * n - 2);
  EXPECT_EQ(divisibility(l.lambda, Ambient{l.delta_t}), 2 * n - 2);
  EXPECT_EQ(divisibility(l.lambda, Ambient{l.alpha_t}), 1);
  EXPECT_TRUE(is_primitive(l.lambda, Ambient{l.alpha_t + s.beta()}));
  EXPECT_TRUE(is_primitive(l.lambda, Ambient{l.delta_t}));
  EXPECT_FALSE(is_primitive(l.lambda, Ambient{Rational(2) * l.alpha_t}));
  QuadLattice perp = orthogonal_complement(l.lambda, std::vector<Ambient>{{l.delta_t}});
  EXPECT_TRUE(same_lattice(perp, l.lambda_s));
}

TEST_P(LatticesTest, LineBundleRewrite) {
  const int n = GetParam();
  ExtMukaiSpace s = make_ext_space(k3n_type(n));
  K3nLattices l = k3n_lattices(s);
  std::mt19937_64 rng(100 + n);
  for (int t = 0; t < 100; ++t) {
    RatVector lambda = random_ints(rng, 23, -5, 5);
    RatVector v = ext_vector_line_bundle(s, lambda).coords;
    RatVector rewrite = l.alpha_t + Rational(1, 2) * l.delta_t + s.h2(lambda) +
                        (1 + s.b(lambda, lambda) / 2) * s.beta();
    EXPECT_EQ(v, rewrite);
    if (t % 10 == 0) {
      EXPECT_TRUE(membership(l.lambda_g, v).member);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallN, LatticesTest, ::testing::Values(2, 3, 4));

TEST(Lattices, DiscriminantFormN2) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  DiscGroup a = discriminant_group(k3n_lattices(s).lambda);
  ASSERT_EQ(a.q_values.size(), 1u);
  EXPECT_EQ(a.q_values[0], Rational(3, 2));
}

struct GammaCase {
  int n;
  std::size_t iso_index;  // isotropic H^2(S) basis vector added to delta
};

TEST(Lattices, IndependentOfDeltaChoice) {
  for (GammaCase c : {GammaCase{2, 0}, GammaCase{2, 3}, GammaCase{3, 0}, GammaCase{3, 5}}) {
    ExtMukaiSpace s = make_ext_space(k3n_type(c.n));
    K3nLattices l = k3n_lattices(s);
    std::vector<RatVector> gammas{-s.delta(), s.delta() + Rational(2 * c.n - 2) * s.h2_basis(c.iso_index)};
    for (const auto& gamma : gammas) {
      ASSERT_EQ(s.square(gamma), 2 - 2 * c.n);
      ASSERT_EQ(divisibility(make_lattice("H2", s.dtype.h2_gram), s.h2_part(gamma)), 2 * c.n - 2);
      Isometry b = b_field(s.space, Rational(-1, 2) * gamma);
      std::vector<RatVector> img;
      for (const auto& v : ambient_basis(integral_lattice(s))) img.push_back(b(v));
      EXPECT_TRUE(same_lattice(l.lambda, lattice_with_basis("B(Htilde)", s.gram(), img)));
    }
  }
}

TEST(Membership, Examples) {
  ExtMukaiSpace s = make_ext_space(k3n_type(3));
  K3nLattices l = k3n_lattices(s);
  RatVector line = s.h2_basis(0) - s.h2_basis(1);  // square -2
  RatVector p = line + Rational(1, 2) * l.delta_t + s.beta();
  EXPECT_TRUE(membership(l.lambda_g, p).member);
  EXPECT_FALSE(membership(l.lambda, p).member);
  Membership m = membership(l.lambda, s.beta());
  ASSERT_TRUE(m.member);
  EXPECT_TRUE(is_integral(*m.coords));
  EXPECT_EQ(to_ambient(l.lambda, *m.coords), s.beta());
}

TEST(SplitAlgebraic, TranscendentalParts) {
  RatVector h = unit_vector(23, 0) + unit_vector(23, 1);  // square 2 in the first U
  std::vector<RatVector> ns{h, unit_vector(23, 22)};      // h and delta
  ExtMukaiSpace s = make_ext_space(k3n_type(2), ns);
  K3nLattices l = k3n_lattices(s);

  QuadLattice h2 = make_lattice("H2", s.dtype.h2_gram);
  QuadLattice h2_tr = orthogonal_complement(h2, ns);
  std::vector<RatVector> tr_amb;
  for (const auto& c : ambient_basis(h2_tr)) tr_amb.push_back(s.h2(c));
  QuadLattice expected = lattice_with_basis("H2_tr", s.gram(), tr_amb);

  auto [alg, tr] = split_algebraic(s, l.lambda);
  EXPECT_TRUE(same_lattice(tr, expected));
  EXPECT_EQ(alg.rank(), 4u);  // alpha~, h, delta~, beta
  auto [alg_z, tr_z] = split_algebraic(s, integral_lattice(s));
  EXPECT_TRUE(same_lattice(tr_z, expected));
  EXPECT_EQ(alg_z.rank(), 4u);
}

TEST(SplitAlgebraic, FullNSHasNoTranscendental) {
  std::vector<RatVector> all;
  for (std::size_t i = 0; i < 7; ++i) all.push_back(unit_vector(7, i));
  ExtMukaiSpace s = make_ext_space(kumn_type(2), all);
  auto [alg, tr] = split_algebraic(s, integral_lattice(s));
  EXPECT_EQ(tr.rank(), 0u);
  EXPECT_EQ(alg.rank(), 9u);
}

TEST(SplitAlgebraic, RejectsNonPrimitiveNS) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2), std::vector<RatVector>{Rational(2) * unit_vector(23, 0)});
  EXPECT_THROW(split_algebraic(s, integral_lattice(s)), Error);
  ExtMukaiSpace none = make_ext_space(k3n_type(2));
  EXPECT_THROW(split_algebraic(none, integral_lattice(none)), Error);
}

TEST(RankPredicates, OOrbit) {
  RankWitness w = rank_predicate_O_orbit(8, 3);
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.a, 2);
  EXPECT_FALSE(rank_predicate_O_orbit(12, 3).holds);
  EXPECT_TRUE(rank_predicate_O_orbit(1, 5).holds);
  EXPECT_EQ(rank_predicate_O_orbit(1, 5).a, 1);
  EXPECT_TRUE(rank_predicate_O_orbit(-27, 3).holds);
  EXPECT_FALSE(rank_predicate_O_orbit(-8, 2).holds);
  Integer big = Integer(1) << 200;
  EXPECT_TRUE(rank_predicate_O_orbit(big, 8).holds);
  EXPECT_FALSE(rank_predicate_O_orbit(big + 1, 8).holds);
}

TEST(RankPredicates, KxOrbit) {
  RankWitness z = rank_predicate_kx_orbit(0, 3, 1);
  EXPECT_TRUE(z.holds);
  EXPECT_EQ(z.a, 0);
  RankWitness w = rank_predicate_kx_orbit(2, 2, 1);
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.a, 1);
  EXPECT_EQ(w.a_integral, true);
  EXPECT_FALSE(rank_predicate_kx_orbit(3, 2, 1).holds);
  // Kum^2: c_X = 3, r = a^2 2!/3; a = 3 gives r = 6
  EXPECT_TRUE(rank_predicate_kx_orbit(6, 2, 3).holds);
  // rational c_X: r = a^2 2 / (1/2) = 4 a^2, a = 1/2 gives 1
  RankWitness h = rank_predicate_kx_orbit(1, 2, Rational(1, 2));
  EXPECT_TRUE(h.holds);
  EXPECT_EQ(h.a, Rational(1, 2));
  EXPECT_FALSE(h.a_integral.has_value());
  EXPECT_THROW(rank_predicate_kx_orbit(1, 2, 0), Error);
}

TEST(HatAut, Examples) {
  RatVector h = unit_vector(23, 0) + unit_vector(23, 1);
  ExtMukaiSpace s = make_ext_space(k3n_type(2), std::vector<RatVector>{h});
  EXPECT_TRUE(in_hat_aut_plus(b_field(s.space, s.h2(h)), s).member);
  EXPECT_TRUE(in_hat_aut_plus(minus_identity(s.space), s).member);

  HatAutReport transcendental = in_hat_aut_plus(b_field(s.space, s.h2_basis(4)), s);
  EXPECT_FALSE(transcendental.member);
  EXPECT_EQ(transcendental.reasons.front(), "hodge");

  ExtMukaiSpace s10 = make_ext_space(k3n_type(10));
  HatAutReport r = in_hat_aut_plus(b_field(s10.space, Rational(1, 3) * s10.delta()), s10);
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.reasons.front(), "lattice");

  HatAutReport neg = in_hat_aut_plus(reflection(s10.space, s10.alpha() - s10.beta()), s10);
  EXPECT_FALSE(neg.member);
}

}  // namespace
}  // namespace extmukai
