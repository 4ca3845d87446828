#include "extmukai/catalog.hpp"

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace extmukai {
namespace {

using testing::random_ints;

bool is_exact_isometry(const Isometry& g) {
  const RatMatrix& m = g.matrix();
  return m.transpose() * g.space()->gram * m == g.space()->gram;
}

std::vector<NamedAction> all_k3n_actions(int n) {
  ExtMukaiSpace s = make_ext_space(k3n_type(n));
  std::vector<NamedAction> out{shift_action(s), tensor_line_bundle_action(s, unit_vector(23, 0)),
                               tensor_line_bundle_action(s, unit_vector(23, 22)), sign_equivalence_action(s),
                               spherical_P_action(s)};
  if (n == 2) {
    out.push_back(fm_ext1_action(s));
    out.push_back(horja_EZ_action(s));
  }
  out.push_back(dn_transfer_action(s, reflection(mukai_k3_space(), ints({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}))));
  return out;
}

TEST(Catalog, EveryActionIsAnExactIsometryPreservingLambda) {
  for (int n : {2, 3}) {
    ExtMukaiSpace s = make_ext_space(k3n_type(n));
    K3nLattices l = k3n_lattices(s);
    for (const auto& a : all_k3n_actions(n)) {
      EXPECT_TRUE(is_exact_isometry(a.iso)) << a.key;
      EXPECT_TRUE(preserves_lattice(a.iso, l.lambda)) << a.key;
      EXPECT_TRUE(preserves_lattice(a.iso, l.lambda_g)) << a.key;
      EXPECT_EQ(a.epsilon.has_value(), n % 2 == 0) << a.key;
    }
  }
  for (int g = 2; g <= 6; ++g) EXPECT_TRUE(is_exact_isometry(poincare_action(g).iso));
}

TEST(Catalog, InvolutionsSquareToIdentity) {
  ExtMukaiSpace s2 = make_ext_space(k3n_type(2));
  ExtMukaiSpace s3 = make_ext_space(k3n_type(3));
  for (const auto& a : {sign_equivalence_action(s2), sign_equivalence_action(s3), spherical_P_action(s3),
                        spherical_P_action(s2), fm_ext1_action(s2), horja_EZ_action(s2)})
    EXPECT_TRUE((a.iso * a.iso).is_identity()) << a.key;
}

TEST(Catalog, SignEquivalenceSwapsDeltaHalf) {
  ExtMukaiSpace s = make_ext_space(k3n_type(3));
  K3nLattices l = k3n_lattices(s);
  NamedAction a = sign_equivalence_action(s);
  EXPECT_EQ(a.iso, reflection(s.space, l.delta_t));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    RatVector lambda = random_ints(rng, 23, -2, 2);
    lambda[22] = 0;  // lambda in H^2(S)
    Rational tail = 1 + s.b(lambda, lambda) / 2;
    RatVector plus = l.alpha_t + Rational(1, 2) * l.delta_t + s.h2(lambda) + tail * s.beta();
    RatVector minus = l.alpha_t - Rational(1, 2) * l.delta_t + s.h2(lambda) + tail * s.beta();
    EXPECT_EQ(a.iso(plus), minus);
  }
}

TEST(Catalog, SphericalTwistImageOfStructureSheaf) {
  ExtMukaiSpace s = make_ext_space(k3n_type(3));
  NamedAction p = spherical_P_action(s);
  RatVector o = ext_vector_line_bundle(s, zero_vector(23)).coords;
  RatVector o_minus_delta = ext_vector_line_bundle(s, -s.h2_part(s.delta())).coords;
  EXPECT_EQ(p.iso(o), -o_minus_delta);
}

TEST(Catalog, TensorIsBField) {
  ExtMukaiSpace s = make_ext_space(kumn_type(2));
  RatVector lambda = ints({1, 2, 0, 0, 0, 1, 1});
  NamedAction a = tensor_line_bundle_action(s, lambda);
  EXPECT_EQ(a.iso(s.alpha()), ext_vector_line_bundle(s, lambda).coords - s.dtype.r_X * s.beta());
  EXPECT_THROW(tensor_line_bundle_action(s, RatVector(7, Rational(1, 2))), Error);
}

TEST(Catalog, Rejections) {
  ExtMukaiSpace s3 = make_ext_space(k3n_type(3));
  EXPECT_THROW(fm_ext1_action(s3), Error);
  EXPECT_THROW(horja_EZ_action(s3), Error);
  EXPECT_THROW(sign_equivalence_action(make_ext_space(kumn_type(2))), Error);
  EXPECT_THROW(dn_transfer_action(s3, minus_identity(s3.space)), Error);
  EXPECT_THROW(catalog_action("nope", {}), Error);
  EXPECT_THROW(poincare_action(1), Error);
}

RatVector mukai(long r, std::vector<std::pair<std::size_t, long>> c, long s) {
  RatVector v = zero_vector(24);
  v[0] = r;
  for (auto [i, x] : c) v[1 + i] = x;
  v[23] = s;
  return v;
}

TEST(DnTransfer, SphericalReflection) {
  for (int n : {2, 3}) {
    ExtMukaiSpace s = make_ext_space(k3n_type(n));
    K3nLattices l = k3n_lattices(s);
    Isometry g = reflection(mukai_k3_space(), mukai(1, {}, 1));
    Isometry expected = reflection(s.space, l.alpha_t + s.beta());
    if (n % 2 == 0) expected = minus_identity(s.space) * expected;
    EXPECT_EQ(dn_transfer_action(s, g).iso, expected);
    EXPECT_EQ(dn_transfer_action(s, g).iso, spherical_P_action(s).iso);
  }
}

TEST(DnTransfer, Homomorphism) {
  const SpacePtr& k = mukai_k3_space();
  std::vector<Isometry> pool{reflection(k, mukai(1, {}, 1)), minus_identity(k),
                             b_field(k, mukai(0, {{0, 1}}, 0)), b_field(k, mukai(0, {{3, 1}, {4, -1}}, 0)),
                             b_field(k, mukai(0, {{10, 2}}, 0))};
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto word = [&]() {
    Isometry w = pool[pick(rng)];
    for (int i = 0; i < 2; ++i) w = w * pool[pick(rng)];
    return w;
  };
  for (int n : {2, 3}) {
    ExtMukaiSpace s = make_ext_space(k3n_type(n));
    for (int t = 0; t < 20; ++t) {
      Isometry a = word(), b = word();
      EXPECT_EQ(dn_transfer_action(s, a * b).iso, dn_transfer_action(s, a).iso * dn_transfer_action(s, b).iso);
    }
  }
}

TEST(DnTransfer, FixesExtraDirections) {
  const SpacePtr& k = mukai_k3_space();
  // determinant one, fixes (1,0,0) and (0,0,1)
  Isometry g = reflection(k, mukai(0, {{0, 1}, {1, -1}}, 0)) * reflection(k, mukai(0, {{2, 1}, {3, -1}}, 0));
  for (int n : {2, 3, 4}) {
    ExtMukaiSpace s = make_ext_space(k3n_type(n));
    K3nLattices l = k3n_lattices(s);
    Isometry t = dn_transfer_action(s, g).iso;
    EXPECT_EQ(t(l.alpha_t), l.alpha_t);
    EXPECT_EQ(t(s.beta()), s.beta());
    EXPECT_EQ(t(l.delta_t), l.delta_t);
    for (std::size_t i = 0; i < 22; ++i) {
      RatVector img = g(unit_vector(24, 1 + i));
      RatVector expected = zero_vector(s.dim());
      for (std::size_t j = 0; j < 22; ++j) expected[1 + j] = img[1 + j];
      EXPECT_EQ(t(s.h2_basis(i)), expected);
    }
  }
}

TEST(Poincare, Checks) {
  for (int g = 2; g <= 6; ++g)
    for (const auto& c : poincare_checks(g)) EXPECT_TRUE(c.pass) << g << ": " << c.name << " " << c.detail;
}

TEST(Poincare, SectionVectorForGenusTwo) {
  ExtMukaiSpace s = poincare_space(2);
  RatVector v = poincare_section_vector(s);
  NamedAction a = poincare_action(2);
  // -alpha + 3 f - 5/4 beta
  EXPECT_EQ(a.iso(v), s.vec(-1, RatVector{0, 3}, Rational(-5, 4)));
}

TEST(Poincare, RemarkMapPreservesPairing) {
  for (int g = 2; g <= 6; ++g) EXPECT_TRUE(poincare_remark_preserves_pairing(g)) << g;
}

TEST(Catalog, Dispatch) {
  CatalogParams p;
  p.n = 3;
  for (const auto& key : catalog_keys()) {
    if (key == "fm_ext1" || key == "horja_EZ") {
      EXPECT_THROW(catalog_action(key, p), Error);
      continue;
    }
    if (key == "dn_transfer") p.k3_iso = minus_identity(mukai_k3_space());
    EXPECT_EQ(catalog_action(key, p).key, key);
  }
}

}  // namespace
}  // namespace extmukai
