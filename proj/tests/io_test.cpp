#include "extmukai/io.hpp"

#include "gtest/gtest.h"

namespace extmukai {
namespace {

TEST(Io, RationalRoundTrip) {
  for (const char* s : {"0", "-7", "5/4", "-1/3"}) {
    Rational x = parse_rational(s);
    EXPECT_EQ(rational_from_json(to_json(x)), x);
  }
  EXPECT_EQ(rational_from_json(Json(3)), 3);
  EXPECT_EQ(to_json(frac(6, 8)), Json("3/4"));
}

TEST(Io, MatrixAndLatticeRoundTrip) {
  ExtMukaiSpace s = make_ext_space(k3n_type(3));
  K3nLattices l = k3n_lattices(s);
  Json j = lattice_to_json(l.lambda);
  QuadLattice back = lattice_from_json(Json::parse(j.dump()), s.gram());
  EXPECT_TRUE(same_lattice(back, l.lambda));
  EXPECT_EQ(back.gram, l.lambda.gram);
  QuadLattice plain = lattice_from_json(Json{{"gram", {{2, 1}, {1, "-2"}}}});
  EXPECT_EQ(plain.gram, (RatMatrix{{2, 1}, {1, -2}}));
  EXPECT_THROW(lattice_from_json(Json{{"gram", {{2, 1}}}}), Error);
}

TEST(Io, IsometryRoundTrip) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  Isometry g = parse_isometry_spec(s, "bfield:h0 + delta");
  Isometry back = isometry_from_json(Json::parse(isometry_to_json(g).dump()));
  EXPECT_EQ(back.matrix(), g.matrix());
  EXPECT_EQ(back.space()->gram, s.gram());
}

TEST(Io, DtypeRoundTrip) {
  DeformationType d = deformation_type("Kumn", 3);
  DeformationType back = dtype_from_json(dtype_to_json(d));
  EXPECT_EQ(back.c_X, d.c_X);
  EXPECT_EQ(back.r_X, d.r_X);
  EXPECT_EQ(back.h2_gram, d.h2_gram);
  Json custom{{"family", "custom"}, {"n", 2}, {"c_X", "2"}, {"r_X", "3/4"}, {"h2", {{"gram", {{0, 1}, {1, 0}}}}}};
  DeformationType c = dtype_from_json(custom);
  EXPECT_EQ(c.r_X, frac(3, 4));
  EXPECT_THROW(dtype_from_json(Json{{"family", "custom"}, {"n", 2}}), Error);
}

TEST(Io, ParseVectorExpressions) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  EXPECT_EQ(parse_ext_vector(s, "alpha + 5/4*beta"), s.alpha() + frac(5, 4) * s.beta());
  EXPECT_EQ(parse_ext_vector(s, "delta/3"), frac(1, 3) * s.delta());
  EXPECT_EQ(parse_ext_vector(s, "-2*h0 - beta"), Rational(-2) * s.h2_basis(0) - s.beta());
  K3nLattices l = k3n_lattices(s);
  EXPECT_EQ(parse_ext_vector(s, "alpha~ + beta"), l.alpha_t + s.beta());
  RatVector coords = zero_vector(s.dim());
  coords[0] = 1;
  coords[s.dim() - 1] = frac(1, 2);
  std::string list = "1";
  for (std::size_t i = 1; i + 1 < s.dim(); ++i) list += ",0";
  list += ",1/2";
  EXPECT_EQ(parse_ext_vector(s, list), coords);
  EXPECT_THROW(parse_ext_vector(s, "1,2"), Error);
  EXPECT_THROW(parse_ext_vector(s, "gamma"), Error);
  EXPECT_THROW(parse_ext_vector(s, "h99"), Error);
}

TEST(Io, ParseH2Class) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  EXPECT_EQ(parse_h2_class(s, "0"), zero_vector(s.b2()));
  RatVector d = zero_vector(s.b2());
  d[s.b2() - 1] = frac(1, 3);
  EXPECT_EQ(parse_h2_class(s, "delta/3"), d);
  EXPECT_THROW(parse_h2_class(s, "alpha"), Error);
}

TEST(Io, FormatVector) {
  ExtMukaiSpace s = make_ext_space(k3n_type(2));
  EXPECT_EQ(format_ext_vector(s.alpha() + frac(5, 4) * s.beta()), "α + 5/4 β");
  EXPECT_EQ(format_ext_vector(zero_vector(s.dim())), "0");
  EXPECT_EQ(format_ext_vector(Rational(-1) * s.alpha() - s.h2_basis(1)), "-α - h1");
}

TEST(Io, IsometrySpecs) {
  ExtMukaiSpace s = make_ext_space(k3n_type(3));
  RatVector x = parse_ext_vector(s, "alpha + h0 + 2*beta");
  EXPECT_EQ(parse_isometry_spec(s, "id")(x), x);
  EXPECT_EQ(parse_isometry_spec(s, "shift")(x), Rational(-1) * x);
  RatVector v = parse_ext_vector(s, "alpha~ + beta");
  EXPECT_EQ(parse_isometry_spec(s, "reflection:alpha~ + beta")(v), Rational(-1) * v);
  // B-field: alpha -> alpha + lambda + b(lambda,lambda)/2 beta
  RatVector lam = parse_ext_vector(s, "h0 + h1");
  RatVector img = parse_isometry_spec(s, "bfield:h0 + h1")(s.alpha());
  EXPECT_EQ(img, s.alpha() + lam + (s.square(lam) / 2) * s.beta());
  EXPECT_THROW(parse_isometry_spec(s, "transvection:beta"), Error);
  EXPECT_THROW(parse_isometry_spec(s, "rotate"), Error);
}

}  // namespace
}  // namespace extmukai
