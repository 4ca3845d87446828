#pragma once

#include <extmukai/hk_space.hpp>
#include <extmukai/isometry.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace extmukai {

struct NamedAction {
  std::string key;
  ExtMukaiSpace space;
  Isometry iso;
  std::optional<int> epsilon;  // empty: not applicable (odd n)
  std::string provenance;
};

inline const std::vector<std::string>& catalog_keys() {
  static const std::vector<std::string> keys{"shift",   "tensor_line_bundle", "sign_equivalence", "spherical_P",
                                             "fm_ext1", "horja_EZ",           "poincare",         "dn_transfer"};
  return keys;
}

namespace detail {

inline std::optional<int> epsilon_for(int n, const Isometry& g) {
  if (n % 2) return std::nullopt;
  return sgn(g.determinant());
}

inline NamedAction named(std::string key, const ExtMukaiSpace& s, Isometry g, std::string provenance) {
  auto eps = epsilon_for(s.n(), g);
  return {std::move(key), s, std::move(g), eps, std::move(provenance)};
}

inline void require_k3n(const ExtMukaiSpace& s, const char* key) {
  if (s.dtype.family != Family::K3n || s.n() < 2) throw Error(std::string(key) + " needs the K3n family with n >= 2");
}

}  // namespace detail

inline NamedAction shift_action(const ExtMukaiSpace& s) {
  return detail::named("shift", s, minus_identity(s.space), "the shift [1] acts by -id");
}

inline NamedAction tensor_line_bundle_action(const ExtMukaiSpace& s, const RatVector& lambda) {
  if (!is_integral(lambda)) throw Error("line bundle class must be integral");
  return detail::named("tensor_line_bundle", s, b_field(s.space, s.h2(lambda)), "tensoring with L acts by B_lambda");
}

inline NamedAction sign_equivalence_action(const ExtMukaiSpace& s) {
  detail::require_k3n(s, "sign_equivalence");
  K3nLattices l = k3n_lattices(s);
  Isometry g = reflection(s.space, l.delta_t);
  if (s.n() % 2 == 0) g = minus_identity(s.space) * g;
  return detail::named("sign_equivalence", s, g, "sign twist of the BKR equivalence acts by (-1)^{n+1} s_delta~");
}

inline NamedAction spherical_P_action(const ExtMukaiSpace& s) {
  detail::require_k3n(s, "spherical_P");
  K3nLattices l = k3n_lattices(s);
  Isometry g = reflection(s.space, l.alpha_t + s.beta());
  if (s.n() % 2 == 0) g = minus_identity(s.space) * g;
  return detail::named("spherical_P", s, g, "P-twist along O_X acts by (-1)^{n+1} s_v, v = alpha~ + beta");
}

inline NamedAction fm_ext1_action(const ExtMukaiSpace& s) {
  detail::require_k3n(s, "fm_ext1");
  if (s.n() != 2) throw Error("fm_ext1 is only defined for n = 2");
  K3nLattices l = k3n_lattices(s);
  return detail::named("fm_ext1", s, minus_identity(s.space) * reflection(s.space, l.alpha_t + s.beta()),
                       "universal Ext^1 kernel acts by -s_v, v = alpha~ + beta");
}

inline NamedAction horja_EZ_action(const ExtMukaiSpace& s) {
  detail::require_k3n(s, "horja_EZ");
  if (s.n() != 2) throw Error("horja_EZ is only defined for n = 2");
  K3nLattices l = k3n_lattices(s);
  return detail::named("horja_EZ", s, minus_identity(s.space) * reflection(s.space, l.delta_t + s.beta()),
                       "Horja twist along the exceptional divisor acts by -s_v, v = delta~ + beta");
}

// ---------------------------------------------------------------- d_n transfer

// Htilde(S,Q) in the (r, H^2(S), s) basis.
inline const SpacePtr& mukai_k3_space() {
  static const SpacePtr s = make_ext_space(k3n_type(1)).space;
  return s;
}

// iota: Htilde(S) -> Htilde(S^[n]), identity on delta
inline RatMatrix iota_matrix(const Isometry& g, std::size_t ambient) {
  RatMatrix m = RatMatrix::identity(ambient);
  auto pos = [&](std::size_t i) { return i == 23 ? ambient - 1 : i; };
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = 0; j < 24; ++j) m(pos(i), pos(j)) = g.matrix()(i, j);
  return m;
}

// g -> det(g)^{n+1} B_{-delta/2} iota(g) B_{delta/2}
inline NamedAction dn_transfer_action(const ExtMukaiSpace& s, const Isometry& g) {
  detail::require_k3n(s, "dn_transfer");
  if (g.space()->gram != mukai_k3_space()->gram) throw Error("dn_transfer needs an isometry of Htilde(S,Q) (rank 24)");
  RatVector half = Rational(1, 2) * s.delta();
  Isometry ig(s.space, iota_matrix(g, s.dim()));
  Isometry t = b_field(s.space, -half) * ig * b_field(s.space, half);
  if (s.n() % 2 == 0 && sgn(g.determinant()) < 0) t = minus_identity(s.space) * t;
  return detail::named("dn_transfer", s, t, "transfer g -> det(g)^{n+1} B_{-delta/2} iota(g) B_{delta/2}");
}

// ---------------------------------------------------------------- relative Poincare

// Algebraic part of Htilde(M) for M with Lagrangian fibration over P^g:
// basis (alpha, lambda, f, beta), NS gram [[2g-2, 2], [2, 0]].
inline ExtMukaiSpace poincare_space(int g) {
  if (g < 2) throw Error("poincare needs g >= 2");
  RatMatrix ns{{Rational(2 * g - 2), 2}, {2, 0}};
  return make_ext_space(custom_type(g, 1, frac(g + 3, 4), ns));
}

// h = -lambda/2 + (g-1)/4 f + (g+1)/2 beta
inline RatVector poincare_h(const ExtMukaiSpace& s) {
  const int g = s.n();
  return s.vec(0, RatVector{Rational(-1, 2), frac(g - 1, 4)}, frac(g + 1, 2));
}

// alpha <-> h, beta <-> f
inline NamedAction poincare_action(int g) {
  ExtMukaiSpace s = poincare_space(g);
  RatVector alpha = s.alpha(), beta = s.beta(), f = s.h2_basis(1), h = poincare_h(s);
  // lambda = -2h + (g-1)/2 f + (g+1) beta, so its image is -2 alpha + (g-1)/2 beta + (g+1) f
  RatVector lambda_image = Rational(-2) * alpha + frac(g - 1, 2) * beta + Rational(g + 1) * f;
  RatMatrix m = RatMatrix::from_columns({h, lambda_image, beta, f});
  return detail::named("poincare", s, Isometry(s.space, m), "relative Poincare sheaf: alpha <-> h, beta <-> f");
}

// v~(O_{P^g}) = lambda/2 - (g+1)/2 f + (g+1)/2 beta
inline RatVector poincare_section_vector(const ExtMukaiSpace& s) {
  const int g = s.n();
  return s.vec(0, RatVector{Rational(1, 2), frac(-(g + 1), 2)}, frac(g + 1, 2));
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<Check>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Check& c) { return c.pass; });
}

inline std::vector<Check> poincare_checks(int g) {
  NamedAction a = poincare_action(g);
  const ExtMukaiSpace& s = a.space;
  RatVector alpha = s.alpha(), beta = s.beta(), f = s.h2_basis(1), h = poincare_h(s);
  std::vector<Check> out;
  out.push_back({"q(h) = 0", s.square(h) == 0, "q(h) = " + to_string(s.square(h))});
  out.push_back({"b(f,-h) = 1", s.pair(f, -h) == 1, "b(f,-h) = " + to_string(s.pair(f, -h))});
  bool iso = a.iso.matrix().transpose() * s.gram() * a.iso.matrix() == s.gram();
  out.push_back({"isometry", iso, "M^T G M = G"});
  const Isometry& m = a.iso;
  bool exchanges = m(alpha) == h && m(h) == alpha && m(beta) == f && m(f) == beta;
  out.push_back({"exchanges <alpha,beta> and <f,h>", exchanges, ""});
  RatVector v = poincare_section_vector(s);
  bool sq = s.square(v) == -2 * s.dtype.r_X;
  out.push_back({"q(v~(O_P^g)) = -2 r_X", sq, "q = " + to_string(s.square(v))});
  // v~(O_P^g) = -h - (g+3)/4 f + (g+1) beta
  RatVector via_h = -h - frac(g + 3, 4) * f + Rational(g + 1) * beta;
  out.push_back({"v~(O_P^g) in terms of h", v == via_h, to_string(v)});
  // image is -v~(O(-(g+1) f))
  RatVector lb = ext_vector_line_bundle(s, RatVector{0, Rational(-(g + 1))}).coords;
  out.push_back({"image of v~(O_P^g) = -v~(O(-(g+1)f))", m(v) == -lb, to_string(m(v))});
  return out;
}

// Remark-level map Htilde(M) -> Htilde(M') with NS(M') = U = <e', f'>, on basis images
// beta -> f', f -> beta', alpha -> -e' + (g+1)/2 beta', h -> alpha'. Returns the matrix in
// (alpha, lambda, f, beta) -> (alpha', e', f', beta') coordinates.
inline RatMatrix poincare_remark_map(int g) {
  ExtMukaiSpace s = poincare_space(g);
  ExtMukaiSpace t = make_ext_space(custom_type(g, 1, frac(g + 3, 4), gram_u()));
  RatVector h = poincare_h(s);
  RatMatrix src = RatMatrix::from_columns({s.alpha(), s.beta(), s.h2_basis(1), h});
  RatVector e1 = t.h2_basis(0), f1 = t.h2_basis(1);
  RatMatrix dst = RatMatrix::from_columns({-e1 + frac(g + 1, 2) * t.beta(), f1, t.beta(), t.alpha()});
  return dst * inverse(src);
}

inline bool poincare_remark_preserves_pairing(int g) {
  ExtMukaiSpace s = poincare_space(g);
  ExtMukaiSpace t = make_ext_space(custom_type(g, 1, frac(g + 3, 4), gram_u()));
  RatMatrix m = poincare_remark_map(g);
  return m.transpose() * t.gram() * m == s.gram();
}

// ---------------------------------------------------------------- dispatch

struct CatalogParams {
  int n = 2;
  RatVector lambda;               // tensor_line_bundle, H^2 coordinates
  int g = 2;                      // poincare
  std::optional<Isometry> k3_iso;  // dn_transfer
};

inline NamedAction catalog_action(const std::string& key, const CatalogParams& p) {
  if (key == "poincare") return poincare_action(p.g);
  ExtMukaiSpace s = make_ext_space(k3n_type(p.n));
  if (key == "shift") return shift_action(s);
  if (key == "tensor_line_bundle") {
    RatVector lambda = p.lambda.empty() ? zero_vector(s.b2()) : p.lambda;
    return tensor_line_bundle_action(s, lambda);
  }
  if (key == "sign_equivalence") return sign_equivalence_action(s);
  if (key == "spherical_P") return spherical_P_action(s);
  if (key == "fm_ext1") return fm_ext1_action(s);
  if (key == "horja_EZ") return horja_EZ_action(s);
  if (key == "dn_transfer") {
    if (!p.k3_iso) throw Error("dn_transfer needs an isometry of Htilde(S,Q)");
    return dn_transfer_action(s, *p.k3_iso);
  }
  throw Error("unknown catalog key '" + key + "'");
}

}  // namespace extmukai
