#pragma once

#include <extmukai/exact.hpp>
#include <extmukai/isometry.hpp>
#include <extmukai/lattice.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace extmukai {

enum class Family { K3n, Kumn, OG10, OG6, custom };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::K3n: return "K3n";
    case Family::Kumn: return "Kumn";
    case Family::OG10: return "OG10";
    case Family::OG6: return "OG6";
    default: return "custom";
  }
}

struct DeformationType {
  Family family = Family::custom;
  int n = 1;
  Rational c_X = 1;
  Rational r_X = 1;
  RatMatrix h2_gram;

  std::size_t b2() const { return h2_gram.rows(); }
};

inline DeformationType k3n_type(int n) {
  if (n < 1) throw Error("K3n needs n >= 1");
  RatMatrix h2 = gram_k3();
  if (n >= 2) h2 = direct_sum(h2, RatMatrix{{Rational(2 - 2 * n)}});
  return {Family::K3n, n, 1, frac(n + 3, 4), h2};
}

inline RatMatrix gram_u3() { return direct_sum(direct_sum(gram_u(), gram_u()), gram_u()); }

inline DeformationType kumn_type(int n) {
  if (n < 1) throw Error("Kumn needs n >= 1");
  return {Family::Kumn, n, n + 1, frac(n + 1, 4), direct_sum(gram_u3(), RatMatrix{{Rational(-2 * n - 2)}})};
}

inline DeformationType og10_type() {
  RatMatrix h2 = direct_sum(direct_sum(gram_u3(), gram_e8_minus()), gram_e8_minus());
  return {Family::OG10, 5, 1, 2, direct_sum(h2, RatMatrix{{-2, 1}, {1, -2}})};
}

inline DeformationType og6_type() {
  return {Family::OG6, 3, 4, 1, direct_sum(direct_sum(gram_u3(), RatMatrix{{-2}}), RatMatrix{{-2}})};
}

inline DeformationType custom_type(int n, Rational c_X, Rational r_X, RatMatrix h2_gram) {
  if (n < 1) throw Error("n must be >= 1");
  if (sgn(c_X) <= 0) throw Error("c_X must be positive");
  if (!h2_gram.is_symmetric()) throw Error("H^2 gram must be symmetric");
  return {Family::custom, n, std::move(c_X), std::move(r_X), std::move(h2_gram)};
}

inline DeformationType deformation_type(const std::string& family, int n) {
  if (family == "K3n") return k3n_type(n);
  if (family == "Kumn") return kumn_type(n);
  if (family == "OG10") return og10_type();
  if (family == "OG6") return og6_type();
  throw Error("unknown family '" + family + "'");
}

// Qalpha + H^2 + Qbeta, basis order (alpha, H^2 basis..., beta).
struct ExtMukaiSpace {
  DeformationType dtype;
  SpacePtr space;
  std::optional<std::vector<RatVector>> ns;  // generators in H^2 coordinates

  std::size_t dim() const { return space->dim(); }
  std::size_t b2() const { return dtype.b2(); }
  int n() const { return dtype.n; }
  const RatMatrix& gram() const { return space->gram; }
  std::size_t beta_index() const { return dim() - 1; }

  RatVector alpha() const { return unit_vector(dim(), 0); }
  RatVector beta() const { return unit_vector(dim(), dim() - 1); }
  // H^2 coordinates -> ambient coordinates
  RatVector h2(const RatVector& lambda) const {
    if (lambda.size() != b2()) throw Error("vector is not in H^2 (expected " + std::to_string(b2()) + " coordinates)");
    RatVector v = zero_vector(dim());
    for (std::size_t i = 0; i < b2(); ++i) v[1 + i] = lambda[i];
    return v;
  }
  RatVector h2_basis(std::size_t i) const { return unit_vector(dim(), 1 + i); }
  RatVector h2_part(const RatVector& v) const { return RatVector(v.begin() + 1, v.end() - 1); }
  RatVector vec(const Rational& r, const RatVector& lambda, const Rational& s) const {
    RatVector v = h2(lambda);
    v[0] = r;
    v[dim() - 1] = s;
    return v;
  }
  Rational pair(const RatVector& x, const RatVector& y) const { return space->pair(x, y); }
  Rational square(const RatVector& x) const { return space->square(x); }
  Rational b(const RatVector& lambda, const RatVector& mu) const { return bilinear(dtype.h2_gram, lambda, mu); }

  // K3n only: delta in ambient coordinates
  RatVector delta() const {
    if (dtype.family != Family::K3n || dtype.n < 2) throw Error("delta needs the K3n family with n >= 2");
    return unit_vector(dim(), 23);
  }
};

inline RatMatrix ext_gram(const RatMatrix& h2) {
  const std::size_t b = h2.rows();
  RatMatrix g(b + 2, b + 2);
  g(0, b + 1) = -1;
  g(b + 1, 0) = -1;
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) g(1 + i, 1 + j) = h2(i, j);
  return g;
}

inline ExtMukaiSpace make_ext_space(DeformationType dt, std::optional<std::vector<RatVector>> ns = std::nullopt) {
  std::string name = std::string("Htilde(") + to_string(dt.family) + ",n=" + std::to_string(dt.n) + ")";
  SpacePtr s = make_space(name, ext_gram(dt.h2_gram), true);
  if (ns)
    for (const auto& g : *ns)
      if (g.size() != dt.b2()) throw Error("NS generator is not in H^2");
  return ExtMukaiSpace{std::move(dt), std::move(s), std::move(ns)};
}

// ---------------------------------------------------------------- extended Mukai vectors

enum class OrbitTag { line_bundle, O_orbit, kx_orbit, plain };

inline const char* to_string(OrbitTag t) {
  switch (t) {
    case OrbitTag::line_bundle: return "line_bundle";
    case OrbitTag::O_orbit: return "O_orbit";
    case OrbitTag::kx_orbit: return "kx_orbit";
    default: return "plain";
  }
}

struct ExtVector {
  RatVector coords;
  OrbitTag tag = OrbitTag::plain;
};

inline ExtVector make_ext_vector(const ExtMukaiSpace& s, RatVector coords, OrbitTag tag) {
  if (coords.size() != s.dim()) throw Error("dimension mismatch");
  Rational q = s.square(coords);
  if ((tag == OrbitTag::O_orbit || tag == OrbitTag::line_bundle) && q != -2 * s.dtype.r_X)
    throw Error("O-orbit vectors have square -2 r_X");
  if (tag == OrbitTag::kx_orbit && sgn(q) != 0) throw Error("k(x)-orbit vectors are isotropic");
  return {std::move(coords), tag};
}

// alpha + lambda + (r_X + b(lambda,lambda)/2) beta, lambda in H^2 coordinates
inline ExtVector ext_vector_line_bundle(const ExtMukaiSpace& s, const RatVector& lambda) {
  return {s.vec(1, lambda, s.dtype.r_X + s.b(lambda, lambda) / 2), OrbitTag::line_bundle};
}

inline ExtVector ext_vector_point(const ExtMukaiSpace& s) { return {s.beta(), OrbitTag::kx_orbit}; }

// Sign from the alpha coefficient, else from b(omega, lambda), else from the beta coefficient; times epsilon.
inline ExtVector signum_normalize(const ExtMukaiSpace& s, const ExtVector& v, const std::optional<RatVector>& omega,
                                  int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw Error("epsilon must be +1 or -1");
  const RatVector& c = v.coords;
  int sign = sgn(c.front());
  if (sign == 0) {
    RatVector lambda = s.h2_part(c);
    if (!is_zero(lambda)) {
      if (!omega) throw Error("very-general class required");
      sign = sgn(s.b(*omega, lambda));
      if (sign == 0) throw Error("very-general class required");
    } else {
      sign = sgn(c.back());
    }
  }
  if (sign == 0) throw Error("signum of the zero vector");
  return {Rational(sign * epsilon) * c, v.tag};
}

// ---------------------------------------------------------------- K3^[n] lattices

struct K3nLattices {
  QuadLattice lambda;     // B_{-delta/2}(Htilde(X,Z)) = Lambda_S + Z delta~
  QuadLattice lambda_s;   // Z alpha~ + H^2(S,Z) + Z beta
  QuadLattice lambda_g;   // Lambda_S + Z delta~/2
  QuadLattice lambda_lb;  // spanned by extended Mukai vectors of line bundles
  RatVector alpha_t, delta_t;
  HyperbolicPair plane0, plane1;  // <alpha~, -beta> and the first U of H^2(S)
};

inline K3nLattices k3n_lattices(const ExtMukaiSpace& s) {
  if (s.dtype.family != Family::K3n || s.n() < 2) throw Error("K3^[n] lattices need the K3n family with n >= 2");
  const int n = s.n();
  const RatMatrix& g = s.gram();
  RatVector delta = s.delta();
  RatVector alpha_t = s.alpha() - Rational(1, 2) * delta + frac(1 - n, 4) * s.beta();
  RatVector delta_t = delta + Rational(n - 1) * s.beta();

  std::vector<RatVector> ls{alpha_t};
  for (std::size_t i = 0; i < 22; ++i) ls.push_back(s.h2_basis(i));
  ls.push_back(s.beta());
  std::vector<RatVector> l = ls;
  l.insert(l.end() - 1, delta_t);  // (alpha~, H^2(S), delta~, beta)
  std::vector<RatVector> lg = l;
  lg[23] = Rational(1, 2) * delta_t;

  std::vector<RatVector> lb_gens;
  auto vtilde = [&](const RatVector& lambda) { return ext_vector_line_bundle(s, lambda).coords; };
  const std::size_t b2 = s.b2();
  lb_gens.push_back(vtilde(zero_vector(b2)));
  for (std::size_t i = 0; i < b2; ++i) {
    lb_gens.push_back(vtilde(unit_vector(b2, i)));
    for (std::size_t j = i + 1; j < b2; ++j) lb_gens.push_back(vtilde(unit_vector(b2, i) + unit_vector(b2, j)));
  }

  return K3nLattices{lattice_with_basis("Lambda", g, l),
                     lattice_with_basis("Lambda_S", g, ls),
                     lattice_with_basis("Lambda_g", g, lg),
                     sublattice("Lambda_LB", g, lb_gens),
                     alpha_t,
                     delta_t,
                     HyperbolicPair{alpha_t, -s.beta()},
                     HyperbolicPair{s.h2_basis(0), s.h2_basis(1)}};
}

// Htilde(X,Z): the standard basis.
inline QuadLattice integral_lattice(const ExtMukaiSpace& s) {
  std::vector<RatVector> b;
  for (std::size_t i = 0; i < s.dim(); ++i) b.push_back(unit_vector(s.dim(), i));
  return lattice_with_basis("Htilde_Z", s.gram(), b);
}

// k Lambda_S + Z delta~
inline QuadLattice scaled_lattice(const ExtMukaiSpace& s, long k) {
  K3nLattices ls = k3n_lattices(s);
  std::vector<RatVector> b;
  for (const auto& v : ambient_basis(ls.lambda_s)) b.push_back(Rational(k) * v);
  b.insert(b.end() - 1, ls.delta_t);
  return lattice_with_basis(std::to_string(k) + "Lambda_S+Zdelta~", s.gram(), b);
}

struct Membership {
  bool member = false;
  std::optional<RatVector> coords;
};

inline Membership membership(const QuadLattice& l, const RatVector& v) {
  auto c = lattice_coordinates(l, v);
  return {c.has_value(), c};
}

// (L_alg, L_tr) with L_alg = L intersected with Q alpha + NS_Q + Q beta.
inline std::pair<QuadLattice, QuadLattice> split_algebraic(const ExtMukaiSpace& s, const QuadLattice& l) {
  if (!s.ns) throw Error("no algebraic sublattice designated");
  // primitivity of NS in H^2(Z)
  QuadLattice h2 = make_lattice("H2", s.dtype.h2_gram);
  QuadLattice ns_sat = saturation(h2, *s.ns);
  QuadLattice ns_lat = sublattice("NS", s.dtype.h2_gram, *s.ns);
  if (!same_lattice(ns_sat, ns_lat)) throw Error("NS is not primitive in H^2");

  std::vector<RatVector> w{s.alpha(), s.beta()};
  for (const auto& g : *s.ns) w.push_back(s.h2(g));
  auto perp = kernel_basis(RatMatrix::from_rows(w));
  std::vector<RatVector> alg_coords;
  if (perp.empty()) {
    for (std::size_t i = 0; i < l.rank(); ++i) alg_coords.push_back(unit_vector(l.rank(), i));
  } else {
    RatMatrix pb = RatMatrix::from_rows(perp) * l.embedding.value().basis;
    alg_coords = integer_kernel(pb);
  }
  std::vector<RatVector> alg_amb;
  for (const auto& c : alg_coords) alg_amb.push_back(to_ambient(l, c));
  QuadLattice alg = lattice_with_basis(l.name + "_alg", s.gram(), alg_amb);
  QuadLattice tr = orthogonal_complement(l, alg_coords, l.name + "_tr");
  return {alg, tr};
}

// ---------------------------------------------------------------- rank predicates

struct RankWitness {
  bool holds = false;
  Rational a;                       // witness when holds
  std::optional<bool> a_integral;  // reported for integral c_X
};

namespace detail {

// Exact integer n-th root of x >= 0, if any.
inline std::optional<Integer> exact_root(const Integer& x, int n) {
  if (sgn(x) < 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return std::nullopt;
  return r;
}

inline std::optional<std::int64_t> exact_root64(std::int64_t x, int n) {
  if (x < 0) return std::nullopt;
  if (x < 2 || n == 1) return x;
  auto pw = [&](std::int64_t b) {
    __int128 p = 1;
    for (int i = 0; i < n; ++i) {
      p *= b;
      if (p > x) return p;
    }
    return p;
  };
  std::int64_t lo = 1, hi = 1;
  while (pw(hi) <= x) hi *= 2;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (pw(mid) <= x ? lo : hi) = mid;
  }
  if (pw(lo) == x) return lo;
  return std::nullopt;
}

// Rational n-th root of p/q in lowest terms (q > 0), if any.
inline std::optional<Rational> rational_root(const Integer& p, const Integer& q, int n) {
  bool neg = sgn(p) < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  Integer ap = abs(p);
  if (ap.fits_slong_p() && q.fits_slong_p()) {
    auto a = exact_root64(ap.get_si(), n);
    if (!a) return std::nullopt;
    auto b = exact_root64(q.get_si(), n);
    if (!b) return std::nullopt;
    Rational r(Integer(static_cast<long>(*a)), Integer(static_cast<long>(*b)));
    return neg ? Rational(-r) : r;
  }
  auto a = exact_root(ap, n);
  if (!a) return std::nullopt;
  auto b = exact_root(q, n);
  if (!b) return std::nullopt;
  Rational r(*a, *b);
  return neg ? Rational(-r) : r;
}

}  // namespace detail

// |r| = a^n with a a nonnegative integer.
inline RankWitness rank_predicate_O_orbit(const Integer& r, int n) {
  if (n < 1) throw Error("n must be >= 1");
  auto a = detail::rational_root(abs(r), 1, n);
  RankWitness w;
  if (a) {
    w.holds = true;
    w.a = *a;
    w.a_integral = true;
  }
  return w;
}

// r = a^n n!/c_X with a rational.
inline RankWitness rank_predicate_kx_orbit(const Integer& r, int n, const Rational& c_X) {
  if (n < 1) throw Error("n must be >= 1");
  if (sgn(c_X) <= 0) throw Error("c_X must be positive");
  RankWitness w;
  if (sgn(r) == 0) {
    w.holds = true;
    w.a = 0;
    if (is_integer(c_X)) w.a_integral = true;
    return w;
  }
  Rational an = Rational(r) * c_X / Rational(factorial(static_cast<unsigned long>(n)));
  auto a = detail::rational_root(an.get_num(), an.get_den(), n);
  if (!a) return w;
  w.holds = true;
  w.a = *a;
  if (is_integer(c_X)) w.a_integral = is_integer(*a);
  return w;
}

// ---------------------------------------------------------------- image-bound predicate

struct HatAutReport {
  bool member = true;
  std::vector<std::string> reasons;  // failed conditions
};

inline HatAutReport in_hat_aut_plus(const Isometry& g, const ExtMukaiSpace& s) {
  if (g.space()->gram != s.gram()) throw Error("isometry is not on this space");
  HatAutReport r;
  K3nLattices ls = k3n_lattices(s);
  if (!preserves_lattice(g, ls.lambda)) {
    r.member = false;
    r.reasons.push_back("lattice");
  }
  if (s.ns) {
    auto [alg, tr] = split_algebraic(s, ls.lambda);
    if (!preserves_lattice(g, alg) || !preserves_lattice(g, tr)) {
      r.member = false;
      r.reasons.push_back("hodge");
    }
  }
  if (spinor_norm(g) != 1) {
    r.member = false;
    r.reasons.push_back("spinor");
  }
  if (r.member || r.reasons.front() != "lattice") {
    if (preserves_lattice(g, ls.lambda) && disc_action(g, ls.lambda).kind == DiscKind::other) {
      r.member = false;
      r.reasons.push_back("discriminant");
    }
  }
  return r;
}

}  // namespace extmukai
