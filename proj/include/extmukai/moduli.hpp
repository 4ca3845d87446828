#pragma once

#include <extmukai/exact.hpp>
#include <extmukai/lattice.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace extmukai {

struct MukaiVectorK3 {
  Integer r;
  RatVector c;  // NS(S) coordinates, integral
  Integer s;
};

// U + NS(S) with basis ((1,0,0), (0,0,1), NS basis).
struct AlgebraicMukaiLattice {
  RatMatrix ns_gram;
  QuadLattice lattice;

  std::size_t rho() const { return ns_gram.rows(); }
};

inline AlgebraicMukaiLattice make_algebraic_mukai_lattice(const RatMatrix& ns_gram) {
  if (!ns_gram.is_symmetric() || !ns_gram.is_integral()) throw Error("NS gram must be integral and symmetric");
  QuadLattice ns = make_lattice("NS", ns_gram);
  if (!is_even(ns)) throw Error("NS must be even");
  Signature sg = signature(ns_gram);
  if (sg.positive != 1 || sg.zero != 0) throw Error("NS must be nondegenerate of signature (1, rho-1)");
  RatMatrix u{{0, -1}, {-1, 0}};
  return {ns_gram, make_lattice("Htilde_alg", direct_sum(u, ns_gram))};
}

inline RatVector mukai_coords(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  if (v.c.size() != l.rho()) throw Error("NS coordinate count mismatch");
  if (!is_integral(v.c)) throw Error("Mukai vector must be integral");
  RatVector x{Rational(v.r), Rational(v.s)};
  x.insert(x.end(), v.c.begin(), v.c.end());
  return x;
}

// (r, c..., s) as read from files and the command line
inline MukaiVectorK3 mukai_from_list(const RatVector& xs) {
  if (xs.size() < 2) throw Error("Mukai vector needs r and s");
  if (!is_integral(xs)) throw Error("Mukai vector must be integral");
  return {xs.front().get_num(), RatVector(xs.begin() + 1, xs.end() - 1), xs.back().get_num()};
}

inline Rational mukai_pairing(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v, const MukaiVectorK3& w) {
  return pairing(l.lattice, mukai_coords(l, v), mukai_coords(l, w));
}

inline Rational mukai_square(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) { return mukai_pairing(l, v, v); }

inline void require_primitive(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  RatVector x = mukai_coords(l, v);
  if (is_zero(x) || content(x) != 1) throw Error("Mukai vector must be primitive");
}

inline Integer moduli_dimension(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  Rational q = mukai_square(l, v);
  if (q < -2) throw Error("<v,v> < -2: moduli space is empty");
  return Rational(q + 2).get_num();
}

// H^2(M) algebraic part: v^perp in the algebraic Mukai lattice, saturated.
inline QuadLattice ns_of_moduli(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  require_primitive(l, v);
  return orthogonal_complement(l.lattice, std::vector<RatVector>{mukai_coords(l, v)}, "NS(M)");
}

// Pairings of v against the basis of L.
inline std::vector<Integer> pairing_row(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  RatVector gv = l.lattice.gram * mukai_coords(l, v);
  std::vector<Integer> row;
  for (const auto& x : gv) row.push_back(x.get_num());
  return row;
}

struct Fineness {
  bool fine = false;
  Integer obstruction_order;  // gcd of <v, basis>
};

inline Fineness fineness(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  require_primitive(l, v);
  Integer d = 0;
  for (const auto& x : pairing_row(l, v)) d = gcd(d, x);
  return {d == 1, d};
}

// Surjectivity of x -> <x,v> onto Z, from the Smith form of the pairing row, with a witness w.
inline std::optional<RatVector> unimodular_witness(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  require_primitive(l, v);
  auto row = pairing_row(l, v);
  RatMatrix a(1, row.size());
  for (std::size_t j = 0; j < row.size(); ++j) a(0, j) = row[j];
  SmithForm sf = smith_normal_form(a);
  if (abs(sf.D(0, 0)) != 1) return std::nullopt;
  // a V e_1 = U^{-1} D_00 = +-1
  RatVector w = sf.V.column(0);
  Rational p = pairing(l.lattice, w, mukai_coords(l, v));
  if (abs(p) != 1) throw Error("internal: Smith column does not pair to a unit");
  w = (1 / p) * w;
  return w;
}

struct DiscLemmaReport {
  Rational square;                  // <v,v>
  std::optional<Integer> k_order;   // |K| = [L : Zv + v^perp], when <v,v> != 0
  Rational det_ns;                  // det NS(M)
  Rational det_l;                   // det L
  bool formula_holds = false;       // det NS(M) = |K|^2 det L / <v,v>
  bool fine = false;
  bool k_equals_square = false;     // |K| = |<v,v>|
  bool det_matches_fine = false;    // det NS(M) = <v,v> det L
  bool equivalence_holds = false;   // fine <=> |K| = |<v,v>| <=> det identity
  bool k_divides_square = false;
};

inline DiscLemmaReport disc_lemma_check(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  DiscLemmaReport rep;
  QuadLattice perp = ns_of_moduli(l, v);
  RatVector x = mukai_coords(l, v);
  rep.square = mukai_square(l, v);
  rep.det_ns = determinant(perp.gram);
  rep.det_l = determinant(l.lattice.gram);
  rep.fine = fineness(l, v).fine;
  if (sgn(rep.square) == 0) return rep;

  std::vector<RatVector> gens{x};
  for (const auto& b : ambient_basis(perp)) gens.push_back(b);
  QuadLattice sum = lattice_with_basis("Zv+v^perp", l.lattice.gram, gens);
  QuadLattice whole = lattice_with_basis("L", l.lattice.gram, ambient_basis(make_lattice("L", l.lattice.gram)));
  Integer k = index_in(sum, whole);
  rep.k_order = k;
  Rational k2 = Rational(k * k);
  rep.formula_holds = rep.det_ns == k2 * rep.det_l / rep.square;
  Rational abs_sq = abs(rep.square);
  rep.k_equals_square = Rational(k) == abs_sq;
  rep.det_matches_fine = rep.det_ns == rep.square * rep.det_l;
  rep.equivalence_holds = rep.fine == rep.k_equals_square && rep.fine == rep.det_matches_fine;
  rep.k_divides_square = is_integer(abs_sq / Rational(k));
  return rep;
}

// Basis-free summary of a discriminant form: group invariants and the count of elements per q value.
struct DiscFormSummary {
  std::vector<Integer> cyclic_orders;
  std::map<Rational, long> q_counts;

  friend bool operator==(const DiscFormSummary&, const DiscFormSummary&) = default;
};

inline constexpr long kMaxDiscEnumeration = 100000;

inline DiscFormSummary summarize_disc_form(const QuadLattice& l) {
  DiscGroup d = discriminant_group(l);
  if (d.order() > kMaxDiscEnumeration) throw Error("discriminant group too large to enumerate");
  DiscFormSummary out{d.cyclic_orders, {}};
  std::vector<long> k(d.cyclic_orders.size(), 0);
  while (true) {
    RatVector y = zero_vector(l.rank());
    for (std::size_t i = 0; i < k.size(); ++i) y = y + Rational(k[i]) * d.generators[i];
    ++out.q_counts[mod2(bilinear(l.gram, y, y))];
    std::size_t i = 0;
    while (i < k.size() && k[i] + 1 == d.cyclic_orders[i]) k[i++] = 0;
    if (i == k.size()) break;
    ++k[i];
  }
  return out;
}

struct PartnerInvariants {
  Rational square;
  Integer obstruction_order;
  std::optional<DiscFormSummary> ns_disc;  // absent when NS(M) is degenerate

  friend bool operator==(const PartnerInvariants&, const PartnerInvariants&) = default;
};

inline PartnerInvariants partner_invariants(const AlgebraicMukaiLattice& l, const MukaiVectorK3& v) {
  PartnerInvariants p;
  p.square = mukai_square(l, v);
  p.obstruction_order = fineness(l, v).obstruction_order;
  QuadLattice ns = ns_of_moduli(l, v);
  if (ns.rank() > 0 && sgn(determinant(ns.gram)) != 0) p.ns_disc = summarize_disc_form(ns);
  return p;
}

}  // namespace extmukai
