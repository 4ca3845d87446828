#pragma once

#include <extmukai/exact.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace extmukai {

// A vector given in ambient coordinates (as opposed to lattice coordinates).
struct Ambient {
  RatVector v;
};

struct Embedding {
  RatMatrix basis;         // ambient_dim x rank, columns are the lattice basis
  RatMatrix ambient_gram;  // ambient_dim x ambient_dim
};

struct QuadLattice {
  std::string name;
  RatMatrix gram;
  std::optional<Embedding> embedding;

  std::size_t rank() const { return gram.rows(); }
  std::size_t ambient_dim() const { return embedding ? embedding->basis.rows() : rank(); }
  RatVector basis_vector(std::size_t i) const {
    return embedding ? embedding->basis.column(i) : unit_vector(rank(), i);
  }
  const RatMatrix& ambient_gram() const { return embedding ? embedding->ambient_gram : gram; }
};

inline QuadLattice make_lattice(std::string name, RatMatrix gram) {
  if (!gram.is_symmetric()) throw Error("gram matrix must be symmetric");
  return QuadLattice{std::move(name), std::move(gram), std::nullopt};
}

// Lattice spanned by `generators` (ambient coordinates) inside the quadratic space `ambient_gram`.
inline QuadLattice sublattice(std::string name, const RatMatrix& ambient_gram, const std::vector<RatVector>& generators) {
  auto basis = lattice_basis(generators, ambient_gram.rows());
  RatMatrix b = RatMatrix::from_columns(basis, ambient_gram.rows());
  if (basis.empty()) b = RatMatrix(ambient_gram.rows(), 0);
  RatMatrix g = b.transpose() * ambient_gram * b;
  return QuadLattice{std::move(name), std::move(g), Embedding{std::move(b), ambient_gram}};
}

// Lattice with the given basis (ambient coordinates, assumed independent).
inline QuadLattice lattice_with_basis(std::string name, const RatMatrix& ambient_gram, const std::vector<RatVector>& basis) {
  RatMatrix b = basis.empty() ? RatMatrix(ambient_gram.rows(), 0) : RatMatrix::from_columns(basis);
  if (rank(b) != basis.size()) throw Error("lattice basis vectors are dependent");
  RatMatrix g = b.transpose() * ambient_gram * b;
  return QuadLattice{std::move(name), std::move(g), Embedding{b, ambient_gram}};
}

inline RatVector to_ambient(const QuadLattice& l, const RatVector& coords) {
  return l.embedding ? l.embedding->basis * coords : coords;
}

// Rational coordinates of an ambient vector in the lattice basis; nullopt if outside the span.
inline std::optional<RatVector> span_coordinates(const QuadLattice& l, const RatVector& x) {
  if (!l.embedding) return x;
  if (x.size() != l.ambient_dim()) throw Error("dimension mismatch");
  return solve_linear(l.embedding->basis, x);
}

// Integral coordinates, or nullopt if x is not a lattice vector.
inline std::optional<RatVector> lattice_coordinates(const QuadLattice& l, const RatVector& x) {
  auto c = span_coordinates(l, x);
  if (!c || !is_integral(*c)) return std::nullopt;
  return c;
}

inline bool contains(const QuadLattice& l, const RatVector& x) { return lattice_coordinates(l, x).has_value(); }

inline Rational pairing(const QuadLattice& l, const RatVector& x, const RatVector& y) { return bilinear(l.gram, x, y); }

inline std::vector<RatVector> ambient_basis(const QuadLattice& l) {
  std::vector<RatVector> b;
  for (std::size_t i = 0; i < l.rank(); ++i) b.push_back(l.basis_vector(i));
  return b;
}

// True iff both lattices are the same subset of the common ambient space.
inline bool same_lattice(const QuadLattice& a, const QuadLattice& b) {
  if (a.rank() != b.rank()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!contains(b, a.basis_vector(i))) return false;
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!contains(a, b.basis_vector(i))) return false;
  return true;
}

// [outer : inner] for inner a full-rank sublattice of outer.
inline Integer index_in(const QuadLattice& inner, const QuadLattice& outer) {
  if (inner.rank() != outer.rank()) throw Error("index of a sublattice of smaller rank");
  RatMatrix c(outer.rank(), inner.rank());
  for (std::size_t j = 0; j < inner.rank(); ++j) {
    auto x = lattice_coordinates(outer, inner.basis_vector(j));
    if (!x) throw Error("not a sublattice");
    for (std::size_t i = 0; i < outer.rank(); ++i) c(i, j) = (*x)[i];
  }
  Rational d = determinant(c);
  if (sgn(d) == 0) throw Error("not a full-rank sublattice");
  return Rational(abs(d)).get_num();
}

// ---------------------------------------------------------------- standard lattices

inline RatMatrix gram_u() { return RatMatrix{{0, 1}, {1, 0}}; }

// Negated E8 Cartan matrix, Bourbaki node order: chain 1-3-4-5-6-7-8, node 2 attached to node 4.
inline RatMatrix gram_e8_minus() {
  RatMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = 1;
    g(b - 1, a - 1) = 1;
  }
  return g;
}

inline RatMatrix gram_k3() {
  RatMatrix g = direct_sum(direct_sum(gram_u(), gram_u()), gram_u());
  return direct_sum(direct_sum(g, gram_e8_minus()), gram_e8_minus());
}

// Basis (r, K3 lattice, s) with <(r,c,s),(r',c',s')> = c.c' - r s' - r' s.
inline RatMatrix gram_mukai_k3() {
  RatMatrix k3 = gram_k3();
  RatMatrix g(24, 24);
  g(0, 23) = -1;
  g(23, 0) = -1;
  for (std::size_t i = 0; i < 22; ++i)
    for (std::size_t j = 0; j < 22; ++j) g(1 + i, 1 + j) = k3(i, j);
  return g;
}

inline QuadLattice standard_lattice(const std::string& name) {
  if (name == "U") return make_lattice("U", gram_u());
  if (name == "E8_minus") return make_lattice("E8_minus", gram_e8_minus());
  if (name == "K3") return make_lattice("K3", gram_k3());
  if (name == "MukaiK3") return make_lattice("MukaiK3", gram_mukai_k3());
  if (name.rfind("A1(", 0) == 0 && name.back() == ')') {
    Rational k = parse_rational(name.substr(3, name.size() - 4));
    if (!is_integer(k) || sgn(k) == 0) throw Error("A1(k) needs a nonzero integer k");
    return make_lattice(name, RatMatrix{{k}});
  }
  throw Error("unknown standard lattice '" + name + "'");
}

inline QuadLattice lattice_a1(long k) { return standard_lattice("A1(" + std::to_string(k) + ")"); }

// ---------------------------------------------------------------- invariants

// Orthogonal basis of a symmetric form: returns (vectors as columns, their squares).
struct Diagonalization {
  std::vector<RatVector> vectors;
  RatVector squares;
};

inline Diagonalization diagonalize(const RatMatrix& gram) {
  const std::size_t n = gram.rows();
  std::vector<RatVector> work;
  for (std::size_t i = 0; i < n; ++i) work.push_back(unit_vector(n, i));
  Diagonalization out;
  while (!work.empty()) {
    // pick an anisotropic vector among the remaining ones, or a sum of two
    std::optional<RatVector> pick;
    std::size_t drop = work.size();
    for (std::size_t i = 0; i < work.size() && !pick; ++i)
      if (sgn(bilinear(gram, work[i], work[i])) != 0) {
        pick = work[i];
        drop = i;
      }
    for (std::size_t i = 0; i < work.size() && !pick; ++i)
      for (std::size_t j = i + 1; j < work.size() && !pick; ++j)
        if (sgn(bilinear(gram, work[i], work[j])) != 0) {
          pick = work[i] + work[j];
          drop = i;
        }
    if (!pick) {  // radical
      for (auto& w : work) {
        out.vectors.push_back(w);
        out.squares.push_back(0);
      }
      break;
    }
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(drop));
    Rational q = bilinear(gram, *pick, *pick);
    for (auto& w : work) {
      Rational c = bilinear(gram, w, *pick) / q;
      if (sgn(c) != 0) w = w - c * *pick;
    }
    out.vectors.push_back(*pick);
    out.squares.push_back(q);
  }
  return out;
}

struct Signature {
  std::size_t positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature(const RatMatrix& gram) {
  Signature s;
  for (const auto& q : diagonalize(gram).squares) {
    if (sgn(q) > 0) ++s.positive;
    else if (sgn(q) < 0) ++s.negative;
    else ++s.zero;
  }
  return s;
}

inline bool is_even(const QuadLattice& l) {
  if (!l.gram.is_integral()) return false;
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (!mpz_even_p(l.gram(i, i).get_num_mpz_t())) return false;
  return true;
}

inline Rational mod2(const Rational& x) {
  Rational r = x - 2 * Rational(floor_of(x / 2));
  return r;
}

struct DiscGroup {
  std::vector<Integer> cyclic_orders;
  std::vector<RatVector> generators;  // lattice coordinates of dual vectors
  RatVector q_values;                 // representatives in [0,2)

  Integer order() const {
    Integer o = 1;
    for (const auto& d : cyclic_orders) o *= d;
    return o;
  }
  bool trivial() const { return cyclic_orders.empty(); }
};

inline DiscGroup discriminant_group(const QuadLattice& l) {
  if (!l.gram.is_integral()) throw Error("integral gram required");
  if (!is_even(l)) throw Error("even lattice required");
  SmithForm s = smith_normal_form(l.gram);
  DiscGroup d;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    const Rational& di = s.D(i, i);
    if (sgn(di) == 0) throw Error("discriminant group of a degenerate lattice");
    if (di == 1) continue;
    RatVector y = (1 / di) * s.V.column(i);
    d.cyclic_orders.push_back(di.get_num());
    d.q_values.push_back(mod2(bilinear(l.gram, y, y)));
    d.generators.push_back(std::move(y));
  }
  return d;
}

inline Integer divisibility(const QuadLattice& l, const RatVector& coords) {
  if (!is_integral(coords)) throw Error("vector is not in the lattice");
  if (is_zero(coords)) throw Error("divisibility of the zero vector");
  RatVector p = l.gram * coords;
  Integer g = 0;
  for (const auto& x : p) {
    if (!is_integer(x)) throw Error("divisibility needs an integral form");
    g = gcd(g, x.get_num());
  }
  return g;
}

inline Integer divisibility(const QuadLattice& l, const Ambient& x) {
  auto c = lattice_coordinates(l, x.v);
  if (!c) throw Error("vector is not in the lattice");
  return divisibility(l, *c);
}

inline bool is_primitive(const QuadLattice&, const RatVector& coords) {
  if (is_zero(coords)) throw Error("primitivity of the zero vector");
  return content(coords) == 1;
}

inline bool is_primitive(const QuadLattice& l, const Ambient& x) {
  auto c = lattice_coordinates(l, x.v);
  if (!c) throw Error("vector is not in the lattice");
  return is_primitive(l, *c);
}

// Saturated sublattice {x in L : b(x,s) = 0 for all s}, generators in lattice coordinates.
// The result is embedded in L's ambient space.
inline QuadLattice orthogonal_complement(const QuadLattice& l, const std::vector<RatVector>& gens_coords,
                                         std::string name = "") {
  for (const auto& g : gens_coords)
    if (g.size() != l.rank() || !is_integral(g)) throw Error("generators outside the lattice");
  RatMatrix rows(gens_coords.size(), l.rank());
  for (std::size_t i = 0; i < gens_coords.size(); ++i) {
    RatVector p = l.gram * gens_coords[i];
    for (std::size_t j = 0; j < l.rank(); ++j) rows(i, j) = p[j];
  }
  std::vector<RatVector> ker = gens_coords.empty() ? std::vector<RatVector>{} : integer_kernel(rows);
  if (gens_coords.empty())
    for (std::size_t i = 0; i < l.rank(); ++i) ker.push_back(unit_vector(l.rank(), i));
  std::vector<RatVector> amb;
  for (const auto& k : ker) amb.push_back(to_ambient(l, k));
  return lattice_with_basis(name, l.ambient_gram(), amb);
}

inline QuadLattice orthogonal_complement(const QuadLattice& l, const std::vector<Ambient>& gens, std::string name = "") {
  std::vector<RatVector> cs;
  for (const auto& g : gens) {
    auto c = lattice_coordinates(l, g.v);
    if (!c) throw Error("generators outside the lattice");
    cs.push_back(*c);
  }
  return orthogonal_complement(l, cs, std::move(name));
}

// L intersected with the rational span of the generators (lattice coordinates in, embedded lattice out).
inline QuadLattice saturation(const QuadLattice& l, const std::vector<RatVector>& gens_coords, std::string name = "") {
  if (gens_coords.empty()) return lattice_with_basis(name, l.ambient_gram(), {});
  RatMatrix g = RatMatrix::from_rows(gens_coords);
  auto perp = kernel_basis(g);  // annihilators of the span w.r.t. the dot product
  std::vector<RatVector> basis;
  if (perp.empty()) {
    for (std::size_t i = 0; i < l.rank(); ++i) basis.push_back(unit_vector(l.rank(), i));
  } else {
    basis = integer_kernel(RatMatrix::from_rows(perp));
  }
  std::vector<RatVector> amb;
  for (const auto& b : basis) amb.push_back(to_ambient(l, b));
  return lattice_with_basis(name, l.ambient_gram(), amb);
}

// Search for an isometry L1 -> L2 (matrix mapping L1 coordinates to L2 coordinates)
// with image coordinates bounded by `bound`. Refuses rank > 4.
inline std::optional<RatMatrix> brute_force_isometric(const QuadLattice& l1, const QuadLattice& l2, long bound) {
  if (l1.rank() > 4 || l2.rank() > 4) throw Error("rank too large for brute force (max 4)");
  if (l1.rank() != l2.rank()) return std::nullopt;
  if (determinant(l1.gram) != determinant(l2.gram)) return std::nullopt;
  if (!(signature(l1.gram) == signature(l2.gram))) return std::nullopt;
  const std::size_t r = l1.rank();
  // candidate images grouped by square
  std::vector<RatVector> box;
  RatVector cur(r);
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == r) {
      if (!is_zero(cur)) box.push_back(cur);
      return;
    }
    for (long x = -bound; x <= bound; ++x) {
      cur[k] = x;
      fill(k + 1);
    }
  };
  fill(0);
  std::vector<RatVector> images(r);
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == r) {
      RatMatrix m = RatMatrix::from_columns(images);
      Rational d = determinant(m);
      return d == 1 || d == -1;
    }
    for (const auto& c : box) {
      if (bilinear(l2.gram, c, c) != l1.gram(k, k)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = bilinear(l2.gram, images[j], c) == l1.gram(j, k);
      if (!ok) continue;
      images[k] = c;
      if (search(k + 1)) return true;
    }
    return false;
  };
  if (r == 0) return RatMatrix(0, 0);
  if (!search(0)) return std::nullopt;
  return RatMatrix::from_columns(images);
}

}  // namespace extmukai
