#pragma once

#include <extmukai/exact.hpp>
#include <extmukai/hk_space.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace extmukai {

// Sym^p of Qalpha + H^2 + Qbeta. Basis layout as in ExtMukaiSpace: index 0 is alpha,
// the last index is beta, everything in between is H^2.
struct SymSpace {
  RatMatrix gram;
  Rational c_X;
  int n = 1;
  std::vector<std::vector<std::pair<std::uint8_t, Rational>>> rows;  // sparse gram rows

  std::size_t dim() const { return gram.rows(); }
  std::size_t beta_index() const { return dim() - 1; }
};
using SymSpacePtr = std::shared_ptr<const SymSpace>;

inline constexpr int kMaxSymOrder = 12;

inline SymSpacePtr make_sym_space(const RatMatrix& gram, const Rational& c_X, int n) {
  if (gram.rows() < 2 || gram.rows() > 255) throw Error("unsupported Mukai space dimension");
  if (n < 1 || n > kMaxSymOrder) throw Error("n out of range for the symmetric power model");
  auto s = std::make_shared<SymSpace>();
  s->gram = gram;
  s->c_X = c_X;
  s->n = n;
  s->rows.resize(gram.rows());
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (sgn(gram(i, j)) != 0) s->rows[i].emplace_back(static_cast<std::uint8_t>(j), gram(i, j));
  return s;
}

inline SymSpacePtr make_sym_space(const ExtMukaiSpace& s) { return make_sym_space(s.gram(), s.dtype.c_X, s.n()); }

// Sorted multiset of basis indices.
struct Monomial {
  std::array<std::uint8_t, kMaxSymOrder> idx{};
  std::uint8_t len = 0;

  std::uint8_t operator[](std::size_t i) const { return idx[i]; }
  std::size_t size() const { return len; }

  Monomial with(std::uint8_t k) const {
    if (len >= kMaxSymOrder) throw Error("monomial order too large");
    Monomial m;
    std::size_t i = 0, o = 0;
    while (i < len && idx[i] <= k) m.idx[o++] = idx[i++];
    m.idx[o++] = k;
    while (i < len) m.idx[o++] = idx[i++];
    m.len = static_cast<std::uint8_t>(o);
    return m;
  }
  Monomial without_at(std::size_t pos) const {
    Monomial m;
    for (std::size_t i = 0, o = 0; i < len; ++i)
      if (i != pos) m.idx[o++] = idx[i];
    m.len = static_cast<std::uint8_t>(len - 1);
    return m;
  }
  std::size_t count(std::uint8_t k) const { return static_cast<std::size_t>(std::count(idx.begin(), idx.begin() + len, k)); }

  friend bool operator<(const Monomial& a, const Monomial& b) {
    return std::lexicographical_compare(a.idx.begin(), a.idx.begin() + a.len, b.idx.begin(), b.idx.begin() + b.len);
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.len == b.len && std::equal(a.idx.begin(), a.idx.begin() + a.len, b.idx.begin());
  }
};

inline Monomial monomial(std::initializer_list<int> xs) {
  Monomial m;
  for (int x : xs) m = m.with(static_cast<std::uint8_t>(x));
  return m;
}

// Cohomological degree: alpha 0, H^2 2, beta 4.
inline int monomial_degree(const SymSpace& s, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    d += m[i] == s.beta_index() ? 4 : 2;
  }
  return d;
}

// Product of factorials of the multiplicities.
inline Integer multiplicity_factorial(const Monomial& m) {
  Integer f = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= m.size(); ++i) {
    if (i < m.size() && m[i] == m[i - 1]) {
      ++run;
    } else {
      f *= factorial(run);
      run = 1;
    }
  }
  return f;
}

// "a|i1.i2...|c" with H^2 indices 0-based.
inline std::string monomial_key(const SymSpace& s, const Monomial& m) {
  std::size_t a = 0, c = 0;
  std::string mid;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) {
      ++a;
    } else if (m[i] == s.beta_index()) {
      ++c;
    } else {
      if (!mid.empty()) mid += '.';
      mid += std::to_string(m[i] - 1);
    }
  }
  return std::to_string(a) + "|" + mid + "|" + std::to_string(c);
}

class SymElement {
 public:
  SymElement(SymSpacePtr space, int order) : space_(std::move(space)), order_(order) {
    if (order_ < 0 || order_ > kMaxSymOrder) throw Error("symmetric power order out of range");
  }

  const SymSpacePtr& space() const { return space_; }
  int order() const { return order_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != order_) throw Error("monomial order mismatch");
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // degree -> terms of that degree
  std::map<int, std::map<Monomial, Rational>> pieces() const {
    std::map<int, std::map<Monomial, Rational>> out;
    for (const auto& [m, c] : terms_) out[monomial_degree(*space_, m)].emplace(m, c);
    return out;
  }
  SymElement piece(int degree) const {
    SymElement r(space_, order_);
    for (const auto& [m, c] : terms_)
      if (monomial_degree(*space_, m) == degree) r.terms_.emplace(m, c);
    return r;
  }

  SymElement& operator+=(const SymElement& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  SymElement& operator-=(const SymElement& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend SymElement operator+(SymElement a, const SymElement& b) { return a += b; }
  friend SymElement operator-(SymElement a, const SymElement& b) { return a -= b; }
  friend SymElement operator*(const Rational& k, SymElement a) {
    if (sgn(k) == 0) a.terms_.clear();
    for (auto& [m, c] : a.terms_) c *= k;
    return a;
  }
  friend bool operator==(const SymElement& a, const SymElement& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  void check_compatible(const SymElement& o) const {
    if (o.space_ != space_ && o.space_->gram != space_->gram) throw Error("symmetric elements live on different spaces");
    if (o.order_ != order_) throw Error("symmetric power order mismatch");
  }

 private:
  SymSpacePtr space_;
  int order_;
  std::map<Monomial, Rational> terms_;
};

inline SymElement sym_one(const SymSpacePtr& s) {
  SymElement e(s, 0);
  e.add(Monomial{}, 1);
  return e;
}

inline SymElement multiply(const SymElement& x, const RatVector& v) {
  const SymSpacePtr& s = x.space();
  if (v.size() != s->dim()) throw Error("vector dimension mismatch");
  SymElement r(s, x.order() + 1);
  for (const auto& [m, c] : x.terms())
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(v[j]) != 0) r.add(m.with(static_cast<std::uint8_t>(j)), c * v[j]);
  return r;
}

inline SymElement sym_product(const SymSpacePtr& s, const std::vector<RatVector>& vs) {
  SymElement r = sym_one(s);
  for (const auto& v : vs) r = multiply(r, v);
  return r;
}

inline SymElement sym_power(const SymSpacePtr& s, const RatVector& v, int k) {
  return sym_product(s, std::vector<RatVector>(static_cast<std::size_t>(k), v));
}

// alpha^a beta^c
inline SymElement alpha_beta(const SymSpacePtr& s, int a, int c) {
  Monomial m;
  for (int i = 0; i < a; ++i) m = m.with(0);
  for (int i = 0; i < c; ++i) m = m.with(static_cast<std::uint8_t>(s->beta_index()));
  SymElement e(s, a + c);
  e.add(m, 1);
  return e;
}

namespace detail {

// prod_i (G e_{m_i}) expanded in the monomial basis
inline std::map<Monomial, Rational> gram_expansion(const SymSpace& s, const Monomial& m) {
  std::map<Monomial, Rational> cur{{Monomial{}, Rational(1)}};
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::map<Monomial, Rational> next;
    for (const auto& [mm, c] : cur)
      for (const auto& [j, g] : s.rows[m[i]]) {
        Rational& slot = next[mm.with(j)];
        slot += c * g;
      }
    cur.clear();
    for (auto& [mm, c] : next)
      if (sgn(c) != 0) cur.emplace(mm, std::move(c));
  }
  return cur;
}

}  // namespace detail

// b_[p](x_1...x_p, y_1...y_p) = (-1)^p c_X sum_sigma prod b(x_i, y_sigma(i))
inline Rational pairing_bn(const SymElement& x, const SymElement& y) {
  x.check_compatible(y);
  const SymElement& small = x.size() <= y.size() ? x : y;
  const SymElement& large = x.size() <= y.size() ? y : x;
  const SymSpace& s = *x.space();
  Rational total = 0;
  for (const auto& [m, c] : small.terms()) {
    Rational acc = 0;
    for (const auto& [mm, g] : detail::gram_expansion(s, m)) {
      auto it = large.terms().find(mm);
      if (it != large.terms().end()) acc += g * it->second * Rational(multiplicity_factorial(mm));
    }
    total += c * acc;
  }
  total *= s.c_X;
  return x.order() % 2 ? Rational(-total) : total;
}

inline SymElement laplacian(const SymElement& x) {
  if (x.order() < 2) throw Error("laplacian needs n >= 2");
  const SymSpace& s = *x.space();
  SymElement r(x.space(), x.order() - 2);
  for (const auto& [m, c] : x.terms()) {
    // distinct positions i < j; runs of equal indices give C(m_k, 2) automatically
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const Rational& g = s.gram(m[i], m[j]);
        if (sgn(g) == 0) continue;
        r.add(m.without_at(j).without_at(i), c * g);
      }
  }
  return r;
}

namespace detail {

inline void check_h2(const SymSpace& s, const RatVector& omega) {
  if (omega.size() != s.dim()) throw Error("vector dimension mismatch");
  if (sgn(omega.front()) != 0 || sgn(omega.back()) != 0) throw Error("class is not in H^2");
}

}  // namespace detail

// e_omega: alpha -> omega, mu -> b(omega, mu) beta, beta -> 0, extended as a derivation.
inline SymElement lefschetz_e(const RatVector& omega, const SymElement& x) {
  const SymSpace& s = *x.space();
  detail::check_h2(s, omega);
  const auto beta = static_cast<std::uint8_t>(s.beta_index());
  RatVector go = s.gram * omega;
  SymElement r(x.space(), x.order());
  for (const auto& [m, c] : x.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      const std::uint8_t k = m[i];
      if (k == beta) continue;
      const Rational mult = c * Rational(static_cast<long>(m.count(k)));
      Monomial rest = m.without_at(i);
      if (k == 0) {
        for (std::size_t j = 1; j < beta; ++j)
          if (sgn(omega[j]) != 0) r.add(rest.with(static_cast<std::uint8_t>(j)), mult * omega[j]);
      } else if (sgn(go[k]) != 0) {
        r.add(rest.with(beta), mult * go[k]);
      }
    }
  }
  return r;
}

// e_{omega_1} ... e_{omega_k}(alpha^n / n!)
inline SymElement psi(const SymSpacePtr& s, const std::vector<RatVector>& omegas) {
  if (omegas.size() > static_cast<std::size_t>(2 * s->n)) throw Error("psi: more than 2n classes");
  SymElement x = Rational(1) / rational_factorial(static_cast<unsigned long>(s->n)) * alpha_beta(s, s->n, 0);
  for (auto it = omegas.rbegin(); it != omegas.rend(); ++it) x = lefschetz_e(*it, x);
  return x;
}

struct SHPairing {
  Rational value;
  bool degree_matched = false;  // x has a piece of degree 4n - 2k
};

namespace detail {

// Restrict to span(alpha, H^2 support of x, omegas, beta). e_omega preserves it and b_[n] only reads its gram.
inline SHPairing pair_with_SH_reduced(const std::vector<RatVector>& omegas, const SymElement& x) {
  const SymSpace& s = *x.space();
  const std::size_t beta = s.beta_index();
  std::vector<std::size_t> support;
  for (const auto& [m, c] : x.terms())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0 && m[i] != beta) support.push_back(m[i]);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  std::vector<RatVector> basis;
  for (std::size_t k : support) basis.push_back(unit_vector(s.dim(), k));
  for (const auto& w : omegas) {
    std::vector<RatVector> trial = basis;
    trial.push_back(w);
    if (rank(RatMatrix::from_rows(trial)) > basis.size()) basis.push_back(w);
  }
  basis.insert(basis.begin(), unit_vector(s.dim(), 0));
  basis.push_back(unit_vector(s.dim(), beta));

  RatMatrix b = RatMatrix::from_columns(basis);
  SymSpacePtr sub = make_sym_space(b.transpose() * s.gram * b, s.c_X, s.n);
  std::map<std::size_t, std::uint8_t> relabel{{0, 0}, {beta, static_cast<std::uint8_t>(basis.size() - 1)}};
  for (std::size_t i = 0; i < support.size(); ++i) relabel[support[i]] = static_cast<std::uint8_t>(1 + i);

  SymElement xs(sub, x.order());
  for (const auto& [m, c] : x.terms()) {
    Monomial mm;
    for (std::size_t i = 0; i < m.size(); ++i) mm = mm.with(relabel.at(m[i]));
    xs.add(mm, c);
  }
  std::vector<RatVector> ws;
  for (const auto& w : omegas) ws.push_back(solve_linear(b, w).value());
  const int deg = 4 * s.n - 2 * static_cast<int>(omegas.size());
  return {pairing_bn(psi(sub, ws), xs), !x.piece(deg).is_zero()};
}

}  // namespace detail

// b_[n](psi(omega_1 ... omega_k), x) = b_SH(omega_1 ... omega_k, T(x)) by adjointness.
inline SHPairing pair_with_SH_detail(const std::vector<RatVector>& omegas, const SymElement& x, bool reduce = true) {
  const SymSpace& s = *x.space();
  if (x.order() != s.n) throw Error("pair_with_SH needs an element of Sym^n");
  for (const auto& w : omegas) detail::check_h2(s, w);
  if (omegas.size() > static_cast<std::size_t>(2 * s.n)) return {0, false};
  if (reduce) return detail::pair_with_SH_reduced(omegas, x);
  const int deg = 4 * s.n - 2 * static_cast<int>(omegas.size());
  return {pairing_bn(psi(x.space(), omegas), x), !x.piece(deg).is_zero()};
}

inline Rational pair_with_SH(const std::vector<RatVector>& omegas, const SymElement& x, bool reduce = true) {
  return pair_with_SH_detail(omegas, x, reduce).value;
}

// ---------------------------------------------------------------- projection

// All monomials of order n and cohomological degree d.
inline std::vector<Monomial> monomials_of_degree(const SymSpace& s, int n, int d) {
  std::vector<Monomial> out;
  if (d % 2 != 0) return out;
  const std::size_t h2 = s.dim() - 2;
  for (int c = 0; 4 * c <= d && c <= n; ++c) {
    int k = (d - 4 * c) / 2;
    int a = n - k - c;
    if (a < 0) continue;
    if (k > 0 && h2 == 0) continue;
    Monomial base;
    for (int i = 0; i < a; ++i) base = base.with(0);
    for (int i = 0; i < c; ++i) base = base.with(static_cast<std::uint8_t>(s.beta_index()));
    // multisets of size k from 1..h2
    std::vector<std::uint8_t> pick(static_cast<std::size_t>(k), 1);
    while (true) {
      Monomial m = base;
      for (auto p : pick) m = m.with(p);
      out.push_back(m);
      int pos = k - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == h2) --pos;
      if (pos < 0) break;
      std::uint8_t v = static_cast<std::uint8_t>(pick[static_cast<std::size_t>(pos)] + 1);
      for (int q = pos; q < k; ++q) pick[static_cast<std::size_t>(q)] = v;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::size_t kMaxProjectionPiece = 600;

namespace detail {

// Basis of ker(Delta) on the degree-d piece, as coefficient vectors over monomials_of_degree.
inline std::vector<RatVector> harmonic_basis(const SymSpacePtr& s, const std::vector<Monomial>& mons) {
  if (s->n < 2) {
    std::vector<RatVector> all;
    for (std::size_t i = 0; i < mons.size(); ++i) all.push_back(unit_vector(mons.size(), i));
    return all;
  }
  std::map<Monomial, std::size_t> row_of;
  std::vector<SymElement> images;
  for (const auto& m : mons) {
    SymElement e(s, s->n);
    e.add(m, 1);
    images.push_back(laplacian(e));
    for (const auto& [mm, c] : images.back().terms()) row_of.emplace(mm, row_of.size());
  }
  RatMatrix d(row_of.size(), mons.size());
  for (std::size_t j = 0; j < mons.size(); ++j)
    for (const auto& [mm, c] : images[j].terms()) d(row_of.at(mm), j) = c;
  return kernel_basis(d);
}

inline SymElement combine(const SymSpacePtr& s, const std::vector<Monomial>& mons, const RatVector& coeffs) {
  SymElement e(s, s->n);
  for (std::size_t i = 0; i < mons.size(); ++i) e.add(mons[i], coeffs[i]);
  return e;
}

}  // namespace detail

// b_[n]-orthogonal projection onto ker(Delta), degree by degree.
inline SymElement project_T(const SymElement& x) {
  const SymSpacePtr& s = x.space();
  if (x.order() != s->n) throw Error("project_T needs an element of Sym^n");
  SymElement out(s, s->n);
  for (const auto& [d, terms] : x.pieces()) {
    auto mons = monomials_of_degree(*s, s->n, d);
    auto dual = monomials_of_degree(*s, s->n, 4 * s->n - d);
    if (mons.size() > kMaxProjectionPiece || dual.size() > kMaxProjectionPiece)
      throw Error("projection piece too large (" + std::to_string(mons.size()) + " monomials)");
    auto k = detail::harmonic_basis(s, mons);
    auto kd = detail::harmonic_basis(s, dual);
    if (k.size() != kd.size()) throw Error("harmonic pieces of complementary degree differ in dimension");
    if (k.empty()) continue;

    std::vector<SymElement> ke, kde;
    for (const auto& v : k) ke.push_back(detail::combine(s, mons, v));
    for (const auto& v : kd) kde.push_back(detail::combine(s, dual, v));
    SymElement xd(s, s->n);
    for (const auto& [m, c] : terms) xd.add(m, c);

    RatMatrix gram(kd.size(), k.size());
    RatVector rhs(kd.size());
    for (std::size_t i = 0; i < kd.size(); ++i) {
      for (std::size_t j = 0; j < k.size(); ++j) gram(i, j) = pairing_bn(kde[i], ke[j]);
      rhs[i] = pairing_bn(kde[i], xd);
    }
    if (sgn(determinant(gram)) == 0) throw Error("degenerate pairing on ker(Delta)");
    RatVector coeffs = solve_linear(gram, rhs).value();
    for (std::size_t j = 0; j < k.size(); ++j) out += coeffs[j] * ke[j];
  }
  return out;
}

// ---------------------------------------------------------------- Todd classes

// (alpha + r_X beta)^n / n!
inline SymElement sqrt_todd_preimage(const SymSpacePtr& s, const Rational& r_X) {
  RatVector v = unit_vector(s->dim(), 0);
  v[s->beta_index()] = r_X;
  return Rational(1) / rational_factorial(static_cast<unsigned long>(s->n)) * sym_power(s, v, s->n);
}

inline SymElement sqrt_todd_preimage(const ExtMukaiSpace& e) { return sqrt_todd_preimage(make_sym_space(e), e.dtype.r_X); }

inline SymElement sqrt_todd_bar(const ExtMukaiSpace& e) { return project_T(sqrt_todd_preimage(e)); }

// (alpha + 2 beta)...(alpha + (n+1) beta)/n! or (alpha + beta)...(alpha + n beta)/n!
inline SymElement todd_preimage(const ExtMukaiSpace& e) {
  int shift = 0;
  switch (e.dtype.family) {
    case Family::K3n:
    case Family::OG10: shift = 1; break;
    case Family::Kumn:
    case Family::OG6: shift = 0; break;
    default: throw Error("Todd class is only known for the built-in families");
  }
  SymSpacePtr s = make_sym_space(e);
  std::vector<RatVector> factors;
  for (int k = 1; k <= e.n(); ++k) {
    RatVector v = unit_vector(s->dim(), 0);
    v[s->beta_index()] = k + shift;
    factors.push_back(v);
  }
  return Rational(1) / rational_factorial(static_cast<unsigned long>(e.n())) * sym_product(s, factors);
}

inline SymElement todd_bar(const ExtMukaiSpace& e) { return project_T(todd_preimage(e)); }

// ---------------------------------------------------------------- integrals

namespace detail {

inline Rational matching_sum(const RatMatrix& b, std::vector<std::size_t>& free) {
  if (free.empty()) return 1;
  std::size_t first = free.back();
  free.pop_back();
  Rational total = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    std::size_t partner = free[i];
    if (sgn(b(first, partner)) == 0) continue;
    free.erase(free.begin() + static_cast<std::ptrdiff_t>(i));
    total += b(first, partner) * matching_sum(b, free);
    free.insert(free.begin() + static_cast<std::ptrdiff_t>(i), partner);
  }
  free.push_back(first);
  return total;
}

}  // namespace detail

// int omega_1 ... omega_2n = c_X sum over perfect matchings of prod b(omega_i, omega_j)
inline Rational integrate(const ExtMukaiSpace& e, const std::vector<RatVector>& omegas) {
  if (omegas.size() != static_cast<std::size_t>(2 * e.n())) throw Error("integrate needs exactly 2n classes");
  RatMatrix b(omegas.size(), omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i].size() != e.b2()) throw Error("class is not in H^2");
    for (std::size_t j = 0; j < omegas.size(); ++j) b(i, j) = e.b(omegas[i], omegas[j]);
  }
  std::vector<std::size_t> free(omegas.size());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = i;
  return e.dtype.c_X * detail::matching_sum(b, free);
}

// Same integral as b_[n](psi(1), psi(omega_1 ... omega_2n)).
inline Rational integrate_via_pairing(const ExtMukaiSpace& e, const std::vector<RatVector>& omegas) {
  if (omegas.size() != static_cast<std::size_t>(2 * e.n())) throw Error("integrate needs exactly 2n classes");
  SymSpacePtr s = make_sym_space(e);
  std::vector<RatVector> amb;
  for (const auto& w : omegas) amb.push_back(e.h2(w));
  return pair_with_SH(amb, psi(s, {}));
}

// sum_k (1/k!) int lambda^k x  where x is an unprojected Sym^n preimage of a class in SH
inline Rational integrate_exp(const RatVector& lambda_ambient, const SymElement& x) {
  const int n = x.space()->n;
  Rational total = 0;
  std::vector<RatVector> ws;
  for (int k = 0; k <= 2 * n; ++k) {
    Rational term = pair_with_SH(ws, x) / rational_factorial(static_cast<unsigned long>(k));
    total += k % 2 ? Rational(-term) : term;  // e_lambda is skew for b_[n]
    ws.push_back(lambda_ambient);
  }
  return total;
}

inline Rational euler_char_line_bundle(const ExtMukaiSpace& e, const RatVector& lambda) {
  return integrate_exp(e.h2(lambda), todd_preimage(e));
}

// int sqrt(td) exp(omega)
inline Rational sqrt_todd_exp_integral(const ExtMukaiSpace& e, const RatVector& omega) {
  return integrate_exp(e.h2(omega), sqrt_todd_preimage(e));
}

}  // namespace extmukai
