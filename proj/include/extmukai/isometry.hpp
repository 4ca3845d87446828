#pragma once

#include <extmukai/exact.hpp>
#include <extmukai/lattice.hpp>

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace extmukai {

struct QuadSpace {
  std::string name;
  RatMatrix gram;
  // Basis is (alpha, H^2..., beta) with b(alpha,beta) = -1: enables b_field.
  bool mukai_layout = false;

  std::size_t dim() const { return gram.rows(); }
  Rational pair(const RatVector& x, const RatVector& y) const { return bilinear(gram, x, y); }
  Rational square(const RatVector& x) const { return bilinear(gram, x, x); }
};

using SpacePtr = std::shared_ptr<const QuadSpace>;

inline SpacePtr make_space(std::string name, RatMatrix gram, bool mukai_layout = false) {
  if (!gram.is_symmetric()) throw Error("gram matrix must be symmetric");
  return std::make_shared<const QuadSpace>(QuadSpace{std::move(name), std::move(gram), mukai_layout});
}

class Isometry {
 public:
  Isometry(SpacePtr space, RatMatrix matrix, std::vector<std::string> word = {})
      : space_(std::move(space)), matrix_(std::move(matrix)), word_(std::move(word)) {
    if (matrix_.rows() != space_->dim() || matrix_.cols() != space_->dim()) throw Error("isometry size mismatch");
    if (matrix_.transpose() * space_->gram * matrix_ != space_->gram) throw Error("matrix is not an isometry");
    determinant_ = extmukai::determinant(matrix_);
    if (determinant_ != 1 && determinant_ != -1) throw Error("isometry with determinant other than +-1");
  }

  const SpacePtr& space() const { return space_; }
  const RatMatrix& matrix() const { return matrix_; }
  const Rational& determinant() const { return determinant_; }
  const std::vector<std::string>& word() const { return word_; }

  RatVector operator()(const RatVector& x) const { return matrix_ * x; }

  // (*this) o h
  Isometry compose(const Isometry& h) const {
    if (space_->gram != h.space_->gram) throw Error("composition of isometries of different spaces");
    std::vector<std::string> w = word_;
    w.insert(w.end(), h.word_.begin(), h.word_.end());
    return Isometry(space_, matrix_ * h.matrix_, std::move(w));
  }

  Isometry inverse() const {
    // g^{-1} = G^{-1} g^T G
    RatMatrix inv = extmukai::inverse(space_->gram) * matrix_.transpose() * space_->gram;
    std::vector<std::string> w;
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) w.push_back(*it + "^-1");
    return Isometry(space_, std::move(inv), std::move(w));
  }

  bool is_identity() const { return matrix_ == RatMatrix::identity(space_->dim()); }

  friend Isometry operator*(const Isometry& a, const Isometry& b) { return a.compose(b); }
  friend bool operator==(const Isometry& a, const Isometry& b) { return a.matrix_ == b.matrix_; }

 private:
  SpacePtr space_;
  RatMatrix matrix_;
  Rational determinant_;
  std::vector<std::string> word_;
};

inline Isometry identity_isometry(const SpacePtr& s) { return Isometry(s, RatMatrix::identity(s->dim()), {}); }

inline Isometry minus_identity(const SpacePtr& s) {
  return Isometry(s, Rational(-1) * RatMatrix::identity(s->dim()), {"-id"});
}

inline Isometry reflection(const SpacePtr& s, const RatVector& v) {
  if (v.size() != s->dim()) throw Error("dimension mismatch");
  Rational q = s->square(v);
  if (sgn(q) == 0) throw Error("reflection along an isotropic vector");
  RatVector gv = s->gram * v;
  RatMatrix m = RatMatrix::identity(s->dim());
  Rational f = Rational(2) / q;
  for (std::size_t i = 0; i < s->dim(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < s->dim(); ++j)
      if (sgn(gv[j]) != 0) m(i, j) -= f * v[i] * gv[j];
  }
  return Isometry(s, std::move(m), {"s" + to_string(v)});
}

inline Isometry eichler_transvection(const SpacePtr& s, const RatVector& e, const RatVector& a) {
  if (e.size() != s->dim() || a.size() != s->dim()) throw Error("dimension mismatch");
  if (sgn(s->square(e)) != 0) throw Error("transvection needs an isotropic e");
  if (sgn(s->pair(e, a)) != 0) throw Error("transvection needs a orthogonal to e");
  const Rational qa = s->square(a);
  RatVector ge = s->gram * e, ga = s->gram * a;
  // v -> v - b(a,v) e + b(e,v) a - 1/2 b(a,a) b(e,v) e
  RatMatrix m = RatMatrix::identity(s->dim());
  for (std::size_t i = 0; i < s->dim(); ++i)
    for (std::size_t j = 0; j < s->dim(); ++j) {
      Rational d = -e[i] * ga[j] + a[i] * ge[j] - qa / 2 * e[i] * ge[j];
      if (sgn(d) != 0) m(i, j) += d;
    }
  return Isometry(s, std::move(m), {"t(" + to_string(e) + ";" + to_string(a) + ")"});
}

// B_lambda(r alpha + mu + s beta) = r alpha + mu + r lambda + (s + b(lambda,mu) + r b(lambda,lambda)/2) beta
inline Isometry b_field(const SpacePtr& s, const RatVector& lambda) {
  if (!s->mukai_layout) throw Error("b_field needs an extended Mukai space");
  const std::size_t n = s->dim();
  if (lambda.size() != n) throw Error("dimension mismatch");
  if (sgn(lambda[0]) != 0 || sgn(lambda[n - 1]) != 0) throw Error("lambda has alpha or beta components");
  RatMatrix m = RatMatrix::identity(n);
  RatVector gl = s->gram * lambda;
  for (std::size_t i = 1; i + 1 < n; ++i) m(i, 0) = lambda[i];
  m(n - 1, 0) = s->square(lambda) / 2;
  for (std::size_t j = 1; j + 1 < n; ++j) m(n - 1, j) = gl[j];
  return Isometry(s, std::move(m), {"B" + to_string(lambda)});
}

// ---------------------------------------------------------------- Cartan-Dieudonne

namespace detail {

inline std::vector<RatVector> perp_within(const SpacePtr& s, const std::vector<RatVector>& w, const RatVector& x) {
  RatMatrix row(1, w.size());
  for (std::size_t i = 0; i < w.size(); ++i) row(0, i) = s->pair(w[i], x);
  std::vector<RatVector> out;
  for (const auto& c : kernel_basis(row)) {
    RatVector y = zero_vector(s->dim());
    for (std::size_t i = 0; i < w.size(); ++i)
      if (sgn(c[i]) != 0) y = y + c[i] * w[i];
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace detail

// Vectors v_1..v_k with g = s_{v_1} o ... o s_{v_k}.
inline std::vector<RatVector> cartan_dieudonne(const Isometry& g) {
  const SpacePtr& s = g.space();
  const std::size_t n = s->dim();
  if (sgn(extmukai::determinant(s->gram)) == 0) throw Error("Cartan-Dieudonne needs a nondegenerate form");
  RatMatrix h = g.matrix();
  std::vector<RatVector> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(unit_vector(n, i));
  std::vector<RatVector> out;
  auto apply_reflection = [&](const RatVector& u) {
    h = reflection(s, u).matrix() * h;
    out.push_back(u);
  };
  while (!w.empty()) {
    bool fixed = true;
    for (const auto& b : w)
      if (h * b != b) {
        fixed = false;
        break;
      }
    if (fixed) break;

    std::vector<RatVector> candidates = w;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        candidates.push_back(w[i] + w[j]);
        candidates.push_back(w[i] - w[j]);
      }
    std::optional<RatVector> chosen;
    for (const auto& x : candidates) {
      if (sgn(s->square(x)) == 0) continue;
      RatVector u = h * x - x;
      if (is_zero(u) || sgn(s->square(u)) != 0) {
        chosen = x;
        if (!is_zero(u)) apply_reflection(u);
        break;
      }
    }
    if (!chosen) {
      // every anisotropic candidate x has hx - x isotropic: hx + x is then anisotropic
      for (const auto& x : candidates) {
        if (sgn(s->square(x)) == 0) continue;
        RatVector y = h * x;
        apply_reflection(y + x);
        apply_reflection(x);
        chosen = x;
        break;
      }
    }
    if (!chosen) throw Error("Cartan-Dieudonne: no anisotropic vector in a nondegenerate subspace");
    w = detail::perp_within(s, w, *chosen);
  }
  return out;
}

// Convention: spin(s_v) = +1 iff b(v,v) < 0.
inline int spinor_norm(const Isometry& g) {
  int sign = 1;
  for (const auto& v : cartan_dieudonne(g))
    if (sgn(g.space()->square(v)) > 0) sign = -sign;
  return sign;
}

// ---------------------------------------------------------------- lattices

struct PreservationReport {
  bool preserved = true;
  std::optional<RatVector> witness;  // ambient lattice vector whose image (under g or g^-1) leaves L
  std::string direction;             // "forward" or "inverse"
  explicit operator bool() const { return preserved; }
};

inline PreservationReport lattice_preservation(const Isometry& g, const QuadLattice& l) {
  if (l.ambient_dim() != g.space()->dim()) throw Error("dimension mismatch");
  Isometry gi = g.inverse();
  for (const Isometry* map : std::array<const Isometry*, 2>{&g, &gi})
    for (std::size_t i = 0; i < l.rank(); ++i) {
      RatVector b = l.basis_vector(i);
      if (!contains(l, (*map)(b))) return {false, b, std::string(map == &g ? "forward" : "inverse")};
    }
  return {};
}

inline bool preserves_lattice(const Isometry& g, const QuadLattice& l) { return lattice_preservation(g, l).preserved; }

enum class DiscKind { identity, minus_identity, other };

inline const char* to_string(DiscKind k) {
  switch (k) {
    case DiscKind::identity: return "identity";
    case DiscKind::minus_identity: return "minus_identity";
    default: return "other";
  }
}

struct DiscAction {
  DiscKind kind = DiscKind::identity;
  std::optional<RatVector> witness;  // dual vector (ambient) with g(y) != +-y mod L
};

inline DiscAction disc_action(const Isometry& g, const QuadLattice& l) {
  if (!preserves_lattice(g, l)) throw Error("isometry does not preserve the lattice");
  DiscGroup d = discriminant_group(l);
  std::optional<RatVector> not_plus, not_minus;
  for (const auto& y : d.generators) {
    RatVector yy = to_ambient(l, y);
    RatVector gy = g(yy);
    bool plus = contains(l, gy - yy);
    bool minus = contains(l, gy + yy);
    if (!plus && !minus) return {DiscKind::other, yy};
    if (!plus && !not_plus) not_plus = yy;
    if (!minus && !not_minus) not_minus = yy;
  }
  if (!not_plus) return {DiscKind::identity, std::nullopt};
  if (!not_minus) return {DiscKind::minus_identity, std::nullopt};
  return {DiscKind::other, *not_plus + *not_minus};
}

// ---------------------------------------------------------------- Eichler transport

struct HyperbolicPair {
  RatVector e, f;  // ambient coordinates, b(e,f) = 1, e and f isotropic
};

struct Transvection {
  RatVector e, a;
  std::string str() const { return "t(" + to_string(e) + ";" + to_string(a) + ")"; }
};

inline RatVector apply_transvection(const QuadSpace& s, const Transvection& t, const RatVector& v) {
  Rational bav = s.pair(t.a, v), bev = s.pair(t.e, v);
  if (sgn(bav) == 0 && sgn(bev) == 0) return v;
  Rational c = -bav - s.square(t.a) / 2 * bev;
  return v + (c * t.e) + (bev * t.a);
}

inline Isometry word_isometry(const SpacePtr& s, const std::vector<Transvection>& word) {
  Isometry g = identity_isometry(s);
  // word[0] is applied first
  for (const auto& t : word) g = eichler_transvection(s, t.e, t.a) * g;
  return g;
}

struct TransportResult {
  bool found = false;
  std::string reason;  // empty when found; one of square, primitivity, disc class, lattice, internal
  std::vector<Transvection> word;
};

namespace detail {

struct EichlerFrame {
  const QuadSpace* s;
  HyperbolicPair u1, u2;
  std::vector<RatVector> m_basis;  // complement of U1 + U2 in L (ambient)
  RatMatrix m_gram;

  // (x1, y1, x2, y2, m) with v = x1 e1 + y1 f1 + x2 e2 + y2 f2 + m
  struct Split {
    Integer x1, y1, x2, y2;
    RatVector m;
  };
  Split split(const RatVector& v) const {
    Split p;
    p.x1 = s->pair(v, u1.f).get_num();
    p.y1 = s->pair(v, u1.e).get_num();
    p.x2 = s->pair(v, u2.f).get_num();
    p.y2 = s->pair(v, u2.e).get_num();
    p.m = v - Rational(p.x1) * u1.e - Rational(p.y1) * u1.f - Rational(p.x2) * u2.e - Rational(p.y2) * u2.f;
    return p;
  }
  // coordinates of m in the complement basis
  RatVector m_coords(const RatVector& m) const {
    auto c = solve_linear(RatMatrix::from_columns(m_basis, s->dim()), m);
    if (!c) throw Error("eichler frame: complement coordinates failed");
    return *c;
  }
};

class Reducer {
 public:
  Reducer(const EichlerFrame& f, RatVector v) : f_(f), v_(std::move(v)) {}

  void step(const RatVector& e, const RatVector& a) {
    if (is_zero(a)) return;
    Transvection t{e, a};
    v_ = apply_transvection(*f_.s, t, v_);
    word_.push_back(std::move(t));
  }
  // Matrix A = [[x1, x2], [-y2, y1]] under SL2 x SL2 moves.
  void row1_add(const Integer& k) { step(f_.u1.e, Rational(k) * f_.u2.e); }   // row1 += k row2
  void row2_add(const Integer& k) { step(f_.u1.f, Rational(-k) * f_.u2.f); }  // row2 += k row1
  void col1_add(const Integer& k) { step(f_.u1.e, Rational(-k) * f_.u2.f); }  // col1 += k col2
  void col2_add(const Integer& k) { step(f_.u1.f, Rational(k) * f_.u2.e); }   // col2 += k col1
  void swap_rows() { row1_add(1), row2_add(-1), row1_add(1); }                // (r1, r2) -> (r2, -r1)
  void swap_cols() { col1_add(1), col2_add(-1), col1_add(1); }                // (c1, c2) -> (c2, -c1)

  std::array<Integer, 4> a() const {
    auto p = f_.split(v_);
    return {p.x1, p.x2, -p.y2, p.y1};
  }

  // Euclid with the pivot kept at A22, until A = diag(k, g) with g | k.
  void diagonalize() {
    Integer q;
    for (int guard = 0; guard < 100000; ++guard) {
      auto m = a();
      if (sgn(m[0]) == 0 && sgn(m[1]) == 0 && sgn(m[2]) == 0 && sgn(m[3]) == 0) return;
      // smallest nonzero entry, ties to A22 then lowest index
      int best = -1;
      for (int i : {3, 0, 1, 2})
        if (sgn(m[i]) != 0 && (best < 0 || abs(m[i]) < abs(m[best]))) best = i;
      if (best == 0) swap_rows(), swap_cols();
      else if (best == 1) swap_rows();
      else if (best == 2) swap_cols();
      m = a();
      const Integer& p = m[3];
      bool clean = true;
      if (sgn(m[1]) != 0) {  // A12 via row1 += k row2
        mpz_tdiv_q(q.get_mpz_t(), m[1].get_mpz_t(), p.get_mpz_t());
        if (sgn(q) != 0) row1_add(-q);
        clean = false;
      }
      m = a();
      if (sgn(m[2]) != 0) {  // A21 via col1 += k col2
        mpz_tdiv_q(q.get_mpz_t(), m[2].get_mpz_t(), p.get_mpz_t());
        if (sgn(q) != 0) col1_add(-q);
        clean = false;
      }
      m = a();
      if (sgn(m[1]) != 0 || sgn(m[2]) != 0) continue;
      if (!clean) continue;
      if (sgn(m[0]) != 0 && !mpz_divisible_p(m[0].get_mpz_t(), m[3].get_mpz_t())) {
        row2_add(1);  // A21 <- A11, retry
        continue;
      }
      return;
    }
    throw Error("eichler transport: reduction did not terminate");
  }

  // Bring v to x e1 + d f1 + m_can; returns the canonical vector.
  RatVector canonicalize(const Integer& d) {
    Integer g = 0;
    for (const auto& x : a()) g = gcd(g, x);
    if (g != d) fold();
    diagonalize();
    if (sgn(a()[3]) < 0) swap_rows(), swap_rows();  // -I on rows
    auto m = a();
    if (m[3] != d || sgn(m[1]) != 0 || sgn(m[2]) != 0) throw Error("eichler transport: unexpected normal form");
    auto p = f_.split(v_);
    RatVector mu = (Rational(1) / Rational(d)) * f_.m_coords(p.m);
    RatVector shift = zero_vector(f_.s->dim());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      Integer fl = floor_of(mu[i]);
      if (sgn(fl) != 0) shift = shift - Rational(fl) * f_.m_basis[i];
    }
    step(f_.u1.e, shift);
    return v_;
  }

  const std::vector<Transvection>& word() const { return word_; }
  const RatVector& vector() const { return v_; }

 private:
  // Move the gcd of the complement pairings into A12 (needs A21 = 0, which diagonalize provides).
  void fold() {
    diagonalize();
    auto p = f_.split(v_);
    std::vector<Integer> pair;
    for (const auto& b : f_.m_basis) pair.push_back(f_.s->pair(b, p.m).get_num());
    // extended gcd combination a = sum c_i b_i with b(a, m) = gcd
    Integer g = 0;
    std::vector<Integer> coef(pair.size(), 0);
    for (std::size_t i = 0; i < pair.size(); ++i) {
      if (sgn(pair[i]) == 0) continue;
      Integer ng, s, t;
      mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), pair[i].get_mpz_t());
      for (auto& c : coef) c *= s;
      coef[i] = t;
      g = ng;
    }
    if (sgn(g) == 0) return;
    RatVector a = zero_vector(f_.s->dim());
    for (std::size_t i = 0; i < coef.size(); ++i)
      if (sgn(coef[i]) != 0) a = a + Rational(coef[i]) * f_.m_basis[i];
    step(f_.u2.e, a);  // A12 -= g (A21 = 0 here)
  }

  const EichlerFrame& f_;
  RatVector v_;
  std::vector<Transvection> word_;
};

inline std::vector<Transvection> invert_word(const std::vector<Transvection>& w) {
  std::vector<Transvection> inv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->e, -it->a});
  return inv;
}

}  // namespace detail

inline TransportResult eichler_transport(const SpacePtr& s, const QuadLattice& l, const HyperbolicPair& u1,
                                         const HyperbolicPair& u2, const RatVector& v, const RatVector& w) {
  TransportResult r;
  auto fail = [&](std::string why) {
    r.reason = std::move(why);
    return r;
  };
  for (const auto* u : {&u1, &u2})
    if (!contains(l, u->e) || !contains(l, u->f) || sgn(s->square(u->e)) != 0 || sgn(s->square(u->f)) != 0 ||
        s->pair(u->e, u->f) != 1)
      throw Error("distinguished planes must be hyperbolic planes in the lattice");
  if (sgn(s->pair(u1.e, u2.e)) != 0 || sgn(s->pair(u1.e, u2.f)) != 0 || sgn(s->pair(u1.f, u2.e)) != 0 ||
      sgn(s->pair(u1.f, u2.f)) != 0)
    throw Error("distinguished planes must be orthogonal");
  auto cv = lattice_coordinates(l, v), cw = lattice_coordinates(l, w);
  if (!cv || !cw) return fail("lattice");
  if (is_zero(v) || is_zero(w)) return fail("primitivity");
  if (s->square(v) != s->square(w)) return fail("square");
  if (!is_primitive(l, *cv) || !is_primitive(l, *cw)) return fail("primitivity");
  Integer dv = divisibility(l, *cv), dw = divisibility(l, *cw);
  if (dv != dw || !contains(l, (Rational(1) / Rational(dv)) * (v - w))) return fail("disc class");
  if (v == w) {
    r.found = true;
    return r;
  }

  // short words first: t(e, +-u) with e in one plane, u in the other
  std::vector<Transvection> moves;
  for (const auto& [p, q] : {std::pair{&u1, &u2}, std::pair{&u2, &u1}})
    for (const auto* e : {&p->e, &p->f})
      for (const auto& u : {q->e, q->f, q->e - q->f, q->e + q->f})
        for (int sign : {1, -1}) moves.push_back({*e, Rational(sign) * u});
  std::map<RatVector, std::vector<Transvection>> from_w{{w, {}}};
  for (const auto& t : moves) from_w.emplace(apply_transvection(*s, t, w), std::vector<Transvection>{t});
  std::vector<std::pair<RatVector, std::vector<Transvection>>> frontier{{v, {}}};
  for (int depth = 0; depth <= 2; ++depth) {
    for (const auto& [x, word] : frontier) {
      auto hit = from_w.find(x);
      if (hit != from_w.end()) {
        r.word = word;
        for (const auto& t : detail::invert_word(hit->second)) r.word.push_back(t);
        r.found = true;
        break;
      }
    }
    if (r.found || depth == 2) break;
    std::vector<std::pair<RatVector, std::vector<Transvection>>> next;
    for (const auto& [x, word] : frontier)
      for (const auto& t : moves) {
        auto w2 = word;
        w2.push_back(t);
        next.emplace_back(apply_transvection(*s, t, x), std::move(w2));
      }
    frontier = std::move(next);
  }

  if (!r.found) {
    detail::EichlerFrame frame{s.get(), u1, u2, {}, {}};
    QuadLattice m = orthogonal_complement(l, std::vector<Ambient>{{u1.e}, {u1.f}, {u2.e}, {u2.f}});
    frame.m_basis = ambient_basis(m);
    frame.m_gram = m.gram;
    detail::Reducer rv(frame, v), rw(frame, w);
    RatVector canon_v = rv.canonicalize(dv), canon_w = rw.canonicalize(dw);
    if (canon_v != canon_w) return fail("internal: canonical forms differ");
    r.word = rv.word();
    for (const auto& t : detail::invert_word(rw.word())) r.word.push_back(t);
    r.found = true;
  }

  RatVector x = v;
  for (const auto& t : r.word) x = apply_transvection(*s, t, x);
  if (x != w) throw Error("eichler transport: word verification failed");
  return r;
}

// ---------------------------------------------------------------- bounded generation

inline constexpr int kMaxGenerationDepth = 12;
inline constexpr std::size_t kMaxGeneratedElements = 20000;

// All distinct products of at most `depth` generators (identity included), keyed by matrix.
inline std::vector<Isometry> generate_bounded(const std::vector<Isometry>& gens, int depth) {
  if (depth < 0 || depth > kMaxGenerationDepth) throw Error("generation depth cap exceeded");
  if (gens.empty()) throw Error("no generators");
  const SpacePtr& s = gens.front().space();
  for (const auto& g : gens)
    if (g.space()->gram != s->gram) throw Error("generators on different spaces");
  std::map<RatMatrix, Isometry> seen;
  Isometry id = identity_isometry(s);
  seen.emplace(id.matrix(), id);
  std::vector<Isometry> frontier{id};
  for (int d = 0; d < depth; ++d) {
    std::vector<Isometry> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Isometry y = x * g;
        if (seen.count(y.matrix())) continue;
        seen.emplace(y.matrix(), y);
        next.push_back(y);
        if (seen.size() > kMaxGeneratedElements) throw Error("generation element cap exceeded");
      }
    frontier = std::move(next);
  }
  std::vector<Isometry> out;
  for (auto& [m, g] : seen) out.push_back(g);
  return out;
}

}  // namespace extmukai
