#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace extmukai {

using Rational = mpq_class;
using Integer = mpz_class;
using RatVector = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational parse_rational(std::string_view s) {
  std::string t(s);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty()) throw Error("malformed rational: empty string");
  auto slash = t.find('/');
  auto parse_int = [&](const std::string& part) {
    Integer z;
    std::string body = part;
    if (!body.empty() && body[0] == '+') body.erase(0, 1);
    if (body.empty() || body == "-" || z.set_str(body, 10) != 0)
      throw Error("malformed rational: '" + std::string(s) + "'");
    return z;
  };
  if (slash == std::string::npos) return Rational(parse_int(t));
  Integer p = parse_int(t.substr(0, slash));
  Integer q = parse_int(t.substr(slash + 1));
  if (q == 0) throw Error("malformed rational: zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Rational rational_factorial(unsigned long n) { return Rational(factorial(n)); }

// a/b in lowest terms (mpq_class(a, b) does not canonicalize).
inline Rational frac(long a, long b) {
  if (b == 0) throw Error("division by zero");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline Rational rpow(const Rational& x, unsigned long k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), k);
  return r;
}

// ---------------------------------------------------------------- vectors

inline RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

inline RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline RatVector ints(std::initializer_list<long> xs) {
  RatVector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVector operator+(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("vector size mismatch");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("vector size mismatch");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVector operator-(const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline RatVector operator*(const Rational& s, const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

inline Integer content(const RatVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (!is_integer(x)) throw Error("integrality required");
    g = gcd(g, x.get_num());
  }
  return g;
}

inline Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

inline std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------- matrices

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows = 0) {
    return from_rows(cols, rows).transpose();
  }

  static RatMatrix diagonal(const RatVector& d) {
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const {
    return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  RatVector column(std::size_t j) const {
    RatVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<RatVector> columns() const {
    std::vector<RatVector> cs;
    for (std::size_t j = 0; j < cols_; ++j) cs.push_back(column(j));
    return cs;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_integral() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return extmukai::is_integer(x); });
  }
  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  const std::vector<Rational>& entries() const { return data_; }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }
  // Total order for use as a set key.
  friend bool operator<(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
    RatMatrix c(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& bkj = b(k, j);
          if (sgn(bkj) == 0) continue;
          t = aik * bkj;
          c(i, j) += t;
        }
      }
    return c;
  }

  friend RatVector operator*(const RatMatrix& a, const RatVector& v) {
    if (a.cols_ != v.size()) throw Error("matrix-vector size mismatch");
    RatVector r = zero_vector(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0) r[i] += a(i, j) * v[j];
    return r;
  }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum size mismatch");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference size mismatch");
    RatMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  friend RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << "]";
  }
  return os << "]";
}

// Block diagonal sum.
inline RatMatrix direct_sum(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

// x^T G y
inline Rational bilinear(const RatMatrix& g, const RatVector& x, const RatVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (sgn(g(i, j)) != 0 && sgn(y[j]) != 0) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

// ---------------------------------------------------------------- Gaussian elimination

struct Echelon {
  RatMatrix reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline Echelon rref(RatMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

inline Rational determinant(RatMatrix m) {
  if (!m.square()) throw Error("determinant of a non-square matrix");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j)
        if (sgn(m(c, j)) != 0) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw Error("singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

// Basis of the right kernel {x : m x = 0}.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some solution of A x = b, or nullopt when the system is inconsistent.
inline std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw Error("solve_linear size mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = rref(std::move(aug));
  RatVector x = zero_vector(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

// ---------------------------------------------------------------- integer normal forms

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix to_int_matrix(const RatMatrix& m) {
  if (!m.is_integral()) throw Error("integrality required");
  IntMatrix a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num();
  return a;
}

inline RatMatrix to_rat_matrix(const IntMatrix& a, std::size_t cols) {
  RatMatrix m(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(a[i][j]);
  return m;
}

struct SmithForm {
  RatMatrix U, D, V;  // U * m * V == D
  std::vector<Integer> invariants() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (sgn(D(i, i)) != 0) d.push_back(D(i, i).get_num());
    return d;
  }
};

namespace detail {

struct SmithWork {
  IntMatrix a, u, v;
  std::size_t m, n;
  bool track_u;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (track_u) std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t k = 0; k < n; ++k) a[i][k] += q * a[j][k];
    if (track_u)
      for (std::size_t k = 0; k < m; ++k) u[i][k] += q * u[j][k];
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t k = 0; k < m; ++k) a[k][i] += q * a[k][j];
    for (std::size_t k = 0; k < n; ++k) v[k][i] += q * v[k][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    if (track_u)
      for (auto& x : u[i]) x = -x;
  }
};

inline void smith_in_place(SmithWork& w) {
  const std::size_t m = w.m, n = w.n;
  Integer q;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block as pivot
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (sgn(w.a[i][j]) != 0 && (pi == m || abs(w.a[i][j]) < abs(w.a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return;
      if (pi != t) w.swap_rows(pi, t);
      if (pj != t) w.swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(w.a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
        w.add_row(i, t, -q);
        if (sgn(w.a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(w.a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
        w.add_col(j, t, -q);
        if (sgn(w.a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(w.a[i][j].get_mpz_t(), w.a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.add_row(t, bad, 1);
    }
    if (sgn(w.a[t][t]) < 0) w.negate_row(t);
  }
}

inline IntMatrix int_identity(std::size_t n) {
  IntMatrix id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace detail

inline SmithForm smith_normal_form(const RatMatrix& m) {
  detail::SmithWork w{to_int_matrix(m), detail::int_identity(m.rows()), detail::int_identity(m.cols()),
                      m.rows(), m.cols(), true};
  detail::smith_in_place(w);
  return SmithForm{to_rat_matrix(w.u, m.rows()), to_rat_matrix(w.a, m.cols()), to_rat_matrix(w.v, m.cols())};
}

// Basis (as vectors) of the integer kernel {x in Z^n : m x = 0}; saturated by construction.
inline std::vector<RatVector> integer_kernel(const RatMatrix& m) {
  RatMatrix scaled = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = common_denominator(m.row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) scaled(i, j) *= d;
  }
  detail::SmithWork w{to_int_matrix(scaled), {}, detail::int_identity(m.cols()), m.rows(), m.cols(), false};
  detail::smith_in_place(w);
  std::size_t r = 0;
  while (r < std::min(w.m, w.n) && sgn(w.a[r][r]) != 0) ++r;
  std::vector<RatVector> ker;
  for (std::size_t j = r; j < m.cols(); ++j) {
    RatVector col(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) col[i] = Rational(w.v[i][j]);
    ker.push_back(std::move(col));
  }
  return ker;
}

// Row Hermite reduction of integer row vectors; returns a Z-basis of their span.
inline std::vector<RatVector> hermite_basis(std::vector<std::vector<Integer>> rows, std::size_t n) {
  std::size_t r = 0;
  Integer q;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    for (;;) {
      std::size_t p = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (sgn(rows[i][c]) != 0 && (p == rows.size() || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
      if (p == rows.size()) break;
      std::swap(rows[p], rows[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (sgn(rows[i][c]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t k = c; k < n; ++k) rows[i][k] -= q * rows[r][k];
        if (sgn(rows[i][c]) != 0) done = false;
      }
      if (done) {
        if (sgn(rows[r][c]) < 0)
          for (auto& x : rows[r]) x = -x;
        // reduce entries above the pivot
        for (std::size_t i = 0; i < r; ++i) {
          mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
          if (sgn(q) != 0)
            for (std::size_t k = c; k < n; ++k) rows[i][k] -= q * rows[r][k];
        }
        ++r;
        break;
      }
    }
  }
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < r; ++i) {
    RatVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = Rational(rows[i][k]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Z-basis of the group generated by rational vectors.
inline std::vector<RatVector> lattice_basis(const std::vector<RatVector>& gens, std::size_t n) {
  Integer d = 1;
  for (const auto& g : gens) d = lcm(d, common_denominator(g));
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : gens) {
    if (g.size() != n) throw Error("generator size mismatch");
    std::vector<Integer> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = Rational(g[k] * d).get_num();
    rows.push_back(std::move(row));
  }
  auto basis = hermite_basis(std::move(rows), n);
  Rational inv = Rational(1) / Rational(d);
  for (auto& b : basis) b = inv * b;
  return basis;
}

}  // namespace extmukai
