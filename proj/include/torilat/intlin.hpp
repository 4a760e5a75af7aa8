#pragma once

// Exact integer matrices and the Hermite/Smith machinery built on them.
//
// Entries are 64-bit and every arithmetic step is overflow-checked: a result
// that does not fit raises OverflowError instead of wrapping.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "torilat/errors.hpp"

namespace torilat {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

/// a - q*b
inline Int sub_mul(Int a, Int q, Int b) { return sub(a, mul(q, b)); }

/// Floor division, b != 0.
inline Int floor_div(Int a, Int b) {
  assert(b != 0);
  if (b == -1) return neg(a);
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Residue of a modulo m in [0, m), m > 0.
inline Int mod(Int a, Int m) {
  assert(m > 0);
  Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace checked

/// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, checked::sub_mul(old_r, q, r));
    std::tie(old_s, s) = std::make_pair(s, checked::sub_mul(old_s, q, s));
    std::tie(old_t, t) = std::make_pair(t, checked::sub_mul(old_t, q, t));
  }
  if (old_r < 0) return {checked::neg(old_r), checked::neg(old_s), checked::neg(old_t)};
  return {old_r, old_s, old_t};
}

inline Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, checked::abs(x));
  return g;
}

inline Int lcm_checked(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked::mul(a / std::gcd(a, b), b);
}

inline Int dot(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

/// Dense row-major integer matrix with fixed dimensions.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> init) : rows_(init.size()) {
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      require(row.size() == cols_, "IntMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == m.cols_, "IntMatrix: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty = 0) {
    return from_rows(cols, rows_if_empty).transpose();
  }

  static IntMatrix diagonal(const IntVector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  Int operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  Int at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw ValidationError("IntMatrix: index out of range");
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const {
    assert(i < rows_);
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntVector column(std::size_t j) const {
    assert(j < cols_);
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<IntVector> row_list() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  std::vector<IntVector> column_list() const {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Int x) { return x == 0; });
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations; used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = checked::neg((*this)(a, j));
  }
  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = checked::neg((*this)(i, a));
  }
  /// row[dst] -= q * row[src]
  void row_sub_mul(std::size_t dst, Int q, std::size_t src) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) = checked::sub_mul((*this)(dst, j), q, (*this)(src, j));
  }
  /// col[dst] -= q * col[src]
  void col_sub_mul(std::size_t dst, Int q, std::size_t src) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) = checked::sub_mul((*this)(i, dst), q, (*this)(i, src));
  }
  /// (row a, row b) <- (x*a + y*b, u*a + v*b)
  void mix_rows(std::size_t a, std::size_t b, Int x, Int y, Int u, Int v) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Int ra = (*this)(a, j), rb = (*this)(b, j);
      (*this)(a, j) = checked::add(checked::mul(x, ra), checked::mul(y, rb));
      (*this)(b, j) = checked::add(checked::mul(u, ra), checked::mul(v, rb));
    }
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.rows(), "matrix product: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = checked::add(c(i, j), checked::mul(aik, b(k, j)));
    }
  return c;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& v) {
  require(a.cols() == v.size(), "matrix-vector product: dimension mismatch");
  IntVector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = checked::add(out[i], checked::mul(a(i, j), v[j]));
  return out;
}

inline IntMatrix scaled(const IntMatrix& m, Int s) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = checked::mul(s, m(i, j));
  return out;
}

/// [a | b]
inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  require(a.rows() == b.rows(), "hcat: row count mismatch");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline IntMatrix select_rows(const IntMatrix& m, std::size_t begin, std::size_t end) {
  assert(begin <= end && end <= m.rows());
  IntMatrix out(end - begin, m.cols());
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i - begin, j) = m(i, j);
  return out;
}

inline IntMatrix select_columns(const IntMatrix& m, const std::vector<std::size_t>& idx) {
  IntMatrix out(m.rows(), idx.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = m(i, idx[k]);
  return out;
}

inline IntMatrix reverse_columns(const IntMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, m.cols() - 1 - j) = m(i, j);
  return out;
}

inline IntMatrix reverse_rows(const IntMatrix& m) { return reverse_columns(m.transpose()).transpose(); }

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

struct HNFResult {
  IntMatrix H;
  IntMatrix U;
};

/// Row-style Hermite normal form: U*M = H with U unimodular, H in row echelon
/// form with positive pivots and entries above each pivot in [0, pivot).
inline HNFResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t pr = 0;
  for (std::size_t c = 0; c < h.cols() && pr < h.rows(); ++c) {
    for (std::size_t i = pr + 1; i < h.rows(); ++i) {
      Int b = h(i, c);
      if (b == 0) continue;
      Int a = h(pr, c);
      auto [g, x, y] = ext_gcd(a, b);
      Int u2 = checked::neg(b / g), v2 = a / g;
      h.mix_rows(pr, i, x, y, u2, v2);
      u.mix_rows(pr, i, x, y, u2, v2);
    }
    if (h(pr, c) == 0) continue;
    if (h(pr, c) < 0) {
      h.negate_row(pr);
      u.negate_row(pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      Int q = checked::floor_div(h(i, c), h(pr, c));
      h.row_sub_mul(i, q, pr);
      u.row_sub_mul(i, q, pr);
    }
    ++pr;
  }
  return {std::move(h), std::move(u)};
}

struct SNFResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  /// Diagonal of S (length min(rows, cols)).
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
  std::size_t rank() const {
    auto d = diagonal();
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](Int x) { return x != 0; }));
  }
};

/// Smith normal form: U*M*V = S, S diagonal, nonnegative, each entry dividing the next.
inline SNFResult snf(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t diag = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = 0, bj = 0;
      Int best = 0;
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
          Int a = checked::abs(s(i, j));
          if (a != 0 && (best == 0 || a < best)) {
            best = a;
            bi = i;
            bj = j;
          }
        }
      if (best == 0) break;
      s.swap_rows(t, bi);
      u.swap_rows(t, bi);
      s.swap_cols(t, bj);
      v.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        Int q = checked::floor_div(s(i, t), s(t, t));
        s.row_sub_mul(i, q, t);
        u.row_sub_mul(i, q, t);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        Int q = checked::floor_div(s(t, j), s(t, t));
        s.col_sub_mul(j, q, t);
        v.col_sub_mul(j, q, t);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < s.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.row_sub_mul(t, -1, i);
            u.row_sub_mul(t, -1, i);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(s), std::move(v)};
}

inline std::size_t rank(const IntMatrix& m) { return snf(m).rank(); }

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
  require(m.rows() == m.cols(), "determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = checked::sub(checked::mul(a(i, j), a(k, k)), checked::mul(a(i, k), a(k, j))) / prev;
    prev = a(k, k);
  }
  return checked::mul(sign, a(n - 1, n - 1));
}

/// Columns of the result form the column-style Hermite basis of the span of
/// the columns of b (zero columns dropped). Canonical: equal spans give equal
/// matrices.
inline IntMatrix column_hermite_basis(const IntMatrix& b) {
  IntMatrix h = hnf(b.transpose()).H;
  std::size_t nz = 0;
  while (nz < h.rows()) {
    IntVector row = h.row(nz);
    if (std::all_of(row.begin(), row.end(), [](Int x) { return x == 0; })) break;
    ++nz;
  }
  return select_rows(h, 0, nz).transpose();
}

/// Canonical basis whose pivots sit on the last nonzero coordinate of each
/// vector: Hermite form taken with coordinates read right to left. Columns are
/// ordered by ascending pivot coordinate. This is the basis reported for
/// kernels, since it keeps the early coordinates as the free ones.
inline IntMatrix trailing_hermite_basis(const IntMatrix& b) {
  IntMatrix h = column_hermite_basis(reverse_rows(b));
  return reverse_columns(reverse_rows(h));
}

/// Basis (as columns) of {x in Z^cols : M x = 0}, in trailing Hermite form.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  SNFResult r = snf(m);
  const std::size_t rk = r.rank();
  std::vector<std::size_t> idx;
  for (std::size_t j = rk; j < m.cols(); ++j) idx.push_back(j);
  IntMatrix k = select_columns(r.V, idx);
  if (k.cols() == 0) return k;
  return trailing_hermite_basis(k);
}

/// True iff the columns of b1 and b2 span the same subgroup of Z^rows.
inline bool lattice_equal(const IntMatrix& b1, const IntMatrix& b2) {
  require(b1.rows() == b2.rows(), "lattice_equal: ambient dimension mismatch");
  return column_hermite_basis(b1) == column_hermite_basis(b2);
}

struct CokernelStructure {
  std::size_t free_rank = 0;
  IntVector invariant_factors;  // each > 1, divisibility chain
};

/// Structure of Z^rows / columnspan(M).
inline CokernelStructure cokernel_structure(const IntMatrix& m) {
  SNFResult r = snf(m);
  CokernelStructure out;
  out.free_rank = m.rows() - r.rank();
  for (Int d : r.diagonal())
    if (d > 1) out.invariant_factors.push_back(d);
  return out;
}

/// Reduces vectors modulo a lattice to a canonical coset representative.
/// Two vectors reduce to the same result iff their difference lies in the lattice.
class LatticeReducer {
 public:
  explicit LatticeReducer(const IntMatrix& basis_columns) : dim_(basis_columns.rows()) {
    IntMatrix h = hnf(basis_columns.transpose()).H;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      IntVector row = h.row(i);
      auto it = std::find_if(row.begin(), row.end(), [](Int x) { return x != 0; });
      if (it == row.end()) break;
      pivots_.push_back(static_cast<std::size_t>(it - row.begin()));
      rows_.push_back(std::move(row));
    }
  }

  std::size_t rank() const { return rows_.size(); }

  IntVector reduce(IntVector v) const {
    require(v.size() == dim_, "LatticeReducer: dimension mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      Int q = checked::floor_div(v[p], rows_[i][p]);
      if (q == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] = checked::sub_mul(v[j], q, rows_[i][j]);
    }
    return v;
  }

  bool contains(const IntVector& v) const {
    IntVector r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Int x) { return x == 0; });
  }

 private:
  std::size_t dim_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace torilat
