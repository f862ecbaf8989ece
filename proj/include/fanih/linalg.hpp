#pragma once

// Exact dense linear algebra over Q.  Matrices in this project are small
// (a few hundred rows at most) but very sparse, so elimination skips zero
// entries aggressively.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fanih/error.hpp"

namespace fanih {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline Rational parse_rational(const std::string& text) {
  Rational value;
  std::string trimmed;
  for (char c : text) {
    if (c != ' ' && c != '\t') trimmed.push_back(c);
  }
  if (trimmed.empty() || value.set_str(trimmed, 10) != 0) {
    throw Error(ErrorKind::Parse, "not a rational number: '" + text + "'");
  }
  if (value.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

inline std::string format_rational(const Rational& value) { return value.get_str(10); }

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  Vector apply(const Vector& v) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        const Rational& a = (*this)(r, c);
        if (sgn(a) != 0 && sgn(v[c]) != 0) out[r] += a * v[c];
      }
    }
    return out;
  }

  Matrix& operator+=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (sgn(other.data_[i]) != 0) data_[i] += other.data_[i];
    }
    return *this;
  }

  Matrix& operator-=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (sgn(other.data_[i]) != 0) data_[i] -= other.data_[i];
    }
    return *this;
  }

  Matrix& operator*=(const Rational& s) {
    for (auto& x : data_) {
      if (sgn(x) != 0) x *= s;
    }
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& bkj = b(k, j);
          if (sgn(bkj) != 0) out(i, j) += aik * bkj;
        }
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    for (std::size_t r = 0; r < block.rows_; ++r) {
      for (std::size_t c = 0; c < block.cols_; ++c) (*this)(r0 + r, c0 + c) = block(r, c);
    }
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    }
    return out;
  }

  Matrix select_rows(const std::vector<std::size_t>& which) const {
    Matrix out(which.size(), cols_);
    for (std::size_t r = 0; r < which.size(); ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(which[r], c);
    }
    return out;
  }

  Matrix select_columns(const std::vector<std::size_t>& which) const {
    Matrix out(rows_, which.size());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < which.size(); ++c) out(r, c) = (*this)(r, which[c]);
    }
    return out;
  }

 private:
  void check_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw std::invalid_argument("matrix sum: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.cols() > 0 && p.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    out.set_block(0, c0, p);
    c0 += p.cols();
  }
  return out;
}

inline Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.rows() > 0 && p.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    out.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return out;
}

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RowEchelon rref(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(m(i, c)) != 0) {
        p = i;
        break;
      }
    }
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(r, j)) != 0) {
        m(r, j) *= inv;
        support.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational factor = m(i, c);
      for (std::size_t j : support) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return rref(m.transpose()).pivots.size();
  return rref(m).pivots.size();
}

/// Kernel basis in normalized form: column k has a 1 at free_columns[k] and
/// zeros at every other free column, so the coordinates of any kernel vector
/// in this basis are its entries at the free columns.
struct Kernel {
  Matrix basis;
  std::vector<std::size_t> free_columns;

  std::size_t dim() const noexcept { return free_columns.size(); }

  Vector coordinates(const Vector& v) const {
    Vector out(free_columns.size());
    for (std::size_t k = 0; k < free_columns.size(); ++k) out[k] = v[free_columns[k]];
    return out;
  }

  /// Coordinates of several kernel vectors given as the columns of `vs`.
  Matrix coordinates(const Matrix& vs) const { return vs.select_rows(free_columns); }
};

inline Kernel kernel(const Matrix& m, std::size_t cols) {
  Kernel k;
  if (m.rows() == 0 || m.is_zero()) {
    k.basis = Matrix::identity(cols);
    k.free_columns.resize(cols);
    std::iota(k.free_columns.begin(), k.free_columns.end(), std::size_t{0});
    return k;
  }
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) k.free_columns.push_back(c);
  }
  k.basis = Matrix(cols, k.free_columns.size());
  for (std::size_t j = 0; j < k.free_columns.size(); ++j) {
    const std::size_t f = k.free_columns[j];
    k.basis(f, j) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (sgn(e.reduced(r, f)) != 0) k.basis(e.pivots[r], j) = -e.reduced(r, f);
    }
  }
  return k;
}

inline Kernel kernel(const Matrix& m) { return kernel(m, m.cols()); }

/// Solves a * x = b for x (b may have several columns); nullopt if inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.cols();
  Matrix aug = hstack({a, b}, a.rows());
  RowEchelon e = rref(aug);
  Matrix x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t p = e.pivots[r];
    if (p >= n) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(p, c) = e.reduced(r, n + c);
  }
  return x;
}

inline Rational determinant(Matrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i) {
      if (sgn(m(i, c)) != 0) {
        p = i;
        break;
      }
    }
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

enum class ComplementOrder { Forward, Reverse };

/// Indices of standard basis vectors of Q^dim that extend the column span of
/// `spanning` to all of Q^dim, chosen greedily in the given order.
inline std::vector<std::size_t> complement_indices(const Matrix& spanning, std::size_t dim,
                                                   ComplementOrder order) {
  std::vector<std::size_t> unit_order(dim);
  std::iota(unit_order.begin(), unit_order.end(), std::size_t{0});
  if (order == ComplementOrder::Reverse) std::reverse(unit_order.begin(), unit_order.end());
  const std::size_t base = spanning.cols();
  Matrix aug(dim, base + dim);
  if (base > 0) aug.set_block(0, 0, spanning);
  for (std::size_t k = 0; k < dim; ++k) aug(unit_order[k], base + k) = 1;
  RowEchelon e = rref(aug);
  std::vector<std::size_t> out;
  for (std::size_t p : e.pivots) {
    if (p >= base) out.push_back(unit_order[p - base]);
  }
  return out;
}

/// Greedy selection of a maximal linearly independent subset, in order.
inline std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  RowEchelon e = rref(Matrix::from_columns(vectors, dim));
  return e.pivots;
}

/// Primitive integer vector on the same ray as v (v must be nonzero).
inline Vector primitive(const Vector& v) {
  mpz_class lcm = 1;
  for (const auto& x : v) {
    if (sgn(x) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  Vector out;
  out.reserve(v.size());
  for (const auto& n : ints) out.emplace_back(n / g);
  return out;
}

}  // namespace fanih
