#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dimcf/error.hpp"
#include "dimcf/integer.hpp"

namespace dimcf {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  std::vector<Integer> column(std::size_t j) const {
    std::vector<Integer> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Integer& xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// Determinant by fraction-free (Bareiss) elimination.
  Integer det() const {
    if (!is_square()) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Integer prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        sgn = -sgn;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    return sgn * m(n - 1, n - 1);
  }

  Integer trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool all_non_negative() const {
    for (const auto& v : data_)
      if (v < 0) return false;
    return true;
  }

  /// `[[a,b],[c,d]]`
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += ",";
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Square integer matrix with determinant +1 or -1, checked on construction.
class UniModMatrix {
 public:
  UniModMatrix() : m_(IntMatrix::identity(2)), det_(1) {}

  explicit UniModMatrix(IntMatrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0)
      fail(ErrorKind::DimensionMismatch, "unimodular matrix must be square");
    det_ = m_.det();
    if (det_ != 1 && det_ != -1)
      fail(ErrorKind::NotUnimodular, "determinant " + det_.str() + " is not +-1");
  }

  UniModMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : UniModMatrix(IntMatrix(rows)) {}

  static UniModMatrix identity(std::size_t n) { return UniModMatrix(IntMatrix::identity(n)); }

  /// (a b; c d)
  static UniModMatrix of(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    IntMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return UniModMatrix(std::move(m));
  }

  /// The elementary factor (0 1; 1 a).
  static UniModMatrix elementary(const Integer& a) { return of(0, 1, 1, a); }

  std::size_t n() const { return m_.rows(); }
  const IntMatrix& matrix() const { return m_; }
  const Integer& det() const { return det_; }
  Integer trace() const { return m_.trace(); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  // 2x2 accessors.
  const Integer& a() const { return m_(0, 0); }
  const Integer& b() const { return m_(0, 1); }
  const Integer& c() const { return m_(1, 0); }
  const Integer& d() const { return m_(1, 1); }

  /// Inverse of a 2x2 unimodular matrix (adjugate times det).
  UniModMatrix inverse() const {
    if (n() != 2) fail(ErrorKind::DimensionMismatch, "inverse implemented for 2x2 only");
    return of(det_ * d(), -det_ * b(), -det_ * c(), det_ * a());
  }

  friend UniModMatrix operator*(const UniModMatrix& x, const UniModMatrix& y) {
    UniModMatrix out;
    out.m_ = x.m_ * y.m_;
    out.det_ = x.det_ * y.det_;
    return out;
  }

  friend bool operator==(const UniModMatrix& x, const UniModMatrix& y) { return x.m_ == y.m_; }

  std::string str() const { return m_.str(); }

 private:
  IntMatrix m_;
  Integer det_;
};

namespace lattice {

/// Row echelon form by unimodular row operations on the first `pivot_cols`
/// columns. Returns the number of pivots; rows past it are zero on those
/// columns. Pivots are positive and entries above a pivot are reduced into
/// [0, pivot), which makes the non-zero rows a canonical (Hermite) basis.
inline std::size_t echelonize(std::vector<std::vector<Integer>>& rows, std::size_t pivot_cols) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < pivot_cols && r < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q = floor_div(rows[i][col], rows[r][col]);
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(rows[i][col], rows[r][col]);
      if (q == 0) continue;
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Hermite basis of the lattice spanned by the rows.
inline std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return rows;
  std::size_t rank = echelonize(rows, rows.front().size());
  rows.resize(rank);
  return rows;
}

/// Basis of {x in Z^n : sum_i x_i * rows[i] = 0}.
inline std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& rows) {
  std::size_t n = rows.size();
  if (n == 0) return {};
  std::size_t m = rows.front().size();
  std::vector<std::vector<Integer>> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = rows[i];
    aug[i].resize(m + n, Integer(0));
    aug[i][m + i] = 1;
  }
  std::size_t rank = echelonize(aug, m);
  std::vector<std::vector<Integer>> kernel;
  for (std::size_t i = rank; i < n; ++i) {
    std::vector<Integer> v(aug[i].begin() + static_cast<std::ptrdiff_t>(m), aug[i].end());
    // Normalize sign: first non-zero coordinate positive.
    for (const auto& x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

inline std::size_t rank(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return 0;
  return echelonize(rows, rows.front().size());
}

}  // namespace lattice

}  // namespace dimcf
