#pragma once

#include "hb/rational.hpp"

#include <string>
#include <vector>

namespace hb {

// Dense matrix over a field-like scalar S providing +, -, *, /, isZero(),
// ord(), zeroLike() and oneLike().
template <class S>
class Matrix {
 public:
  int rows = 0, cols = 0;
  std::vector<S> a;

  Matrix() = default;
  Matrix(int r, int c, const S& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  static Matrix zero(int r, int c, const S& proto) { return Matrix(r, c, proto.zeroLike()); }
  static Matrix identity(int n, const S& proto) {
    Matrix m(n, n, proto.zeroLike());
    for (int i = 0; i < n; ++i) m(i, i) = proto.oneLike();
    return m;
  }
  static Matrix diagonal(const std::vector<S>& d) {
    int n = static_cast<int>(d.size());
    Matrix m(n, n, d.at(0).zeroLike());
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
  }

  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  const S& proto() const { return a.at(0); }

  Matrix operator*(const Matrix& o) const {
    if (cols != o.rows) throw MathError("matrix shape mismatch");
    Matrix r(rows, o.cols, proto().zeroLike());
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const S& x = (*this)(i, k);
        if (x.isZero()) continue;
        for (int j = 0; j < o.cols; ++j) {
          const S& y = o(k, j);
          if (!y.isZero()) r(i, j) = r(i, j) + x * y;
        }
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] + o.a[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    for (size_t k = 0; k < a.size(); ++k) r.a[k] = a[k] - o.a[k];
    return r;
  }
  Matrix scaled(const S& s) const {
    Matrix r = *this;
    for (auto& x : r.a) x = s * x;
    return r;
  }
  Matrix transpose() const {
    Matrix r(cols, rows, proto().zeroLike());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc, proto().zeroLike());
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void setBlock(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  std::vector<S> row(int i) const { return std::vector<S>(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  std::vector<S> column(int j) const {
    std::vector<S> c;
    for (int i = 0; i < rows; ++i) c.push_back((*this)(i, j));
    return c;
  }
  void swapRows(int i, int k) {
    for (int j = 0; j < cols; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swapCols(int j, int k) {
    for (int i = 0; i < rows; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }

  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // pivot of minimal valuation, so that inexact scalars lose as little as possible
  S det() const {
    if (rows != cols) throw MathError("determinant of a non-square matrix");
    Matrix m = *this;
    S d = proto().oneLike();
    for (int k = 0; k < rows; ++k) {
      int piv = pivotRow(m, k);
      if (piv < 0) return proto().zeroLike();
      if (piv != k) {
        m.swapRows(piv, k);
        d = -d;
      }
      d = d * m(k, k);
      S inv = m(k, k).oneLike() / m(k, k);
      for (int i = k + 1; i < rows; ++i) {
        if (m(i, k).isZero()) continue;
        S t = m(i, k) * inv;
        for (int j = k; j < cols; ++j) m(i, j) = m(i, j) - t * m(k, j);
      }
    }
    return d;
  }

  Matrix inverse() const {
    if (rows != cols) throw MathError("inverse of a non-square matrix");
    int n = rows;
    Matrix m = *this, inv = identity(n, proto());
    for (int k = 0; k < n; ++k) {
      int piv = pivotRow(m, k);
      if (piv < 0) throw MathError("matrix is singular (no pivot in column " + std::to_string(k) + ")");
      if (piv != k) {
        m.swapRows(piv, k);
        inv.swapRows(piv, k);
      }
      S pinv = m(k, k).oneLike() / m(k, k);
      for (int j = 0; j < n; ++j) {
        m(k, j) = m(k, j) * pinv;
        inv(k, j) = inv(k, j) * pinv;
      }
      for (int i = 0; i < n; ++i) {
        if (i == k || m(i, k).isZero()) continue;
        S t = m(i, k);
        for (int j = 0; j < n; ++j) {
          m(i, j) = m(i, j) - t * m(k, j);
          inv(i, j) = inv(i, j) - t * inv(k, j);
        }
      }
    }
    return inv;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < cols; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  static int pivotRow(const Matrix& m, int k) {
    int best = -1;
    long bestOrd = 0;
    for (int i = k; i < m.rows; ++i) {
      const S& x = m(i, k);
      if (!x.isNonzero()) continue;
      long o = static_cast<long>(x.ord());
      if (best < 0 || o < bestOrd) {
        best = i;
        bestOrd = o;
      }
    }
    return best;
  }
};

}  // namespace hb
