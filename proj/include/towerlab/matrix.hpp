#pragma once

#include "towerlab/rat.hpp"

#include <cstddef>
#include <initializer_list>

namespace towerlab {

// Dense matrix over Rat, row-major. Vectors are columns; a matrix maps
// k^cols -> k^rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(size_t rows, size_t cols, std::initializer_list<Rat> entries)
      : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != rows * cols) throw MismatchError("matrix initializer size");
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rat& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const = default;

  bool is_zero() const {
    for (const Rat& x : a_)
      if (x != 0) return false;
    return true;
  }

  Vec row(size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  void set_row(size_t i, const Vec& v) {
    if (v.size() != cols_) throw MismatchError("set_row size");
    for (size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw MismatchError("matrix product shape");
    Matrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          const Rat& y = o.at(k, j);
          if (y != 0) r.at(i, j) += x * y;
        }
      }
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw MismatchError("matrix apply shape");
    Vec r(rows_);
    for (size_t j = 0; j < cols_; ++j) {
      if (v[j] == 0) continue;
      for (size_t i = 0; i < rows_; ++i) {
        const Rat& x = at(i, j);
        if (x != 0) r[i] += x * v[j];
      }
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw MismatchError("matrix sum shape");
    Matrix r = *this;
    for (size_t t = 0; t < a_.size(); ++t) r.a_[t] += o.a_[t];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw MismatchError("matrix diff shape");
    Matrix r = *this;
    for (size_t t = 0; t < a_.size(); ++t) r.a_[t] -= o.a_[t];
    return r;
  }

  Matrix scaled(const Rat& c) const {
    Matrix r = *this;
    for (Rat& x : r.a_) x *= c;
    return r;
  }

  static Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_ && top.rows_ != 0 && bottom.rows_ != 0)
      throw MismatchError("vstack width");
    size_t cols = top.rows_ ? top.cols_ : bottom.cols_;
    Matrix r(top.rows_ + bottom.rows_, cols);
    r.a_ = top.a_;
    r.a_.insert(r.a_.end(), bottom.a_.begin(), bottom.a_.end());
    return r;
  }

  // Row-major flattening of the entry array.
  Vec flatten() const { return a_; }

  static Matrix unflatten(size_t rows, size_t cols, const Vec& v) {
    if (v.size() != rows * cols) throw MismatchError("unflatten size");
    Matrix m(rows, cols);
    m.a_ = v;
    return m;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace towerlab
