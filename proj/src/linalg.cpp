#include "towerlab/linalg.hpp"

#include <algorithm>

namespace towerlab {

RrefResult rref(Matrix m) {
  const size_t rows = m.rows(), cols = m.cols();
  RrefResult res;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m.at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (size_t j = c; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    if (m.at(r, c) != 1) {
      Rat inv = Rat(1) / m.at(r, c);
      for (size_t j = c; j < cols; ++j)
        if (m.at(r, j) != 0) m.at(r, j) *= inv;
    }
    for (size_t q = 0; q < rows; ++q) {
      if (q == r) continue;
      const Rat f = m.at(q, c);
      if (f == 0) continue;
      for (size_t j = c; j < cols; ++j)
        if (m.at(r, j) != 0) m.at(q, j) -= f * m.at(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.mat = std::move(m);
  return res;
}

bool RowSpaceBuilder::reduce(Vec& v) const {
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rat& f = v[pivots_[k]];
    if (f == 0) continue;
    const Vec& row = rows_[k];
    const Rat c = f;  // row has 1 at the pivot
    for (size_t j = pivots_[k]; j < ambient_; ++j)
      if (row[j] != 0) v[j] -= c * row[j];
  }
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

bool RowSpaceBuilder::insert(Vec v) {
  if (v.size() != ambient_) throw MismatchError("RowSpaceBuilder: vector size");
  if (reduce(v)) return false;
  size_t piv = 0;
  while (v[piv] == 0) ++piv;
  if (v[piv] != 1) {
    Rat inv = Rat(1) / v[piv];
    for (size_t j = piv; j < ambient_; ++j)
      if (v[j] != 0) v[j] *= inv;
  }
  // Clear the new pivot column from the existing rows.
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rat f = rows_[k][piv];
    if (f == 0) continue;
    for (size_t j = piv; j < ambient_; ++j)
      if (v[j] != 0) rows_[k][j] -= f * v[j];
  }
  size_t pos = static_cast<size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin());
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

Subspace Subspace::full(size_t ambient) {
  std::vector<Vec> rows(ambient, Vec(ambient));
  std::vector<size_t> pivots(ambient);
  for (size_t i = 0; i < ambient; ++i) {
    rows[i][i] = 1;
    pivots[i] = i;
  }
  return Subspace(ambient, std::move(rows), std::move(pivots));
}

Subspace Subspace::from_rows(size_t ambient, const std::vector<Vec>& rows) {
  RowSpaceBuilder b(ambient);
  for (const Vec& v : rows) b.insert(v);
  return from_builder(std::move(b));
}

Subspace Subspace::from_matrix_rows(const Matrix& m) {
  RowSpaceBuilder b(m.cols());
  for (size_t i = 0; i < m.rows(); ++i) b.insert(m.row(i));
  return from_builder(std::move(b));
}

Matrix Subspace::basis_matrix() const {
  Matrix m(rows_.size(), ambient_);
  for (size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
  return m;
}

bool Subspace::contains_vector(const Vec& v) const {
  if (v.size() != ambient_) throw MismatchError("contains_vector: ambient mismatch");
  Vec w = v;
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rat f = w[pivots_[k]];
    if (f == 0) continue;
    for (size_t j = pivots_[k]; j < ambient_; ++j)
      if (rows_[k][j] != 0) w[j] -= f * rows_[k][j];
  }
  for (const Rat& x : w)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw MismatchError("contains: ambient mismatch");
  if (other.dim() > dim()) return false;
  for (const Vec& v : other.rows_)
    if (!contains_vector(v)) return false;
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  // RREF basis: coordinate k of v is v[pivots_[k]].
  Vec c(rows_.size());
  for (size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

Subspace kernel(const Matrix& m) {
  RrefResult r = rref(m);
  const size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : r.pivots) is_pivot[p] = true;
  RowSpaceBuilder b(cols);
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = 1;
    for (size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.mat.at(k, f);
    b.insert(std::move(v));
  }
  return Subspace::from_builder(std::move(b));
}

SubspaceOps subspace_ops(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw MismatchError("subspace_ops: ambient dimension mismatch");
  const size_t n = a.ambient_dim();

  // Zassenhaus: rows (u|u) for u in a, (w|0) for w in b. In the RREF of the
  // stack, left halves of the rows with nonzero left half span a+b, and
  // right halves of the rows with zero left half span the intersection.
  RowSpaceBuilder big(2 * n);
  for (const Vec& u : a.basis_rows()) {
    Vec row(2 * n);
    for (size_t j = 0; j < n; ++j) row[j] = row[n + j] = u[j];
    big.insert(std::move(row));
  }
  for (const Vec& w : b.basis_rows()) {
    Vec row(2 * n);
    for (size_t j = 0; j < n; ++j) row[j] = w[j];
    big.insert(std::move(row));
  }

  RowSpaceBuilder sum(n), inter(n);
  for (const Vec& row : big.rows()) {
    bool left_zero = true;
    for (size_t j = 0; j < n; ++j)
      if (row[j] != 0) {
        left_zero = false;
        break;
      }
    if (left_zero)
      inter.insert(Vec(row.begin() + n, row.end()));
    else
      sum.insert(Vec(row.begin(), row.begin() + n));
  }

  SubspaceOps ops;
  ops.sum = Subspace::from_builder(std::move(sum));
  ops.intersection = Subspace::from_builder(std::move(inter));
  ops.contains = a.contains(b);
  ops.proper = ops.contains && a.dim() != b.dim();
  return ops;
}

QuotientSpace quotient(size_t ambient_dim, const Subspace& rel) {
  if (rel.ambient_dim() != ambient_dim) throw MismatchError("quotient: ambient mismatch");
  QuotientSpace q;
  q.ambient_dim = ambient_dim;
  q.rel = rel;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (size_t p : rel.pivots()) is_pivot[p] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  q.dim = free_cols.size();
  q.project = Matrix(q.dim, ambient_dim);
  q.section = Matrix(ambient_dim, q.dim);
  for (size_t k = 0; k < q.dim; ++k) {
    const size_t f = free_cols[k];
    q.project.at(k, f) = 1;
    for (size_t r = 0; r < rel.dim(); ++r)
      q.project.at(k, rel.pivots()[r]) = -rel.basis_rows()[r][f];
    q.section.at(f, k) = 1;
  }
  return q;
}

std::optional<Vec> solve_affine(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw MismatchError("solve_affine: rhs size");
  Matrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(std::move(aug));
  Vec x(a.cols());
  for (size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] == a.cols()) return std::nullopt;  // 0 = 1 row
    x[r.pivots[k]] = r.mat.at(k, a.cols());
  }
  return x;
}

}  // namespace towerlab
