#pragma once

#include "towerlab/matrix.hpp"

#include <optional>
#include <vector>

namespace towerlab {

struct RrefResult {
  Matrix mat;                  // same shape as input, zero rows at the bottom
  size_t rank = 0;
  std::vector<size_t> pivots;  // strictly increasing pivot columns
};

RrefResult rref(Matrix m);

// Incrementally maintained row space in reduced row echelon form.
class RowSpaceBuilder {
 public:
  explicit RowSpaceBuilder(size_t ambient) : ambient_(ambient) {}

  // Returns true when v enlarged the span.
  bool insert(Vec v);

  bool contains(Vec v) const { return reduce(v); }

  size_t dim() const { return rows_.size(); }
  size_t ambient() const { return ambient_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

 private:
  // Reduces v against the current rows in place; true iff it lands on zero.
  bool reduce(Vec& v) const;

  size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<size_t> pivots_;
  friend class Subspace;
};

// Subspace of k^ambient, canonically represented: the basis matrix is the
// unique RREF with strictly increasing pivots. Two subspaces are equal iff
// their basis matrices are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(size_t ambient) { return Subspace(ambient, {}, {}); }
  static Subspace full(size_t ambient);
  static Subspace from_rows(size_t ambient, const std::vector<Vec>& rows);
  static Subspace from_builder(RowSpaceBuilder&& b) {
    return Subspace(b.ambient_, std::move(b.rows_), std::move(b.pivots_));
  }
  static Subspace from_matrix_rows(const Matrix& m);

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return rows_.size(); }

  // dim x ambient RREF matrix whose rows are the basis vectors.
  Matrix basis_matrix() const;
  const std::vector<Vec>& basis_rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  bool contains_vector(const Vec& v) const;
  bool contains(const Subspace& other) const;

  // Coordinates of v in the basis (valid only when contains_vector(v)).
  Vec coordinates(const Vec& v) const;

  bool operator==(const Subspace& o) const = default;

 private:
  Subspace(size_t ambient, std::vector<Vec> rows, std::vector<size_t> pivots)
      : ambient_(ambient), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

  size_t ambient_ = 0;
  std::vector<Vec> rows_;
  std::vector<size_t> pivots_;
};

// {x : m x = 0} as a canonical Subspace of k^cols.
Subspace kernel(const Matrix& m);

struct SubspaceOps {
  Subspace sum;
  Subspace intersection;
  bool contains = false;  // b subseteq a
  bool proper = false;    // b subseteq a and b != a
};

// Sum/intersection via the Zassenhaus double matrix; contains/proper test
// b against a.
SubspaceOps subspace_ops(const Subspace& a, const Subspace& b);

// Quotient k^ambient / rel, coordinatized on the non-pivot columns of rel.
// project is dim x ambient with kernel exactly rel; section is ambient x dim
// with project*section = identity.
struct QuotientSpace {
  size_t ambient_dim = 0;
  size_t dim = 0;
  Matrix project;
  Matrix section;
  Subspace rel;
};

QuotientSpace quotient(size_t ambient_dim, const Subspace& rel);

// One solution of a x = b, or nullopt when inconsistent.
std::optional<Vec> solve_affine(const Matrix& a, const Vec& b);

}  // namespace towerlab
