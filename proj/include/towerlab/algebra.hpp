#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "towerlab/diagram.hpp"
#include "towerlab/linalg.hpp"
#include "towerlab/matrix.hpp"
#include "towerlab/rat.hpp"

namespace towerlab {

// Finite-dimensional algebra whose fixed basis multiplies monomially:
// b_i * b_j = delta^loops(i,j) * b_{prod(i,j)}. Diagram algebras are of this
// form (twisted monoid bases), and group algebras are the loops == 0 case.
class MonomialAlgebra {
 public:
  // prod and loops are row-major dim x dim tables. generators may be empty,
  // meaning "no smaller generating set declared; use the whole basis".
  // A declared generating set must span the algebra via products (each basis
  // element a scalar multiple of a product of generators); callers rely on
  // this for intertwiner systems and invariance closures.
  MonomialAlgebra(std::string name, size_t dim, size_t unit, Rat delta,
                  std::vector<uint32_t> prod, std::vector<uint8_t> loops,
                  std::vector<size_t> generators = {});

  const std::string& name() const { return name_; }
  size_t dim() const { return dim_; }
  size_t unit() const { return unit_; }
  const Rat& delta() const { return delta_; }

  size_t prod(size_t i, size_t j) const { return prod_[i * dim_ + j]; }
  unsigned loops(size_t i, size_t j) const { return loops_[i * dim_ + j]; }
  const Rat& coeff(size_t i, size_t j) const { return delta_powers_[loops_[i * dim_ + j]]; }

  const std::vector<size_t>& generators() const { return generators_; }
  // Indices whose actions must be checked/applied to span the full algebra
  // action: the declared generators plus the unit, or every basis index.
  std::vector<size_t> action_generators() const;

  Vec basis_vec(size_t i) const;
  Vec unit_vec() const { return basis_vec(unit_); }
  Vec multiply(const Vec& x, const Vec& y) const;
  Matrix left_mul_matrix(size_t i) const;
  Matrix right_mul_matrix(size_t i) const;

  void check_unit() const;           // throws ConventionFailure
  void check_associativity() const;  // full triple sweep; throws ConventionFailure
  void check_associativity_sampled(size_t samples, uint64_t seed) const;

 private:
  std::string name_;
  size_t dim_;
  size_t unit_;
  Rat delta_;
  std::vector<uint32_t> prod_;
  std::vector<uint8_t> loops_;
  std::vector<Rat> delta_powers_;
  std::vector<size_t> generators_;
};

// Sparse algebra element: basis index -> nonzero coefficient.
struct Element {
  std::map<size_t, Rat> coeffs;

  static Element from_dense(const Vec& v);
  Vec to_dense(size_t dim) const;
  void add(size_t i, const Rat& c);  // accumulates, dropping zeros
};

// A one-dimensional representation given by its values on the basis.
struct Character {
  Vec values;

  const Rat& value(size_t i) const { return values[i]; }
  Rat apply(const Vec& x) const;
};

// Diagram algebra of a family at a rational parameter delta: basis is the
// canonical diagram enumeration, products come from stacking.
class DiagramAlgebra {
 public:
  DiagramAlgebra(Family family, int n, Rat delta, const DiagramCaps& caps = {});

  Family family() const { return family_; }
  int n() const { return n_; }
  const Rat& delta() const { return alg_->delta(); }
  const std::vector<Diagram>& basis() const { return basis_; }
  const MonomialAlgebra& alg() const { return *alg_; }
  std::shared_ptr<const MonomialAlgebra> alg_ptr() const { return alg_; }
  size_t dim() const { return basis_.size(); }
  size_t index_of(const Diagram& d) const;  // throws MismatchError if absent

  // Reassemble from a structure table (used by the cache loader). The basis
  // must be in canonical enumeration order; tables are trusted except for
  // the caller's revalidation.
  static DiagramAlgebra from_table(Family family, int n, Rat delta, std::vector<Diagram> basis,
                                   std::vector<uint32_t> prod, std::vector<uint8_t> loops);

 private:
  DiagramAlgebra() = default;

  Family family_ = Family::TL;
  int n_ = 0;
  std::vector<Diagram> basis_;
  std::map<Diagram, size_t> index_;
  std::shared_ptr<const MonomialAlgebra> alg_;
};

// Jacobson radical via the trace form of the left regular representation
// (valid for unital algebras in characteristic 0): kernel of the Gram
// matrix G[i][j] = trace(L_{b_i} L_{b_j}).
Subspace radical(const MonomialAlgebra& a);

// epsilon(b) = 1 on permutation diagrams, 0 otherwise. Multiplicativity is
// verified over every basis pair before returning; a failure means the
// convention is wrong for this family/delta and must abort.
Character trivial_character(const DiagramAlgebra& a);

// Index map of the unital embedding of `sub` onto the LAST sub.n() strands
// of `big` (identity on the first big.n() - sub.n() strands). Returns
// out[i] = index in big of the image of sub basis element i.
std::vector<size_t> embed(const DiagramAlgebra& sub, const DiagramAlgebra& big);

// JSON structure-table cache. The loader re-enumerates the basis (cheap),
// checks the stored basis matches, and revalidates the unit row/column plus
// a random sample of about 1% of all associativity triples.
void save_structure_table(const DiagramAlgebra& a, const std::string& path);
DiagramAlgebra load_structure_table(const std::string& path, const DiagramCaps& caps = {});

}  // namespace towerlab
