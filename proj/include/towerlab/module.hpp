#pragma once

#include <vector>

#include "towerlab/algebra.hpp"
#include "towerlab/linalg.hpp"

namespace towerlab {

// Finite-dimensional left module over a MonomialAlgebra: one action matrix
// per basis element, acting on coordinate column vectors.
struct FDModule {
  const MonomialAlgebra* alg = nullptr;
  size_t dim = 0;
  std::vector<Matrix> action;  // action[i] is dim x dim

  static FDModule regular(const MonomialAlgebra& a);
  static FDModule zero(const MonomialAlgebra& a);

  const Matrix& act(size_t i) const { return action[i]; }
  Vec apply(size_t i, const Vec& v) const { return action[i].apply(v); }

  // Module axioms over every basis pair: action(unit) = id and
  // action(b_i) action(b_j) = coeff(i,j) action(prod(i,j)).
  void validate() const;  // throws ConventionFailure
};

struct HomSpace {
  size_t src_dim = 0, tgt_dim = 0;
  Subspace space;  // flattened tgt_dim x src_dim matrices, row-major

  size_t dim() const { return space.dim(); }
  std::vector<Matrix> basis_matrices() const;
  bool contains(const Matrix& x) const { return space.contains_vector(x.flatten()); }
};

// All X with X rho_src(b) = rho_tgt(b) X. The linear constraints are imposed
// for the algebra's action generators; since every basis element is a scalar
// multiple of a product of generators, the solution space equals the full
// intertwiner space.
HomSpace hom_space(const FDModule& src, const FDModule& tgt);

// {v : rho(b) v = eps(b) v for every basis element b}.
Subspace isotypic_trivial(const FDModule& n, const Character& eps);

// Quotient of the module by span{rho(b) v - eps(b) v : b basis, v}.
QuotientSpace coinvariants(const FDModule& n, const Character& eps);

// The same underlying space viewed over a subalgebra through a basis index
// map: action[b] = m.action[basis_map[b]].
FDModule restrict_module(const FDModule& m, const MonomialAlgebra& sub,
                         const std::vector<size_t>& basis_map);

bool is_invariant(const FDModule& m, const Subspace& n);

// n as a module in its own coordinates (basis = canonical rows of n).
// Throws MismatchError when n is not invariant.
FDModule submodule_module(const FDModule& m, const Subspace& n);

// Equivariant projection onto the invariant subspace n: h in End(M) with
// h restricted to n the identity and image(h) = n. Throws HypothesisFailure
// ("no equivariant complement") when the linear system is infeasible, which
// signals a non-semisimple action.
Matrix equivariant_projection(const FDModule& m, const Subspace& n);

// Quotient of the coordinate space of n by
//   span{ (ops[k] - scalars[k] id) v : k, v basis of n },
// expressed in n-coordinates. Every ops[k] must preserve n (MismatchError
// otherwise). With ops the action of a subalgebra and scalars its trivial
// character this is the coinvariant space of n.
QuotientSpace coinvariants_in(const std::vector<Matrix>& ops, const Vec& scalars,
                              const Subspace& n);

// The map q_src -> q_tgt induced by phi on the quotients of n_src, n_tgt by
// their rel subspaces (all in n-coordinates). Checks phi(n_src) <= n_tgt
// (MismatchError) and phi(rel_src) <= rel_tgt -- the well-definedness of the
// induced map -- throwing ConventionFailure when it fails.
Matrix induced_quotient_map(const Matrix& phi, const Subspace& n_src, const QuotientSpace& q_src,
                            const Subspace& n_tgt, const QuotientSpace& q_tgt);

// A map between two quotient spaces together with its endpoints.
struct InducedMap {
  QuotientSpace src, tgt;
  Matrix map;  // tgt.dim x src.dim

  bool bijective() const;
};

}  // namespace towerlab
