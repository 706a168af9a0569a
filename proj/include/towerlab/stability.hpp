#pragma once

#include <memory>
#include <vector>

#include "towerlab/algebra.hpp"
#include "towerlab/certificate.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

// C_A(i, j): the quotient of A_j by the left ideal generated by
// { iota(b) - eps(b) 1 : b basis of A_{j-i} }, where iota is the unital
// embedding of A_{j-i} onto the last j-i strands and eps the trivial
// character. Zero when i > j; all of A_j when i = j; one-dimensional when
// i = 0.
struct StabHom {
  int i = 0, j = 0;
  QuotientSpace q;  // ambient = dim A_j, coordinates on the quotient
};

StabHom ca_hom(Family family, const Rat& delta, int i, int j, const DiagramCaps& caps = {});

// The tower M(m): levels M(m)_j = C_A(m, j) (zero below m) with the left
// A_j-action descended from the regular action and shifts induced by the
// strand embeddings A_j -> A_{j+1}. Construction verifies that the action
// generators and the embeddings preserve the defining ideals.
struct StabTower {
  Family family{};
  Rat delta;
  int m = 0;

  Tower tower;
  std::vector<std::shared_ptr<const DiagramAlgebra>> diag;  // A_0..A_T
  std::vector<StabHom> homs;                                // C_A(m, j) data per level
  // Per level j >= m: the subalgebra A_{j-m}, its embedding index map into
  // A_j, and its trivial character.
  std::vector<std::shared_ptr<const DiagramAlgebra>> sub;
  std::vector<std::vector<size_t>> sub_embed;
  std::vector<Character> sub_eps;
};

StabTower build_Mm(Family family, const Rat& delta, int m, int T, const DiagramCaps& caps = {});

// F'_j(N) = coinvariants of N_j under the embedded copy of A_{j-m},
// in N_j-coordinates. Requires m.m <= j <= T.
QuotientSpace f_prime(const StabTower& m, int j, const TruncSubmodule& n);

// The map F'_j(N) -> F'_{j+1}(N) induced by the shift, with its endpoints.
// Throws ConventionFailure if the shift fails to carry relations to
// relations.
InducedMap nu_prime(const StabTower& m, int j, const TruncSubmodule& n);

// dim F(j, N) == dim F'_j(N), the finiteness-transfer dimension equality.
bool claim_a1_check(const StabTower& m, int j, const TruncSubmodule& n);

// Levelwise certificate for the noetherian criterion at truncation T:
// radical dimensions, F' dimensions, bijectivity of the induced maps, and
// the resulting stabilization level (if any).
CriterionCertificate criterion_certificate(Family family, const Rat& delta, int m, int T,
                                           const DiagramCaps& caps = {});

}  // namespace towerlab
