#pragma once

#include <string>
#include <vector>

#include "towerlab/algebra.hpp"
#include "towerlab/certificate.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

// An injection {1..i} -> {1..j}, stored as its 1-based value list.
struct Injection {
  int i = 0, j = 0;
  std::vector<int> values;  // length i, distinct, each in 1..j

  bool operator==(const Injection&) const = default;
  std::string to_string() const;  // "[2,3]"
};

// Throws MismatchError unless the value list is a valid injection.
void validate_injection(const Injection& b);

Injection identity_injection(int j);
Injection standard_inclusion(int j);  // alpha_j : {1..j} -> {1..j+1}

// gamma o beta (beta applied first).
Injection compose_injection(const Injection& gamma, const Injection& beta);

// All injections {1..i} -> {1..j}, lexicographic by value list;
// j!/(j-i)! of them, none when i > j.
std::vector<Injection> fi_hom(int i, int j);

// Category-axiom sweep over objects 0..T: hom-set counts, identity laws,
// closure and associativity of composition.
struct FiAxiomsReport {
  bool ok = true;
  std::vector<std::string> messages;
};
FiAxiomsReport fi_axioms_check(int T);

// Permutation of {0..n-1} in one-line notation (perm[k] = image of k).
using Perm = std::vector<int>;

Perm perm_compose(const Perm& g, const Perm& h);  // g o h, h applied first
std::vector<Perm> symmetric_group(int n);         // lexicographic order

struct FiCaps {
  int s = 6;  // largest symmetric group handled as an algebra
};

// Group algebra kS_n: permutation basis in lexicographic order (identity
// first), generators {transposition of the first two points, full cycle}
// for n >= 2.
MonomialAlgebra symmetric_group_algebra(int n, const FiCaps& caps = {});

// H_{i,j}: permutations of {1..j} fixing {1..i} pointwise (0-based
// internally), enumerated in lexicographic order; (j-i)! of them.
std::vector<Perm> stabilizer_h(int i, int j);

// For h in H_{i,j}: the extension g in H_{i,j+1} fixing the new point with
// g o alpha_j = alpha_j o h. Both properties are verified before returning.
Perm claim_b1_witness(int i, int j, const Perm& h);

// Orbits of H_{i,j} on fi_hom(i,j) and of H_{i,j+1} on fi_hom(i,j+1), plus
// the orbit map induced by postcomposition with alpha_j. Every member of a
// source orbit must land in the same target orbit (ConventionFailure
// otherwise).
struct MuReport {
  int i = 0, j = 0;
  std::vector<std::vector<size_t>> src_orbits;  // indices into fi_hom(i,j)
  std::vector<std::vector<size_t>> tgt_orbits;  // indices into fi_hom(i,j+1)
  std::vector<size_t> map;                      // source orbit -> target orbit
  bool bijective = false;
};
MuReport mu(int i, int j);

// The FI tower M(m): level i spanned by fi_hom(m, i) (zero below m) with
// kS_i acting by postcomposition and shifts induced by the standard
// inclusions.
struct FiTower {
  int m = 0;
  Tower tower;
  std::vector<std::vector<Injection>> homs;  // level bases; empty below m
};

FiTower build_fi_Mm(int m, int T, const FiCaps& caps = {});

// Coinvariants of N_i under the full stabilizer H_{m,i}, in N_i-coordinates.
// Requires m.m <= i <= T.
QuotientSpace fi_f_prime(const FiTower& m, int i, const TruncSubmodule& n);

// The induced map F'_i(N) -> F'_{i+1}(N) along the shift.
InducedMap fi_nu_prime(const FiTower& m, int i, const TruncSubmodule& n);

// Levelwise certificate for the FI tower M(m) at truncation T; the family
// field is "fi" and no delta is recorded.
CriterionCertificate fi_certificate(int m, int T, const FiCaps& caps = {});

}  // namespace towerlab
