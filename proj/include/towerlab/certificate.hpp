#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "towerlab/rat.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

struct LevelRecord {
  int i = 0;
  size_t algebra_dim = 0;
  size_t radical_dim = 0;
  size_t level_dim = 0;
  size_t fprime_dim = 0;
  bool nu_bijective = false;
};

struct CriterionCertificate {
  std::string family;        // "tl" | "brauer" | "partition" | "fi"
  std::optional<Rat> delta;  // absent for the fi family
  int m = 0;
  int T = 0;
  std::vector<LevelRecord> levels;  // one record per level 0..T
  std::optional<int> stabilization_d;

  bool certified() const { return stabilization_d.has_value(); }
  std::string status() const;
};

// Smallest d < T with nu bijective on [d, T) and radical zero on [d, T].
// d = T is rejected: it would make both hypothesis ranges empty and certify
// vacuously.
std::optional<int> find_stabilization(const std::vector<LevelRecord>& levels, int T);

// Assembles the levelwise certificate for a tower whose levels vanish below
// m: radical and F' dimensions, bijectivity of each induced map on the full
// submodule, and the stabilization level. fprime(j, n) must return the
// coinvariant quotient at level j >= m in n-coordinates.
using FprimeFn = std::function<QuotientSpace(int, const TruncSubmodule&)>;
CriterionCertificate assemble_certificate(const Tower& tower, int m, std::string family,
                                          std::optional<Rat> delta, const FprimeFn& fprime);

// Fixed-field-order JSON (golden-file friendly; rationals as "p/q" strings).
std::string certificate_to_json(const CriterionCertificate& c);

// {"levels":[{"i":..,"dim":..,"basis_rref":[[...]]},...]} with rationals as
// strings.
std::string submodule_to_json(const TruncSubmodule& n);

}  // namespace towerlab
