#include "towerlab/certificate.hpp"

#include <json.hpp>

#include <utility>

#include "towerlab/algebra.hpp"
#include "towerlab/module.hpp"

namespace towerlab {

using ordered_json = nlohmann::ordered_json;

std::string CriterionCertificate::status() const {
  return certified() ? "certified-at-truncation" : "failed";
}

std::optional<int> find_stabilization(const std::vector<LevelRecord>& levels, int T) {
  if (static_cast<int>(levels.size()) != T + 1)
    throw MismatchError("find_stabilization: need one record per level 0..T");
  for (int d = 0; d < T; ++d) {
    bool ok = true;
    for (int i = d; i <= T && ok; ++i) ok = (levels[i].radical_dim == 0);
    for (int i = d; i < T && ok; ++i) ok = levels[i].nu_bijective;
    if (ok) return d;
  }
  return std::nullopt;
}

CriterionCertificate assemble_certificate(const Tower& tower, int m, std::string family,
                                          std::optional<Rat> delta, const FprimeFn& fprime) {
  const int T = tower.T();
  if (m < 0 || m > T) throw MismatchError("assemble_certificate: m out of range");
  const TruncSubmodule full = full_submodule(tower);

  CriterionCertificate c;
  c.family = std::move(family);
  c.delta = std::move(delta);
  c.m = m;
  c.T = T;

  std::vector<QuotientSpace> fp(T + 1);
  for (int j = m; j <= T; ++j) fp[j] = fprime(j, full);

  c.levels.resize(T + 1);
  for (int j = 0; j <= T; ++j) {
    LevelRecord& r = c.levels[j];
    r.i = j;
    r.algebra_dim = tower.algebras[j]->dim();
    r.radical_dim = radical(*tower.algebras[j]).dim();
    r.level_dim = tower.levels[j].dim;
    r.fprime_dim = (j >= m) ? fp[j].dim : 0;
  }
  for (int j = 0; j <= T; ++j) {
    LevelRecord& r = c.levels[j];
    if (j == T) {
      r.nu_bijective = true;  // vacuous at the truncation edge
    } else if (j < m) {
      r.nu_bijective = (c.levels[j + 1].fprime_dim == 0);  // zero map out of a zero space
    } else {
      InducedMap nu{fp[j], fp[j + 1],
                    induced_quotient_map(tower.shifts[j], full.spaces[j], fp[j],
                                         full.spaces[j + 1], fp[j + 1])};
      r.nu_bijective = nu.bijective();
    }
  }
  c.stabilization_d = find_stabilization(c.levels, T);
  return c;
}

std::string certificate_to_json(const CriterionCertificate& c) {
  ordered_json j;
  j["family"] = c.family;
  if (c.delta) j["delta"] = rat_to_string(*c.delta);
  j["m"] = c.m;
  j["T"] = c.T;
  j["levels"] = ordered_json::array();
  for (const LevelRecord& r : c.levels) {
    ordered_json l;
    l["i"] = r.i;
    l["algebra_dim"] = r.algebra_dim;
    l["radical_dim"] = r.radical_dim;
    l["level_dim"] = r.level_dim;
    l["Fprime_dim"] = r.fprime_dim;
    l["nu_bijective"] = r.nu_bijective;
    j["levels"].push_back(std::move(l));
  }
  if (c.stabilization_d)
    j["stabilization_d"] = *c.stabilization_d;
  else
    j["stabilization_d"] = nullptr;
  j["status"] = c.status();
  return j.dump(2) + "\n";
}

std::string submodule_to_json(const TruncSubmodule& n) {
  ordered_json j;
  j["levels"] = ordered_json::array();
  for (size_t i = 0; i < n.spaces.size(); ++i) {
    const Subspace& s = n.spaces[i];
    ordered_json l;
    l["i"] = i;
    l["dim"] = s.dim();
    ordered_json rows = ordered_json::array();
    for (const Vec& r : s.basis_rows()) {
      ordered_json row = ordered_json::array();
      for (const Rat& x : r) row.push_back(rat_to_string(x));
      rows.push_back(std::move(row));
    }
    l["basis_rref"] = std::move(rows);
    j["levels"].push_back(std::move(l));
  }
  return j.dump(2) + "\n";
}

}  // namespace towerlab
