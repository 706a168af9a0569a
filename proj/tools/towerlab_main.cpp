// Command-line workbench: diagram/group algebras, noetherian-criterion
// certificates, proof replay, and the supporting orbit/hom-dimension tables.
//
// Exit codes: 0 success (certificate status certified-at-truncation),
//             1 certification failed or an internal contradiction surfaced,
//             2 usage, parse, or cap errors.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "towerlab/certificate.hpp"
#include "towerlab/ei_fi.hpp"
#include "towerlab/stability.hpp"

namespace {

using nlohmann::ordered_json;
using namespace towerlab;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::string family;
  bool fi = false;
  int n = 0;
  int m = 0;
  int T = 0;
  std::string delta = "1";
  uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string table;
  std::string from_table;
  bool corrupt_tower = false;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + cfg.out);
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Either --fi or --family with --delta; anything else is a usage error.
void check_family_choice(const Config& cfg) {
  if (cfg.fi == !cfg.family.empty())
    throw MismatchError("choose exactly one of --fi or --family (with --delta)");
}

int cmd_algebra(const Config& cfg) {
  DiagramAlgebra a = cfg.from_table.empty()
                         ? DiagramAlgebra(family_from_name(cfg.family),
                                          cfg.n, rat_from_string(cfg.delta))
                         : load_structure_table(cfg.from_table);
  const size_t rad = radical(a.alg()).dim();
  if (!cfg.table.empty()) save_structure_table(a, cfg.table);

  if (cfg.format == "text") {
    std::ostringstream s;
    s << "family=" << family_name(a.family()) << " n=" << a.n()
      << " delta=" << rat_to_string(a.delta()) << " dim=" << a.dim() << " radical_dim=" << rad
      << " semisimple=" << (rad == 0 ? "true" : "false") << "\n";
    emit(cfg, s.str());
    return kExitOk;
  }
  ordered_json j;
  j["family"] = std::string(family_name(a.family()));
  j["n"] = a.n();
  j["delta"] = rat_to_string(a.delta());
  j["dim"] = a.dim();
  j["radical_dim"] = rad;
  j["semisimple"] = (rad == 0);
  if (!cfg.table.empty()) j["table_written"] = cfg.table;
  if (!cfg.from_table.empty()) j["loaded_from"] = cfg.from_table;
  emit(cfg, dump(j));
  return kExitOk;
}

CriterionCertificate make_certificate(const Config& cfg) {
  if (cfg.fi) return fi_certificate(cfg.m, cfg.T);
  return criterion_certificate(family_from_name(cfg.family), rat_from_string(cfg.delta), cfg.m,
                               cfg.T);
}

int cmd_certify(const Config& cfg) {
  check_family_choice(cfg);
  const CriterionCertificate cert = make_certificate(cfg);
  if (cfg.format == "text") {
    std::ostringstream s;
    for (const auto& lv : cert.levels)
      s << "i=" << lv.i << " algebra_dim=" << lv.algebra_dim << " radical_dim=" << lv.radical_dim
        << " level_dim=" << lv.level_dim << " Fprime_dim=" << lv.fprime_dim
        << " nu_bijective=" << (lv.nu_bijective ? "true" : "false") << "\n";
    s << "status: " << cert.status();
    if (cert.stabilization_d) s << " (stabilization_d " << *cert.stabilization_d << ")";
    s << "\n";
    emit(cfg, s.str());
  } else {
    emit(cfg, certificate_to_json(cert));
  }
  return cert.certified() ? kExitOk : kExitFailed;
}

int cmd_replay(const Config& cfg) {
  check_family_choice(cfg);

  // One tower build serves both the certificate and the replay.
  Tower tower;
  CriterionCertificate cert;
  if (cfg.fi) {
    FiTower M = build_fi_Mm(cfg.m, cfg.T);
    cert = assemble_certificate(M.tower, cfg.m, "fi", std::nullopt,
                                [&M](int j, const TruncSubmodule& n) {
                                  return fi_f_prime(M, j, n);
                                });
    tower = std::move(M.tower);
  } else {
    StabTower M = build_Mm(family_from_name(cfg.family), rat_from_string(cfg.delta), cfg.m,
                           cfg.T);
    cert = assemble_certificate(M.tower, cfg.m, std::string(family_name(M.family)), M.delta,
                                [&M](int j, const TruncSubmodule& n) {
                                  return f_prime(M, j, n);
                                });
    tower = std::move(M.tower);
  }

  ordered_json j;
  j["family"] = cert.family;
  if (cert.delta) j["delta"] = rat_to_string(*cert.delta);
  j["m"] = cfg.m;
  j["T"] = cfg.T;
  j["seed"] = cfg.seed;

  if (!cert.stabilization_d) {
    j["error"] = "no-stabilization";
    j["message"] = "the tower does not certify at this truncation; no replay level available";
    emit(cfg, dump(j));
    return kExitFailed;
  }
  const int d = *cert.stabilization_d;
  j["d"] = d;

  TruncSubmodule n;
  if (cfg.corrupt_tower) {
    // Test mode: destroy one level above d so the chain walk must detect
    // the inconsistency.
    const int bad = d + 1 <= tower.T() ? d + 1 : d;
    tower.levels[bad] = FDModule::zero(*tower.algebras[bad]);
    if (bad > 0) tower.shifts[bad - 1] = Matrix(0, tower.levels[bad - 1].dim);
    if (bad < tower.T()) tower.shifts[bad] = Matrix(tower.levels[bad + 1].dim, 0);
    n = full_submodule(tower);
  } else {
    SplitMix64 rng(cfg.seed);
    n = sample_submodule(tower, rng, 3);
  }

  try {
    const ProofReplayReport rep = proof_replay(tower, n, d);
    j["bound"] = rep.bound;
    j["ell"] = rep.ell;
    j["dims"] = rep.dims;
    j["halted_reason"] = std::string(replay_halt_name(rep.halted));
  } catch (const InternalContradiction& e) {
    j["halted_reason"] = std::string(replay_halt_name(ReplayHalt::BoundWouldBeViolated));
    j["error"] = "internal-contradiction";
    j["message"] = e.what();
    emit(cfg, dump(j));
    return kExitFailed;
  }

  if (cfg.format == "text") {
    std::ostringstream s;
    s << "d=" << j["d"] << " bound=" << j["bound"] << " halted=" << j["halted_reason"].get<std::string>()
      << " ell=" << j["ell"].dump() << " dims=" << j["dims"].dump() << "\n";
    emit(cfg, s.str());
  } else {
    emit(cfg, dump(j));
  }
  return kExitOk;
}

int cmd_fi_orbits(const Config& cfg) {
  ordered_json tables = ordered_json::array();
  std::ostringstream text;
  for (int j = cfg.m; j < cfg.T; ++j) {
    const MuReport r = mu(cfg.m, j);
    const auto src_basis = fi_hom(r.i, r.j);
    const auto tgt_basis = fi_hom(r.i, r.j + 1);
    auto orbit_json = [](const std::vector<std::vector<size_t>>& orbits,
                         const std::vector<Injection>& basis) {
      ordered_json out = ordered_json::array();
      for (const auto& orbit : orbits) {
        ordered_json o = ordered_json::array();
        for (size_t idx : orbit) o.push_back(basis[idx].values);
        out.push_back(std::move(o));
      }
      return out;
    };
    ordered_json t;
    t["j"] = j;
    t["src_orbits"] = orbit_json(r.src_orbits, src_basis);
    t["tgt_orbits"] = orbit_json(r.tgt_orbits, tgt_basis);
    t["map"] = r.map;
    t["bijective"] = r.bijective;
    tables.push_back(std::move(t));
    text << "j=" << j << " src=" << r.src_orbits.size() << " tgt=" << r.tgt_orbits.size()
         << " bijective=" << (r.bijective ? "true" : "false") << "\n";
  }
  if (cfg.format == "text") {
    emit(cfg, text.str());
  } else {
    ordered_json j;
    j["family"] = "fi";
    j["m"] = cfg.m;
    j["T"] = cfg.T;
    j["tables"] = std::move(tables);
    emit(cfg, dump(j));
  }
  return kExitOk;
}

int cmd_stab_hom(const Config& cfg) {
  if (cfg.family.empty()) throw MismatchError("stab-hom requires --family and --delta");
  const Family fam = family_from_name(cfg.family);
  const Rat delta = rat_from_string(cfg.delta);
  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  for (int i = 0; i <= cfg.T; ++i) {
    std::vector<size_t> dims;
    for (int j = 0; j <= cfg.T; ++j) dims.push_back(ca_hom(fam, delta, i, j).q.dim);
    text << "i=" << i << ":";
    for (size_t d : dims) text << " " << d;
    text << "\n";
    rows.push_back(dims);
  }
  if (cfg.format == "text") {
    emit(cfg, text.str());
  } else {
    ordered_json j;
    j["family"] = std::string(family_name(fam));
    j["delta"] = rat_to_string(delta);
    j["T"] = cfg.T;
    j["dims"] = std::move(rows);
    emit(cfg, dump(j));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for towers of diagram-algebra and symmetric-group modules"};
  app.require_subcommand(1);
  Config cfg;

  auto add_family = [&cfg](CLI::App* c, bool with_fi) {
    c->add_option("--family", cfg.family, "diagram family: tl | brauer | partition");
    c->add_option("--delta", cfg.delta, "loop parameter, as p or p/q");
    if (with_fi) c->add_flag("--fi", cfg.fi, "use the injection-category tower instead");
  };
  auto add_io = [&cfg](CLI::App* c) {
    c->add_option("--out", cfg.out, "write output to this file instead of stdout");
    c->add_option("--format", cfg.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* alg = app.add_subcommand("algebra", "build one algebra and report its radical");
  add_family(alg, false);
  alg->add_option("--n", cfg.n, "number of strands/points");
  alg->add_option("--table", cfg.table, "also save the structure table to this path");
  alg->add_option("--from-table", cfg.from_table, "load and revalidate a saved structure table");
  add_io(alg);

  CLI::App* cert = app.add_subcommand("certify", "run the noetherian criterion at truncation T");
  add_family(cert, true);
  cert->add_option("--m", cfg.m, "generator degree of the tower M(m)")->required();
  cert->add_option("--T", cfg.T, "truncation level")->required();
  add_io(cert);

  CLI::App* rep = app.add_subcommand("replay", "replay the ascending-chain argument on a sample");
  add_family(rep, true);
  rep->add_option("--m", cfg.m, "generator degree of the tower M(m)")->required();
  rep->add_option("--T", cfg.T, "truncation level")->required();
  rep->add_option("--seed", cfg.seed, "sampling seed");
  rep->add_flag("--corrupt-tower", cfg.corrupt_tower)->group("");  // test mode
  add_io(rep);

  CLI::App* orb = app.add_subcommand("fi-orbits", "dump stabilizer orbits and the orbit maps");
  orb->add_option("--m", cfg.m, "source object size")->required();
  orb->add_option("--T", cfg.T, "truncation level")->required();
  add_io(orb);

  CLI::App* sh = app.add_subcommand("stab-hom", "dump the hom-space dimension table C_A(i, j)");
  add_family(sh, false);
  sh->add_option("--T", cfg.T, "largest object index")->required();
  add_io(sh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (alg->parsed()) return cmd_algebra(cfg);
    if (cert->parsed()) return cmd_certify(cfg);
    if (rep->parsed()) return cmd_replay(cfg);
    if (orb->parsed()) return cmd_fi_orbits(cfg);
    if (sh->parsed()) return cmd_stab_hom(cfg);
  } catch (const InternalContradiction& e) {
    std::cerr << "internal contradiction: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
