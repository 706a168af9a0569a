// End-to-end tests of the command-line binary: exit codes, JSON shape,
// frozen outputs, and byte-level determinism. The binary path arrives in
// the TOWERLAB_CLI environment variable.
#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "towerlab/certificate.hpp"
#include "towerlab/stability.hpp"

using namespace towerlab;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("TOWERLAB_CLI");
  REQUIRE(cli != nullptr);
  static int counter = 0;
  const std::string tag = "cli_run_" + std::to_string(counter++);
  const std::string out = tag + ".out", err = tag + ".err";
  const std::string cmd = "\"" + std::string(cli) + "\" " + args + " > " + out + " 2> " + err;
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

}  // namespace

TEST_CASE("certify emits the same bytes as the library serializer") {
  const RunResult r = run_cli("certify --family tl --delta 3 --m 0 --T 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == certificate_to_json(criterion_certificate(Family::TL, Rat(3), 0, 4)));
}

TEST_CASE("certify exit codes follow the certificate status") {
  SUBCASE("failed run records the offending radical and exits 1") {
    const RunResult r = run_cli("certify --family tl --delta 0 --m 1 --T 3");
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j.at("status") == "failed");
    CHECK(j.at("stabilization_d").is_null());
    CHECK(j.at("levels")[2].at("radical_dim") == 1);
    CHECK(j.at("levels")[2].at("i") == 2);
  }
  SUBCASE("fi tower certifies with no delta key") {
    const RunResult r = run_cli("certify --fi --m 1 --T 5");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("stabilization_d") == 2);
    CHECK_FALSE(j.contains("delta"));
  }
}

TEST_CASE("usage and configuration errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("certify --family tl --delta 3 --m 0").exit_code == 2);         // missing --T
  CHECK(run_cli("certify --family nope --delta 3 --m 0 --T 2").exit_code == 2);
  CHECK(run_cli("certify --family tl --fi --delta 3 --m 0 --T 2").exit_code == 2);
  CHECK(run_cli("certify --m 0 --T 2").exit_code == 2);
  CHECK(run_cli("certify --family tl --delta 3/ --m 0 --T 2").exit_code == 2);
  CHECK(run_cli("algebra --family brauer --n 6 --delta 1").exit_code == 2);     // cap
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("algebra reports and structure-table round trip") {
  SUBCASE("radical verdicts") {
    const RunResult r = run_cli("algebra --family tl --n 2 --delta 0");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("dim") == 2);
    CHECK(j.at("radical_dim") == 1);
    CHECK(j.at("semisimple") == false);

    const json p = json::parse(run_cli("algebra --family partition --n 2 --delta 3").out);
    CHECK(p.at("dim") == 15);
    CHECK(p.at("semisimple") == true);
  }
  SUBCASE("text format") {
    const RunResult r = run_cli("algebra --family tl --n 2 --delta 0 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("radical_dim=1") != std::string::npos);
    CHECK(r.out.find("semisimple=false") != std::string::npos);
  }
  SUBCASE("saved table loads back and revalidates") {
    const std::string path = "cli_table_tl3.json";
    CHECK(run_cli("algebra --family tl --n 3 --delta 1/2 --table " + path).exit_code == 0);
    const RunResult r = run_cli("algebra --from-table " + path);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("dim") == 5);
    CHECK(j.at("delta") == "1/2");
    CHECK(j.at("loaded_from") == path);

    std::ofstream(path) << "{ not json";
    CHECK(run_cli("algebra --from-table " + path).exit_code == 2);
    CHECK(run_cli("algebra --from-table no_such_file.json").exit_code == 2);
    std::remove(path.c_str());
  }
}

TEST_CASE("replay runs at the certified stabilization level") {
  SUBCASE("frozen seeded chain") {
    const RunResult r = run_cli("replay --fi --m 1 --T 5 --seed 42");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("d") == 2);
    CHECK(j.at("bound") == 2);
    CHECK(j.at("ell") == json::array({2, 3}));
    CHECK(j.at("dims") == json::array({0, 2}));
    CHECK(j.at("halted_reason") == "chain-stabilized");
  }
  SUBCASE("chains increase strictly within the bound across seeds") {
    for (int seed : {1, 7, 2026}) {
      const json j =
          json::parse(run_cli("replay --fi --m 1 --T 5 --seed " + std::to_string(seed)).out);
      const auto dims = j.at("dims").get<std::vector<size_t>>();
      const size_t bound = j.at("bound").get<size_t>();
      for (size_t k = 0; k < dims.size(); ++k) {
        CHECK(dims[k] <= bound);
        if (k > 0) CHECK(dims[k] > dims[k - 1]);
      }
    }
  }
  SUBCASE("a tower that never stabilizes cannot be replayed") {
    const RunResult r = run_cli("replay --family tl --delta 3 --m 1 --T 3 --seed 1");
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j.at("error") == "no-stabilization");
  }
  SUBCASE("corrupt-tower test mode surfaces the contradiction") {
    const RunResult r = run_cli("replay --fi --m 1 --T 5 --seed 1 --corrupt-tower");
    CHECK(r.exit_code == 1);
    const json j = json::parse(r.out);
    CHECK(j.at("error") == "internal-contradiction");
    CHECK(j.at("halted_reason") == "bound-would-be-violated");
    CHECK(j.at("message").get<std::string>().find("proof_replay") != std::string::npos);
  }
}

TEST_CASE("identical configuration produces byte-identical output") {
  const std::string certify = "certify --fi --m 1 --T 4";
  CHECK(run_cli(certify).out == run_cli(certify).out);
  const std::string replay = "replay --family tl --delta 3 --m 0 --T 4 --seed 9";
  const RunResult r1 = run_cli(replay), r2 = run_cli(replay);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("--out writes the report to a file instead of stdout") {
  const std::string path = "cli_out_cert.json";
  const RunResult direct = run_cli("certify --family tl --delta 3 --m 0 --T 3");
  const RunResult filed = run_cli("certify --family tl --delta 3 --m 0 --T 3 --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(path) == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("fi-orbits dumps the orbit tables as injection value lists") {
  const RunResult r = run_cli("fi-orbits --m 1 --T 3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("tables").size() == 2);
  const json& t1 = j.at("tables")[0];
  CHECK(t1.at("j") == 1);
  CHECK(t1.at("src_orbits") == json::parse("[[[1]]]"));
  CHECK(t1.at("tgt_orbits") == json::parse("[[[1]],[[2]]]"));
  CHECK(t1.at("map") == json::array({0}));
  CHECK(t1.at("bijective") == false);
  CHECK(j.at("tables")[1].at("bijective") == true);
}

TEST_CASE("stab-hom dumps the frozen dimension table") {
  const RunResult r = run_cli("stab-hom --family tl --delta 3 --T 3");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  const json expect = json::parse("[[1,1,1,1],[0,1,2,3],[0,0,2,5],[0,0,0,5]]");
  CHECK(j.at("dims") == expect);
  CHECK(run_cli("stab-hom --delta 3 --T 2").exit_code == 2);  // family required
}
