// The C_A(i, j) quotient towers over the diagram algebras: construction,
// the transfer functor F', the induced maps, and the levelwise certificate.
#include <doctest.h>

#include <json.hpp>
#include <towerlab/stability.hpp>

using namespace towerlab;

TEST_CASE("ca_hom dimensions") {
  // C_A(1, j) over TL(3) grows linearly.
  for (int j = 0; j <= 5; ++j) CHECK(ca_hom(Family::TL, Rat(3), 1, j).q.dim == size_t(j));
  // C_A(0, j) is the one-dimensional trivial quotient.
  for (int j = 0; j <= 4; ++j) CHECK(ca_hom(Family::TL, Rat(3), 0, j).q.dim == 1);
  // C_A(j, j) is all of A_j.
  CHECK(ca_hom(Family::TL, Rat(3), 3, 3).q.dim == 5);
  CHECK(ca_hom(Family::TL, Rat(3), 2, 2).q.dim == 2);
  // Nothing survives when i exceeds j.
  CHECK(ca_hom(Family::TL, Rat(3), 4, 2).q.dim == 0);
  CHECK_THROWS_AS(ca_hom(Family::TL, Rat(3), -1, 2), MismatchError);
}

TEST_CASE("ca_hom relations: defining elements and left-ideal closure") {
  const StabHom h = ca_hom(Family::TL, Rat(3), 1, 3);
  const DiagramAlgebra big(Family::TL, 3, Rat(3));
  const DiagramAlgebra sub(Family::TL, 2, Rat(3));
  const std::vector<size_t> emb = embed(sub, big);
  const Character eps = trivial_character(sub);

  // iota(b) - eps(b) 1 lies in the relation space for every basis b.
  for (size_t b = 0; b < sub.dim(); ++b) {
    Vec v(big.dim());
    v[emb[b]] += 1;
    v[big.alg().unit()] -= eps.value(b);
    CHECK(h.q.rel.contains_vector(v));
  }

  // The relation space is closed under left multiplication by everything.
  const FDModule reg = FDModule::regular(big.alg());
  for (const auto& row : h.q.rel.basis_rows())
    for (size_t a = 0; a < big.dim(); ++a) CHECK(h.q.rel.contains_vector(reg.act(a).apply(row)));
}

TEST_CASE("build_Mm assembles a valid tower") {
  SUBCASE("m = 0: the tower of trivial quotients") {
    const StabTower s = build_Mm(Family::TL, Rat(3), 0, 4);
    CHECK(validate_tower(s.tower).ok);
    for (int j = 0; j <= 4; ++j) CHECK(s.tower.levels[j].dim == 1);
    for (int j = 0; j < 4; ++j) CHECK(s.tower.shifts[j].at(0, 0) == Rat(1));
  }
  SUBCASE("m = 1: linear growth with zero level below m") {
    const StabTower s = build_Mm(Family::TL, Rat(3), 1, 4);
    CHECK(validate_tower(s.tower).ok);
    for (int j = 0; j <= 4; ++j) {
      CHECK(s.tower.levels[j].dim == size_t(j));
      CHECK(s.homs[j].q.dim == size_t(j));
    }
    // The class of the unit maps to the class of the unit: shifts from
    // level m on are nonzero.
    bool nonzero = false;
    for (size_t r = 0; r < s.tower.shifts[1].rows(); ++r)
      if (s.tower.shifts[1].at(r, 0) != 0) nonzero = true;
    CHECK(nonzero);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(build_Mm(Family::TL, Rat(3), -1, 3), MismatchError);
    CHECK_THROWS_AS(build_Mm(Family::TL, Rat(3), 0, -1), MismatchError);
  }
}

TEST_CASE("f_prime dimensions and the dimension-transfer identity") {
  const StabTower m1 = build_Mm(Family::TL, Rat(3), 1, 4);
  const TruncSubmodule full = full_submodule(m1.tower);

  const size_t expected[] = {1, 2, 2, 2};
  for (int j = 1; j <= 4; ++j) CHECK(f_prime(m1, j, full).dim == expected[j - 1]);
  CHECK_THROWS_AS(f_prime(m1, 0, full), MismatchError);
  CHECK_THROWS_AS(f_prime(m1, 5, full), MismatchError);

  SUBCASE("claim: dim F equals dim F' on the full submodule") {
    for (int j = 1; j <= 4; ++j) CHECK(claim_a1_check(m1, j, full));
    const StabTower m0 = build_Mm(Family::TL, Rat(3), 0, 4);
    const TruncSubmodule f0 = full_submodule(m0.tower);
    for (int j = 0; j <= 4; ++j) CHECK(claim_a1_check(m0, j, f0));
  }
  SUBCASE("claim: dim F equals dim F' on sampled submodules") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
      SplitMix64 rng(seed);
      const TruncSubmodule n = sample_submodule(m1.tower, rng, 2);
      for (int j = 1; j <= 4; ++j) CHECK(claim_a1_check(m1, j, n));
    }
  }
}

TEST_CASE("nu_prime: endpoints and bijectivity") {
  const StabTower m0 = build_Mm(Family::TL, Rat(3), 0, 3);
  const TruncSubmodule f0 = full_submodule(m0.tower);
  for (int j = 0; j < 3; ++j) {
    const InducedMap nu = nu_prime(m0, j, f0);
    CHECK(nu.src.dim == 1);
    CHECK(nu.tgt.dim == 1);
    CHECK(nu.bijective());
  }

  const StabTower m1 = build_Mm(Family::TL, Rat(3), 1, 4);
  const TruncSubmodule f1 = full_submodule(m1.tower);
  const InducedMap nu1 = nu_prime(m1, 1, f1);
  CHECK(nu1.src.dim == 1);
  CHECK(nu1.tgt.dim == 2);
  CHECK_FALSE(nu1.bijective());
  // Equal dimensions but a rank drop: the shift kills the cap-cup class.
  const InducedMap nu2 = nu_prime(m1, 2, f1);
  CHECK(nu2.src.dim == 2);
  CHECK(nu2.tgt.dim == 2);
  CHECK_FALSE(nu2.bijective());

  CHECK_THROWS_AS(nu_prime(m1, 4, f1), MismatchError);
}

TEST_CASE("find_stabilization scans windows strictly below the truncation") {
  auto mk = [](int i, size_t rad, bool nu) {
    LevelRecord r;
    r.i = i;
    r.radical_dim = rad;
    r.nu_bijective = nu;
    return r;
  };
  SUBCASE("first admissible window wins") {
    std::vector<LevelRecord> lv = {mk(0, 0, false), mk(1, 0, true), mk(2, 0, true),
                                   mk(3, 0, true)};
    CHECK(find_stabilization(lv, 3) == 1);
    lv[0].nu_bijective = true;
    CHECK(find_stabilization(lv, 3) == 0);
  }
  SUBCASE("radical obstruction inside every window") {
    std::vector<LevelRecord> lv = {mk(0, 0, true), mk(1, 0, true), mk(2, 1, true), mk(3, 0, true)};
    CHECK_FALSE(find_stabilization(lv, 3).has_value());
  }
  SUBCASE("d = T would be vacuous and is rejected") {
    std::vector<LevelRecord> lv = {mk(0, 1, true), mk(1, 1, true), mk(2, 1, true), mk(3, 0, true)};
    CHECK_FALSE(find_stabilization(lv, 3).has_value());
  }
}

TEST_CASE("criterion_certificate: certified and failed runs") {
  SUBCASE("tl delta=3 m=0 certifies at d=0") {
    const CriterionCertificate c = criterion_certificate(Family::TL, Rat(3), 0, 5);
    CHECK(c.certified());
    CHECK(c.status() == "certified-at-truncation");
    REQUIRE(c.stabilization_d.has_value());
    CHECK(*c.stabilization_d == 0);
    REQUIRE(c.levels.size() == 6);
    const size_t adim[] = {1, 1, 2, 5, 14, 42};
    for (int i = 0; i <= 5; ++i) {
      CHECK(c.levels[i].i == i);
      CHECK(c.levels[i].algebra_dim == adim[i]);
      CHECK(c.levels[i].radical_dim == 0);
      CHECK(c.levels[i].level_dim == 1);
      CHECK(c.levels[i].fprime_dim == 1);
      CHECK(c.levels[i].nu_bijective);
    }
  }
  SUBCASE("tl delta=3 m=1 fails: the induced maps never stabilize") {
    const CriterionCertificate c = criterion_certificate(Family::TL, Rat(3), 1, 5);
    CHECK_FALSE(c.certified());
    CHECK(c.status() == "failed");
    CHECK_FALSE(c.stabilization_d.has_value());
    const size_t fp[] = {0, 1, 2, 2, 2, 2};
    const bool nu[] = {false, false, false, false, false, true};
    for (int i = 0; i <= 5; ++i) {
      CHECK(c.levels[i].fprime_dim == fp[i]);
      CHECK(c.levels[i].nu_bijective == nu[i]);
      CHECK(c.levels[i].radical_dim == 0);
      CHECK(c.levels[i].level_dim == size_t(i));
    }
  }
  SUBCASE("tl delta=0 m=1 fails: a non-semisimple level") {
    const CriterionCertificate c = criterion_certificate(Family::TL, Rat(0), 1, 3);
    CHECK_FALSE(c.certified());
    CHECK_FALSE(c.stabilization_d.has_value());
    REQUIRE(c.levels.size() == 4);
    CHECK(c.levels[2].radical_dim == 1);
    CHECK(c.levels[2].algebra_dim == 2);
    const size_t fp[] = {0, 1, 2, 2};
    for (int i = 0; i <= 3; ++i) CHECK(c.levels[i].fprime_dim == fp[i]);
  }
}

TEST_CASE("certificate and submodule JSON") {
  const CriterionCertificate c = criterion_certificate(Family::TL, Rat(3), 0, 4);
  const std::string s = certificate_to_json(c);

  CHECK(s.find("\"family\": \"tl\"") != std::string::npos);
  CHECK(s.find("\"delta\": \"3\"") != std::string::npos);
  CHECK(s.find("\"stabilization_d\": 0") != std::string::npos);
  CHECK(s.find("\"status\": \"certified-at-truncation\"") != std::string::npos);
  CHECK(s.find("\"Fprime_dim\": 1") != std::string::npos);
  CHECK(s.back() == '\n');

  SUBCASE("a failed run serializes a null stabilization level") {
    const std::string f = certificate_to_json(criterion_certificate(Family::TL, Rat(0), 1, 3));
    CHECK(f.find("\"stabilization_d\": null") != std::string::npos);
    CHECK(f.find("\"delta\": \"0\"") != std::string::npos);
    CHECK(f.find("\"status\": \"failed\"") != std::string::npos);
  }
  SUBCASE("serialization is reproducible byte for byte") {
    const std::string again = certificate_to_json(criterion_certificate(Family::TL, Rat(3), 0, 4));
    CHECK(s == again);
  }
  SUBCASE("submodule serialization carries exact rational entries") {
    const StabTower m1 = build_Mm(Family::TL, Rat(3), 1, 3);
    const auto j = nlohmann::json::parse(submodule_to_json(full_submodule(m1.tower)));
    REQUIRE(j.at("levels").size() == 4);
    CHECK(j.at("levels")[0].at("dim") == 0);
    CHECK(j.at("levels")[2].at("dim") == 2);
    CHECK(j.at("levels")[2].at("basis_rref")[0][0] == "1");
    CHECK(j.at("levels")[2].at("basis_rref")[0][1] == "0");
  }
}
