#include <doctest.h>

#include "oracles.hpp"
#include "towerlab/linalg.hpp"
#include "towerlab/matrix.hpp"
#include "towerlab/rat.hpp"
#include "towerlab/sampling.hpp"

using namespace towerlab;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_to_string(Rat(3)) == "3");
  CHECK(rat_to_string(Rat(-6, 4)) == "-3/2");
  CHECK(rat_from_string("22/7") == Rat(22, 7));
  CHECK(rat_from_string("-5") == Rat(-5));
  CHECK(rat_from_string("4/6") == Rat(2, 3));
  CHECK_THROWS_AS(rat_from_string("1/0"), MismatchError);
  CHECK_THROWS_AS(rat_from_string("a"), MismatchError);
  CHECK_THROWS_AS(rat_from_string("1/2/3"), MismatchError);
  CHECK(rat_pow(Rat(-2), 3) == Rat(-8));
  CHECK(rat_pow(Rat(1, 2), 0) == Rat(1));
}

TEST_CASE("matrix basics") {
  Matrix a(2, 3, {Rat(1), Rat(2), Rat(0), Rat(0), Rat(1), Rat(-1)});
  Matrix b(3, 2, {Rat(1), Rat(0), Rat(0), Rat(1), Rat(2), Rat(3)});
  Matrix ab = a * b;
  CHECK(ab.rows() == 2);
  CHECK(ab.cols() == 2);
  CHECK(ab.at(0, 0) == Rat(1));
  CHECK(ab.at(0, 1) == Rat(2));
  CHECK(ab.at(1, 0) == Rat(-2));
  CHECK(ab.at(1, 1) == Rat(-2));
  CHECK(Matrix::identity(3) * b == b);
  CHECK(a.apply({Rat(1), Rat(1), Rat(1)}) == Vec{Rat(3), Rat(0)});
  CHECK(Matrix::unflatten(2, 3, a.flatten()) == a);
  CHECK(a.transpose().transpose() == a);
}

TEST_CASE("rref: pinned small example") {
  // Worked by hand: [[0,2,1],[1,1,1]] reduces to [[1,0,1/2],[0,1,1/2]].
  Matrix a(2, 3, {Rat(0), Rat(2), Rat(1), Rat(1), Rat(1), Rat(1)});
  auto r = rref(a);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<size_t>{0, 1});
  CHECK(r.mat == Matrix(2, 3, {Rat(1), Rat(0), Rat(1, 2), Rat(0), Rat(1), Rat(1, 2)}));

  Matrix b(2, 2, {Rat(2), Rat(4), Rat(1), Rat(2)});
  auto rb = rref(b);
  CHECK(rb.rank == 1);
  CHECK(rb.mat == Matrix(2, 2, {Rat(1), Rat(2), Rat(0), Rat(0)}));
}

TEST_CASE("rref rank matches determinant-of-minors oracle on random matrices") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t rows = 1 + rng.next() % 5, cols = 1 + rng.next() % 5;
    Matrix a = oracles::random_matrix(rng, rows, cols);
    auto r = rref(a);
    CHECK(r.rank == oracles::rank_by_minors(a));
    // Idempotence: reducing the reduced matrix changes nothing.
    CHECK(rref(r.mat).mat == r.mat);
  }
}

TEST_CASE("rref preserves the row space") {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = oracles::random_matrix(rng, 4, 5);
    auto r = rref(a);
    auto sp = Subspace::from_matrix_rows(a);
    for (size_t i = 0; i < r.rank; ++i) CHECK(sp.contains_vector(r.mat.row(i)));
    CHECK(sp.dim() == r.rank);
  }
}

TEST_CASE("subspace canonical form is basis independent") {
  SplitMix64 rng(303);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = oracles::random_matrix(rng, 3, 6);
    auto sp = Subspace::from_matrix_rows(a);
    // Random row operations give another spanning set of the same space.
    Matrix b = a;
    for (int step = 0; step < 8; ++step) {
      const size_t i = rng.next() % 3, j = rng.next() % 3;
      if (i == j) continue;
      Vec ri = b.row(i);
      const Vec rj = b.row(j);
      const Rat c = rng.next_small_rat();
      for (size_t k = 0; k < 6; ++k) ri[k] += c * rj[k];
      b.set_row(i, ri);
    }
    CHECK(Subspace::from_matrix_rows(b) == sp);
  }
}

TEST_CASE("kernel: pinned example and random check") {
  // ker [[1,2,3]] has canonical basis [[1,0,-1/3],[0,1,-2/3]] (worked by hand).
  Matrix a(1, 3, {Rat(1), Rat(2), Rat(3)});
  auto k = kernel(a);
  CHECK(k.dim() == 2);
  CHECK(k.basis_rows() ==
        std::vector<Vec>{{Rat(1), Rat(0), Rat(-1, 3)}, {Rat(0), Rat(1), Rat(-2, 3)}});

  SplitMix64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t rows = 1 + rng.next() % 4, cols = 1 + rng.next() % 5;
    Matrix m = oracles::random_matrix(rng, rows, cols);
    auto ker = kernel(m);
    CHECK(ker.dim() + rref(m).rank == cols);
    for (const auto& v : ker.basis_rows()) {
      Vec image = m.apply(v);
      for (const auto& x : image) CHECK(x == 0);
    }
  }
}

TEST_CASE("row space builder tracks insertion and membership") {
  RowSpaceBuilder b(3);
  CHECK(b.insert({Rat(1), Rat(1), Rat(0)}));
  CHECK(b.insert({Rat(0), Rat(0), Rat(2)}));
  CHECK_FALSE(b.insert({Rat(2), Rat(2), Rat(-4)}));  // dependent
  CHECK(b.dim() == 2);
  CHECK(b.contains({Rat(3), Rat(3), Rat(1)}));
  CHECK_FALSE(b.contains({Rat(1), Rat(0), Rat(0)}));
  CHECK(b.insert({Rat(1), Rat(0), Rat(0)}));
  CHECK(b.dim() == 3);
}

TEST_CASE("sum and intersection: lattice laws and membership oracle") {
  SplitMix64 rng(505);
  for (int trial = 0; trial < 15; ++trial) {
    const size_t amb = 5;
    auto u = Subspace::from_matrix_rows(oracles::random_matrix(rng, 2, amb));
    auto w = Subspace::from_matrix_rows(oracles::random_matrix(rng, 3, amb));
    auto ops = subspace_ops(u, w);
    CHECK(ops.sum.dim() + ops.intersection.dim() == u.dim() + w.dim());
    CHECK(ops.sum.contains(u));
    CHECK(ops.sum.contains(w));
    CHECK(u.contains(ops.intersection));
    CHECK(w.contains(ops.intersection));
    for (const auto& v : u.basis_rows()) CHECK(ops.sum.contains_vector(v));
    for (const auto& v : ops.intersection.basis_rows()) {
      CHECK(u.contains_vector(v));
      CHECK(w.contains_vector(v));
    }
    CHECK(ops.contains == u.contains(w));
    CHECK(ops.proper == (ops.contains && w.dim() < u.dim()));
  }
}

TEST_CASE("subspace ops flags proper containment") {
  auto u = Subspace::from_rows(2, {{Rat(1), Rat(0)}});
  auto w = Subspace::full(2);
  auto ops = subspace_ops(w, u);  // does w contain u?
  CHECK(ops.contains);
  CHECK(ops.proper);
  auto same = subspace_ops(u, u);
  CHECK(same.contains);
  CHECK_FALSE(same.proper);
}

TEST_CASE("quotient: projection, section and kernel agree") {
  SplitMix64 rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    const size_t amb = 6;
    auto rel = Subspace::from_matrix_rows(oracles::random_matrix(rng, 3, amb));
    auto q = quotient(amb, rel);
    CHECK(q.dim == amb - rel.dim());
    CHECK(q.project.rows() == q.dim);
    CHECK(q.project.cols() == amb);
    CHECK(q.section.rows() == amb);
    CHECK(q.section.cols() == q.dim);
    CHECK(q.project * q.section == Matrix::identity(q.dim));
    CHECK(kernel(q.project) == rel);
    // Any ambient vector maps to the same class as its section round trip.
    Vec v = oracles::random_vec(rng, amb);
    Vec cls = q.project.apply(v);
    Vec back = q.section.apply(cls);
    Vec diff(amb);
    for (size_t i = 0; i < amb; ++i) diff[i] = v[i] - back[i];
    CHECK(rel.contains_vector(diff));
  }
}

TEST_CASE("solve_affine finds solutions exactly when they exist") {
  SplitMix64 rng(707);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix a = oracles::random_matrix(rng, 4, 6);
    Vec x0 = oracles::random_vec(rng, 6);
    Vec b = a.apply(x0);
    auto x = solve_affine(a, b);
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == b);
  }
  Matrix bad(2, 2, {Rat(1), Rat(0), Rat(0), Rat(0)});
  CHECK_FALSE(solve_affine(bad, {Rat(0), Rat(1)}).has_value());
  CHECK(solve_affine(bad, {Rat(5), Rat(0)}).has_value());
}

TEST_CASE("subspace coordinates invert the basis expansion") {
  auto sp = Subspace::from_rows(4, {{Rat(1), Rat(0), Rat(2), Rat(0)}, {Rat(0), Rat(1), Rat(1), Rat(0)}});
  Vec v(4, Rat(0));
  // v = 3*b0 - 2*b1
  for (size_t i = 0; i < 4; ++i) v[i] = Rat(3) * sp.basis_rows()[0][i] - Rat(2) * sp.basis_rows()[1][i];
  CHECK(sp.contains_vector(v));
  CHECK(sp.coordinates(v) == Vec{Rat(3), Rat(-2)});
}
