#include "towerlab/stability.hpp"

#include <utility>

namespace towerlab {

namespace {

// The left ideal of A_j generated by { iota(b) - eps(b) 1 : b basis of the
// subalgebra }: spanned by c * iota(b) - eps(b) c over all basis c of A_j.
Subspace ca_relations(const DiagramAlgebra& big, const DiagramAlgebra& sub,
                      const std::vector<size_t>& emb, const Character& eps) {
  const MonomialAlgebra& a = big.alg();
  RowSpaceBuilder rel(a.dim());
  for (size_t b = 0; b < sub.dim(); ++b) {
    const size_t e = emb[b];
    for (size_t c = 0; c < a.dim(); ++c) {
      Vec v(a.dim(), Rat(0));
      v[a.prod(c, e)] += a.coeff(c, e);
      v[c] -= eps.value(b);
      rel.insert(std::move(v));
    }
  }
  return Subspace::from_builder(std::move(rel));
}

}  // namespace

StabHom ca_hom(Family family, const Rat& delta, int i, int j, const DiagramCaps& caps) {
  if (i < 0 || j < 0) throw MismatchError("ca_hom: negative index");
  StabHom h;
  h.i = i;
  h.j = j;
  DiagramAlgebra big(family, j, delta, caps);
  if (i > j) {
    h.q = quotient(big.dim(), Subspace::full(big.dim()));
    return h;
  }
  DiagramAlgebra sub(family, j - i, delta, caps);
  const auto emb = embed(sub, big);
  const Character eps = trivial_character(sub);
  h.q = quotient(big.dim(), ca_relations(big, sub, emb, eps));
  return h;
}

StabTower build_Mm(Family family, const Rat& delta, int m, int T, const DiagramCaps& caps) {
  if (m < 0) throw MismatchError("build_Mm: negative m");
  if (T < 0) throw MismatchError("build_Mm: negative T");

  StabTower M;
  M.family = family;
  M.delta = delta;
  M.m = m;
  M.diag.reserve(T + 1);
  for (int j = 0; j <= T; ++j)
    M.diag.push_back(std::make_shared<DiagramAlgebra>(family, j, delta, caps));
  M.sub.assign(T + 1, nullptr);
  M.sub_embed.assign(T + 1, {});
  M.sub_eps.assign(T + 1, Character{});

  for (int j = 0; j <= T; ++j) {
    const DiagramAlgebra& big = *M.diag[j];
    const MonomialAlgebra& a = big.alg();
    M.tower.algebras.push_back(big.alg_ptr());

    StabHom h;
    h.i = m;
    h.j = j;
    if (j < m) {
      h.q = quotient(big.dim(), Subspace::full(big.dim()));
      M.homs.push_back(std::move(h));
      M.tower.levels.push_back(FDModule::zero(a));
      continue;
    }

    M.sub[j] = M.diag[j - m];
    M.sub_embed[j] = embed(*M.sub[j], big);
    M.sub_eps[j] = trivial_character(*M.sub[j]);
    h.q = quotient(big.dim(), ca_relations(big, *M.sub[j], M.sub_embed[j], M.sub_eps[j]));

    // The quotient carries the descended left action; verify the ideal is
    // left-invariant under the action generators (hence under everything).
    for (size_t g : a.action_generators()) {
      const Matrix lg = a.left_mul_matrix(g);
      for (const Vec& r : h.q.rel.basis_rows())
        if (!h.q.rel.contains_vector(lg.apply(r)))
          throw ConventionFailure(a.name() + ": defining ideal is not a left ideal");
    }

    FDModule lvl;
    lvl.alg = &a;
    lvl.dim = h.q.dim;
    lvl.action.reserve(a.dim());
    for (size_t b = 0; b < a.dim(); ++b)
      lvl.action.push_back(h.q.project * a.left_mul_matrix(b) * h.q.section);
    M.tower.levels.push_back(std::move(lvl));
    M.homs.push_back(std::move(h));
  }

  for (int j = 0; j < T; ++j) {
    const size_t dj = M.tower.levels[j].dim;
    const size_t dj1 = M.tower.levels[j + 1].dim;
    if (j < m) {
      M.tower.shifts.push_back(Matrix(dj1, dj));  // source level is zero
      continue;
    }
    const auto embj = embed(*M.diag[j], *M.diag[j + 1]);
    const size_t D = M.diag[j]->dim();
    const size_t D1 = M.diag[j + 1]->dim();
    auto push_emb = [&](const Vec& v) {
      Vec w(D1, Rat(0));
      for (size_t b = 0; b < D; ++b)
        if (v[b] != 0) w[embj[b]] += v[b];
      return w;
    };
    // Well-definedness of the induced shift on quotients.
    for (const Vec& r : M.homs[j].q.rel.basis_rows())
      if (!M.homs[j + 1].q.rel.contains_vector(push_emb(r)))
        throw ConventionFailure("M(m): embedding does not preserve the defining ideal");
    Matrix phi(dj1, dj);
    for (size_t c = 0; c < dj; ++c) {
      Vec s(D, Rat(0));
      for (size_t k = 0; k < D; ++k) s[k] = M.homs[j].q.section.at(k, c);
      Vec y = M.homs[j + 1].q.project.apply(push_emb(s));
      for (size_t r = 0; r < dj1; ++r) phi.at(r, c) = y[r];
    }
    M.tower.shifts.push_back(std::move(phi));
  }
  return M;
}

QuotientSpace f_prime(const StabTower& m, int j, const TruncSubmodule& n) {
  if (j < m.m || j > m.tower.T()) throw MismatchError("f_prime: level out of range");
  if (n.spaces.size() != m.tower.levels.size())
    throw MismatchError("f_prime: submodule level count mismatch");
  std::vector<Matrix> ops;
  Vec scalars;
  const auto& emb = m.sub_embed[j];
  for (size_t b = 0; b < m.sub[j]->dim(); ++b) {
    ops.push_back(m.tower.levels[j].act(emb[b]));
    scalars.push_back(m.sub_eps[j].value(b));
  }
  return coinvariants_in(ops, scalars, n.spaces[j]);
}

InducedMap nu_prime(const StabTower& m, int j, const TruncSubmodule& n) {
  if (j < m.m || j + 1 > m.tower.T()) throw MismatchError("nu_prime: level out of range");
  InducedMap r;
  r.src = f_prime(m, j, n);
  r.tgt = f_prime(m, j + 1, n);
  r.map = induced_quotient_map(m.tower.shifts[j], n.spaces[j], r.src, n.spaces[j + 1], r.tgt);
  return r;
}

bool claim_a1_check(const StabTower& m, int j, const TruncSubmodule& n) {
  return F(m.tower, j, n).dim() == f_prime(m, j, n).dim;
}

CriterionCertificate criterion_certificate(Family family, const Rat& delta, int m, int T,
                                           const DiagramCaps& caps) {
  StabTower M = build_Mm(family, delta, m, T, caps);
  return assemble_certificate(
      M.tower, m, std::string(family_name(family)), delta,
      [&M](int j, const TruncSubmodule& n) { return f_prime(M, j, n); });
}

}  // namespace towerlab
