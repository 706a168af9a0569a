#include "towerlab/module.hpp"

namespace towerlab {

FDModule FDModule::regular(const MonomialAlgebra& a) {
  FDModule m;
  m.alg = &a;
  m.dim = a.dim();
  m.action.reserve(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) m.action.push_back(a.left_mul_matrix(i));
  return m;
}

FDModule FDModule::zero(const MonomialAlgebra& a) {
  FDModule m;
  m.alg = &a;
  m.dim = 0;
  m.action.assign(a.dim(), Matrix(0, 0));
  return m;
}

void FDModule::validate() const {
  if (!alg) throw ConventionFailure("module has no algebra");
  if (action.size() != alg->dim())
    throw ConventionFailure(alg->name() + ": module action table has wrong size");
  for (const auto& a : action)
    if (a.rows() != dim || a.cols() != dim)
      throw ConventionFailure(alg->name() + ": module action matrix has wrong shape");
  if (action[alg->unit()] != Matrix::identity(dim))
    throw ConventionFailure(alg->name() + ": module unit does not act as identity");
  for (size_t i = 0; i < alg->dim(); ++i)
    for (size_t j = 0; j < alg->dim(); ++j) {
      if (action[i] * action[j] != action[alg->prod(i, j)].scaled(alg->coeff(i, j)))
        throw ConventionFailure(alg->name() + ": module action not multiplicative at pair (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

std::vector<Matrix> HomSpace::basis_matrices() const {
  std::vector<Matrix> out;
  out.reserve(space.dim());
  for (const auto& row : space.basis_rows()) out.push_back(Matrix::unflatten(tgt_dim, src_dim, row));
  return out;
}

HomSpace hom_space(const FDModule& src, const FDModule& tgt) {
  if (src.alg != tgt.alg) throw MismatchError("hom_space: modules over different algebras");
  const size_t s = src.dim, t = tgt.dim;
  const size_t unknowns = t * s;
  const auto gens = src.alg->action_generators();

  Matrix sys(gens.size() * unknowns, unknowns);
  size_t row = 0;
  for (size_t g : gens) {
    const Matrix& a = src.action[g];
    const Matrix& b = tgt.action[g];
    // (X a - b X)[r][c] = 0 for each entry (r, c).
    for (size_t r = 0; r < t; ++r)
      for (size_t c = 0; c < s; ++c) {
        for (size_t k = 0; k < s; ++k)
          if (a.at(k, c) != 0) sys.at(row, r * s + k) += a.at(k, c);
        for (size_t k = 0; k < t; ++k)
          if (b.at(r, k) != 0) sys.at(row, k * s + c) -= b.at(r, k);
        ++row;
      }
  }
  HomSpace h;
  h.src_dim = s;
  h.tgt_dim = t;
  h.space = kernel(sys);
  return h;
}

Subspace isotypic_trivial(const FDModule& n, const Character& eps) {
  const size_t d = n.dim;
  Matrix sys(n.action.size() * d, d);
  size_t row = 0;
  for (size_t b = 0; b < n.action.size(); ++b) {
    const Matrix& a = n.action[b];
    for (size_t r = 0; r < d; ++r) {
      for (size_t c = 0; c < d; ++c)
        if (a.at(r, c) != 0) sys.at(row, c) += a.at(r, c);
      sys.at(row, r) -= eps.value(b);
      ++row;
    }
  }
  return kernel(sys);
}

QuotientSpace coinvariants(const FDModule& n, const Character& eps) {
  RowSpaceBuilder rel(n.dim);
  for (size_t b = 0; b < n.action.size(); ++b) {
    const Matrix& a = n.action[b];
    for (size_t k = 0; k < n.dim; ++k) {
      Vec v(n.dim, Rat(0));
      for (size_t r = 0; r < n.dim; ++r) v[r] = a.at(r, k);
      v[k] -= eps.value(b);
      rel.insert(std::move(v));
    }
  }
  return quotient(n.dim, Subspace::from_builder(std::move(rel)));
}

FDModule restrict_module(const FDModule& m, const MonomialAlgebra& sub,
                         const std::vector<size_t>& basis_map) {
  if (basis_map.size() != sub.dim())
    throw MismatchError("restrict_module: basis map size mismatch");
  FDModule r;
  r.alg = &sub;
  r.dim = m.dim;
  r.action.reserve(sub.dim());
  for (size_t b = 0; b < sub.dim(); ++b) r.action.push_back(m.action[basis_map[b]]);
  return r;
}

bool is_invariant(const FDModule& m, const Subspace& n) {
  for (const auto& a : m.action)
    for (const auto& v : n.basis_rows())
      if (!n.contains_vector(a.apply(v))) return false;
  return true;
}

FDModule submodule_module(const FDModule& m, const Subspace& n) {
  const size_t d = n.dim();
  FDModule sub;
  sub.alg = m.alg;
  sub.dim = d;
  sub.action.reserve(m.action.size());
  for (const auto& a : m.action) {
    Matrix mat(d, d);
    for (size_t j = 0; j < d; ++j) {
      Vec w = a.apply(n.basis_rows()[j]);
      if (!n.contains_vector(w)) throw MismatchError("submodule_module: subspace not invariant");
      Vec coords = n.coordinates(w);
      for (size_t r = 0; r < d; ++r) mat.at(r, j) = coords[r];
    }
    sub.action.push_back(std::move(mat));
  }
  return sub;
}

Matrix equivariant_projection(const FDModule& m, const Subspace& n) {
  const size_t d = m.dim;
  if (n.ambient_dim() != d) throw MismatchError("equivariant_projection: ambient mismatch");
  const size_t unknowns = d * d;
  const auto gens = m.alg->action_generators();
  const QuotientSpace q = quotient(d, n);

  const size_t rows = gens.size() * unknowns + n.dim() * d + q.dim * d;
  Matrix sys(rows, unknowns);
  Vec rhs(rows, Rat(0));
  size_t row = 0;

  // h commutes with the action.
  for (size_t g : gens) {
    const Matrix& a = m.action[g];
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) {
        for (size_t k = 0; k < d; ++k)
          if (a.at(k, c) != 0) sys.at(row, r * d + k) += a.at(k, c);
        for (size_t k = 0; k < d; ++k)
          if (a.at(r, k) != 0) sys.at(row, k * d + c) -= a.at(r, k);
        ++row;
      }
  }
  // h fixes each basis vector of n: sum_k h[r][k] v[k] = v[r].
  for (const auto& v : n.basis_rows())
    for (size_t r = 0; r < d; ++r) {
      for (size_t k = 0; k < d; ++k)
        if (v[k] != 0) sys.at(row, r * d + k) = v[k];
      rhs[row] = v[r];
      ++row;
    }
  // Image of h lies in n: (q.project * h) = 0.
  for (size_t pr = 0; pr < q.dim; ++pr)
    for (size_t c = 0; c < d; ++c) {
      for (size_t k = 0; k < d; ++k)
        if (q.project.at(pr, k) != 0) sys.at(row, k * d + c) = q.project.at(pr, k);
      ++row;
    }

  auto sol = solve_affine(sys, rhs);
  if (!sol) throw HypothesisFailure("no equivariant complement");
  return Matrix::unflatten(d, d, *sol);
}

QuotientSpace coinvariants_in(const std::vector<Matrix>& ops, const Vec& scalars,
                              const Subspace& n) {
  if (ops.size() != scalars.size()) throw MismatchError("coinvariants_in: ops/scalars size");
  RowSpaceBuilder rel(n.dim());
  for (size_t k = 0; k < ops.size(); ++k) {
    for (const Vec& v : n.basis_rows()) {
      Vec w = ops[k].apply(v);
      if (scalars[k] != 0)
        for (size_t r = 0; r < w.size(); ++r) w[r] -= scalars[k] * v[r];
      if (!n.contains_vector(w))
        throw MismatchError("coinvariants_in: operator does not preserve the subspace");
      rel.insert(n.coordinates(w));
    }
  }
  return quotient(n.dim(), Subspace::from_builder(std::move(rel)));
}

Matrix induced_quotient_map(const Matrix& phi, const Subspace& n_src, const QuotientSpace& q_src,
                            const Subspace& n_tgt, const QuotientSpace& q_tgt) {
  if (phi.cols() != n_src.ambient_dim() || phi.rows() != n_tgt.ambient_dim())
    throw MismatchError("induced_quotient_map: shape mismatch");
  if (q_src.ambient_dim != n_src.dim() || q_tgt.ambient_dim != n_tgt.dim())
    throw MismatchError("induced_quotient_map: quotient not in subspace coordinates");

  auto push = [&](const Vec& coords_src) -> Vec {  // n_src coords -> n_tgt coords
    Vec a(n_src.ambient_dim(), Rat(0));
    for (size_t k = 0; k < coords_src.size(); ++k) {
      if (coords_src[k] == 0) continue;
      const Vec& b = n_src.basis_rows()[k];
      for (size_t r = 0; r < a.size(); ++r) a[r] += coords_src[k] * b[r];
    }
    Vec image = phi.apply(a);
    if (!n_tgt.contains_vector(image))
      throw MismatchError("induced_quotient_map: map escapes the target subspace");
    return n_tgt.coordinates(image);
  };

  // Well-definedness: relations land in relations.
  for (const Vec& r : q_src.rel.basis_rows())
    if (!q_tgt.rel.contains_vector(push(r)))
      throw ConventionFailure("induced_quotient_map: relations are not preserved");

  Matrix out(q_tgt.dim, q_src.dim);
  for (size_t j = 0; j < q_src.dim; ++j) {
    Vec coords(q_src.ambient_dim, Rat(0));
    for (size_t k = 0; k < q_src.ambient_dim; ++k) coords[k] = q_src.section.at(k, j);
    Vec y = q_tgt.project.apply(push(coords));
    for (size_t r = 0; r < q_tgt.dim; ++r) out.at(r, j) = y[r];
  }
  return out;
}

bool InducedMap::bijective() const { return src.dim == tgt.dim && rref(map).rank == src.dim; }

}  // namespace towerlab
