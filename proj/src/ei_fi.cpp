#include "towerlab/ei_fi.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <utility>

#include "towerlab/module.hpp"

namespace towerlab {

namespace {

// h o beta for h a 0-based permutation of {0..j-1} and beta 1-based.
Injection act(const Perm& h, const Injection& b) {
  Injection r = b;
  for (size_t t = 0; t < r.values.size(); ++t) r.values[t] = h[b.values[t] - 1] + 1;
  return r;
}

void check_perm(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
      throw MismatchError("not a permutation");
    seen[v] = true;
  }
}

struct OrbitData {
  std::vector<Injection> elems;
  std::map<std::vector<int>, size_t> index;  // value list -> element index
  std::vector<size_t> orbit_of;
  std::vector<std::vector<size_t>> orbits;  // each ascending, ordered by least element
};

OrbitData orbit_data(int i, int j) {
  OrbitData d;
  d.elems = fi_hom(i, j);
  for (size_t k = 0; k < d.elems.size(); ++k) d.index.emplace(d.elems[k].values, k);

  std::vector<size_t> parent(d.elems.size());
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto h_group = stabilizer_h(i, j);
  for (size_t k = 0; k < d.elems.size(); ++k)
    for (const Perm& h : h_group) {
      size_t t = d.index.at(act(h, d.elems[k]).values);
      size_t a = find(k), b = find(t);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  d.orbit_of.assign(d.elems.size(), 0);
  std::map<size_t, size_t> root_to_orbit;  // ordered: orbits sorted by least element
  for (size_t k = 0; k < d.elems.size(); ++k) root_to_orbit.emplace(find(k), 0);
  size_t next = 0;
  for (auto& [root, id] : root_to_orbit) id = next++;
  d.orbits.resize(root_to_orbit.size());
  for (size_t k = 0; k < d.elems.size(); ++k) {
    size_t o = root_to_orbit.at(find(k));
    d.orbit_of[k] = o;
    d.orbits[o].push_back(k);
  }
  return d;
}

}  // namespace

std::string Injection::to_string() const {
  std::string s = "[";
  for (size_t k = 0; k < values.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(values[k]);
  }
  return s + "]";
}

void validate_injection(const Injection& b) {
  if (b.i < 0 || b.j < 0 || static_cast<int>(b.values.size()) != b.i)
    throw MismatchError("injection: bad shape");
  std::vector<bool> seen(b.j, false);
  for (int v : b.values) {
    if (v < 1 || v > b.j) throw MismatchError("injection: value out of range");
    if (seen[v - 1]) throw MismatchError("injection: repeated value");
    seen[v - 1] = true;
  }
}

Injection identity_injection(int j) {
  Injection b{j, j, std::vector<int>(j)};
  std::iota(b.values.begin(), b.values.end(), 1);
  return b;
}

Injection standard_inclusion(int j) {
  Injection b = identity_injection(j);
  b.j = j + 1;
  return b;
}

Injection compose_injection(const Injection& gamma, const Injection& beta) {
  if (beta.j != gamma.i) throw MismatchError("compose_injection: middle object mismatch");
  Injection r{beta.i, gamma.j, {}};
  r.values.reserve(beta.values.size());
  for (int v : beta.values) r.values.push_back(gamma.values[v - 1]);
  return r;
}

std::vector<Injection> fi_hom(int i, int j) {
  if (i < 0 || j < 0) throw MismatchError("fi_hom: negative object");
  std::vector<Injection> out;
  if (i > j) return out;
  std::vector<int> vals;
  std::vector<bool> used(j + 1, false);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == i) {
      out.push_back(Injection{i, j, vals});
      return;
    }
    for (int v = 1; v <= j; ++v) {
      if (used[v]) continue;
      used[v] = true;
      vals.push_back(v);
      self(self, depth + 1);
      vals.pop_back();
      used[v] = false;
    }
  };
  rec(rec, 0);
  return out;
}

FiAxiomsReport fi_axioms_check(int T) {
  FiAxiomsReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.messages.push_back(std::move(msg));
  };
  if (T < 0) {
    fail("negative truncation");
    return rep;
  }

  std::vector<std::vector<std::vector<Injection>>> hom(T + 1);
  for (int i = 0; i <= T; ++i) {
    hom[i].resize(T + 1);
    for (int j = i; j <= T; ++j) hom[i][j] = fi_hom(i, j);
  }
  auto at = [&](int i, int j) -> const std::vector<Injection>& { return hom[i][j]; };

  for (int i = 0; i <= T; ++i)
    for (int j = i; j <= T; ++j) {
      size_t expected = 1;
      for (int t = 0; t < i; ++t) expected *= static_cast<size_t>(j - t);
      if (at(i, j).size() != expected)
        fail("hom(" + std::to_string(i) + "," + std::to_string(j) + ") has " +
             std::to_string(at(i, j).size()) + " elements, expected " + std::to_string(expected));
      for (const Injection& b : at(i, j)) validate_injection(b);
    }

  for (int i = 0; i <= T; ++i)
    for (int j = i; j <= T; ++j)
      for (const Injection& b : at(i, j)) {
        if (!(compose_injection(identity_injection(j), b) == b))
          fail("left identity fails at " + b.to_string());
        if (!(compose_injection(b, identity_injection(i)) == b))
          fail("right identity fails at " + b.to_string());
      }

  for (int i = 0; i <= T; ++i)
    for (int j = i; j <= T; ++j)
      for (int l = j; l <= T; ++l)
        for (const Injection& b : at(i, j))
          for (const Injection& c : at(j, l)) {
            Injection d = compose_injection(c, b);
            validate_injection(d);
            if (std::find(at(i, l).begin(), at(i, l).end(), d) == at(i, l).end())
              fail("composite " + d.to_string() + " missing from hom(" + std::to_string(i) + "," +
                   std::to_string(l) + ")");
          }

  for (int i = 0; i <= T; ++i)
    for (int j = i; j <= T; ++j)
      for (int l = j; l <= T; ++l)
        for (int p = l; p <= T; ++p)
          for (const Injection& b : at(i, j))
            for (const Injection& c : at(j, l))
              for (const Injection& d : at(l, p))
                if (!(compose_injection(compose_injection(d, c), b) ==
                      compose_injection(d, compose_injection(c, b))))
                  fail("associativity fails at " + d.to_string() + " o " + c.to_string() + " o " +
                       b.to_string());
  return rep;
}

Perm perm_compose(const Perm& g, const Perm& h) {
  if (g.size() != h.size()) throw MismatchError("perm_compose: size mismatch");
  Perm r(g.size());
  for (size_t k = 0; k < g.size(); ++k) r[k] = g[h[k]];
  return r;
}

std::vector<Perm> symmetric_group(int n) {
  if (n < 0) throw MismatchError("symmetric_group: negative n");
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

MonomialAlgebra symmetric_group_algebra(int n, const FiCaps& caps) {
  if (n < 0) throw MismatchError("symmetric_group_algebra: negative n");
  if (n > caps.s)
    throw CapExceeded("symmetric group algebra capped at n = " + std::to_string(caps.s));
  const auto basis = symmetric_group(n);
  const size_t dim = basis.size();
  std::map<Perm, size_t> index;
  for (size_t k = 0; k < dim; ++k) index.emplace(basis[k], k);

  std::vector<uint32_t> prod(dim * dim);
  for (size_t a = 0; a < dim; ++a)
    for (size_t b = 0; b < dim; ++b)
      prod[a * dim + b] = static_cast<uint32_t>(index.at(perm_compose(basis[a], basis[b])));
  std::vector<uint8_t> loops(dim * dim, 0);

  std::vector<size_t> gens;
  if (n >= 2) {
    Perm t(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    Perm c(n);
    for (int k = 0; k < n; ++k) c[k] = (k + 1) % n;
    gens.push_back(index.at(t));
    if (index.at(c) != gens[0]) gens.push_back(index.at(c));
  }

  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  return MonomialAlgebra("ksym_" + std::to_string(n), dim, index.at(id), Rat(1), std::move(prod),
                         std::move(loops), std::move(gens));
}

std::vector<Perm> stabilizer_h(int i, int j) {
  if (i < 0 || j < i) throw MismatchError("stabilizer_h: need 0 <= i <= j");
  std::vector<Perm> out;
  for (const Perm& q : symmetric_group(j - i)) {
    Perm p(j);
    std::iota(p.begin(), p.begin() + i, 0);
    for (int t = 0; t < j - i; ++t) p[i + t] = i + q[t];
    out.push_back(std::move(p));
  }
  return out;
}

Perm claim_b1_witness(int i, int j, const Perm& h) {
  if (static_cast<int>(h.size()) != j) throw MismatchError("claim_b1_witness: wrong degree");
  check_perm(h);
  for (int k = 0; k < i; ++k)
    if (h[k] != k) throw MismatchError("claim_b1_witness: h does not fix the base points");

  Perm g(j + 1);
  for (int k = 0; k < j; ++k) g[k] = h[k];
  g[j] = j;

  check_perm(g);
  for (int k = 0; k < i; ++k)
    if (g[k] != k) throw InternalContradiction("claim_b1_witness: extension left the stabilizer");
  for (int x = 0; x < j; ++x)  // g(alpha(x)) == alpha(h(x))
    if (g[x] != h[x]) throw InternalContradiction("claim_b1_witness: square does not commute");
  return g;
}

MuReport mu(int i, int j) {
  if (i < 0 || j < 0) throw MismatchError("mu: negative object");
  MuReport r;
  r.i = i;
  r.j = j;
  OrbitData src = orbit_data(i, j);
  OrbitData tgt = orbit_data(i, j + 1);
  r.src_orbits = src.orbits;
  r.tgt_orbits = tgt.orbits;

  r.map.assign(src.orbits.size(), 0);
  for (size_t o = 0; o < src.orbits.size(); ++o) {
    bool first = true;
    size_t image = 0;
    for (size_t k : src.orbits[o]) {
      // Postcomposition with alpha_j keeps the value list.
      size_t t = tgt.orbit_of[tgt.index.at(src.elems[k].values)];
      if (first) {
        image = t;
        first = false;
      } else if (t != image) {
        throw ConventionFailure("mu: an orbit image crosses target orbits");
      }
    }
    r.map[o] = image;
  }

  std::vector<char> hit(tgt.orbits.size(), 0);
  bool injective = true;
  for (size_t t : r.map) {
    if (hit[t]) injective = false;
    hit[t] = 1;
  }
  const bool surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  r.bijective = injective && surjective;
  return r;
}

FiTower build_fi_Mm(int m, int T, const FiCaps& caps) {
  if (m < 0) throw MismatchError("build_fi_Mm: negative m");
  if (T < 0) throw MismatchError("build_fi_Mm: negative T");

  FiTower M;
  M.m = m;
  M.homs.resize(T + 1);
  for (int i = 0; i <= T; ++i) {
    auto alg = std::make_shared<const MonomialAlgebra>(symmetric_group_algebra(i, caps));
    M.tower.algebras.push_back(alg);
    if (i < m) {
      M.tower.levels.push_back(FDModule::zero(*alg));
      continue;
    }
    M.homs[i] = fi_hom(m, i);
    const auto& basis = M.homs[i];
    std::map<std::vector<int>, size_t> index;
    for (size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k].values, k);

    FDModule lvl;
    lvl.alg = alg.get();
    lvl.dim = basis.size();
    const auto group = symmetric_group(i);
    lvl.action.reserve(group.size());
    for (const Perm& g : group) {
      Matrix mat(lvl.dim, lvl.dim);
      for (size_t c = 0; c < basis.size(); ++c) mat.at(index.at(act(g, basis[c]).values), c) = 1;
      lvl.action.push_back(std::move(mat));
    }
    M.tower.levels.push_back(std::move(lvl));
  }

  for (int i = 0; i < T; ++i) {
    Matrix phi(M.tower.levels[i + 1].dim, M.tower.levels[i].dim);
    if (i >= m) {
      std::map<std::vector<int>, size_t> index1;
      for (size_t k = 0; k < M.homs[i + 1].size(); ++k) index1.emplace(M.homs[i + 1][k].values, k);
      for (size_t c = 0; c < M.homs[i].size(); ++c)
        phi.at(index1.at(M.homs[i][c].values), c) = 1;
    }
    M.tower.shifts.push_back(std::move(phi));
  }
  return M;
}

QuotientSpace fi_f_prime(const FiTower& m, int i, const TruncSubmodule& n) {
  if (i < m.m || i > m.tower.T()) throw MismatchError("fi_f_prime: level out of range");
  if (n.spaces.size() != m.tower.levels.size())
    throw MismatchError("fi_f_prime: submodule level count mismatch");
  const auto& basis = m.homs[i];
  std::map<std::vector<int>, size_t> index;
  for (size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k].values, k);

  std::vector<Matrix> ops;
  for (const Perm& h : stabilizer_h(m.m, i)) {
    Matrix mat(basis.size(), basis.size());
    for (size_t c = 0; c < basis.size(); ++c) mat.at(index.at(act(h, basis[c]).values), c) = 1;
    ops.push_back(std::move(mat));
  }
  Vec scalars(ops.size(), Rat(1));
  return coinvariants_in(ops, scalars, n.spaces[i]);
}

InducedMap fi_nu_prime(const FiTower& m, int i, const TruncSubmodule& n) {
  if (i < m.m || i + 1 > m.tower.T()) throw MismatchError("fi_nu_prime: level out of range");
  InducedMap r;
  r.src = fi_f_prime(m, i, n);
  r.tgt = fi_f_prime(m, i + 1, n);
  r.map = induced_quotient_map(m.tower.shifts[i], n.spaces[i], r.src, n.spaces[i + 1], r.tgt);
  return r;
}

CriterionCertificate fi_certificate(int m, int T, const FiCaps& caps) {
  FiTower M = build_fi_Mm(m, T, caps);
  return assemble_certificate(M.tower, m, "fi", std::nullopt, [&M](int j, const TruncSubmodule& n) {
    return fi_f_prime(M, j, n);
  });
}

}  // namespace towerlab
