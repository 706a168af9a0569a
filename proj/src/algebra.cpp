#include "towerlab/algebra.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "towerlab/sampling.hpp"

namespace towerlab {

namespace {
// Full structure tables beyond this size are refused: they no longer fit
// the exact-arithmetic workflows this tool is meant for.
constexpr size_t kStructureTableCap = 20'000'000;
}  // namespace

MonomialAlgebra::MonomialAlgebra(std::string name, size_t dim, size_t unit, Rat delta,
                                 std::vector<uint32_t> prod, std::vector<uint8_t> loops,
                                 std::vector<size_t> generators)
    : name_(std::move(name)),
      dim_(dim),
      unit_(unit),
      delta_(std::move(delta)),
      prod_(std::move(prod)),
      loops_(std::move(loops)),
      generators_(std::move(generators)) {
  if (dim_ == 0) throw MismatchError(name_ + ": zero-dimensional algebra");
  if (unit_ >= dim_) throw MismatchError(name_ + ": unit index out of range");
  if (prod_.size() != dim_ * dim_ || loops_.size() != dim_ * dim_)
    throw MismatchError(name_ + ": structure table size mismatch");
  for (uint32_t k : prod_)
    if (k >= dim_) throw MismatchError(name_ + ": product index out of range");
  for (size_t g : generators_)
    if (g >= dim_) throw MismatchError(name_ + ": generator index out of range");
  const unsigned max_loops = loops_.empty() ? 0 : *std::max_element(loops_.begin(), loops_.end());
  delta_powers_.resize(max_loops + 1);
  for (unsigned e = 0; e <= max_loops; ++e) delta_powers_[e] = rat_pow(delta_, e);
  check_unit();
}

std::vector<size_t> MonomialAlgebra::action_generators() const {
  if (!generators_.empty()) return generators_;
  std::vector<size_t> all(dim_);
  for (size_t i = 0; i < dim_; ++i) all[i] = i;
  return all;
}

Vec MonomialAlgebra::basis_vec(size_t i) const {
  Vec v(dim_, Rat(0));
  v[i] = 1;
  return v;
}

Vec MonomialAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec out(dim_, Rat(0));
  for (size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < dim_; ++j) {
      if (y[j] == 0) continue;
      const Rat& c = coeff(i, j);
      if (c == 0) continue;
      out[prod(i, j)] += x[i] * y[j] * c;
    }
  }
  return out;
}

Matrix MonomialAlgebra::left_mul_matrix(size_t i) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.at(prod(i, j), j) = coeff(i, j);
  return m;
}

Matrix MonomialAlgebra::right_mul_matrix(size_t i) const {
  Matrix m(dim_, dim_);
  for (size_t j = 0; j < dim_; ++j) m.at(prod(j, i), j) = coeff(j, i);
  return m;
}

void MonomialAlgebra::check_unit() const {
  for (size_t j = 0; j < dim_; ++j) {
    if (prod(unit_, j) != j || coeff(unit_, j) != 1 || prod(j, unit_) != j || coeff(j, unit_) != 1)
      throw ConventionFailure(name_ + ": unit element fails at basis index " + std::to_string(j));
  }
}

namespace {
// Associativity on a monomial table, checked at the level of loop exponents
// (stronger than coefficient equality, and independent of the value of
// delta): (b_i b_j) b_k and b_i (b_j b_k) must land on the same basis
// element with the same total exponent.
void check_triple(const MonomialAlgebra& a, size_t i, size_t j, size_t k) {
  const size_t ij = a.prod(i, j), jk = a.prod(j, k);
  if (a.prod(ij, k) != a.prod(i, jk) ||
      a.loops(i, j) + a.loops(ij, k) != a.loops(j, k) + a.loops(i, jk))
    throw ConventionFailure(a.name() + ": associativity fails at triple (" + std::to_string(i) +
                            "," + std::to_string(j) + "," + std::to_string(k) + ")");
}
}  // namespace

void MonomialAlgebra::check_associativity() const {
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = 0; j < dim_; ++j)
      for (size_t k = 0; k < dim_; ++k) check_triple(*this, i, j, k);
}

void MonomialAlgebra::check_associativity_sampled(size_t samples, uint64_t seed) const {
  SplitMix64 rng(seed);
  for (size_t t = 0; t < samples; ++t)
    check_triple(*this, rng.next() % dim_, rng.next() % dim_, rng.next() % dim_);
}

Element Element::from_dense(const Vec& v) {
  Element e;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) e.coeffs[i] = v[i];
  return e;
}

Vec Element::to_dense(size_t dim) const {
  Vec v(dim, Rat(0));
  for (const auto& [i, c] : coeffs) v[i] = c;
  return v;
}

void Element::add(size_t i, const Rat& c) {
  auto it = coeffs.find(i);
  if (it == coeffs.end()) {
    if (c != 0) coeffs[i] = c;
    return;
  }
  it->second += c;
  if (it->second == 0) coeffs.erase(it);
}

Rat Character::apply(const Vec& x) const {
  Rat s(0);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) s += values[i] * x[i];
  return s;
}

DiagramAlgebra::DiagramAlgebra(Family family, int n, Rat delta, const DiagramCaps& caps)
    : family_(family), n_(n) {
  basis_ = enumerate_diagrams(family, n, caps);
  const size_t dim = basis_.size();
  if (dim * dim > kStructureTableCap)
    throw CapExceeded(std::string(family_name(family)) + "_" + std::to_string(n) +
                      ": structure table would have " + std::to_string(dim * dim) + " entries");
  for (size_t i = 0; i < dim; ++i) index_[basis_[i]] = i;

  std::vector<uint32_t> prod(dim * dim);
  std::vector<uint8_t> loops(dim * dim);
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      auto c = compose(basis_[i], basis_[j]);
      prod[i * dim + j] = static_cast<uint32_t>(index_.at(c.diagram));
      loops[i * dim + j] = static_cast<uint8_t>(c.loops);
    }

  const size_t unit = index_.at(Diagram::identity(family, n));
  std::vector<size_t> gens;
  if (family == Family::TL && n >= 2) {
    // e_1 .. e_{n-1} generate: every nonidentity basis diagram is a reduced
    // e-word with coefficient exactly 1.
    for (int k = 1; k < n; ++k) {
      std::vector<std::vector<int>> blocks{{k - 1, k}, {n + k - 1, n + k}};
      for (int s = 0; s < n; ++s)
        if (s != k - 1 && s != k) blocks.push_back({s, n + s});
      gens.push_back(index_.at(Diagram(family, n, std::move(blocks))));
    }
  }
  std::string name = std::string(family_name(family)) + "_" + std::to_string(n) + "(" +
                     rat_to_string(delta) + ")";
  alg_ = std::make_shared<MonomialAlgebra>(std::move(name), dim, unit, std::move(delta),
                                           std::move(prod), std::move(loops), std::move(gens));
}

size_t DiagramAlgebra::index_of(const Diagram& d) const {
  auto it = index_.find(d);
  if (it == index_.end()) throw MismatchError("diagram not in basis: " + d.to_string());
  return it->second;
}

DiagramAlgebra DiagramAlgebra::from_table(Family family, int n, Rat delta,
                                          std::vector<Diagram> basis, std::vector<uint32_t> prod,
                                          std::vector<uint8_t> loops) {
  DiagramAlgebra a;
  a.family_ = family;
  a.n_ = n;
  a.basis_ = std::move(basis);
  for (size_t i = 0; i < a.basis_.size(); ++i) a.index_[a.basis_[i]] = i;
  const size_t unit = a.index_.at(Diagram::identity(family, n));
  std::string name = std::string(family_name(family)) + "_" + std::to_string(n) + "(" +
                     rat_to_string(delta) + ")";
  a.alg_ = std::make_shared<MonomialAlgebra>(std::move(name), a.basis_.size(), unit,
                                             std::move(delta), std::move(prod), std::move(loops));
  return a;
}

Subspace radical(const MonomialAlgebra& a) {
  const size_t dim = a.dim();
  // trace_l[d] = trace of left multiplication by b_d.
  Vec trace_l(dim, Rat(0));
  for (size_t d = 0; d < dim; ++d)
    for (size_t c = 0; c < dim; ++c)
      if (a.prod(d, c) == c) trace_l[d] += a.coeff(d, c);

  Matrix gram(dim, dim);
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      const Rat& tl = trace_l[a.prod(i, j)];
      if (tl != 0) gram.at(i, j) = a.coeff(i, j) * tl;
    }
  return kernel(gram);
}

Character trivial_character(const DiagramAlgebra& a) {
  const size_t dim = a.dim();
  Character eps;
  eps.values.assign(dim, Rat(0));
  for (size_t i = 0; i < dim; ++i)
    if (a.basis()[i].is_permutation()) eps.values[i] = 1;

  const MonomialAlgebra& alg = a.alg();
  if (eps.values[alg.unit()] != 1)
    throw ConventionFailure(alg.name() + ": trivial character is 0 on the unit");
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) {
      if (eps.values[i] * eps.values[j] != alg.coeff(i, j) * eps.values[alg.prod(i, j)])
        throw ConventionFailure(alg.name() + ": trivial character not multiplicative at pair (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return eps;
}

std::vector<size_t> embed(const DiagramAlgebra& sub, const DiagramAlgebra& big) {
  if (sub.family() != big.family()) throw MismatchError("embed: family mismatch");
  if (sub.delta() != big.delta()) throw MismatchError("embed: delta mismatch");
  const int s = sub.n(), n = big.n();
  if (s > n) throw MismatchError("embed: subalgebra has more strands");
  const int off = n - s;

  std::vector<size_t> out(sub.dim());
  for (size_t i = 0; i < sub.dim(); ++i) {
    std::vector<std::vector<int>> blocks;
    for (const auto& blk : sub.basis()[i].blocks()) {
      std::vector<int> mapped;
      for (int p : blk) mapped.push_back(p < s ? p + off : p + 2 * off);
      blocks.push_back(std::move(mapped));
    }
    for (int q = 0; q < off; ++q) blocks.push_back({q, n + q});
    out[i] = big.index_of(Diagram(big.family(), n, std::move(blocks)));
  }
  return out;
}

void save_structure_table(const DiagramAlgebra& a, const std::string& path) {
  nlohmann::ordered_json j;
  j["family"] = std::string(family_name(a.family()));
  j["n"] = a.n();
  j["delta"] = rat_to_string(a.delta());
  auto basis = nlohmann::ordered_json::array();
  for (const auto& d : a.basis()) basis.push_back(d.to_string());
  j["basis"] = std::move(basis);
  auto products = nlohmann::ordered_json::array();
  const size_t dim = a.dim();
  for (size_t i = 0; i < dim; ++i)
    for (size_t k = 0; k < dim; ++k)
      products.push_back({i, k, a.alg().prod(i, k), a.alg().loops(i, k)});
  j["products"] = std::move(products);

  std::ofstream out(path);
  if (!out) throw Error("cannot write structure table: " + path);
  out << j.dump() << "\n";
}

DiagramAlgebra load_structure_table(const std::string& path, const DiagramCaps& caps) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read structure table: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw MismatchError("structure table parse error: " + std::string(e.what()));
  }

  const Family family = family_from_name(j.at("family").get<std::string>());
  const int n = j.at("n").get<int>();
  const Rat delta = rat_from_string(j.at("delta").get<std::string>());

  // The basis must be exactly the canonical enumeration; only the product
  // table is trusted from the file, and it is spot checked below.
  std::vector<Diagram> basis = enumerate_diagrams(family, n, caps);
  const auto& stored = j.at("basis");
  if (stored.size() != basis.size())
    throw MismatchError("structure table basis size mismatch");
  for (size_t i = 0; i < basis.size(); ++i)
    if (stored[i].get<std::string>() != basis[i].to_string())
      throw MismatchError("structure table basis mismatch at index " + std::to_string(i));

  const size_t dim = basis.size();
  std::vector<uint32_t> prod(dim * dim, static_cast<uint32_t>(dim));
  std::vector<uint8_t> loops(dim * dim, 0);
  for (const auto& row : j.at("products")) {
    if (row.size() != 4) throw MismatchError("structure table product row malformed");
    const size_t i = row[0].get<size_t>(), k = row[1].get<size_t>();
    const size_t p = row[2].get<size_t>();
    const unsigned l = row[3].get<unsigned>();
    if (i >= dim || k >= dim || p >= dim || l > 255)
      throw MismatchError("structure table product entry out of range");
    if (prod[i * dim + k] != dim) throw MismatchError("structure table duplicate product entry");
    prod[i * dim + k] = static_cast<uint32_t>(p);
    loops[i * dim + k] = static_cast<uint8_t>(l);
  }
  for (uint32_t p : prod)
    if (p == dim) throw MismatchError("structure table missing product entries");

  DiagramAlgebra a =
      DiagramAlgebra::from_table(family, n, delta, std::move(basis), std::move(prod), std::move(loops));
  // Revalidation: the unit is checked by construction; sample about 1% of
  // all dim^3 associativity triples (bounded to keep loading responsive).
  const size_t triples = dim * dim * dim;
  const size_t samples = std::clamp<size_t>(triples / 100, 100, 2'000'000);
  a.alg().check_associativity_sampled(samples, /*seed=*/0x7ab1e5eedULL);
  return a;
}

}  // namespace towerlab
