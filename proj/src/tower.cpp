#include "towerlab/tower.hpp"

#include <algorithm>

namespace towerlab {

TowerReport validate_tower(const Tower& m) {
  TowerReport report;
  const int T = m.T();
  if (T < 0 || m.algebras.size() != m.levels.size() ||
      m.shifts.size() + 1 != m.levels.size()) {
    report.ok = false;
    report.messages.push_back("tower shape mismatch");
    return report;
  }
  report.level_ok.assign(T + 1, true);
  for (int i = 0; i <= T; ++i) {
    if (m.levels[i].alg != m.algebras[i].get()) {
      report.level_ok[i] = false;
      report.messages.push_back("level " + std::to_string(i) + ": algebra pointer mismatch");
      continue;
    }
    try {
      m.levels[i].validate();
    } catch (const Error& e) {
      report.level_ok[i] = false;
      report.messages.push_back("level " + std::to_string(i) + ": " + e.what());
    }
  }
  for (int i = 0; i < T; ++i) {
    if (m.shifts[i].rows() != m.levels[i + 1].dim || m.shifts[i].cols() != m.levels[i].dim) {
      report.level_ok[i] = false;
      report.messages.push_back("shift " + std::to_string(i) + ": shape mismatch");
    }
  }
  report.ok = std::all_of(report.level_ok.begin(), report.level_ok.end(), [](bool b) { return b; });
  return report;
}

void validate_submodule(const Tower& m, const TruncSubmodule& n) {
  const int T = m.T();
  if (static_cast<int>(n.spaces.size()) != T + 1)
    throw MismatchError("submodule level count mismatch");
  for (int i = 0; i <= T; ++i) {
    if (n.spaces[i].ambient_dim() != m.levels[i].dim)
      throw MismatchError("submodule level " + std::to_string(i) + ": ambient mismatch");
    if (!is_invariant(m.levels[i], n.spaces[i]))
      throw MismatchError("submodule level " + std::to_string(i) + ": not action-invariant");
  }
  for (int i = 0; i < T; ++i)
    for (const auto& v : n.spaces[i].basis_rows())
      if (!n.spaces[i + 1].contains_vector(m.shifts[i].apply(v)))
        throw MismatchError("submodule level " + std::to_string(i) + ": shift escapes");
}

TruncSubmodule zero_submodule(const Tower& m) {
  TruncSubmodule n;
  for (const auto& lvl : m.levels) n.spaces.push_back(Subspace::zero(lvl.dim));
  return n;
}

TruncSubmodule full_submodule(const Tower& m) {
  TruncSubmodule n;
  for (const auto& lvl : m.levels) n.spaces.push_back(Subspace::full(lvl.dim));
  return n;
}

bool submodule_contains(const TruncSubmodule& outer, const TruncSubmodule& inner) {
  if (outer.spaces.size() != inner.spaces.size()) return false;
  for (size_t i = 0; i < outer.spaces.size(); ++i)
    if (!outer.spaces[i].contains(inner.spaces[i])) return false;
  return true;
}

namespace {

// Smallest action-invariant subspace containing the rows already in b plus
// the seeds: breadth-first closure under the action generators.
void close_under_action(const FDModule& lvl, RowSpaceBuilder& b, std::vector<Vec> pending) {
  const auto gens = lvl.alg->action_generators();
  for (auto& v : pending) {
    // Keep only genuinely new rows in the worklist.
    if (!b.insert(v)) continue;
  }
  // Re-walk everything inserted so far; builder rows mutate as new pivots
  // arrive, so work from explicit copies.
  std::vector<Vec> work;
  for (const auto& row : b.rows()) work.push_back(row);
  while (!work.empty()) {
    Vec v = std::move(work.back());
    work.pop_back();
    for (size_t g : gens) {
      Vec w = lvl.action[g].apply(v);
      if (b.insert(w)) work.push_back(std::move(w));
    }
  }
}

}  // namespace

TruncSubmodule submodule_closure(const Tower& m, const std::vector<std::pair<int, Vec>>& seeds) {
  const int T = m.T();
  for (const auto& [lvl, v] : seeds) {
    if (lvl < 0 || lvl > T) throw MismatchError("closure seed level out of range");
    if (v.size() != m.levels[lvl].dim) throw MismatchError("closure seed dimension mismatch");
  }
  TruncSubmodule n;
  n.spaces.reserve(T + 1);
  std::vector<Vec> carried;  // images pushed up from the previous level
  for (int i = 0; i <= T; ++i) {
    RowSpaceBuilder b(m.levels[i].dim);
    std::vector<Vec> pending = std::move(carried);
    for (const auto& [lvl, v] : seeds)
      if (lvl == i) pending.push_back(v);
    close_under_action(m.levels[i], b, std::move(pending));
    carried.clear();
    if (i < T)
      for (const auto& row : b.rows()) carried.push_back(m.shifts[i].apply(row));
    n.spaces.push_back(Subspace::from_builder(std::move(b)));
  }
  return n;
}

std::optional<int> generated_in_degrees(const Tower& m, const TruncSubmodule& n) {
  for (int g = 0; g <= m.T(); ++g) {
    std::vector<std::pair<int, Vec>> seeds;
    for (int i = 0; i <= g; ++i)
      for (const auto& v : n.spaces[i].basis_rows()) seeds.emplace_back(i, v);
    if (submodule_closure(m, seeds) == n) return g;
  }
  return std::nullopt;
}

HomSpace F(const Tower& m, int i, const TruncSubmodule& n) {
  if (i < 0 || i > m.T()) throw MismatchError("F: level out of range");
  const FDModule& lvl = m.levels[i];
  const Subspace& ni = n.spaces[i];
  const size_t d = lvl.dim;
  const size_t unknowns = d * d;
  const auto gens = lvl.alg->action_generators();
  const QuotientSpace q = quotient(d, ni);

  Matrix sys(gens.size() * unknowns + q.dim * d, unknowns);
  size_t row = 0;
  for (size_t g : gens) {
    const Matrix& a = lvl.action[g];
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) {
        for (size_t k = 0; k < d; ++k)
          if (a.at(k, c) != 0) sys.at(row, r * d + k) += a.at(k, c);
        for (size_t k = 0; k < d; ++k)
          if (a.at(r, k) != 0) sys.at(row, k * d + c) -= a.at(r, k);
        ++row;
      }
  }
  // Image constraint: q.project * X = 0.
  for (size_t pr = 0; pr < q.dim; ++pr)
    for (size_t c = 0; c < d; ++c) {
      for (size_t k = 0; k < d; ++k)
        if (q.project.at(pr, k) != 0) sys.at(row, k * d + c) = q.project.at(pr, k);
      ++row;
    }

  HomSpace h;
  h.src_dim = d;
  h.tgt_dim = d;
  h.space = kernel(sys);
  return h;
}

Matrix lemma_a_witness(const Tower& m, int i, const TruncSubmodule& n,
                       const TruncSubmodule& nprime) {
  if (i < 0 || i > m.T()) throw MismatchError("lemma_a_witness: level out of range");
  if (!submodule_contains(n, nprime))
    throw HypothesisFailure("lemma_a_witness: N' is not contained in N");
  auto ops = subspace_ops(n.spaces[i], nprime.spaces[i]);
  if (!ops.proper)
    throw HypothesisFailure("lemma_a_witness: N'_i is not properly contained in N_i");
  if (radical(*m.algebras[i]).dim() != 0)
    throw HypothesisFailure("lemma_a_witness: level algebra is not semisimple");

  Matrix h = equivariant_projection(m.levels[i], n.spaces[i]);
  const Vec flat = h.flatten();
  if (!F(m, i, n).space.contains_vector(flat))
    throw InternalContradiction("lemma_a_witness: projection not in F(i, N)");
  if (F(m, i, nprime).space.contains_vector(flat))
    throw InternalContradiction("lemma_a_witness: projection lies in F(i, N')");
  return h;
}

std::string_view replay_halt_name(ReplayHalt h) {
  switch (h) {
    case ReplayHalt::ChainStabilized: return "chain-stabilized";
    case ReplayHalt::TruncationReached: return "truncation-reached";
    case ReplayHalt::BoundWouldBeViolated: return "bound-would-be-violated";
  }
  throw Error("unknown halt reason");
}

ProofReplayReport proof_replay(const Tower& m, const TruncSubmodule& n, int d) {
  const int T = m.T();
  if (d < 0 || d > T) throw MismatchError("proof_replay: d out of range");

  ProofReplayReport report;
  report.d = d;
  report.bound = F(m, d, full_submodule(m)).dim();

  bool all_zero = true;
  for (const auto& sp : n.spaces)
    if (sp.dim() != 0) all_zero = false;
  if (all_zero) {
    report.halted = ReplayHalt::ChainStabilized;
    return report;
  }

  auto prefix_closure = [&](int ell) {
    std::vector<std::pair<int, Vec>> seeds;
    for (int i = 0; i <= ell; ++i)
      for (const auto& v : n.spaces[i].basis_rows()) seeds.emplace_back(i, v);
    return submodule_closure(m, seeds);
  };

  int ell = d;
  while (true) {
    const TruncSubmodule nl = prefix_closure(ell);
    const size_t dim = F(m, ell, nl).dim();
    if (!report.dims.empty() && dim <= report.dims.back())
      throw InternalContradiction("proof_replay: chain dimension failed to increase at level " +
                                  std::to_string(ell));
    if (dim > report.bound)
      throw InternalContradiction("proof_replay: chain dimension " + std::to_string(dim) +
                                  " exceeds bound " + std::to_string(report.bound) + " at level " +
                                  std::to_string(ell));
    report.ell.push_back(ell);
    report.dims.push_back(dim);

    int next = -1;
    for (int j = ell + 1; j <= T; ++j) {
      auto ops = subspace_ops(n.spaces[j], nl.spaces[j]);
      if (ops.proper) {
        next = j;
        break;
      }
    }
    if (next < 0) {
      report.halted = ell < T ? ReplayHalt::ChainStabilized : ReplayHalt::TruncationReached;
      return report;
    }
    ell = next;
  }
}

TruncSubmodule sample_submodule(const Tower& m, SplitMix64& rng, int count) {
  std::vector<std::pair<int, Vec>> seeds;
  std::vector<int> usable;
  for (int i = 0; i <= m.T(); ++i)
    if (m.levels[i].dim > 0) usable.push_back(i);
  if (usable.empty()) return zero_submodule(m);
  for (int t = 0; t < count; ++t) {
    const int lvl = usable[static_cast<size_t>(rng.next() % usable.size())];
    Vec v(m.levels[lvl].dim);
    for (auto& x : v) x = rng.next_small_rat();
    seeds.emplace_back(lvl, std::move(v));
  }
  return submodule_closure(m, seeds);
}

}  // namespace towerlab
