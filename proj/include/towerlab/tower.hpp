#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "towerlab/module.hpp"
#include "towerlab/sampling.hpp"

namespace towerlab {

// A tower of modules M_0..M_T over algebras A_0..A_T with plain k-linear
// shift maps phi_i : M_i -> M_{i+1} (no equivariance assumed).
struct Tower {
  std::vector<std::shared_ptr<const MonomialAlgebra>> algebras;  // size T+1
  std::vector<FDModule> levels;                                  // size T+1
  std::vector<Matrix> shifts;                                    // size T

  int T() const { return static_cast<int>(levels.size()) - 1; }
};

// Levelwise subspaces, action-invariant and shift-compatible.
struct TruncSubmodule {
  std::vector<Subspace> spaces;

  bool operator==(const TruncSubmodule&) const = default;
};

struct TowerReport {
  bool ok = true;
  std::vector<bool> level_ok;
  std::vector<std::string> messages;
};

// Per-level module-axiom and shift-shape verification.
TowerReport validate_tower(const Tower& m);

// Throws MismatchError when a level fails invariance or a shift escapes.
void validate_submodule(const Tower& m, const TruncSubmodule& n);

TruncSubmodule zero_submodule(const Tower& m);
TruncSubmodule full_submodule(const Tower& m);

bool submodule_contains(const TruncSubmodule& outer, const TruncSubmodule& inner);

// Least submodule containing the seed vectors: one ascending pass closing
// each level under the action generators and pushing along the shifts.
TruncSubmodule submodule_closure(const Tower& m, const std::vector<std::pair<int, Vec>>& seeds);

// Smallest g whose level-<=g seeds regenerate n, if any within T.
std::optional<int> generated_in_degrees(const Tower& m, const TruncSubmodule& n);

// F(i, N) = intertwiners M_i -> M_i with image inside N_i, realized inside
// the flattened End(M_i) space so that N' <= N yields a literal subspace
// inclusion F(i, N') <= F(i, N).
HomSpace F(const Tower& m, int i, const TruncSubmodule& n);

// The equivariant projection onto N_i: lies in F(i, N) but outside F(i, N')
// whenever N'_i is properly contained in N_i and level i is semisimple.
// Throws HypothesisFailure when the preconditions fail.
Matrix lemma_a_witness(const Tower& m, int i, const TruncSubmodule& n,
                       const TruncSubmodule& nprime);

enum class ReplayHalt { ChainStabilized, TruncationReached, BoundWouldBeViolated };
std::string_view replay_halt_name(ReplayHalt h);

struct ProofReplayReport {
  int d = 0;
  std::vector<int> ell;      // the chain l_0 = d < l_1 < ... of levels
  std::vector<size_t> dims;  // dim F(l_k, N^(l_k)) per chain entry
  size_t bound = 0;          // dim F(d, M) = dim End(M_d)
  ReplayHalt halted = ReplayHalt::ChainStabilized;
};

// Replays the ascending-chain argument for n starting at level d. The
// recorded dims must increase strictly and stay within bound; a violation
// throws InternalContradiction (an implementation bug, never a math
// outcome).
ProofReplayReport proof_replay(const Tower& m, const TruncSubmodule& n, int d);

// Seeded random submodule: closure of `count` random small-rational vectors
// placed at random levels.
TruncSubmodule sample_submodule(const Tower& m, SplitMix64& rng, int count);

}  // namespace towerlab
