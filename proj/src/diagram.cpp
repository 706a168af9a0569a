#include "towerlab/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace towerlab {

namespace {

// Position of point p on the boundary walk: bottom 1..n left to right, then
// top n'..1' right to left. Crossing tests are stated in this cyclic order.
size_t walk_pos(int p, int n) {
  return p < n ? static_cast<size_t>(p) : static_cast<size_t>(3 * n - 1 - p);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::TL: return "tl";
    case Family::Brauer: return "brauer";
    case Family::Partition: return "partition";
  }
  throw Error("unknown family");
}

Family family_from_name(std::string_view name) {
  if (name == "tl") return Family::TL;
  if (name == "brauer") return Family::Brauer;
  if (name == "partition") return Family::Partition;
  throw MismatchError("unknown family name: '" + std::string(name) + "'");
}

int family_cap(Family f, const DiagramCaps& caps) {
  switch (f) {
    case Family::TL: return caps.tl;
    case Family::Brauer: return caps.brauer;
    case Family::Partition: return caps.partition;
  }
  throw Error("unknown family");
}

Diagram::Diagram(Family family, int n, std::vector<std::vector<int>> blocks)
    : family_(family), n_(n), blocks_(std::move(blocks)) {
  if (n < 0) throw MismatchError("negative strand count");
  std::vector<int> seen(2 * n, 0);
  for (auto& blk : blocks_) {
    if (blk.empty()) throw MismatchError("empty block");
    std::sort(blk.begin(), blk.end());
    for (int p : blk) {
      if (p < 0 || p >= 2 * n || seen[p]++) throw MismatchError("blocks are not a partition");
    }
  }
  for (int c : seen)
    if (!c) throw MismatchError("blocks are not a partition");
  std::sort(blocks_.begin(), blocks_.end());

  if (family_ != Family::Partition) {
    for (const auto& blk : blocks_)
      if (blk.size() != 2) throw MismatchError("Brauer/TL diagram must be a perfect matching");
  }
  if (family_ == Family::TL && !is_planar()) throw MismatchError("TL diagram must be planar");
}

Diagram Diagram::identity(Family family, int n) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) blocks.push_back({i, n + i});
  return Diagram(family, n, std::move(blocks));
}

bool Diagram::is_identity() const {
  for (const auto& blk : blocks_)
    if (blk.size() != 2 || blk[1] != blk[0] + n_) return false;
  return true;
}

bool Diagram::is_permutation() const {
  for (const auto& blk : blocks_)
    if (blk.size() != 2 || blk[0] >= n_ || blk[1] < n_) return false;
  return true;
}

bool Diagram::is_planar() const {
  // Blocks A, B cross iff their points interleave along the boundary walk:
  // the merged label sequence changes blocks at least three times.
  const size_t nb = blocks_.size();
  std::vector<std::vector<size_t>> pos(nb);
  for (size_t b = 0; b < nb; ++b) {
    for (int p : blocks_[b]) pos[b].push_back(walk_pos(p, n_));
    std::sort(pos[b].begin(), pos[b].end());
  }
  for (size_t a = 0; a < nb; ++a)
    for (size_t b = a + 1; b < nb; ++b) {
      size_t ia = 0, ib = 0;
      int changes = 0, last = -1;
      while (ia < pos[a].size() || ib < pos[b].size()) {
        int who;
        if (ib == pos[b].size() || (ia < pos[a].size() && pos[a][ia] < pos[b][ib])) {
          who = 0;
          ++ia;
        } else {
          who = 1;
          ++ib;
        }
        if (who != last) {
          if (last != -1) ++changes;
          last = who;
        }
      }
      if (changes >= 3) return false;
    }
  return true;
}

std::string Diagram::to_string() const {
  std::string s;
  for (const auto& blk : blocks_) {
    s += '{';
    for (size_t k = 0; k < blk.size(); ++k) {
      if (k) s += ',';
      int p = blk[k];
      if (p < n_) {
        s += std::to_string(p + 1);
      } else {
        s += std::to_string(p - n_ + 1);
        s += '\'';
      }
    }
    s += '}';
  }
  return s;
}

Diagram Diagram::parse(Family family, std::string_view text) {
  size_t pos = 0;
  int max_label = 0;
  std::vector<std::vector<std::pair<int, bool>>> blocks;
  while (pos < text.size()) {
    if (text[pos] != '{') throw MismatchError("diagram parse: expected '{'");
    ++pos;
    std::vector<std::pair<int, bool>> blk;
    while (pos < text.size() && text[pos] != '}') {
      int v = 0;
      size_t digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        v = v * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
      }
      if (!digits) throw MismatchError("diagram parse: expected number");
      bool primed = false;
      if (pos < text.size() && text[pos] == '\'') {
        primed = true;
        ++pos;
      }
      blk.emplace_back(v, primed);
      max_label = std::max(max_label, v);
      if (pos < text.size() && text[pos] == ',') ++pos;
    }
    if (pos == text.size()) throw MismatchError("diagram parse: expected '}'");
    ++pos;
    blocks.push_back(std::move(blk));
  }
  const int n = max_label;
  std::vector<std::vector<int>> pts;
  for (const auto& blk : blocks) {
    std::vector<int> b;
    for (auto [v, primed] : blk) {
      if (v < 1 || v > n) throw MismatchError("diagram parse: point out of range");
      b.push_back(primed ? n + v - 1 : v - 1);
    }
    pts.push_back(std::move(b));
  }
  return Diagram(family, n, std::move(pts));
}

Classification classify(const Diagram& d) {
  return Classification{d.is_permutation(), d.is_planar()};
}

namespace {

void brauer_matchings(std::vector<int>& unmatched, std::vector<std::vector<int>>& cur,
                      std::vector<std::vector<std::vector<int>>>& out) {
  if (unmatched.empty()) {
    out.push_back(cur);
    return;
  }
  const int a = unmatched[0];
  for (size_t k = 1; k < unmatched.size(); ++k) {
    const int b = unmatched[k];
    std::vector<int> rest;
    for (size_t t = 1; t < unmatched.size(); ++t)
      if (t != k) rest.push_back(unmatched[t]);
    cur.push_back({a, b});
    brauer_matchings(rest, cur, out);
    cur.pop_back();
  }
}

using PairList = std::vector<std::pair<size_t, size_t>>;

// Noncrossing matchings of the positions in pts (an arc of the boundary
// walk); pairs are in position space. Matching pts[0] to pts[k] seals off
// the segment between them, so the two sides match independently.
std::vector<PairList> noncrossing_matchings(const std::vector<size_t>& pts) {
  if (pts.empty()) return {PairList{}};
  std::vector<PairList> out;
  for (size_t k = 1; k < pts.size(); k += 2) {
    const std::vector<size_t> inner(pts.begin() + 1, pts.begin() + k);
    const std::vector<size_t> outer(pts.begin() + k + 1, pts.end());
    for (const auto& a : noncrossing_matchings(inner))
      for (const auto& b : noncrossing_matchings(outer)) {
        PairList m{{pts[0], pts[k]}};
        m.insert(m.end(), a.begin(), a.end());
        m.insert(m.end(), b.begin(), b.end());
        out.push_back(std::move(m));
      }
  }
  return out;
}

int point_of_walk_pos(size_t pos, int n) {
  return pos < static_cast<size_t>(n) ? static_cast<int>(pos) : static_cast<int>(3 * n - 1 - pos);
}

}  // namespace

std::vector<Diagram> enumerate_diagrams(Family family, int n, const DiagramCaps& caps) {
  if (n < 0) throw MismatchError("negative strand count");
  if (n > family_cap(family, caps))
    throw CapExceeded("enumeration cap exceeded for " + std::string(family_name(family)) +
                      ": n = " + std::to_string(n));
  std::vector<Diagram> out;
  if (family == Family::Partition) {
    // Restricted growth strings over the 2n points.
    const int m = 2 * n;
    std::vector<int> rgs(m, 0);
    auto emit = [&] {
      const int nblocks = m ? 1 + *std::max_element(rgs.begin(), rgs.end()) : 0;
      std::vector<std::vector<int>> blocks(nblocks);
      for (int p = 0; p < m; ++p) blocks[rgs[p]].push_back(p);
      out.emplace_back(family, n, std::move(blocks));
    };
    auto rec = [&](auto&& self, int k, int used) -> void {
      if (k == m) {
        emit();
        return;
      }
      for (int v = 0; v <= used; ++v) {
        rgs[k] = v;
        self(self, k + 1, std::max(used, v + 1));
      }
    };
    rec(rec, 0, 0);
  } else if (family == Family::Brauer) {
    std::vector<int> pts(2 * n);
    std::iota(pts.begin(), pts.end(), 0);
    std::vector<std::vector<int>> cur;
    std::vector<std::vector<std::vector<int>>> all;
    brauer_matchings(pts, cur, all);
    out.reserve(all.size());
    for (auto& blocks : all) out.emplace_back(family, n, std::move(blocks));
  } else {
    std::vector<size_t> pts(2 * n);
    std::iota(pts.begin(), pts.end(), 0);
    const auto all = noncrossing_matchings(pts);
    out.reserve(all.size());
    for (const auto& pairs : all) {
      std::vector<std::vector<int>> blocks;
      blocks.reserve(pairs.size());
      for (auto [a, b] : pairs) blocks.push_back({point_of_walk_pos(a, n), point_of_walk_pos(b, n)});
      out.emplace_back(family, n, std::move(blocks));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Composition compose(const Diagram& d1, const Diagram& d2) {
  if (d1.n() != d2.n()) throw MismatchError("compose: strand count mismatch");
  if (d1.family() != d2.family()) throw MismatchError("compose: family mismatch");
  const int n = d1.n();

  // Three rows of n nodes: bottom = d2's bottom [0,n), middle = d2's top =
  // d1's bottom [n,2n), top = d1's top [2n,3n).
  UnionFind uf(3 * n);
  for (const auto& blk : d2.blocks())
    for (size_t k = 1; k < blk.size(); ++k) uf.unite(blk[0], blk[k]);
  for (const auto& blk : d1.blocks())
    for (size_t k = 1; k < blk.size(); ++k) uf.unite(blk[0] + n, blk[k] + n);

  std::map<int, std::vector<int>> comp_outer;
  std::vector<bool> comp_seen(3 * n, false), comp_has_outer(3 * n, false);
  for (int p = 0; p < 3 * n; ++p) {
    const int r = uf.find(p);
    comp_seen[r] = true;
    if (p < n || p >= 2 * n) {
      comp_has_outer[r] = true;
      comp_outer[r].push_back(p < n ? p : p - n);
    }
  }
  int loops = 0;
  for (int r = 0; r < 3 * n; ++r)
    if (comp_seen[r] && r == uf.find(r) && !comp_has_outer[r]) ++loops;

  std::vector<std::vector<int>> blocks;
  blocks.reserve(comp_outer.size());
  for (auto& [r, pts] : comp_outer) blocks.push_back(std::move(pts));
  return Composition{Diagram(d1.family(), n, std::move(blocks)), loops};
}

}  // namespace towerlab
