#pragma once

#include "towerlab/rat.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace towerlab {

enum class Family { TL, Brauer, Partition };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

// Enumeration caps; full structure-constant tables stay at desk scale.
struct DiagramCaps {
  int tl = 8;
  int brauer = 6;
  int partition = 4;
};

int family_cap(Family f, const DiagramCaps& caps = {});

// One basis diagram on n strands: a set partition of the 2n points
// 1..n (bottom) and 1'..n' (top). Internally point p in [0,n) is bottom p+1
// and p in [n,2n) is top (p-n+1)'. Stored canonically: each block ascending,
// blocks ordered by smallest element, so structural equality is diagram
// equality.
//
// TL diagrams are noncrossing perfect matchings, Brauer diagrams perfect
// matchings, Partition diagrams arbitrary set partitions.
class Diagram {
 public:
  Diagram(Family family, int n, std::vector<std::vector<int>> blocks);

  static Diagram identity(Family family, int n);

  Family family() const { return family_; }
  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  bool is_identity() const;
  // Every block is {i, i'+offset}? No: a pair joining one bottom and one top
  // point, i.e. the diagram is (the graph of) a permutation.
  bool is_permutation() const;
  // Noncrossing in the rectangle picture: bottom 1..n left to right, then
  // top n'..1'. For matchings this is the usual planarity of TL diagrams.
  bool is_planar() const;

  // "{1,2}{1',2'}": blocks as sorted lists with primes for top points.
  std::string to_string() const;
  static Diagram parse(Family family, std::string_view text);

  bool operator==(const Diagram&) const = default;
  bool operator<(const Diagram& o) const { return blocks_ < o.blocks_; }

 private:
  Family family_;
  int n_;
  std::vector<std::vector<int>> blocks_;
};

struct Classification {
  bool is_permutation = false;
  bool is_planar = false;
};

Classification classify(const Diagram& d);

// All diagrams of the family on n strands, sorted by canonical form.
// Counts: Catalan(n) for TL, (2n-1)!! for Brauer, Bell(2n) for Partition.
std::vector<Diagram> enumerate_diagrams(Family family, int n, const DiagramCaps& caps = {});

struct Composition {
  Diagram diagram;
  int loops = 0;  // closed middle-row components; the product is delta^loops * diagram
};

// d1 stacked above d2, d2's top row identified with d1's bottom row. The
// result keeps d2's bottom row and d1's top row.
Composition compose(const Diagram& d1, const Diagram& d2);

}  // namespace towerlab
