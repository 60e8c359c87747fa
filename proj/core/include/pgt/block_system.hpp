#pragma once

#include <optional>
#include <vector>

#include "pgt/perm_group.hpp"

namespace pgt {

// Partition of {0..n-1} into k blocks of equal size m, invariant under the
// group it was built for. Blocks are ordered by least element.
struct BlockSystem {
  unsigned degree = 0;
  unsigned block_size = 0;
  unsigned block_count = 0;
  std::vector<unsigned> assignment; // point -> block index
  std::vector<std::vector<Point>> blocks;

  static BlockSystem from_assignment(unsigned degree,
                                     const std::vector<unsigned> &assignment);
  static BlockSystem one_block(unsigned degree);
  bool trivial() const { return block_count == 1 || block_size == 1; }
  bool invariant_under(const PermGroup &g) const;
};

// The minimal block system merging the seed pair (union-find refinement);
// the one-block system when the pair generates the whole domain.
BlockSystem minimal_block_system(const PermGroup &g, Point a, Point b);

// Nontrivial system with the smallest block size, if any.
std::optional<BlockSystem> minimal_nontrivial_block_system(const PermGroup &g);

bool is_primitive(const PermGroup &g);

// Coarsest nontrivial system (top action primitive), if any.
std::optional<BlockSystem> maximal_nontrivial_block_system(const PermGroup &g);

struct BlockActionData {
  PermGroup top;    // induced action on block indices
  PermGroup kernel; // N, pointwise fixer of the block set
  std::vector<PermGroup> block_restrictions; // restriction of N_G(D_j) to D_j
};

BlockActionData block_action(const PermGroup &g, const BlockSystem &b);

// Image of the permutation on block indices; throws if some block is torn.
Perm block_image(const Perm &g, const BlockSystem &b);

// Diagonal structure of a large kernel: socle (= derived subgroup), linking
// classes, and per-block labelings under which the socle acts coordinatewise
// within each class.
struct LinkingStructure {
  PermGroup socle;
  std::vector<std::vector<unsigned>> classes; // partition of block indices
  unsigned linking_factor = 0;                // common class size t
  std::vector<std::vector<Point>> block_labels; // per block: label -> point
};

LinkingStructure linking_structure(const PermGroup &n, const BlockSystem &b);

} // namespace pgt
