#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgt/backtrack.hpp"
#include "pgt/block_system.hpp"
#include "pgt/perm_group.hpp"

namespace pgt {

// Point coloring with its color budget. color_count bounds the color
// indices; the number of distinct used colors may be smaller.
struct Coloring {
  std::vector<int> colors;
  int color_count = 0;
  std::string trace;     // which construction produced it
  bool verified = false; // stabilizer check against the declared kernel passed

  int used_colors() const;
};

struct DistOptions {
  unsigned oracle_cap = 12;
};

// Subgroup of g fixing every color class.
PermGroup stabilizer_of_coloring(const PermGroup &g, const Coloring &col);

bool is_distinguishing(const PermGroup &g, const Coloring &col,
                       const PermGroup *kernel = nullptr);

struct DistResult {
  int number = 0;
  Coloring witness;
};

// Least c admitting a coloring whose stabilizer lies in `modulo` (trivial
// when absent), by canonical enumeration: color of the least point is 0 and
// new colors appear in first-occurrence order.
DistResult exact_dist_number(const PermGroup &g, const PermGroup *modulo = nullptr,
                             unsigned oracle_cap = 12);

// Per-block digit spread of a distinguishing top coloring; requires every
// block-setwise stabilizer to act trivially on its block.
Coloring construct_trivial_bottom(const PermGroup &g, const BlockSystem &b,
                                  const Coloring &alpha);

// chi kills each block action; the result encodes chi together with the
// digit spread built for the stabilizer of chi.
Coloring construct_small_bottom(const PermGroup &g, const BlockSystem &b,
                                const Coloring &chi, const Coloring &alpha);

// Staircase colorings over the linking classes for a large bottom with
// nontrivial kernel.
Coloring construct_large_bottom(const PermGroup &g, const BlockSystem &b,
                                const LinkingStructure &linking,
                                const Coloring &alpha);

// Verified distinguishing coloring with at most 48 * |G|^(1/n) colors,
// by oracle at small degree and block-system recursion above it.
Coloring distinguish_transitive(const PermGroup &g, const DistOptions &opts = {});

// d^n <= 48^n * |G|, checked exactly.
bool within_dist_bound(int count, unsigned degree, const BigUint &order);

} // namespace pgt
