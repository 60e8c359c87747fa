#pragma once

#include <optional>
#include <vector>

#include "pgt/perm_group.hpp"

namespace pgt {

struct BaseCertificate {
  std::vector<Point> points;
  BigUint residual_order{1};
  bool exact = false;
};

// intersection of the point stabilizers lies in `modulo` (trivial if absent)
bool is_base(const PermGroup &g, const std::vector<Point> &pts,
             const PermGroup *modulo = nullptr);

// Shortest base by iterative-deepening backtrack; candidate points are orbit
// representatives ordered by descending orbit size. Branches are pruned when
// the current stabilizer order cannot shrink enough within the remaining
// depth.
BaseCertificate exact_min_base(const PermGroup &g,
                               const PermGroup *modulo = nullptr);

// largest-orbit-first heuristic, ties to the least point
BaseCertificate greedy_base(const PermGroup &g);

// ceil(log_q d(G)) computed from the coloring oracle
int base_on_partitions(const PermGroup &g, int q, unsigned oracle_cap = 12);

// Companion oracle: direct search over tuples of partitions into at most q
// parts with brute-force element enumeration; degree <= 7 only.
int base_on_partitions_direct(const PermGroup &g, int q);

// all group elements by closure; the brute-force side of several oracles
std::vector<Perm> enumerate_elements(const PermGroup &g,
                                     std::size_t limit = 2000000);

} // namespace pgt
