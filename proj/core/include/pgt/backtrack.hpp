#pragma once

#include <optional>
#include <vector>

#include "pgt/perm_group.hpp"

namespace pgt {

// N_G(Y): backtrack over the chain pruned by set membership of base images,
// seeded with C_G(Y); found coset representatives are verified elementwise.
PermGroup setwise_stabilizer(const PermGroup &g, const std::vector<Point> &set);

// Subgroup preserving every color class, via a single partition-respecting
// backtrack.
PermGroup coloring_stabilizer_group(const PermGroup &g,
                                    const std::vector<int> &colors);

// An element of g preserving the coloring but outside `kernel` (outside the
// trivial group when kernel is null); nullopt when no such element exists,
// i.e. when the coloring is distinguishing modulo the kernel.
std::optional<Perm> coloring_violator(const PermGroup &g,
                                      const std::vector<int> &colors,
                                      const PermGroup *kernel = nullptr);

} // namespace pgt
