#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pgt/perm.hpp"
#include "pgt/util.hpp"

namespace pgt {

// One level of a stabilizer chain: a base point, the generators of the
// level's group, and a Schreier tree for the base point's orbit.
struct ChainLevel {
  Point base = 0;
  std::vector<Perm> gens;
  std::vector<Perm> inv_gens;
  std::vector<Point> orbit; // BFS order, orbit[0] == base
  // point -> (index of gen whose edge reached it, parent point); base -> (-1, base)
  std::unordered_map<Point, std::pair<std::int32_t, Point>> tree;
};

// Deterministic Schreier-Sims chain with explicit transversal trees.
//
// A prescribed base prefix forces those points to head the base (levels are
// kept even when redundant), which is how pointwise stabilizers and base
// changes are realized. When the group order is already known from another
// faithful action, passing it short-circuits Schreier processing as soon as
// the transversal product reaches it; the product can never exceed the true
// order, so the early exit is a proof of completeness.
class StabChain {
public:
  static StabChain build(unsigned degree, const std::vector<Perm> &gens,
                         const std::vector<Point> &base_prefix = {},
                         const std::optional<BigUint> &known_order = {});

  unsigned degree() const { return degree_; }
  const std::vector<ChainLevel> &levels() const { return levels_; }

  BigUint order() const;
  // product of orbit sizes from the given level down
  BigUint order_from(std::size_t level) const;

  bool contains(const Perm &g) const;
  // Reduce g through levels >= from. in_group receives whether the residue
  // is the identity.
  Perm sift(Perm g, std::size_t from = 0, bool *in_group = nullptr) const;

  // u with u(base of level) == to; `to` must lie in the level's orbit.
  Perm transversal(std::size_t level, Point to) const;

  // Generators of the group stabilizing the first `level` base points.
  std::vector<Perm> level_generators(std::size_t level) const;

  std::vector<Point> base_points() const;

  // every strong generator sifts to the identity
  bool verify_strong_generators() const;

private:
  StabChain() = default;

  std::size_t level_for_new_gen(const Perm &g, std::size_t from) const;
  void add_level(Point base);
  void add_generator(std::size_t level, const Perm &g);
  void extend_orbit(std::size_t level);
  void process_pending(const std::optional<BigUint> &known_order);
  bool complete_by_order(const std::optional<BigUint> &known_order) const;
  bool next_pending(std::size_t level, std::size_t *pos, std::size_t *gi);

  unsigned degree_ = 0;
  std::vector<ChainLevel> levels_;
  // Schreier-processing cursors: done_[l][pos] counts generators already
  // paired with orbit position pos; scan_[l] is the first position that may
  // still have work
  std::vector<std::vector<std::uint32_t>> done_;
  std::vector<std::size_t> scan_;
};

} // namespace pgt
