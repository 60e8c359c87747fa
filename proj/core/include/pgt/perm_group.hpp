#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pgt/perm.hpp"
#include "pgt/stab_chain.hpp"
#include "pgt/util.hpp"

namespace pgt {

// A permutation group given by generators, with a lazily built stabilizer
// chain. Once the chain exists the group is immutable and cheap to share;
// chain construction itself is not thread safe.
class PermGroup {
public:
  PermGroup() = default;
  explicit PermGroup(unsigned degree, std::vector<Perm> generators = {});
  static PermGroup trivial(unsigned degree) { return PermGroup(degree); }

  unsigned degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  bool is_trivial() const { return gens_.empty(); }

  const StabChain &chain() const;
  // Chain whose base starts with the given points (kept even when
  // redundant). Rebuilds at most once per distinct prefix request.
  std::shared_ptr<const StabChain> chain_with_base(const std::vector<Point> &prefix) const;

  BigUint order() const;
  std::uint64_t order_u64() const; // throws std::overflow_error when too large
  bool contains(const Perm &g) const;

  std::vector<Point> orbit_of(Point x) const;
  std::vector<std::vector<Point>> orbits() const;
  bool transitive() const;
  bool regular() const;

  // C_G(S): base change so S heads the base, then read off the level group
  PermGroup pointwise_stabilizer(const std::vector<Point> &points) const;

  // normal closure of pairwise generator commutators
  PermGroup derived_subgroup() const;

  bool is_natural_sym() const;
  bool is_natural_alt() const;

  // trusted order hint; used to short-circuit chain construction
  void set_known_order(BigUint order) { known_order_ = std::move(order); }

private:
  unsigned degree_ = 0;
  std::vector<Perm> gens_; // identities dropped
  std::optional<BigUint> known_order_;
  mutable std::shared_ptr<const StabChain> chain_;
};

// normal closure of <seeds> in G
PermGroup normal_closure(const PermGroup &g, const std::vector<Perm> &seeds);

// every conjugate of a generator of n by a generator of g stays in n
bool is_normal_subgroup(const PermGroup &g, const PermGroup &n);

// subgroup test via sifting of generators
bool is_subgroup_of(const PermGroup &sub, const PermGroup &g);

} // namespace pgt
