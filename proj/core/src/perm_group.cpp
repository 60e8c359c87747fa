#include "pgt/perm_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgt {

PermGroup::PermGroup(unsigned degree, std::vector<Perm> generators)
    : degree_(degree) {
  for (auto &g : generators) {
    if (g.degree() != degree)
      throw std::invalid_argument("PermGroup: generator degree mismatch");
    if (!g.is_identity())
      gens_.push_back(std::move(g));
  }
}

const StabChain &PermGroup::chain() const {
  if (!chain_)
    chain_ = std::make_shared<const StabChain>(
        StabChain::build(degree_, gens_, {}, known_order_));
  return *chain_;
}

std::shared_ptr<const StabChain>
PermGroup::chain_with_base(const std::vector<Point> &prefix) const {
  if (chain_) {
    // reuse when the existing base already starts with the requested prefix;
    // points past the end of a complete chain are redundant
    const auto &lv = chain_->levels();
    std::vector<Point> wanted;
    std::vector<bool> seen(degree_, false);
    for (Point p : prefix) {
      if (p < degree_ && !seen[p]) {
        seen[p] = true;
        wanted.push_back(p);
      }
    }
    bool match = true;
    for (std::size_t i = 0; i < wanted.size() && i < lv.size(); ++i)
      if (lv[i].base != wanted[i]) {
        match = false;
        break;
      }
    if (match)
      return chain_;
  }
  std::optional<BigUint> hint = known_order_;
  if (chain_)
    hint = chain_->order();
  auto rebased = std::make_shared<const StabChain>(
      StabChain::build(degree_, gens_, prefix, hint));
  if (!chain_)
    chain_ = rebased;
  return rebased;
}

BigUint PermGroup::order() const {
  if (gens_.empty())
    return BigUint(1);
  return chain().order();
}

std::uint64_t PermGroup::order_u64() const {
  bool ok = false;
  std::uint64_t v = order().to_u64(&ok);
  if (!ok)
    throw std::overflow_error("PermGroup::order_u64: order exceeds 64 bits");
  return v;
}

bool PermGroup::contains(const Perm &g) const {
  if (g.degree() != degree_)
    return false;
  if (g.is_identity())
    return true;
  if (gens_.empty())
    return false;
  return chain().contains(g);
}

std::vector<Point> PermGroup::orbit_of(Point x) const {
  if (x >= degree_)
    throw std::invalid_argument("orbit_of: point out of range");
  std::vector<Point> orbit{x};
  std::vector<bool> seen(degree_, false);
  seen[x] = true;
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (const Perm &g : gens_) {
      Point y = g[orbit[head]];
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree_, false);
  for (Point x = 0; x < degree_; ++x) {
    if (seen[x])
      continue;
    std::vector<Point> orbit{x};
    seen[x] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const Perm &g : gens_) {
        Point y = g[orbit[head]];
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool PermGroup::transitive() const {
  if (degree_ == 0)
    return true;
  return orbit_of(0).size() == degree_;
}

bool PermGroup::regular() const {
  return transitive() && order() == BigUint(degree_);
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<Point> &points) const {
  for (Point p : points)
    if (p >= degree_)
      throw std::invalid_argument("pointwise_stabilizer: point out of range");
  if (gens_.empty())
    return trivial(degree_);
  auto ch = chain_with_base(points);
  // count distinct prefix levels
  std::vector<bool> seen(degree_, false);
  std::size_t r = 0;
  for (Point p : points)
    if (!seen[p]) {
      seen[p] = true;
      ++r;
    }
  PermGroup stab(degree_, ch->level_generators(r));
  stab.set_known_order(ch->order_from(r));
  return stab;
}

PermGroup normal_closure(const PermGroup &g, const std::vector<Perm> &seeds) {
  std::vector<Perm> hgens;
  for (const Perm &s : seeds)
    if (!s.is_identity())
      hgens.push_back(s);
  PermGroup h(g.degree(), hgens);
  for (;;) {
    std::vector<Perm> add;
    for (const Perm &x : h.generators())
      for (const Perm &gen : g.generators()) {
        Perm conj = compose(gen.inverse(), compose(x, gen));
        if (!h.contains(conj) &&
            std::find(add.begin(), add.end(), conj) == add.end())
          add.push_back(std::move(conj));
      }
    if (add.empty())
      return h;
    std::vector<Perm> next = h.generators();
    for (auto &a : add)
      next.push_back(std::move(a));
    h = PermGroup(g.degree(), std::move(next));
  }
}

PermGroup PermGroup::derived_subgroup() const {
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      const Perm &a = gens_[i];
      const Perm &b = gens_[j];
      Perm c = compose(a.inverse(), compose(b.inverse(), compose(a, b)));
      if (!c.is_identity())
        comms.push_back(std::move(c));
    }
  return normal_closure(*this, comms);
}

bool PermGroup::is_natural_sym() const {
  if (degree_ < 2)
    return true;
  return order() == BigUint::factorial(degree_);
}

bool PermGroup::is_natural_alt() const {
  if (degree_ < 3)
    return is_trivial();
  BigUint half = BigUint::factorial(degree_ - 2);
  half *= static_cast<std::uint64_t>(degree_) * (degree_ - 1) / 2;
  return order() == half;
}

bool is_normal_subgroup(const PermGroup &g, const PermGroup &n) {
  for (const Perm &x : n.generators())
    for (const Perm &gen : g.generators())
      if (!n.contains(compose(gen.inverse(), compose(x, gen))))
        return false;
  return true;
}

bool is_subgroup_of(const PermGroup &sub, const PermGroup &g) {
  for (const Perm &x : sub.generators())
    if (!g.contains(x))
      return false;
  return true;
}

} // namespace pgt
