#include "pgt/stab_chain.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pgt {

namespace {

Point least_moved_point(const Perm &g) {
  for (Point x = 0; x < g.degree(); ++x)
    if (g[x] != x)
      return x;
  throw std::logic_error("least_moved_point: identity permutation");
}

} // namespace

StabChain StabChain::build(unsigned degree, const std::vector<Perm> &gens,
                           const std::vector<Point> &base_prefix,
                           const std::optional<BigUint> &known_order) {
  StabChain c;
  c.degree_ = degree;
  std::vector<bool> seen(degree, false);
  for (Point b : base_prefix) {
    if (b >= degree)
      throw std::invalid_argument("StabChain: base point out of range");
    if (seen[b])
      continue;
    seen[b] = true;
    c.add_level(b);
  }
  for (const Perm &g : gens) {
    if (g.degree() != degree)
      throw std::invalid_argument("StabChain: generator degree mismatch");
    if (g.is_identity())
      continue;
    c.add_generator(0, g);
  }
  if (!c.complete_by_order(known_order))
    c.process_pending(known_order);
  if (known_order && c.order() != *known_order)
    throw std::logic_error("StabChain: known order does not match computed order");
  return c;
}

void StabChain::add_level(Point base) {
  ChainLevel lvl;
  lvl.base = base;
  lvl.orbit.push_back(base);
  lvl.tree.emplace(base, std::make_pair(-1, base));
  levels_.push_back(std::move(lvl));
  done_.emplace_back(1, 0u);
  scan_.push_back(0);
}

void StabChain::add_generator(std::size_t level, const Perm &g) {
  if (level == levels_.size())
    add_level(least_moved_point(g));
  ChainLevel &lvl = levels_[level];
  lvl.gens.push_back(g);
  lvl.inv_gens.push_back(g.inverse());
  extend_orbit(level);
  scan_[level] = 0; // earlier positions now have an unprocessed generator
}

void StabChain::extend_orbit(std::size_t level) {
  ChainLevel &lvl = levels_[level];
  // close the orbit under all gens; existing BFS prefix and tree paths stay
  // valid because points are only appended
  std::size_t head = 0;
  while (head < lvl.orbit.size()) {
    Point x = lvl.orbit[head];
    for (std::size_t gi = 0; gi < lvl.gens.size(); ++gi) {
      Point y = lvl.gens[gi][x];
      if (!lvl.tree.count(y)) {
        lvl.tree.emplace(y, std::make_pair(static_cast<std::int32_t>(gi), x));
        lvl.orbit.push_back(y);
      }
    }
    ++head;
  }
  done_[level].resize(lvl.orbit.size(), 0u);
}

bool StabChain::complete_by_order(const std::optional<BigUint> &known_order) const {
  if (!known_order)
    return false;
  return order() == *known_order;
}

bool StabChain::next_pending(std::size_t level, std::size_t *pos, std::size_t *gi) {
  const ChainLevel &lvl = levels_[level];
  std::size_t &cur = scan_[level];
  while (cur < lvl.orbit.size()) {
    if (done_[level][cur] < lvl.gens.size()) {
      *pos = cur;
      *gi = done_[level][cur];
      return true;
    }
    ++cur;
  }
  return false;
}

void StabChain::process_pending(const std::optional<BigUint> &known_order) {
  while (true) {
    std::size_t l = levels_.size();
    std::size_t pos = 0, gi = 0;
    bool found = false;
    while (l-- > 0) {
      if (next_pending(l, &pos, &gi)) {
        found = true;
        break;
      }
      if (l == 0)
        break;
    }
    if (!found)
      return;
    ChainLevel &lvl = levels_[l];
    done_[l][pos]++;
    Point beta = lvl.orbit[pos];
    // schreier generator u_{g(beta)}^{-1} * g * u_beta
    Perm w = compose(lvl.gens[gi], transversal(l, beta));
    bool in_group = false;
    Perm residue = sift(std::move(w), l, &in_group);
    if (!in_group) {
      std::size_t target = level_for_new_gen(residue, l + 1);
      add_generator(target, residue);
      if (complete_by_order(known_order))
        return;
    }
  }
}

std::size_t StabChain::level_for_new_gen(const Perm &g, std::size_t from) const {
  // deepest level whose prefix of base points g fixes
  std::size_t l = from;
  while (l < levels_.size() && g[levels_[l].base] == levels_[l].base)
    ++l;
  return l;
}

BigUint StabChain::order() const { return order_from(0); }

BigUint StabChain::order_from(std::size_t level) const {
  BigUint r(1);
  for (std::size_t l = level; l < levels_.size(); ++l)
    r *= static_cast<std::uint64_t>(levels_[l].orbit.size());
  return r;
}

Perm StabChain::sift(Perm g, std::size_t from, bool *in_group) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const ChainLevel &lvl = levels_[l];
    Point beta = g[lvl.base];
    if (beta == lvl.base)
      continue;
    auto it = lvl.tree.find(beta);
    if (it == lvl.tree.end()) {
      if (in_group)
        *in_group = false;
      return g;
    }
    // g <- u_beta^{-1} * g, walking the tree path backwards
    Point x = beta;
    while (x != lvl.base) {
      auto [egi, parent] = lvl.tree.at(x);
      g = compose(lvl.inv_gens[static_cast<std::size_t>(egi)], g);
      x = parent;
    }
  }
  if (in_group)
    *in_group = g.is_identity();
  return g;
}

bool StabChain::contains(const Perm &g) const {
  if (g.degree() != degree_)
    return false;
  bool in_group = false;
  sift(g, 0, &in_group);
  return in_group;
}

Perm StabChain::transversal(std::size_t level, Point to) const {
  const ChainLevel &lvl = levels_[level];
  if (to == lvl.base)
    return Perm(degree_);
  // collect edge gens along the path, then compose root-to-leaf
  std::vector<std::size_t> edges;
  Point x = to;
  while (x != lvl.base) {
    auto it = lvl.tree.find(x);
    if (it == lvl.tree.end())
      throw std::invalid_argument("StabChain::transversal: point not in orbit");
    edges.push_back(static_cast<std::size_t>(it->second.first));
    x = it->second.second;
  }
  Perm u(degree_);
  for (std::size_t i = edges.size(); i-- > 0;)
    u = compose(lvl.gens[edges[i]], u);
  return u;
}

std::vector<Perm> StabChain::level_generators(std::size_t level) const {
  if (level >= levels_.size())
    return {};
  return levels_[level].gens;
}

std::vector<Point> StabChain::base_points() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto &lvl : levels_)
    b.push_back(lvl.base);
  return b;
}

bool StabChain::verify_strong_generators() const {
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (const Perm &g : levels_[l].gens) {
      bool ok = false;
      sift(g, 0, &ok);
      if (!ok)
        return false;
    }
  }
  return true;
}

} // namespace pgt
