#include "pgt/backtrack.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>

namespace pgt {

namespace {

// Backtrack for a subgroup S = { g in G : accept(g) } where accept is closed
// under products and inverses. Searches base images level by level;
// `feasible` is a necessary per-level condition on the image of the level's
// base point. Novel elements extend the known subgroup K, whose point orbits
// prune images along the identity prefix (an element with identity prefix
// mapping b_l to y can be translated by C_K(b_0..b_{l-1}) to one mapping b_l
// to the orbit minimum).
class SubgroupSearch {
public:
  SubgroupSearch(const PermGroup &g, std::shared_ptr<const StabChain> chain,
                 std::size_t depth,
                 std::function<bool(std::size_t, Point)> feasible,
                 std::function<bool(const Perm &)> accept,
                 std::vector<Perm> seed)
      : group_(g), chain_(std::move(chain)), depth_(depth),
        feasible_(std::move(feasible)), accept_(std::move(accept)),
        found_(std::move(seed)) {
    depth_ = std::min(depth_, chain_->levels().size());
    rebuild_known();
  }

  PermGroup run() {
    dfs(0, Perm(group_.degree()), true);
    return PermGroup(group_.degree(), found_);
  }

private:
  void dfs(std::size_t level, const Perm &u, bool id_prefix) {
    if (level == depth_) {
      if (!u.is_identity() && accept_(u) && !known_->contains(u)) {
        found_.push_back(u);
        rebuild_known();
      }
      return;
    }
    const ChainLevel &lvl = chain_->levels()[level];
    for (Point z : lvl.orbit) {
      Point y = u[z];
      if (!feasible_(level, y))
        continue;
      if (id_prefix && y != orbit_min(level, y))
        continue;
      Perm next = compose(u, chain_->transversal(level, z));
      dfs(level + 1, next, id_prefix && y == lvl.base);
    }
  }

  void rebuild_known() {
    PermGroup k(group_.degree(), found_);
    known_ = k.chain_with_base(chain_->base_points());
    min_cache_.assign(depth_ + 1, {});
  }

  // minimum of y's orbit under C_K(b_0..b_{level-1})
  Point orbit_min(std::size_t level, Point y) {
    auto &cache = min_cache_[level];
    if (cache.empty()) {
      unsigned n = group_.degree();
      cache.resize(n);
      for (Point x = 0; x < n; ++x)
        cache[x] = x;
      std::vector<Perm> gens = known_->level_generators(level);
      // union orbits; representative = min
      std::vector<Point> repr(n);
      for (Point x = 0; x < n; ++x)
        repr[x] = x;
      std::function<Point(Point)> find = [&](Point x) {
        while (repr[x] != x) {
          repr[x] = repr[repr[x]];
          x = repr[x];
        }
        return x;
      };
      for (const Perm &g : gens)
        for (Point x = 0; x < n; ++x) {
          Point a = find(x), b = find(g[x]);
          if (a != b)
            repr[std::max(a, b)] = std::min(a, b);
        }
      for (Point x = 0; x < n; ++x)
        cache[x] = find(x);
    }
    return cache[y];
  }

  const PermGroup &group_;
  std::shared_ptr<const StabChain> chain_;
  std::size_t depth_;
  std::function<bool(std::size_t, Point)> feasible_;
  std::function<bool(const Perm &)> accept_;
  std::vector<Perm> found_;
  std::shared_ptr<const StabChain> known_;
  std::vector<std::vector<Point>> min_cache_;
};

} // namespace

PermGroup setwise_stabilizer(const PermGroup &g, const std::vector<Point> &set) {
  unsigned n = g.degree();
  std::vector<bool> in_set(n, false);
  std::size_t distinct = 0;
  for (Point p : set) {
    if (p >= n)
      throw std::invalid_argument("setwise_stabilizer: point out of range");
    if (!in_set[p]) {
      in_set[p] = true;
      ++distinct;
    }
  }
  if (distinct == 0 || distinct == n || g.is_trivial())
    return g;

  std::vector<Point> prefix;
  prefix.reserve(distinct);
  for (Point p = 0; p < n; ++p)
    if (in_set[p])
      prefix.push_back(p);
  auto chain = g.chain_with_base(prefix);
  std::size_t depth = std::min(prefix.size(), chain->levels().size());

  // elements below the search depth fix the whole set pointwise
  std::vector<Perm> seed = chain->level_generators(depth);

  auto feasible = [&, chain](std::size_t level, Point y) {
    bool base_in = in_set[chain->levels()[level].base];
    return base_in == static_cast<bool>(in_set[y]);
  };
  auto accept = [&](const Perm &p) {
    for (Point x = 0; x < n; ++x)
      if (in_set[x] != in_set[p[x]])
        return false;
    return true;
  };
  SubgroupSearch search(g, chain, depth, feasible, accept, std::move(seed));
  return search.run();
}

PermGroup coloring_stabilizer_group(const PermGroup &g,
                                    const std::vector<int> &colors) {
  unsigned n = g.degree();
  if (colors.size() != n)
    throw std::invalid_argument("coloring_stabilizer_group: coloring does not cover the domain");
  if (g.is_trivial())
    return g;
  auto chain = g.chain_with_base({});
  auto feasible = [&, chain](std::size_t level, Point y) {
    return colors[chain->levels()[level].base] == colors[y];
  };
  auto accept = [&](const Perm &p) {
    for (Point x = 0; x < n; ++x)
      if (colors[x] != colors[p[x]])
        return false;
    return true;
  };
  SubgroupSearch search(g, chain, chain->levels().size(), feasible, accept, {});
  return search.run();
}

std::optional<Perm> coloring_violator(const PermGroup &g,
                                      const std::vector<int> &colors,
                                      const PermGroup *kernel) {
  unsigned n = g.degree();
  if (colors.size() != n)
    throw std::invalid_argument("coloring_violator: coloring does not cover the domain");
  if (g.is_trivial())
    return std::nullopt;
  const StabChain &chain = g.chain();
  std::size_t nlevels = chain.levels().size();

  // deepest level from which the whole level group lies in the kernel
  std::size_t kernel_level = nlevels;
  if (kernel) {
    while (kernel_level > 0) {
      bool inside = true;
      for (const Perm &x : chain.level_generators(kernel_level - 1))
        if (!kernel->contains(x)) {
          inside = false;
          break;
        }
      if (!inside)
        break;
      --kernel_level;
    }
  }

  std::function<std::optional<Perm>(std::size_t, const Perm &)> dfs =
      [&](std::size_t level, const Perm &u) -> std::optional<Perm> {
    if (level == nlevels) {
      for (Point x = 0; x < n; ++x)
        if (colors[x] != colors[u[x]])
          return std::nullopt;
      if (kernel ? kernel->contains(u) : u.is_identity())
        return std::nullopt;
      return u;
    }
    if (level >= kernel_level && kernel && kernel->contains(u))
      return std::nullopt; // whole subtree lies in the kernel
    const ChainLevel &lvl = chain.levels()[level];
    // non-trivial images first: violators show up sooner
    for (bool trivial_pass : {false, true}) {
      for (Point z : lvl.orbit) {
        if ((z == lvl.base) != trivial_pass)
          continue;
        Point y = u[z];
        if (colors[y] != colors[lvl.base])
          continue;
        auto r = dfs(level + 1, compose(u, chain.transversal(level, z)));
        if (r)
          return r;
      }
    }
    return std::nullopt;
  };
  return dfs(0, Perm(n));
}

} // namespace pgt
