#include "pgt/block_system.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace pgt {

BlockSystem BlockSystem::from_assignment(unsigned degree,
                                         const std::vector<unsigned> &assignment) {
  if (assignment.size() != degree)
    throw std::invalid_argument("BlockSystem: assignment does not cover the domain");
  BlockSystem b;
  b.degree = degree;
  unsigned k = 0;
  for (unsigned a : assignment)
    k = std::max(k, a + 1);
  b.block_count = k;
  b.blocks.assign(k, {});
  for (Point x = 0; x < degree; ++x)
    b.blocks[assignment[x]].push_back(x);
  for (auto &blk : b.blocks) {
    if (blk.empty())
      throw std::invalid_argument("BlockSystem: empty block index");
    std::sort(blk.begin(), blk.end());
  }
  b.block_size = static_cast<unsigned>(b.blocks[0].size());
  for (const auto &blk : b.blocks)
    if (blk.size() != b.block_size)
      throw std::invalid_argument("BlockSystem: blocks of unequal size");
  // renumber blocks by least element
  std::vector<unsigned> order(k);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](unsigned a, unsigned c) {
    return b.blocks[a][0] < b.blocks[c][0];
  });
  std::vector<std::vector<Point>> sorted;
  sorted.reserve(k);
  for (unsigned idx : order)
    sorted.push_back(std::move(b.blocks[idx]));
  b.blocks = std::move(sorted);
  b.assignment.assign(degree, 0);
  for (unsigned j = 0; j < k; ++j)
    for (Point x : b.blocks[j])
      b.assignment[x] = j;
  return b;
}

BlockSystem BlockSystem::one_block(unsigned degree) {
  return from_assignment(degree, std::vector<unsigned>(degree, 0u));
}

bool BlockSystem::invariant_under(const PermGroup &g) const {
  for (const Perm &gen : g.generators()) {
    for (unsigned j = 0; j < block_count; ++j) {
      unsigned target = assignment[gen[blocks[j][0]]];
      for (Point x : blocks[j])
        if (assignment[gen[x]] != target)
          return false;
    }
  }
  return true;
}

Perm block_image(const Perm &g, const BlockSystem &b) {
  std::vector<Point> img(b.block_count);
  for (unsigned j = 0; j < b.block_count; ++j) {
    unsigned target = b.assignment[g[b.blocks[j][0]]];
    for (Point x : b.blocks[j])
      if (b.assignment[g[x]] != target)
        throw hypothesis_error("block_image: partition is not invariant");
    img[j] = target;
  }
  return Perm(std::move(img));
}

BlockSystem minimal_block_system(const PermGroup &g, Point a, Point b) {
  unsigned n = g.degree();
  if (a >= n || b >= n || a == b)
    throw std::invalid_argument("minimal_block_system: bad seed pair");
  if (!g.transitive())
    throw hypothesis_error("minimal_block_system: group is not transitive");

  std::vector<Point> repr(n);
  std::iota(repr.begin(), repr.end(), 0u);
  auto find = [&](Point x) {
    while (repr[x] != x) {
      repr[x] = repr[repr[x]];
      x = repr[x];
    }
    return x;
  };
  std::deque<std::pair<Point, Point>> queue;
  repr[std::max(find(a), find(b))] = std::min(find(a), find(b));
  queue.emplace_back(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const Perm &gen : g.generators()) {
      Point u = find(gen[x]), v = find(gen[y]);
      if (u != v) {
        repr[std::max(u, v)] = std::min(u, v);
        queue.emplace_back(gen[x], gen[y]);
      }
    }
  }
  std::vector<unsigned> assignment(n);
  std::vector<int> index_of(n, -1);
  unsigned next = 0;
  for (Point x = 0; x < n; ++x) {
    Point r = find(x);
    if (index_of[r] < 0)
      index_of[r] = static_cast<int>(next++);
    assignment[x] = static_cast<unsigned>(index_of[r]);
  }
  return BlockSystem::from_assignment(n, assignment);
}

std::optional<BlockSystem> minimal_nontrivial_block_system(const PermGroup &g) {
  unsigned n = g.degree();
  if (n < 2 || !g.transitive())
    return std::nullopt;
  std::optional<BlockSystem> best;
  for (Point y = 1; y < n; ++y) {
    BlockSystem b = minimal_block_system(g, 0, y);
    if (b.trivial())
      continue;
    if (!best || b.block_size < best->block_size)
      best = std::move(b);
  }
  return best;
}

bool is_primitive(const PermGroup &g) {
  return g.transitive() && !minimal_nontrivial_block_system(g).has_value();
}

std::optional<BlockSystem> maximal_nontrivial_block_system(const PermGroup &g) {
  auto cur = minimal_nontrivial_block_system(g);
  if (!cur)
    return std::nullopt;
  for (;;) {
    BlockActionData data = block_action(g, *cur);
    auto finer = minimal_nontrivial_block_system(data.top);
    if (!finer)
      return cur;
    // lift: merge blocks of cur along the top system
    std::vector<unsigned> assignment(g.degree());
    for (Point x = 0; x < g.degree(); ++x)
      assignment[x] = finer->assignment[cur->assignment[x]];
    cur = BlockSystem::from_assignment(g.degree(), assignment);
  }
}

BlockActionData block_action(const PermGroup &g, const BlockSystem &b) {
  unsigned n = g.degree();
  if (b.degree != n)
    throw std::invalid_argument("block_action: degree mismatch");
  if (!b.invariant_under(g))
    throw hypothesis_error("block_action: partition is not invariant");
  unsigned k = b.block_count;

  // extend the action to the blocks themselves: points n..n+k-1
  std::vector<Perm> ext_gens;
  std::vector<Perm> top_gens;
  for (const Perm &gen : g.generators()) {
    Perm tg = block_image(gen, b);
    std::vector<Point> img(n + k);
    for (Point x = 0; x < n; ++x)
      img[x] = gen[x];
    for (unsigned j = 0; j < k; ++j)
      img[n + j] = n + tg[j];
    ext_gens.emplace_back(std::move(img));
    top_gens.push_back(std::move(tg));
  }
  PermGroup ext(n + k, ext_gens);
  ext.set_known_order(g.order());

  std::vector<Point> block_points(k);
  for (unsigned j = 0; j < k; ++j)
    block_points[j] = n + j;

  BlockActionData out;
  out.top = PermGroup(k, top_gens);

  PermGroup kernel_ext = ext.pointwise_stabilizer(block_points);
  std::vector<Perm> kernel_gens;
  for (const Perm &x : kernel_ext.generators()) {
    std::vector<Point> img(x.images().begin(), x.images().begin() + n);
    kernel_gens.emplace_back(std::move(img));
  }
  out.kernel = PermGroup(n, kernel_gens);
  out.kernel.set_known_order(kernel_ext.order());

  if (out.kernel.order() * out.top.order() != g.order())
    throw verification_error("block_action: |G| != |kernel| * |top|");

  out.block_restrictions.reserve(k);
  for (unsigned j = 0; j < k; ++j) {
    PermGroup hj = ext.pointwise_stabilizer({static_cast<Point>(n + j)});
    std::vector<Perm> rest;
    for (const Perm &x : hj.generators()) {
      std::vector<Point> img(b.block_size);
      for (unsigned i = 0; i < b.block_size; ++i) {
        Point p = b.blocks[j][i];
        Point q = x[p];
        auto it = std::lower_bound(b.blocks[j].begin(), b.blocks[j].end(), q);
        img[i] = static_cast<Point>(it - b.blocks[j].begin());
      }
      rest.emplace_back(std::move(img));
    }
    out.block_restrictions.emplace_back(b.block_size, std::move(rest));
  }
  return out;
}

namespace {

bool fixes_pointwise(const PermGroup &g, const std::vector<Point> &pts) {
  for (const Perm &gen : g.generators())
    for (Point p : pts)
      if (gen[p] != p)
        return false;
  return true;
}

} // namespace

LinkingStructure linking_structure(const PermGroup &n_grp, const BlockSystem &b) {
  unsigned m = b.block_size;
  unsigned k = b.block_count;
  if (m < 5 || m == 6)
    throw hypothesis_error("linking_structure: block size must be >= 5 and != 6");
  for (const Perm &gen : n_grp.generators())
    for (unsigned j = 0; j < k; ++j)
      if (b.assignment[gen[b.blocks[j][0]]] != j)
        throw hypothesis_error("linking_structure: group does not fix every block");

  BigUint alt_order = BigUint::factorial(m);
  BigUint half = BigUint::factorial(m - 2);
  half *= static_cast<std::uint64_t>(m) * (m - 1) / 2;

  auto restriction = [&](const PermGroup &grp, unsigned j) {
    std::vector<Perm> rest;
    for (const Perm &x : grp.generators()) {
      std::vector<Point> img(m);
      for (unsigned i = 0; i < m; ++i) {
        Point q = x[b.blocks[j][i]];
        auto it = std::lower_bound(b.blocks[j].begin(), b.blocks[j].end(), q);
        img[i] = static_cast<Point>(it - b.blocks[j].begin());
      }
      rest.emplace_back(std::move(img));
    }
    return PermGroup(m, std::move(rest));
  };

  for (unsigned j = 0; j < k; ++j) {
    BigUint ord = restriction(n_grp, j).order();
    if (ord != half && ord != alt_order)
      throw hypothesis_error("linking_structure: block restriction does not contain Alt");
  }

  LinkingStructure out;
  out.socle = n_grp.derived_subgroup();
  // the derived subgroup must be perfect here, which certifies it is the socle
  if (out.socle.derived_subgroup().order() != out.socle.order())
    throw hypothesis_error("linking_structure: derived subgroup is not perfect");
  for (unsigned j = 0; j < k; ++j)
    if (restriction(out.socle, j).order() != half)
      throw hypothesis_error("linking_structure: socle restriction is not Alt");

  // blocks a,b linked iff the pointwise stabilizer of block a inside the
  // socle fixes block b pointwise
  std::vector<int> cls(k, -1);
  std::vector<std::vector<unsigned>> classes;
  for (unsigned a = 0; a < k; ++a) {
    if (cls[a] >= 0)
      continue;
    PermGroup stab = out.socle.pointwise_stabilizer(b.blocks[a]);
    std::vector<unsigned> members;
    for (unsigned c = 0; c < k; ++c)
      if (cls[c] < 0 && fixes_pointwise(stab, b.blocks[c]))
        members.push_back(c);
    if (members.empty() || members[0] != a)
      throw hypothesis_error("linking_structure: inconsistent linking relation");
    for (unsigned c : members)
      cls[c] = static_cast<int>(classes.size());
    classes.push_back(std::move(members));
  }
  unsigned t = static_cast<unsigned>(classes[0].size());
  for (const auto &c : classes)
    if (c.size() != t)
      throw hypothesis_error("linking_structure: classes of unequal size");
  out.classes = std::move(classes);
  out.linking_factor = t;

  BigUint expect(1);
  for (unsigned i = 0; i < k / t; ++i)
    expect *= half;
  if (out.socle.order() != expect)
    throw hypothesis_error("linking_structure: socle order != (m!/2)^(k/t)");

  // per-class labelings: the reference block is labeled in ascending order,
  // partner blocks by the equivariant bijection grown from a seed point
  out.block_labels.assign(k, {});
  for (const auto &cl : out.classes) {
    unsigned ref = cl[0];
    out.block_labels[ref] = b.blocks[ref];
    if (cl.size() == 1)
      continue;
    Point seed = b.blocks[ref][0];
    PermGroup seed_stab = out.socle.pointwise_stabilizer({seed});
    for (std::size_t ci = 1; ci < cl.size(); ++ci) {
      unsigned tgt = cl[ci];
      bool placed = false;
      for (Point cand : b.blocks[tgt]) {
        bool fixed = true;
        for (const Perm &x : seed_stab.generators())
          if (x[cand] != cand) {
            fixed = false;
            break;
          }
        if (!fixed)
          continue;
        // grow the bijection by equivariance from seed -> cand
        std::vector<Point> phi(b.degree, static_cast<Point>(-1));
        phi[seed] = cand;
        std::vector<Point> queue{seed};
        bool ok = true;
        for (std::size_t head = 0; head < queue.size() && ok; ++head) {
          Point u = queue[head];
          for (const Perm &x : out.socle.generators()) {
            Point u2 = x[u], v2 = x[phi[u]];
            if (phi[u2] == static_cast<Point>(-1)) {
              phi[u2] = v2;
              queue.push_back(u2);
            } else if (phi[u2] != v2) {
              ok = false;
              break;
            }
          }
        }
        if (!ok)
          continue;
        for (Point p : b.blocks[ref])
          if (phi[p] == static_cast<Point>(-1))
            ok = false;
        if (!ok)
          continue;
        std::vector<Point> labels(m);
        for (unsigned i = 0; i < m; ++i)
          labels[i] = phi[b.blocks[ref][i]];
        out.block_labels[tgt] = std::move(labels);
        placed = true;
        break;
      }
      if (!placed)
        throw hypothesis_error("linking_structure: no equivariant bijection found "
                               "(non-diagonal linking)");
    }
    // all labelings in the class must conjugate the socle generators the
    // same way
    std::vector<Point> pos(b.degree, 0);
    for (unsigned j : cl)
      for (unsigned i = 0; i < m; ++i)
        pos[out.block_labels[j][i]] = i;
    for (const Perm &x : out.socle.generators()) {
      for (unsigned i = 0; i < m; ++i) {
        Point via_ref = pos[x[out.block_labels[ref][i]]];
        for (unsigned j : cl)
          if (pos[x[out.block_labels[j][i]]] != via_ref)
            throw verification_error(
                "linking_structure: labelings are not coordinatewise");
      }
    }
  }
  return out;
}

} // namespace pgt
