#include "pgt/base_ops.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "pgt/distinguishing.hpp"

namespace pgt {

namespace {

bool contained_in(const PermGroup &sub, const PermGroup *modulo) {
  if (!modulo)
    return sub.is_trivial();
  for (const Perm &g : sub.generators())
    if (!modulo->contains(g))
      return false;
  return true;
}

void check_modulo(const PermGroup &g, const PermGroup *modulo) {
  if (modulo && !is_normal_subgroup(g, *modulo))
    throw hypothesis_error("modulo subgroup is not normal");
}

// Product of the r largest admissible reduction factors: picking points
// inside one orbit of size s can cut the order by at most s, s-1, ... in
// turn, and orbits of deeper stabilizers only refine the current ones.
BigUint best_reduction(const std::vector<std::vector<Point>> &orbits, unsigned r) {
  std::vector<std::uint64_t> factors;
  for (const auto &o : orbits) {
    std::uint64_t s = o.size();
    for (std::uint64_t j = 0; j < r && s - j >= 2; ++j)
      factors.push_back(s - j);
  }
  std::sort(factors.begin(), factors.end(), std::greater<>());
  BigUint out(1);
  for (unsigned i = 0; i < r && i < factors.size(); ++i)
    out *= factors[i];
  return out;
}

} // namespace

bool is_base(const PermGroup &g, const std::vector<Point> &pts,
             const PermGroup *modulo) {
  check_modulo(g, modulo);
  return contained_in(g.pointwise_stabilizer(pts), modulo);
}

BaseCertificate greedy_base(const PermGroup &g) {
  BaseCertificate cert;
  PermGroup cur = g;
  while (!contained_in(cur, nullptr)) {
    auto orbits = cur.orbits();
    std::size_t best = 0;
    for (std::size_t i = 1; i < orbits.size(); ++i)
      if (orbits[i].size() > orbits[best].size())
        best = i; // orbits are ordered by least point, so first-max wins ties
    cert.points.push_back(orbits[best][0]);
    cur = cur.pointwise_stabilizer({orbits[best][0]});
  }
  cert.residual_order = BigUint(1);
  cert.exact = false;
  return cert;
}

BaseCertificate exact_min_base(const PermGroup &g, const PermGroup *modulo) {
  check_modulo(g, modulo);
  BigUint target(1);
  if (modulo)
    target = modulo->order();

  if (contained_in(g, modulo))
    return BaseCertificate{{}, g.order(), true};

  // lower bound: n^b * |target residual| >= |G|
  unsigned lb = 0;
  {
    BigUint cap = target;
    while (cap < g.order()) {
      cap *= static_cast<std::uint64_t>(g.degree());
      ++lb;
    }
  }
  unsigned ub;
  if (!modulo) {
    ub = static_cast<unsigned>(greedy_base(g).points.size());
  } else {
    // greedy modulo the subgroup
    PermGroup cur = g;
    ub = 0;
    while (!contained_in(cur, modulo)) {
      auto orbits = cur.orbits();
      std::size_t best = 0;
      for (std::size_t i = 1; i < orbits.size(); ++i)
        if (orbits[i].size() > orbits[best].size())
          best = i;
      cur = cur.pointwise_stabilizer({orbits[best][0]});
      ++ub;
    }
  }
  if (lb == 0)
    lb = 1;

  std::vector<Point> found;
  std::function<bool(const PermGroup &, unsigned, std::vector<Point> &)> dfs =
      [&](const PermGroup &cur, unsigned remaining,
          std::vector<Point> &prefix) -> bool {
    if (contained_in(cur, modulo)) {
      found = prefix;
      return true;
    }
    if (remaining == 0)
      return false;
    auto orbits = cur.orbits();
    BigUint reach = best_reduction(orbits, remaining);
    reach *= target;
    if (cur.order() > reach)
      return false;
    // orbit representatives, largest orbit first, least point breaking ties
    std::stable_sort(orbits.begin(), orbits.end(),
                     [](const auto &a, const auto &b) {
                       return a.size() > b.size();
                     });
    for (const auto &orbit : orbits) {
      if (orbit.size() < 2)
        continue;
      Point cand = orbit[0];
      prefix.push_back(cand);
      PermGroup next = cur.pointwise_stabilizer({cand});
      if (dfs(next, remaining - 1, prefix))
        return true;
      prefix.pop_back();
    }
    return false;
  };

  for (unsigned length = lb; length <= ub; ++length) {
    std::vector<Point> prefix;
    if (dfs(g, length, prefix)) {
      BaseCertificate cert;
      cert.points = found;
      cert.residual_order = g.pointwise_stabilizer(found).order();
      cert.exact = true;
      return cert;
    }
  }
  throw std::logic_error("exact_min_base: deepening passed the greedy bound");
}

int base_on_partitions(const PermGroup &g, int q, unsigned oracle_cap) {
  if (q < 2)
    throw std::invalid_argument("base_on_partitions: q must be >= 2");
  int d = exact_dist_number(g, nullptr, oracle_cap).number;
  return ceil_log(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(d));
}

std::vector<Perm> enumerate_elements(const PermGroup &g, std::size_t limit) {
  std::vector<Perm> elems{Perm(g.degree())};
  std::unordered_set<std::uint64_t> seen{elems[0].hash()};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const Perm &gen : g.generators()) {
      Perm next = compose(gen, elems[head]);
      std::uint64_t h = next.hash();
      if (seen.count(h)) {
        // hash collisions are possible in principle; resolve exactly
        bool dup = false;
        for (const Perm &e : elems)
          if (e == next) {
            dup = true;
            break;
          }
        if (dup)
          continue;
      }
      seen.insert(h);
      elems.push_back(std::move(next));
      if (elems.size() > limit)
        throw cap_exceeded("enumerate_elements: group too large");
    }
  }
  return elems;
}

int base_on_partitions_direct(const PermGroup &g, int q) {
  if (q < 2)
    throw std::invalid_argument("base_on_partitions_direct: q must be >= 2");
  unsigned n = g.degree();
  if (n > 7)
    throw cap_exceeded("base_on_partitions_direct: degree must be <= 7");
  std::vector<Perm> elems = enumerate_elements(g);
  if (elems.size() == 1)
    return 0;

  // a tuple of l partitions into <= q parts distinguishes exactly when the
  // combined coloring with <= q^l colors does
  auto distinguishing_with = [&](int parts) {
    std::vector<int> colors(n, 0);
    std::function<bool(unsigned, int)> rec = [&](unsigned i, int used) -> bool {
      if (i == n) {
        for (const Perm &e : elems) {
          if (e.is_identity())
            continue;
          bool preserved = true;
          for (Point x = 0; x < n; ++x)
            if (colors[x] != colors[e[x]]) {
              preserved = false;
              break;
            }
          if (preserved)
            return false;
        }
        return true;
      }
      int limit = std::min(used, parts - 1);
      for (int c = 0; c <= limit; ++c) {
        colors[i] = c;
        if (rec(i + 1, c == used ? used + 1 : used))
          return true;
      }
      return false;
    };
    return rec(0, 0);
  };

  for (int l = 1;; ++l) {
    long long parts = 1;
    for (int s = 0; s < l; ++s)
      parts *= q;
    parts = std::min<long long>(parts, n);
    if (distinguishing_with(static_cast<int>(parts)))
      return l;
    if (parts >= static_cast<long long>(n))
      throw std::logic_error("base_on_partitions_direct: distinct colors failed");
  }
}

} // namespace pgt
