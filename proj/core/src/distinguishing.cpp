#include "pgt/distinguishing.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pgt {

int Coloring::used_colors() const {
  std::set<int> s(colors.begin(), colors.end());
  return static_cast<int>(s.size());
}

PermGroup stabilizer_of_coloring(const PermGroup &g, const Coloring &col) {
  return coloring_stabilizer_group(g, col.colors);
}

bool is_distinguishing(const PermGroup &g, const Coloring &col,
                       const PermGroup *kernel) {
  return !coloring_violator(g, col.colors, kernel).has_value();
}

DistResult exact_dist_number(const PermGroup &g, const PermGroup *modulo,
                             unsigned oracle_cap) {
  unsigned n = g.degree();
  if (n > oracle_cap)
    throw cap_exceeded("exact_dist_number: degree " + std::to_string(n) +
                       " exceeds oracle cap " + std::to_string(oracle_cap));
  if (modulo && !is_normal_subgroup(g, *modulo))
    throw hypothesis_error("exact_dist_number: modulo subgroup is not normal");
  if (n == 0)
    return {1, Coloring{{}, 1, "oracle", true}};

  std::vector<int> colors(n, 0);
  std::optional<std::vector<int>> witness;
  // canonical colorings with exactly c used colors, early exit on success
  std::function<bool(unsigned, int, int)> enumerate = [&](unsigned i, int used,
                                                          int c) -> bool {
    if (i == n) {
      if (used != c)
        return false;
      if (!coloring_violator(g, colors, modulo)) {
        witness = colors;
        return true;
      }
      return false;
    }
    if (used + static_cast<int>(n - i) < c)
      return false; // cannot reach c colors
    int limit = std::min(used, c - 1); // new color only as index `used`
    for (int col = 0; col <= limit; ++col) {
      colors[i] = col;
      if (enumerate(i + 1, col == used ? used + 1 : used, c))
        return true;
    }
    return false;
  };

  for (int c = 1; c <= static_cast<int>(n); ++c) {
    if (enumerate(0, 0, c)) {
      Coloring out;
      out.colors = *witness;
      out.color_count = c;
      out.trace = "oracle";
      out.verified = true;
      return {c, out};
    }
  }
  throw std::logic_error("exact_dist_number: no coloring found (unreachable)");
}

namespace {

// Digit-spread core shared by the constructions: for a subgroup whose orbits
// meet every block at most once, pick f constant on orbits and bijective per
// block, then spread the base-c digits of alpha over each block.
std::vector<int> digit_spread_lambda(const PermGroup &sub, const BlockSystem &b,
                                     const Coloring &alpha, int c) {
  unsigned n = b.degree;
  unsigned m = b.block_size;
  auto orbits = sub.orbits();
  std::vector<int> f(n, -1);
  // per block: which positions are taken
  std::vector<std::vector<bool>> taken(b.block_count,
                                       std::vector<bool>(m, false));
  for (const auto &orbit : orbits) {
    std::vector<unsigned> met;
    std::vector<bool> seen(b.block_count, false);
    for (Point x : orbit) {
      unsigned j = b.assignment[x];
      if (seen[j])
        throw hypothesis_error("digit spread: an orbit meets a block twice");
      seen[j] = true;
      met.push_back(j);
    }
    int pos = -1;
    for (unsigned v = 0; v < m; ++v) {
      bool free_everywhere = true;
      for (unsigned j : met)
        if (taken[j][v]) {
          free_everywhere = false;
          break;
        }
      if (free_everywhere) {
        pos = static_cast<int>(v);
        break;
      }
    }
    if (pos < 0)
      throw hypothesis_error("digit spread: no free position for an orbit");
    for (Point x : orbit)
      f[x] = pos;
    for (unsigned j : met)
      taken[j][static_cast<unsigned>(pos)] = true;
  }

  // alpha(block) in base-c digits, least significant first
  std::vector<std::vector<int>> digits(b.block_count, std::vector<int>(m, 0));
  for (unsigned j = 0; j < b.block_count; ++j) {
    long long v = alpha.colors[j];
    for (unsigned s = 0; s < m && v > 0; ++s) {
      digits[j][s] = static_cast<int>(v % c);
      v /= c;
    }
    if (v > 0)
      throw hypothesis_error("digit spread: color does not fit in m digits");
  }
  std::vector<int> lambda(n);
  for (Point x = 0; x < n; ++x)
    lambda[x] = digits[b.assignment[x]][static_cast<unsigned>(f[x])];
  return lambda;
}

void check_alpha_distinguishes_top(const PermGroup &top, const Coloring &alpha) {
  if (alpha.colors.size() != top.degree())
    throw hypothesis_error("alpha does not color the blocks");
  if (coloring_violator(top, alpha.colors))
    throw hypothesis_error("alpha is not distinguishing for the top action");
}

Coloring finish_verified(const PermGroup &g, std::vector<int> colors, int count,
                         std::string trace) {
  Coloring out;
  out.colors = std::move(colors);
  out.color_count = count;
  out.trace = std::move(trace);
  if (coloring_violator(g, out.colors))
    throw verification_error(out.trace + ": constructed coloring is not distinguishing");
  out.verified = true;
  return out;
}

} // namespace

Coloring construct_trivial_bottom(const PermGroup &g, const BlockSystem &b,
                                  const Coloring &alpha) {
  if (!b.invariant_under(g))
    throw hypothesis_error("construct_trivial_bottom: partition not invariant");
  BlockActionData data = block_action(g, b);
  for (const PermGroup &r : data.block_restrictions)
    if (!r.is_trivial())
      throw hypothesis_error(
          "construct_trivial_bottom: a block stabilizer acts nontrivially");
  check_alpha_distinguishes_top(data.top, alpha);

  int c = ceil_root(static_cast<std::uint64_t>(std::max(alpha.color_count, 1)),
                    b.block_size);
  std::vector<int> lambda = digit_spread_lambda(g, b, alpha, c);
  return finish_verified(g, std::move(lambda), c, "trivial-bottom");
}

Coloring construct_small_bottom(const PermGroup &g, const BlockSystem &b,
                                const Coloring &chi, const Coloring &alpha) {
  unsigned n = g.degree();
  if (chi.colors.size() != n)
    throw hypothesis_error("construct_small_bottom: chi does not cover the domain");
  if (!b.invariant_under(g))
    throw hypothesis_error("construct_small_bottom: partition not invariant");
  BlockActionData data = block_action(g, b);
  check_alpha_distinguishes_top(data.top, alpha);

  // chi restricted to each block must kill that block's action
  for (unsigned j = 0; j < b.block_count; ++j) {
    std::vector<int> local(b.block_size);
    for (unsigned i = 0; i < b.block_size; ++i)
      local[i] = chi.colors[b.blocks[j][i]];
    if (coloring_violator(data.block_restrictions[j], local))
      throw hypothesis_error(
          "construct_small_bottom: chi does not kill the action on a block");
  }

  PermGroup stab_chi = coloring_stabilizer_group(g, chi.colors);
  int c = ceil_root(static_cast<std::uint64_t>(std::max(alpha.color_count, 1)),
                    b.block_size);
  std::vector<int> lambda = digit_spread_lambda(stab_chi, b, alpha, c);

  int c_chi = chi.color_count;
  std::vector<int> mu(n);
  for (Point x = 0; x < n; ++x)
    mu[x] = c_chi * lambda[x] + chi.colors[x];
  return finish_verified(g, std::move(mu), c_chi * c, "small-bottom");
}

Coloring construct_large_bottom(const PermGroup &g, const BlockSystem &b,
                                const LinkingStructure &linking,
                                const Coloring &alpha) {
  unsigned n = g.degree();
  unsigned m = b.block_size;
  unsigned t = linking.linking_factor;
  if (m < 5 || m == 6)
    throw hypothesis_error("construct_large_bottom: needs m >= 5, m != 6");
  if (linking.socle.is_trivial())
    throw hypothesis_error("construct_large_bottom: trivial kernel");
  if (!b.invariant_under(g))
    throw hypothesis_error("construct_large_bottom: partition not invariant");
  BlockActionData data = block_action(g, b);
  check_alpha_distinguishes_top(data.top, alpha);

  // identify each point with (row i in [m], class u, in-class position w in [t]),
  // 1-based as in the staircase formulas
  std::vector<unsigned> row(n, 0), pos_w(n, 0);
  for (std::size_t u = 0; u < linking.classes.size(); ++u) {
    const auto &cls = linking.classes[u];
    for (std::size_t w = 0; w < cls.size(); ++w) {
      unsigned blk = cls[w];
      for (unsigned i = 0; i < m; ++i) {
        Point x = linking.block_labels[blk][i];
        row[x] = i + 1;
        pos_w[x] = static_cast<unsigned>(w) + 1;
      }
    }
  }

  std::vector<int> chi(n, 0);
  if (t >= m) {
    for (Point x = 0; x < n; ++x)
      chi[x] = (row[x] <= pos_w[x] && pos_w[x] <= m) ? 1 : 0;
    PermGroup stab = coloring_stabilizer_group(g, chi);
    int c = ceil_root(static_cast<std::uint64_t>(std::max(alpha.color_count, 1)), m);
    std::vector<int> lambda = digit_spread_lambda(stab, b, alpha, c);
    std::vector<int> mu(n);
    for (Point x = 0; x < n; ++x)
      mu[x] = 2 * lambda[x] + chi[x];
    return finish_verified(g, std::move(mu), 2 * c, "large-bottom");
  }

  for (Point x = 0; x < n; ++x)
    chi[x] = (row[x] <= pos_w[x]) ? 1 : 0;
  int c_beta = ceil_root(m, t); // ceil(m^(1/t))
  std::vector<int> beta(n, 0);
  for (Point x = 0; x < n; ++x) {
    unsigned value = row[x] - 1; // digit source, base c_beta, t digits
    unsigned digit_index = pos_w[x] - 1;
    unsigned v = value;
    for (unsigned s = 0; s < digit_index; ++s)
      v /= static_cast<unsigned>(c_beta);
    beta[x] = static_cast<int>(v % static_cast<unsigned>(c_beta));
  }
  std::vector<int> chi_beta(n);
  for (Point x = 0; x < n; ++x)
    chi_beta[x] = 2 * beta[x] + chi[x];
  PermGroup stab = coloring_stabilizer_group(g, chi_beta);
  int c = ceil_root(static_cast<std::uint64_t>(std::max(alpha.color_count, 1)), m);
  std::vector<int> lambda = digit_spread_lambda(stab, b, alpha, c);
  std::vector<int> mu(n);
  for (Point x = 0; x < n; ++x)
    mu[x] = 2 * c_beta * lambda[x] + 2 * beta[x] + chi[x];
  return finish_verified(g, std::move(mu), 2 * c_beta * c, "large-bottom");
}

bool within_dist_bound(int count, unsigned degree, const BigUint &order) {
  // count^n <= 48^n * |G|
  BigUint lhs = BigUint::pow(static_cast<std::uint64_t>(count), degree);
  BigUint rhs = BigUint::pow(48, degree);
  rhs *= order;
  return lhs <= rhs;
}

namespace {

Coloring distinct_coloring(const PermGroup &g, const char *trace) {
  Coloring out;
  out.colors.resize(g.degree());
  for (Point x = 0; x < g.degree(); ++x)
    out.colors[x] = static_cast<int>(x);
  out.color_count = static_cast<int>(g.degree());
  out.trace = trace;
  out.verified = true; // nontrivial elements move a point, hence a color
  return out;
}

} // namespace

Coloring distinguish_transitive(const PermGroup &g, const DistOptions &opts) {
  unsigned n = g.degree();
  if (n == 0)
    throw std::invalid_argument("distinguish_transitive: empty domain");
  if (!g.transitive())
    throw hypothesis_error("distinguish_transitive: group is not transitive");

  auto bounded = [&](Coloring col) {
    if (!within_dist_bound(col.color_count, n, g.order()))
      throw verification_error("distinguish_transitive: color count " +
                               std::to_string(col.color_count) +
                               " violates the 48 * |G|^(1/n) bound");
    return col;
  };

  if (n == 1)
    return bounded(Coloring{{0}, 1, "trivial", true});
  if (n <= opts.oracle_cap)
    return bounded(exact_dist_number(g, nullptr, opts.oracle_cap).witness);
  if (g.is_natural_sym() || g.is_natural_alt())
    return bounded(distinct_coloring(g, "distinct"));

  auto minimal = minimal_nontrivial_block_system(g);
  if (!minimal) {
    // primitive beyond the oracle cap
    if (g.regular()) {
      std::vector<int> colors(n, 0);
      colors[0] = 1;
      Coloring out{std::move(colors), 2, "point-mark", false};
      if (coloring_violator(g, out.colors))
        throw verification_error("point-mark coloring failed verification");
      out.verified = true;
      return bounded(out);
    }
    return bounded(distinct_coloring(g, "distinct-fallback"));
  }

  BlockActionData data = block_action(g, *minimal);
  unsigned m = minimal->block_size;

  if (data.kernel.is_trivial()) {
    // try the staircase over the coarsest system first
    auto maximal = maximal_nontrivial_block_system(g);
    if (maximal) {
      BlockActionData mdata = block_action(g, *maximal);
      unsigned mk = maximal->block_count;
      unsigned mm = maximal->block_size;
      if (mdata.kernel.is_trivial() && mk >= 5 && mm >= mk - 1 &&
          (mdata.top.is_natural_sym() || mdata.top.is_natural_alt())) {
        // color i letters in block i+1 with 1, the rest 0
        std::vector<int> colors(n, 0);
        for (unsigned j = 0; j < mk; ++j)
          for (unsigned i = 0; i < j; ++i)
            colors[maximal->blocks[j][i]] = 1;
        Coloring out{std::move(colors), 2, "staircase", false};
        if (coloring_violator(g, out.colors))
          throw verification_error("staircase coloring failed verification");
        out.verified = true;
        return bounded(out);
      }
    }
    // faithful top: pull a top coloring back over the blocks
    Coloring alpha = distinguish_transitive(data.top, opts);
    std::vector<int> colors(n);
    for (Point x = 0; x < n; ++x)
      colors[x] = alpha.colors[minimal->assignment[x]];
    Coloring out{std::move(colors), alpha.color_count, "top-pullback", false};
    if (coloring_violator(g, out.colors))
      throw verification_error("top-pullback coloring failed verification");
    out.verified = true;
    return bounded(out);
  }

  Coloring alpha = distinguish_transitive(data.top, opts);

  const PermGroup &r0 = data.block_restrictions[0];
  BigUint half = BigUint::factorial(m > 2 ? m - 2 : 0);
  if (m >= 2)
    half *= static_cast<std::uint64_t>(m) * (m - 1) / 2;
  bool large = m >= 5 && m != 6 &&
               (r0.order() == half || r0.order() == BigUint::factorial(m));
  if (large) {
    try {
      LinkingStructure linking = linking_structure(data.kernel, *minimal);
      return bounded(construct_large_bottom(g, *minimal, linking, alpha));
    } catch (const hypothesis_error &) {
      // fall through to the small-bottom route
    }
  }

  // kill each block action with a per-block distinguishing coloring
  std::vector<int> chi(n, 0);
  int c_chi = 1;
  for (unsigned j = 0; j < minimal->block_count; ++j) {
    const PermGroup &rj = data.block_restrictions[j];
    Coloring local;
    if (m <= opts.oracle_cap)
      local = exact_dist_number(rj, nullptr, opts.oracle_cap).witness;
    else
      local = distinguish_transitive(rj, opts);
    for (unsigned i = 0; i < m; ++i)
      chi[minimal->blocks[j][i]] = local.colors[i];
    c_chi = std::max(c_chi, local.color_count);
  }
  Coloring chi_col{std::move(chi), c_chi, "per-block", false};
  return bounded(construct_small_bottom(g, *minimal, chi_col, alpha));
}

} // namespace pgt
