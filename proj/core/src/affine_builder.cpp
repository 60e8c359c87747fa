#include "pgt/affine_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace pgt {

namespace {

std::uint64_t radix_key(const FpVector &v) {
  std::uint64_t code = 0;
  for (unsigned i = v.dim(); i-- > 0;) {
    code = code * v.p + v.e[i];
  }
  return code;
}

void check_key_width(std::uint32_t p, unsigned dim) {
  double bits = dim * std::log2(static_cast<double>(p));
  if (bits > 62)
    throw cap_exceeded("vector key exceeds 64 bits");
}

struct WitnessPair {
  Perm perm;      // action on summand indices
  FpMatrix mat;   // ambient matrix realizing it
};

// schreier generators of the stabilizer of `point` with matrix witnesses
std::vector<WitnessPair> stabilizer_pairs(const std::vector<WitnessPair> &gens,
                                          unsigned t, Point point) {
  std::vector<std::optional<WitnessPair>> reps(t);
  const FpMatrix id = gens.empty() ? FpMatrix() : FpMatrix::identity(gens[0].mat.p(), gens[0].mat.dim());
  std::vector<Point> orbit{point};
  reps[point] = WitnessPair{Perm(t), id};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (const auto &g : gens) {
      Point y = g.perm[orbit[head]];
      if (!reps[y]) {
        reps[y] = WitnessPair{compose(g.perm, reps[orbit[head]]->perm),
                              mat_mul(g.mat, reps[orbit[head]]->mat)};
        orbit.push_back(y);
      }
    }
  }
  std::vector<WitnessPair> out;
  std::vector<std::uint64_t> seen;
  for (Point beta : orbit) {
    for (const auto &g : gens) {
      Point img = g.perm[beta];
      Perm sperm = compose(reps[img]->perm.inverse(),
                           compose(g.perm, reps[beta]->perm));
      FpMatrix smat = mat_mul(mat_inverse(reps[img]->mat),
                              mat_mul(g.mat, reps[beta]->mat));
      if (smat.is_identity())
        continue;
      std::uint64_t h = smat.hash();
      bool dup = false;
      for (std::uint64_t s : seen)
        if (s == h) {
          dup = true;
          break;
        }
      if (dup)
        continue;
      seen.push_back(h);
      out.push_back(WitnessPair{std::move(sperm), std::move(smat)});
      if (out.size() > 20000)
        throw cap_exceeded("stabilizer_pairs: generator set exploded");
    }
  }
  return out;
}

} // namespace

ImprimitiveModule analyze_imprimitive(const MatrixGroup &g) {
  if (!g.decomposition)
    throw hypothesis_error("analyze_imprimitive: no decomposition tracked");
  ImprimitiveModule m;
  m.group = g;
  m.summands = static_cast<unsigned>(g.decomposition->size());
  if (m.summands == 0)
    throw hypothesis_error("analyze_imprimitive: empty decomposition");
  unsigned total_dim = 0;
  for (const auto &basis : *g.decomposition) {
    m.bases.emplace_back(g.p, g.dim, basis);
    total_dim += static_cast<unsigned>(basis.size());
  }
  m.summand_dim = m.bases[0].dim();
  for (const auto &b : m.bases)
    if (b.dim() != m.summand_dim)
      throw hypothesis_error("analyze_imprimitive: summands of unequal dimension");
  if (total_dim != g.dim)
    throw hypothesis_error("analyze_imprimitive: decomposition does not span");

  unsigned t = m.summands;
  // how each generator permutes the summands
  std::vector<WitnessPair> pairs;
  std::vector<Perm> perms;
  for (const FpMatrix &mat : g.generators) {
    std::vector<Point> img(t);
    for (unsigned i = 0; i < t; ++i) {
      FpVector w = mat.apply(m.bases[i].basis()[0]);
      unsigned target = t;
      for (unsigned j = 0; j < t; ++j)
        if (m.bases[j].contains(w)) {
          target = j;
          break;
        }
      if (target == t)
        throw hypothesis_error("analyze_imprimitive: image leaves the decomposition");
      for (const FpVector &bv : m.bases[i].basis())
        if (!m.bases[target].contains(mat.apply(bv)))
          throw hypothesis_error("analyze_imprimitive: summand image is torn");
      img[i] = target;
    }
    Perm perm(std::move(img));
    perms.push_back(perm);
    pairs.push_back(WitnessPair{std::move(perm), mat});
  }
  m.summand_action = PermGroup(t, perms);

  // transversal witnesses from summand 0
  m.to_summand.assign(t, std::nullopt);
  m.to_summand[0] = FpMatrix::identity(g.p, g.dim);
  {
    std::vector<Point> orbit{0};
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto &pr : pairs) {
        Point y = pr.perm[orbit[head]];
        if (!m.to_summand[y]) {
          m.to_summand[y] = mat_mul(pr.mat, *m.to_summand[orbit[head]]);
          orbit.push_back(y);
        }
      }
  }

  // stabilizer generators and their restrictions
  for (unsigned i = 0; i < t; ++i) {
    std::vector<FpMatrix> hi;
    if (pairs.empty()) {
      m.stabilizer_gens.push_back(hi);
    } else {
      for (auto &pr : stabilizer_pairs(pairs, t, i))
        hi.push_back(std::move(pr.mat));
      m.stabilizer_gens.push_back(hi);
    }
    std::vector<FpMatrix> ki;
    for (const FpMatrix &mat : m.stabilizer_gens.back()) {
      FpMatrix r(g.p, m.summand_dim);
      for (unsigned c = 0; c < m.summand_dim; ++c) {
        auto coords = m.bases[i].coords(mat.apply(m.bases[i].basis()[c]));
        for (unsigned row = 0; row < m.summand_dim; ++row)
          r.set(row, c, coords[row]);
      }
      if (!r.is_identity())
        ki.push_back(std::move(r));
    }
    m.bottom_images.push_back(MatrixGroup{g.p, m.summand_dim, std::move(ki),
                                          std::nullopt});
  }

  // kernel: iterated schreier over all summand indices
  {
    std::vector<WitnessPair> cur = pairs;
    for (unsigned b = 0; b < t && !cur.empty(); ++b)
      cur = stabilizer_pairs(cur, t, b);
    for (auto &pr : cur)
      m.kernel_gens.push_back(std::move(pr.mat));
  }

  // faithful action on the union of the summands' vectors
  check_key_width(g.p, g.dim);
  std::unordered_map<std::uint64_t, Point> index;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m.summand_dim; ++i)
    q *= g.p;
  for (unsigned i = 0; i < t; ++i) {
    for (std::uint64_t code = 0; code < q; ++code) {
      std::vector<std::uint32_t> coords(m.summand_dim);
      std::uint64_t c = code;
      for (unsigned s = 0; s < m.summand_dim; ++s) {
        coords[s] = static_cast<std::uint32_t>(c % g.p);
        c /= g.p;
      }
      FpVector v = m.bases[i].from_coords(coords);
      std::uint64_t key = radix_key(v);
      if (!index.count(key)) {
        index.emplace(key, static_cast<Point>(m.union_vectors.size()));
        m.union_vectors.push_back(std::move(v));
      }
    }
  }
  std::vector<Perm> union_gens;
  for (const FpMatrix &mat : g.generators) {
    std::vector<Point> img(m.union_vectors.size());
    for (std::size_t v = 0; v < m.union_vectors.size(); ++v)
      img[v] = index.at(radix_key(mat.apply(m.union_vectors[v])));
    union_gens.emplace_back(std::move(img));
  }
  m.union_action = PermGroup(static_cast<unsigned>(m.union_vectors.size()),
                             std::move(union_gens));
  m.order = m.union_action.order();
  return m;
}

VectorBaseCertificate trivk1_base(const ImprimitiveModule &m,
                                  const AffineOptions &opts) {
  unsigned t = m.summands;
  for (unsigned i = 0; i < t; ++i)
    if (!m.bottom_images[i].generators.empty())
      throw hypothesis_error("trivk1_base: K_" + std::to_string(i + 1) +
                             " is nontrivial");

  DistResult dist = exact_dist_number(m.summand_action, nullptr, opts.oracle_cap);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m.summand_dim; ++i)
    q *= m.group.p;
  unsigned b = static_cast<unsigned>(
      ceil_log(q, static_cast<std::uint64_t>(dist.number)));

  // label the union vectors so corresponding vectors share a label: within
  // each summand orbit of P, labels are the canonical coordinates of the
  // orbit member lying in the least summand
  std::vector<int> summand_of(m.union_vectors.size(), -1); // -1 for the zero vector
  for (std::size_t v = 0; v < m.union_vectors.size(); ++v) {
    if (m.union_vectors[v].is_zero())
      continue;
    for (unsigned i = 0; i < t; ++i)
      if (m.bases[i].contains(m.union_vectors[v])) {
        summand_of[v] = static_cast<int>(i);
        break;
      }
  }
  std::vector<unsigned> p_orbit_ref(t); // least summand in the P-orbit
  for (const auto &orb : m.summand_action.orbits())
    for (Point s : orb)
      p_orbit_ref[s] = orb[0];

  auto canonical = [&](unsigned summand, const FpVector &v) {
    auto coords = m.bases[summand].coords(v);
    std::uint64_t code = 0;
    for (unsigned i = static_cast<unsigned>(coords.size()); i-- > 0;)
      code = code * m.group.p + coords[i];
    return code;
  };

  std::vector<std::vector<std::optional<FpVector>>> by_label(
      t, std::vector<std::optional<FpVector>>(q));
  for (const auto &orbit : m.union_action.orbits()) {
    std::vector<std::optional<Point>> member(t);
    bool has_zero = false;
    for (Point vp : orbit) {
      int s = summand_of[vp];
      if (s < 0) {
        has_zero = true;
        continue;
      }
      if (member[static_cast<unsigned>(s)])
        throw hypothesis_error("trivk1_base: an orbit meets a summand twice");
      member[static_cast<unsigned>(s)] = vp;
    }
    if (has_zero) {
      for (unsigned i = 0; i < t; ++i)
        by_label[i][0] = fp_zero(m.group.p, m.group.dim);
      continue;
    }
    for (unsigned i = 0; i < t; ++i) {
      if (!member[i])
        continue;
      unsigned ref = p_orbit_ref[i];
      if (!member[ref])
        throw hypothesis_error("trivk1_base: orbit misses its reference summand");
      std::uint64_t label = canonical(ref, m.union_vectors[*member[ref]]);
      if (by_label[i][label])
        throw hypothesis_error("trivk1_base: duplicate label in a summand");
      by_label[i][label] = m.union_vectors[*member[i]];
    }
  }
  for (unsigned i = 0; i < t; ++i)
    for (std::uint64_t l = 0; l < q; ++l)
      if (!by_label[i][l])
        throw hypothesis_error("trivk1_base: labels do not cover a summand");

  VectorBaseCertificate cert;
  for (unsigned s = 0; s < b; ++s) {
    FpVector w = fp_zero(m.group.p, m.group.dim);
    for (unsigned i = 0; i < t; ++i) {
      std::uint64_t color = static_cast<std::uint64_t>(dist.witness.colors[i]);
      for (unsigned digit = 0; digit < s; ++digit)
        color /= q;
      w = fp_add(w, *by_label[i][color % q]);
    }
    cert.vectors.push_back(std::move(w));
  }

  VectorAction action = as_permutation_group(m.group, VectorDomain::All,
                                             opts.point_cap, m.order);
  for (const FpVector &w : cert.vectors)
    cert.points.push_back(static_cast<Point>(action.encode(w)));
  cert.residual_order = action.group.pointwise_stabilizer(cert.points).order();
  if (!cert.residual_order.is_one())
    throw verification_error("trivk1_base: constructed vectors are not a base");
  cert.verified = true;
  return cert;
}

BoundedK1Result boundedk1_base(const ImprimitiveModule &m,
                               const std::vector<FpVector> &base_of_k1,
                               const AffineOptions &opts) {
  unsigned t = m.summands;
  if (!m.summand_action.transitive())
    throw hypothesis_error("boundedk1_base: summand action is not transitive");
  for (const FpVector &v : base_of_k1)
    if (!m.bases[0].contains(v))
      throw hypothesis_error("boundedk1_base: base vector outside V_1");

  // the supplied vectors must be a base for K_1 on V_1
  if (!m.bottom_images[0].generators.empty()) {
    VectorAction k1_action = as_permutation_group(m.bottom_images[0],
                                                  VectorDomain::All, opts.point_cap);
    std::vector<Point> pts;
    for (const FpVector &v : base_of_k1) {
      FpVector coords = fp_vector(m.group.p, m.bases[0].coords(v));
      pts.push_back(static_cast<Point>(k1_action.encode(coords)));
    }
    if (!k1_action.group.pointwise_stabilizer(pts).order().is_one())
      throw hypothesis_error("boundedk1_base: supplied vectors are not a base of K_1");
  }

  BoundedK1Result out;
  out.input_base_size = static_cast<unsigned>(base_of_k1.size());

  VectorBaseCertificate cert;
  for (const FpVector &v : base_of_k1) {
    FpVector w = fp_zero(m.group.p, m.group.dim);
    for (unsigned i = 0; i < t; ++i)
      w = fp_add(w, m.to_summand[i]->apply(v));
    cert.vectors.push_back(std::move(w));
  }

  VectorAction action = as_permutation_group(m.group, VectorDomain::All,
                                             opts.point_cap, m.order);
  std::vector<Point> wpoints;
  for (const FpVector &w : cert.vectors)
    wpoints.push_back(static_cast<Point>(action.encode(w)));

  // residual group L = C_H(w_1..w_b) as matrices
  PermGroup stab = action.group.pointwise_stabilizer(wpoints);
  std::vector<FpMatrix> lgens;
  for (const Perm &g : stab.generators()) {
    FpMatrix mat(m.group.p, m.group.dim);
    for (unsigned c = 0; c < m.group.dim; ++c) {
      FpVector img = action.decode(g[static_cast<Point>(
          action.encode(fp_unit(m.group.p, m.group.dim, c)))]);
      for (unsigned r = 0; r < m.group.dim; ++r)
        mat.set(r, c, img.e[r]);
    }
    if (!mat.invertible())
      throw verification_error("boundedk1_base: stabilizer image is not linear");
    lgens.push_back(std::move(mat));
  }
  MatrixGroup lgrp{m.group.p, m.group.dim, std::move(lgens),
                   m.group.decomposition};
  ImprimitiveModule ml = analyze_imprimitive(lgrp);
  VectorBaseCertificate rest = trivk1_base(ml, opts);
  out.residual_size = static_cast<unsigned>(rest.vectors.size());

  cert.points = wpoints;
  for (std::size_t i = 0; i < rest.vectors.size(); ++i) {
    cert.vectors.push_back(rest.vectors[i]);
    cert.points.push_back(static_cast<Point>(action.encode(rest.vectors[i])));
  }
  cert.residual_order = action.group.pointwise_stabilizer(cert.points).order();
  if (!cert.residual_order.is_one())
    throw verification_error("boundedk1_base: combined vectors are not a base");
  cert.verified = true;

  // claimed total: b + ceil(log_{|V1|} d(P))
  DistResult dp = exact_dist_number(m.summand_action, nullptr, opts.oracle_cap);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m.summand_dim; ++i)
    q *= m.group.p;
  unsigned claim = out.input_base_size +
                   static_cast<unsigned>(ceil_log(q, static_cast<std::uint64_t>(dp.number)));
  if (cert.vectors.size() > claim)
    throw verification_error("boundedk1_base: certificate longer than claimed");

  double log_v = static_cast<double>(m.group.dim) *
                 std::log2(static_cast<double>(m.group.p));
  out.bound = out.input_base_size + 1 + std::log2(48.0) +
              m.summand_action.order().log2() / log_v;
  out.cert = std::move(cert);
  return out;
}

namespace {

// e_a - e_b (within one summand of size k) in the f_l = e_l - e_{l+1} basis
void add_difference(std::vector<std::int64_t> &coords, unsigned a, unsigned b,
                    std::int64_t scale) {
  if (a == b)
    return;
  if (a < b)
    for (unsigned l = a; l < b; ++l)
      coords[l] += scale;
  else
    for (unsigned l = b; l < a; ++l)
      coords[l] -= scale;
}

std::vector<std::uint32_t> reduce_mod_p(const std::vector<std::int64_t> &c,
                                        std::uint32_t p) {
  std::vector<std::uint32_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t v = c[i] % static_cast<std::int64_t>(p);
    if (v < 0)
      v += p;
    out[i] = static_cast<std::uint32_t>(v);
  }
  return out;
}

// drop-last-representative reduction modulo the all-ones vector, whose
// f-coordinates are (1, 2, ..., k-1)
std::vector<std::uint32_t> quotient_reduce(const std::vector<std::uint32_t> &c,
                                           unsigned k, std::uint32_t p) {
  std::vector<std::uint32_t> out(k - 2);
  std::uint32_t last = c[k - 2];
  for (unsigned l = 0; l + 2 < k; ++l) {
    std::uint64_t z = static_cast<std::uint64_t>(l + 1) % p;
    out[l] = static_cast<std::uint32_t>(
        (c[l] + z * last) % p);
  }
  return out;
}

} // namespace

DeletedPermModule deleted_perm_module(unsigned k, std::uint32_t p,
                                      SourceGroup source) {
  if (k < 5)
    throw std::invalid_argument("deleted_perm_module: k must be >= 5");
  if (!is_prime(p))
    throw std::invalid_argument("deleted_perm_module: p is not prime");
  DeletedPermModule out;
  out.k = k;
  out.p = p;
  out.p_divides_k = (k % p == 0);
  out.module_dim = out.p_divides_k ? k - 2 : k - 1;

  if (source == SourceGroup::Sym) {
    std::vector<Point> cyc(k);
    for (unsigned i = 0; i < k; ++i)
      cyc[i] = (i + 1) % k;
    out.source_gens.push_back(Perm::from_cycles(k, {{0, 1}}));
    out.source_gens.emplace_back(std::move(cyc));
  } else {
    out.source_gens.push_back(Perm::from_cycles(k, {{0, 1, 2}}));
    if (k % 2 == 1) {
      std::vector<Point> cyc(k);
      for (unsigned i = 0; i < k; ++i)
        cyc[i] = (i + 1) % k;
      out.source_gens.emplace_back(std::move(cyc));
    } else {
      std::vector<Point> cyc(k);
      cyc[0] = 0;
      for (unsigned i = 1; i < k; ++i)
        cyc[i] = i % (k - 1) + 1;
      out.source_gens.emplace_back(std::move(cyc));
    }
  }

  for (const Perm &g : out.source_gens) {
    FpMatrix mat(p, out.module_dim);
    for (unsigned j = 0; j + 1 < k; ++j) {
      // image of f_j = e_j - e_{j+1}
      std::vector<std::int64_t> raw(k - 1, 0);
      add_difference(raw, g[j], g[j + 1], 1);
      std::vector<std::uint32_t> col = reduce_mod_p(raw, p);
      if (out.p_divides_k)
        col = quotient_reduce(col, k, p);
      if (j < out.module_dim)
        for (unsigned r = 0; r < out.module_dim; ++r)
          mat.set(r, j, col[r]);
      else {
        // j == k-2 in the quotient case: image must be consistent with the
        // dropped representative; nothing to store
      }
    }
    out.generator_images.push_back(std::move(mat));
  }

  // relation checks: matrix orders match the source permutation orders
  for (std::size_t i = 0; i < out.source_gens.size(); ++i) {
    unsigned ord = 1;
    Perm pow = out.source_gens[i];
    while (!pow.is_identity()) {
      pow = compose(pow, out.source_gens[i]);
      ++ord;
    }
    if (!mat_pow(out.generator_images[i], ord).is_identity())
      throw verification_error("deleted_perm_module: generator relation failed");
  }
  {
    // sample word: product of the two generators
    Perm w = compose(out.source_gens[0], out.source_gens[1]);
    unsigned ord = 1;
    Perm pow = w;
    while (!pow.is_identity()) {
      pow = compose(pow, w);
      ++ord;
    }
    FpMatrix wm = mat_mul(out.generator_images[0], out.generator_images[1]);
    if (!mat_pow(wm, ord).is_identity())
      throw verification_error("deleted_perm_module: word relation failed");
  }
  if (!out.p_divides_k) {
    // the k-cycle image must be fixed-point-free on the module
    const FpMatrix &cyc = out.generator_images.back();
    FpMatrix shifted = cyc;
    for (unsigned i = 0; i < out.module_dim; ++i)
      shifted.set(i, i, (shifted.at(i, i) + p - 1) % p);
    if (mat_rank(shifted) != out.module_dim)
      throw verification_error("deleted_perm_module: cycle image has a fixed vector");
  }
  return out;
}

namespace {

// letter-permutation matrices on the direct sum of deleted modules
std::vector<FpMatrix> module_matrices(const PermGroup &letters, unsigned k,
                                      unsigned t, std::uint32_t p,
                                      unsigned md) {
  bool quotient = (k % p == 0);
  std::vector<FpMatrix> out;
  for (const Perm &g : letters.generators()) {
    FpMatrix mat(p, t * md);
    for (unsigned i = 0; i < t; ++i) {
      for (unsigned l = 0; l + 1 < k; ++l) {
        Point a = g[i * k + l];
        Point b = g[i * k + l + 1];
        unsigned ti = a / k; // target summand
        if (b / k != ti)
          throw hypothesis_error("alt_induced: columns are not preserved");
        std::vector<std::int64_t> raw(k - 1, 0);
        add_difference(raw, a % k, b % k, 1);
        std::vector<std::uint32_t> col = reduce_mod_p(raw, p);
        if (quotient)
          col = quotient_reduce(col, k, p);
        if (l < md)
          for (unsigned r = 0; r < md; ++r)
            mat.set(ti * md + r, i * md + l, col[r]);
      }
    }
    out.push_back(std::move(mat));
  }
  return out;
}

// per-summand conversion of a zero-sum letter vector to module coordinates
std::vector<std::uint32_t> to_module_coords(const std::vector<std::int64_t> &u,
                                            unsigned k, unsigned t,
                                            std::uint32_t p, unsigned md) {
  bool quotient = (k % p == 0);
  std::vector<std::uint32_t> out(t * md);
  for (unsigned i = 0; i < t; ++i) {
    std::int64_t sum = 0;
    for (unsigned j = 0; j < k; ++j)
      sum += u[i * k + j];
    if (sum % static_cast<std::int64_t>(p) != 0)
      throw hypothesis_error("alt_induced: vector has nonzero summand sum");
    std::vector<std::int64_t> partial(k - 1, 0);
    std::int64_t acc = 0;
    for (unsigned l = 0; l + 1 < k; ++l) {
      acc += u[i * k + l];
      partial[l] = acc;
    }
    std::vector<std::uint32_t> coords = reduce_mod_p(partial, p);
    if (quotient)
      coords = quotient_reduce(coords, k, p);
    for (unsigned l = 0; l < md; ++l)
      out[i * md + l] = coords[l];
  }
  return out;
}

} // namespace

VectorBaseCertificate alt_induced_base(const PermGroup &letters, unsigned k,
                                       unsigned t, std::uint32_t p,
                                       const std::vector<FpVector> &base_of_u,
                                       const AffineOptions &opts) {
  unsigned n = k * t;
  if (letters.degree() != n)
    throw hypothesis_error("alt_induced_base: degree != k*t");
  if (k < 7)
    throw hypothesis_error("alt_induced_base: k must be >= 7");
  if (!is_prime(p))
    throw std::invalid_argument("alt_induced_base: p is not prime");

  // verify the given vectors form a base of the letter module: their joint
  // stabilizer is the stabilizer of the combined coloring
  {
    for (const FpVector &u : base_of_u)
      if (u.dim() != n || u.p != p)
        throw std::invalid_argument("alt_induced_base: base vector shape mismatch");
    std::map<std::vector<std::uint32_t>, int> ids;
    std::vector<int> colors(n);
    for (Point x = 0; x < n; ++x) {
      std::vector<std::uint32_t> tuple;
      tuple.reserve(base_of_u.size());
      for (const FpVector &u : base_of_u)
        tuple.push_back(u.e[x]);
      auto [it, fresh] = ids.emplace(std::move(tuple), static_cast<int>(ids.size()));
      colors[x] = it->second;
    }
    if (coloring_violator(letters, colors))
      throw hypothesis_error("alt_induced_base: base_of_u is not a base");
  }

  bool quotient = (k % p == 0);
  unsigned md = quotient ? k - 2 : k - 1;

  // vectors w_1..w_3 and u^e, u^f in letter coordinates
  std::vector<std::vector<std::int64_t>> raw;
  for (unsigned s = 0; s < 3; ++s) {
    std::vector<std::int64_t> w(n, 0);
    for (unsigned i = 0; i < t; ++i) {
      w[i * k + s] += 1;
      w[i * k + s + 1] -= 1;
    }
    raw.push_back(std::move(w));
  }
  for (const FpVector &u : base_of_u) {
    std::vector<std::int64_t> ue(n, 0), uf(n, 0);
    for (unsigned i = 0; i < t; ++i) {
      std::int64_t beta = 0, gamma = 0;
      for (unsigned j = 2; j < k; ++j) {
        std::int64_t a = u.e[i * k + j];
        ue[i * k + j] = a;
        beta -= a;
      }
      ue[i * k + 0] = beta;
      for (unsigned j = 0; j < 2; ++j) {
        std::int64_t a = u.e[i * k + j];
        uf[i * k + j] = a;
        gamma -= a;
      }
      uf[i * k + 2] = gamma;
    }
    raw.push_back(std::move(ue));
    raw.push_back(std::move(uf));
  }

  MatrixGroup module{p, t * md, module_matrices(letters, k, t, p, md),
                     std::nullopt};
  check_key_width(p, t * md);
  VectorAction action = as_permutation_group(module, VectorDomain::All,
                                             opts.point_cap, letters.order());

  VectorBaseCertificate cert;
  for (const auto &u : raw) {
    FpVector v = fp_vector(p, to_module_coords(u, k, t, p, md));
    cert.points.push_back(static_cast<Point>(action.encode(v)));
    cert.vectors.push_back(std::move(v));
  }
  cert.residual_order = action.group.pointwise_stabilizer(cert.points).order();
  if (!cert.residual_order.is_one())
    throw verification_error("alt_induced_base: constructed vectors are not a base");
  cert.verified = true;

  if (quotient) {
    // the centralizer of each representative must equal the centralizer of
    // its unreduced letter vector
    for (std::size_t s = 0; s < raw.size(); ++s) {
      // orbit of the module vector with letter-permutation witnesses
      std::unordered_map<std::uint64_t, std::size_t> seen;
      std::vector<FpVector> orbit{cert.vectors[s]};
      std::vector<Perm> witness{Perm(n)};
      seen.emplace(radix_key(cert.vectors[s]), 0);
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (std::size_t gi = 0; gi < module.generators.size(); ++gi) {
          FpVector img = module.generators[gi].apply(orbit[head]);
          std::uint64_t key = radix_key(img);
          if (!seen.count(key)) {
            seen.emplace(key, orbit.size());
            witness.push_back(compose(letters.generators()[gi], witness[head]));
            orbit.push_back(std::move(img));
          }
        }
      }
      auto fixes_letter_vector = [&](const Perm &g) {
        for (Point x = 0; x < n; ++x) {
          std::int64_t a = raw[s][x] % static_cast<std::int64_t>(p);
          std::int64_t b = raw[s][g[x]] % static_cast<std::int64_t>(p);
          if ((a - b) % static_cast<std::int64_t>(p) != 0)
            return false;
        }
        return true;
      };
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (std::size_t gi = 0; gi < module.generators.size(); ++gi) {
          FpVector img = module.generators[gi].apply(orbit[head]);
          std::size_t at = seen.at(radix_key(img));
          Perm schreier = compose(witness[at].inverse(),
                                  compose(letters.generators()[gi], witness[head]));
          if (schreier.is_identity())
            continue;
          if (!fixes_letter_vector(schreier))
            throw verification_error(
                "alt_induced_base: quotient centralizer differs from the "
                "module centralizer");
        }
      }
    }
  }
  return cert;
}

AltInducedReport alt_induced_pipeline(const PermGroup &letters, unsigned k,
                                      unsigned t, std::uint32_t p,
                                      const AffineOptions &opts) {
  if (!letters.transitive())
    throw hypothesis_error("alt_induced_pipeline: letter action is not transitive");
  DistOptions dopts;
  dopts.oracle_cap = opts.oracle_cap;
  Coloring col = distinguish_transitive(letters, dopts);

  unsigned n = k * t;
  unsigned b_u = static_cast<unsigned>(
      ceil_log(p, static_cast<std::uint64_t>(col.color_count)));
  std::vector<FpVector> base_u;
  for (unsigned s = 0; s < b_u; ++s) {
    FpVector u = fp_zero(p, n);
    for (Point x = 0; x < n; ++x) {
      std::uint64_t v = static_cast<std::uint64_t>(col.colors[x]);
      for (unsigned d = 0; d < s; ++d)
        v /= p;
      u.e[x] = static_cast<std::uint32_t>(v % p);
    }
    base_u.push_back(std::move(u));
  }

  AltInducedReport report;
  report.cert = alt_induced_base(letters, k, t, p, base_u, opts);
  report.base_of_u_size = b_u;
  report.letter_colors = col.color_count;
  report.achieved = static_cast<double>(report.cert.vectors.size());
  unsigned md = (k % p == 0) ? k - 2 : k - 1;
  double log_v = static_cast<double>(t) * md * std::log2(static_cast<double>(p));
  report.bound = 17.0 + 2.0 * letters.order().log2() / log_v;
  report.within_bound = report.achieved <= report.bound;
  return report;
}

MatrixGroup repeated_module(const MatrixGroup &l, unsigned multiplicity) {
  MatrixGroup out{l.p, l.dim * multiplicity, {}, std::nullopt};
  for (const FpMatrix &m : l.generators) {
    FpMatrix big(l.p, out.dim);
    for (unsigned c = 0; c < multiplicity; ++c)
      for (unsigned r = 0; r < l.dim; ++r)
        for (unsigned cc = 0; cc < l.dim; ++cc)
          big.set(c * l.dim + r, c * l.dim + cc, m.at(r, cc));
    out.generators.push_back(std::move(big));
  }
  return out;
}

RepeatedModuleResult repeated_module_base(const MatrixGroup &l,
                                          unsigned multiplicity,
                                          const AffineOptions &opts) {
  if (multiplicity < 1)
    throw std::invalid_argument("repeated_module_base: multiplicity must be >= 1");
  VectorAction w_action = as_permutation_group(l, VectorDomain::All,
                                               opts.point_cap);
  BaseCertificate base_w = exact_min_base(w_action.group);
  unsigned bw = static_cast<unsigned>(base_w.points.size());
  unsigned b = (bw + multiplicity - 1) / multiplicity;

  RepeatedModuleResult out;
  out.base_w_size = bw;
  MatrixGroup big = repeated_module(l, multiplicity);
  VectorAction v_action = as_permutation_group(big, VectorDomain::All,
                                               opts.point_cap,
                                               w_action.group.order());
  for (unsigned j = 0; j < b; ++j) {
    FpVector y = fp_zero(l.p, big.dim);
    for (unsigned c = 0; c < multiplicity; ++c) {
      std::size_t idx = static_cast<std::size_t>(j) * multiplicity + c;
      if (idx >= bw)
        break;
      FpVector x = w_action.decode(base_w.points[idx]);
      for (unsigned r = 0; r < l.dim; ++r)
        y.e[c * l.dim + r] = x.e[r];
    }
    out.cert.points.push_back(static_cast<Point>(v_action.encode(y)));
    out.cert.vectors.push_back(std::move(y));
  }
  out.cert.residual_order =
      v_action.group.pointwise_stabilizer(out.cert.points).order();
  if (!out.cert.residual_order.is_one())
    throw verification_error("repeated_module_base: chunked vectors are not a base");
  out.cert.verified = true;
  return out;
}

} // namespace pgt
