#include "pgt/group_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pgt/base_ops.hpp"

namespace pgt {

PermGroup sym_group(unsigned n) {
  if (n < 2)
    return PermGroup::trivial(n);
  std::vector<Perm> gens{Perm::from_cycles(n, {{0, 1}})};
  if (n > 2) {
    std::vector<Point> cyc(n);
    for (unsigned i = 0; i < n; ++i)
      cyc[i] = (i + 1) % n;
    gens.emplace_back(std::move(cyc));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup alt_group(unsigned n) {
  if (n < 3)
    return PermGroup::trivial(n);
  std::vector<Perm> gens{Perm::from_cycles(n, {{0, 1, 2}})};
  if (n > 3) {
    if (n % 2 == 1) {
      std::vector<Point> cyc(n);
      for (unsigned i = 0; i < n; ++i)
        cyc[i] = (i + 1) % n;
      gens.emplace_back(std::move(cyc));
    } else {
      std::vector<Point> cyc(n);
      cyc[0] = 0;
      for (unsigned i = 1; i < n; ++i)
        cyc[i] = i % (n - 1) + 1;
      gens.emplace_back(std::move(cyc));
    }
  }
  return PermGroup(n, std::move(gens));
}

PermGroup cyclic_group(unsigned n) {
  if (n < 2)
    return PermGroup::trivial(n);
  std::vector<Point> cyc(n);
  for (unsigned i = 0; i < n; ++i)
    cyc[i] = (i + 1) % n;
  return PermGroup(n, {Perm(std::move(cyc))});
}

PermGroup dihedral_group(unsigned n) {
  if (n < 3)
    throw std::invalid_argument("dihedral_group: need n >= 3");
  std::vector<Point> rot(n), refl(n);
  for (unsigned i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return PermGroup(n, {Perm(std::move(rot)), Perm(std::move(refl))});
}

PermGroup wreath_imprimitive(const PermGroup &inner, const PermGroup &top) {
  if (!top.transitive())
    throw std::invalid_argument("wreath_imprimitive: top group must be transitive");
  unsigned m = inner.degree();
  unsigned k = top.degree();
  unsigned n = m * k;
  std::vector<Perm> gens;
  for (const Perm &g : inner.generators()) {
    std::vector<Point> img(n);
    for (Point x = 0; x < n; ++x)
      img[x] = x;
    for (unsigned i = 0; i < m; ++i)
      img[i] = g[i]; // inner copy acts on block 0 only
    gens.emplace_back(std::move(img));
  }
  for (const Perm &g : top.generators()) {
    std::vector<Point> img(n);
    for (unsigned b = 0; b < k; ++b)
      for (unsigned i = 0; i < m; ++i)
        img[b * m + i] = g[b] * m + i;
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup diagonal_wreath(unsigned m, unsigned classes, const PermGroup &top) {
  unsigned k = top.degree();
  if (classes == 0 || k % classes != 0)
    throw std::invalid_argument("diagonal_wreath: classes must divide the top degree");
  unsigned t = k / classes;
  // classes are runs of t consecutive blocks; the top must permute the runs
  for (const Perm &g : top.generators())
    for (unsigned b = 0; b < k; ++b)
      if (g[b] / t != g[(b / t) * t] / t)
        throw std::invalid_argument("diagonal_wreath: top does not preserve the classes");
  unsigned n = m * k;
  PermGroup sym = sym_group(m);
  std::vector<Perm> gens;
  for (unsigned c = 0; c < classes; ++c)
    for (const Perm &g : sym.generators()) {
      std::vector<Point> img(n);
      for (Point x = 0; x < n; ++x)
        img[x] = x;
      for (unsigned w = 0; w < t; ++w) {
        unsigned b = c * t + w;
        for (unsigned i = 0; i < m; ++i)
          img[b * m + i] = b * m + g[i];
      }
      gens.emplace_back(std::move(img));
    }
  for (const Perm &g : top.generators()) {
    std::vector<Point> img(n);
    for (unsigned b = 0; b < k; ++b)
      for (unsigned i = 0; i < m; ++i)
        img[b * m + i] = g[b] * m + i;
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens));
}

MatrixGroup monomial_group(std::uint32_t p, unsigned t, const PermGroup &top) {
  if (!is_prime(p))
    throw std::invalid_argument("monomial_group: p is not prime");
  if (top.degree() != t)
    throw std::invalid_argument("monomial_group: top degree mismatch");
  std::vector<FpMatrix> gens;
  if (p > 2) {
    // primitive root via minimal generator of F_p^*
    std::uint32_t root = 2;
    for (;; ++root) {
      std::uint64_t x = root % p;
      unsigned ord = 1;
      while (x != 1) {
        x = x * root % p;
        ++ord;
      }
      if (ord == p - 1)
        break;
    }
    FpMatrix d = FpMatrix::identity(p, t);
    d.set(0, 0, root);
    gens.push_back(std::move(d));
  }
  for (const Perm &g : top.generators()) {
    FpMatrix m(p, t);
    for (unsigned c = 0; c < t; ++c)
      m.set(g[c], c, 1);
    gens.push_back(std::move(m));
  }
  MatrixGroup out = make_matrix_group(p, t, std::move(gens));
  std::vector<std::vector<FpVector>> dec;
  for (unsigned i = 0; i < t; ++i)
    dec.push_back({fp_unit(p, t, i)});
  out.decomposition = dec;
  return out;
}

MatrixGroup permutation_matrix_group(const PermGroup &g, std::uint32_t p) {
  if (!is_prime(p))
    throw std::invalid_argument("permutation_matrix_group: p is not prime");
  unsigned n = g.degree();
  std::vector<FpMatrix> gens;
  for (const Perm &perm : g.generators()) {
    FpMatrix m(p, n);
    for (unsigned c = 0; c < n; ++c)
      m.set(perm[c], c, 1);
    gens.push_back(std::move(m));
  }
  MatrixGroup out = make_matrix_group(p, n, std::move(gens));
  std::vector<std::vector<FpVector>> dec;
  for (unsigned i = 0; i < n; ++i)
    dec.push_back({fp_unit(p, n, i)});
  out.decomposition = dec;
  return out;
}

PermGroup regular_representation(const PermGroup &g, std::size_t limit) {
  std::vector<Perm> elems = enumerate_elements(g, limit);
  std::sort(elems.begin(), elems.end());
  auto index_of = [&](const Perm &x) {
    auto it = std::lower_bound(elems.begin(), elems.end(), x);
    return static_cast<Point>(it - elems.begin());
  };
  unsigned n = static_cast<unsigned>(elems.size());
  std::vector<Perm> gens;
  for (const Perm &gen : g.generators()) {
    std::vector<Point> img(n);
    for (unsigned i = 0; i < n; ++i)
      img[i] = index_of(compose(gen, elems[i]));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup pairs_action(const PermGroup &g) {
  unsigned n = g.degree();
  std::vector<std::pair<Point, Point>> pairs;
  for (Point a = 0; a < n; ++a)
    for (Point b = a + 1; b < n; ++b)
      pairs.emplace_back(a, b);
  auto index_of = [&](Point a, Point b) {
    if (a > b)
      std::swap(a, b);
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, b));
    return static_cast<Point>(it - pairs.begin());
  };
  std::vector<Perm> gens;
  for (const Perm &gen : g.generators()) {
    std::vector<Point> img(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
      img[i] = index_of(gen[pairs[i].first], gen[pairs[i].second]);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(static_cast<unsigned>(pairs.size()), std::move(gens));
}

namespace {

PermGroup parse_perm_constructor(const nlohmann::json &doc);

MatrixGroup parse_matrix_payload(const nlohmann::json &doc) {
  std::uint32_t p = doc.at("p").get<std::uint32_t>();
  unsigned dim = doc.at("dim").get<unsigned>();
  std::vector<FpMatrix> gens;
  for (const auto &rows : doc.at("generators")) {
    FpMatrix m(p, dim);
    if (rows.size() != dim)
      throw std::invalid_argument("matrix group: wrong row count");
    for (unsigned r = 0; r < dim; ++r) {
      if (rows[r].size() != dim)
        throw std::invalid_argument("matrix group: wrong column count");
      for (unsigned c = 0; c < dim; ++c)
        m.set(r, c, rows[r][c].get<std::uint32_t>());
    }
    gens.push_back(std::move(m));
  }
  MatrixGroup out = make_matrix_group(p, dim, std::move(gens));
  if (doc.contains("decomposition")) {
    std::vector<std::vector<FpVector>> dec;
    for (const auto &summand : doc.at("decomposition")) {
      std::vector<FpVector> basis;
      for (const auto &vec : summand) {
        std::vector<std::uint32_t> e = vec.get<std::vector<std::uint32_t>>();
        if (e.size() != dim)
          throw std::invalid_argument("matrix group: bad summand vector");
        basis.push_back(fp_vector(p, std::move(e)));
      }
      dec.push_back(std::move(basis));
    }
    out.decomposition = std::move(dec);
  }
  return out;
}

GroupVariant parse_constructor(const nlohmann::json &doc) {
  std::string name = doc.at("name").get<std::string>();
  if (name == "affine") {
    MatrixGroup h = std::get<MatrixGroup>(parse_group(doc.at("matrix")));
    return affine_group(h);
  }
  if (name == "monomial") {
    PermGroup top = parse_perm_constructor(doc.at("top"));
    return monomial_group(doc.at("p").get<std::uint32_t>(),
                          doc.at("t").get<unsigned>(), top);
  }
  return parse_perm_constructor(doc);
}

PermGroup parse_perm_constructor(const nlohmann::json &doc) {
  if (doc.contains("kind"))
    return as_perm_group(parse_group(doc));
  std::string name = doc.at("name").get<std::string>();
  if (name == "sym")
    return sym_group(doc.at("n").get<unsigned>());
  if (name == "alt")
    return alt_group(doc.at("n").get<unsigned>());
  if (name == "cyclic")
    return cyclic_group(doc.at("n").get<unsigned>());
  if (name == "dihedral")
    return dihedral_group(doc.at("n").get<unsigned>());
  if (name == "wreath")
    return wreath_imprimitive(parse_perm_constructor(doc.at("inner")),
                              parse_perm_constructor(doc.at("top")));
  if (name == "diagonal_wreath")
    return diagonal_wreath(doc.at("m").get<unsigned>(),
                           doc.at("classes").get<unsigned>(),
                           parse_perm_constructor(doc.at("top")));
  throw std::invalid_argument("unknown constructor: " + name);
}

} // namespace

GroupVariant parse_group(const nlohmann::json &doc) {
  std::string kind = doc.at("kind").get<std::string>();
  if (kind == "perm") {
    unsigned degree = doc.at("degree").get<unsigned>();
    std::vector<Perm> gens;
    for (const auto &images : doc.at("generators")) {
      std::vector<Point> img = images.get<std::vector<Point>>();
      if (img.size() != degree)
        throw std::invalid_argument("perm group: generator length != degree");
      gens.emplace_back(std::move(img)); // bijection validated by Perm
    }
    return PermGroup(degree, std::move(gens));
  }
  if (kind == "matrix")
    return parse_matrix_payload(doc);
  if (kind == "constructor")
    return parse_constructor(doc);
  throw std::invalid_argument("unknown group kind: " + kind);
}

GroupVariant parse_group_text(const std::string &file_or_inline) {
  std::string text = file_or_inline;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw std::invalid_argument("empty group document");
  if (text[first] != '{') {
    std::ifstream in(file_or_inline);
    if (!in)
      throw std::invalid_argument("cannot open group file: " + file_or_inline);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_group(nlohmann::json::parse(text));
}

nlohmann::json serialize_group(const GroupVariant &g) {
  nlohmann::json doc;
  if (std::holds_alternative<PermGroup>(g)) {
    const PermGroup &pg = std::get<PermGroup>(g);
    doc["kind"] = "perm";
    doc["degree"] = pg.degree();
    auto gens = nlohmann::json::array();
    for (const Perm &x : pg.generators())
      gens.push_back(x.images());
    doc["generators"] = std::move(gens);
    return doc;
  }
  const MatrixGroup &mg = std::get<MatrixGroup>(g);
  doc["kind"] = "matrix";
  doc["p"] = mg.p;
  doc["dim"] = mg.dim;
  auto gens = nlohmann::json::array();
  for (const FpMatrix &m : mg.generators) {
    auto rows = nlohmann::json::array();
    for (unsigned r = 0; r < mg.dim; ++r) {
      auto row = nlohmann::json::array();
      for (unsigned c = 0; c < mg.dim; ++c)
        row.push_back(m.at(r, c));
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  doc["generators"] = std::move(gens);
  if (mg.decomposition) {
    auto dec = nlohmann::json::array();
    for (const auto &summand : *mg.decomposition) {
      auto basis = nlohmann::json::array();
      for (const FpVector &v : summand)
        basis.push_back(v.e);
      dec.push_back(std::move(basis));
    }
    doc["decomposition"] = std::move(dec);
  }
  return doc;
}

std::string group_id(const PermGroup &g) {
  std::vector<std::vector<Point>> images;
  for (const Perm &x : g.generators())
    images.push_back(x.images());
  std::sort(images.begin(), images.end());
  std::uint64_t h = fnv1a_u32(0x84222325cbf29ce4ULL, g.degree());
  for (const auto &img : images)
    h = fnv1a(img.data(), img.size() * sizeof(Point), h);
  return hex64(h);
}

std::string group_id(const GroupVariant &g) {
  if (std::holds_alternative<PermGroup>(g))
    return group_id(std::get<PermGroup>(g));
  const MatrixGroup &mg = std::get<MatrixGroup>(g);
  std::vector<std::vector<std::uint32_t>> rows;
  for (const FpMatrix &m : mg.generators) {
    std::vector<std::uint32_t> flat;
    for (unsigned r = 0; r < mg.dim; ++r)
      for (unsigned c = 0; c < mg.dim; ++c)
        flat.push_back(m.at(r, c));
    rows.push_back(std::move(flat));
  }
  std::sort(rows.begin(), rows.end());
  std::uint64_t h = fnv1a_u32(0x84222325cbf29ce4ULL, mg.p);
  h = fnv1a_u32(h, mg.dim);
  for (const auto &flat : rows)
    h = fnv1a(flat.data(), flat.size() * sizeof(std::uint32_t), h);
  return hex64(h);
}

const PermGroup &as_perm_group(const GroupVariant &g) {
  if (!std::holds_alternative<PermGroup>(g))
    throw std::invalid_argument("expected a permutation group");
  return std::get<PermGroup>(g);
}

} // namespace pgt
