#include "pgt/gf_linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgt {

bool FpVector::is_zero() const {
  for (auto v : e)
    if (v)
      return false;
  return true;
}

FpVector fp_vector(std::uint32_t p, std::vector<std::uint32_t> entries) {
  for (auto &v : entries)
    v %= p;
  return FpVector{p, std::move(entries)};
}

FpVector fp_zero(std::uint32_t p, unsigned dim) {
  return FpVector{p, std::vector<std::uint32_t>(dim, 0)};
}

FpVector fp_unit(std::uint32_t p, unsigned dim, unsigned i) {
  FpVector v = fp_zero(p, dim);
  v.e[i] = 1 % p;
  return v;
}

FpVector fp_add(const FpVector &a, const FpVector &b) {
  if (a.p != b.p || a.dim() != b.dim())
    throw std::invalid_argument("fp_add: shape mismatch");
  FpVector out = a;
  for (unsigned i = 0; i < a.dim(); ++i)
    out.e[i] = (out.e[i] + b.e[i]) % a.p;
  return out;
}

FpVector fp_scale(const FpVector &a, std::uint32_t scalar) {
  FpVector out = a;
  scalar %= a.p;
  for (auto &v : out.e)
    v = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v) * scalar) % a.p);
  return out;
}

std::uint32_t fp_inverse_scalar(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0)
    throw std::invalid_argument("fp_inverse_scalar: zero");
  // extended euclid
  std::int64_t t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0)
    t += p;
  return static_cast<std::uint32_t>(t);
}

FpMatrix::FpMatrix(std::uint32_t p, unsigned dim)
    : p_(p), dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0) {}

FpMatrix FpMatrix::identity(std::uint32_t p, unsigned dim) {
  FpMatrix m(p, dim);
  for (unsigned i = 0; i < dim; ++i)
    m.set(i, i, 1);
  return m;
}

FpVector FpMatrix::apply(const FpVector &v) const {
  if (v.p != p_ || v.dim() != dim_)
    throw std::invalid_argument("FpMatrix::apply: shape mismatch");
  FpVector out = fp_zero(p_, dim_);
  for (unsigned r = 0; r < dim_; ++r) {
    std::uint64_t acc = 0;
    for (unsigned c = 0; c < dim_; ++c)
      acc += static_cast<std::uint64_t>(at(r, c)) * v.e[c];
    out.e[r] = static_cast<std::uint32_t>(acc % p_);
  }
  return out;
}

bool FpMatrix::is_identity() const {
  for (unsigned r = 0; r < dim_; ++r)
    for (unsigned c = 0; c < dim_; ++c)
      if (at(r, c) != (r == c ? 1u % p_ : 0u))
        return false;
  return true;
}

std::uint64_t FpMatrix::hash() const {
  std::uint64_t h = fnv1a_u32(0x9e3779b97f4a7c15ULL, p_);
  h = fnv1a_u32(h, dim_);
  return fnv1a(a_.data(), a_.size() * sizeof(std::uint32_t), h);
}

namespace {

// gauss-jordan; returns rank, optionally accumulating the inverse
unsigned eliminate(FpMatrix a, FpMatrix *inv_out) {
  std::uint32_t p = a.p();
  unsigned dim = a.dim();
  FpMatrix inv = FpMatrix::identity(p, dim);
  unsigned rank = 0;
  for (unsigned col = 0; col < dim && rank < dim; ++col) {
    unsigned pivot = dim;
    for (unsigned r = rank; r < dim; ++r)
      if (a.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot == dim)
      continue;
    if (pivot != rank)
      for (unsigned c = 0; c < dim; ++c) {
        std::uint32_t t = a.at(pivot, c);
        a.set(pivot, c, a.at(rank, c));
        a.set(rank, c, t);
        t = inv.at(pivot, c);
        inv.set(pivot, c, inv.at(rank, c));
        inv.set(rank, c, t);
      }
    std::uint32_t scale = fp_inverse_scalar(a.at(rank, col), p);
    for (unsigned c = 0; c < dim; ++c) {
      a.set(rank, c, static_cast<std::uint32_t>(
                         (static_cast<std::uint64_t>(a.at(rank, c)) * scale) % p));
      inv.set(rank, c, static_cast<std::uint32_t>(
                           (static_cast<std::uint64_t>(inv.at(rank, c)) * scale) % p));
    }
    for (unsigned r = 0; r < dim; ++r) {
      if (r == rank || a.at(r, col) == 0)
        continue;
      std::uint32_t factor = a.at(r, col);
      for (unsigned c = 0; c < dim; ++c) {
        std::uint64_t sub = static_cast<std::uint64_t>(factor) * a.at(rank, c) % p;
        a.set(r, c, static_cast<std::uint32_t>((a.at(r, c) + p - sub) % p));
        sub = static_cast<std::uint64_t>(factor) * inv.at(rank, c) % p;
        inv.set(r, c, static_cast<std::uint32_t>((inv.at(r, c) + p - sub) % p));
      }
    }
    ++rank;
  }
  if (inv_out)
    *inv_out = inv;
  return rank;
}

} // namespace

bool FpMatrix::invertible() const {
  return eliminate(*this, nullptr) == dim_;
}

FpMatrix FpMatrix::inverse() const {
  FpMatrix inv(p_, dim_);
  if (eliminate(*this, &inv) != dim_)
    throw std::invalid_argument("FpMatrix::inverse: singular matrix");
  return inv;
}

FpMatrix mat_mul(const FpMatrix &a, const FpMatrix &b) {
  if (a.p() != b.p() || a.dim() != b.dim())
    throw std::invalid_argument("mat_mul: shape mismatch");
  unsigned dim = a.dim();
  std::uint32_t p = a.p();
  FpMatrix out(p, dim);
  for (unsigned r = 0; r < dim; ++r)
    for (unsigned c = 0; c < dim; ++c) {
      std::uint64_t acc = 0;
      for (unsigned k = 0; k < dim; ++k)
        acc += static_cast<std::uint64_t>(a.at(r, k)) * b.at(k, c) % p;
      out.set(r, c, static_cast<std::uint32_t>(acc % p));
    }
  return out;
}

FpVector mat_apply(const FpMatrix &m, const FpVector &v) { return m.apply(v); }

FpMatrix mat_inverse(const FpMatrix &m) { return m.inverse(); }

FpMatrix mat_pow(const FpMatrix &m, std::uint64_t e) {
  FpMatrix out = FpMatrix::identity(m.p(), m.dim());
  FpMatrix base = m;
  while (e) {
    if (e & 1)
      out = mat_mul(out, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return out;
}

unsigned mat_rank(const FpMatrix &m) { return eliminate(m, nullptr); }

MatrixGroup make_matrix_group(std::uint32_t p, unsigned dim,
                              std::vector<FpMatrix> generators) {
  if (!is_prime(p))
    throw std::invalid_argument("make_matrix_group: modulus is not prime");
  for (const FpMatrix &m : generators) {
    if (m.p() != p || m.dim() != dim)
      throw std::invalid_argument("make_matrix_group: generator shape mismatch");
    if (!m.invertible())
      throw std::invalid_argument("make_matrix_group: singular generator");
  }
  return MatrixGroup{p, dim, std::move(generators), std::nullopt};
}

std::uint64_t VectorAction::point_count() const {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dim; ++i)
    total *= p;
  return domain == VectorDomain::All ? total : total - 1;
}

std::uint64_t VectorAction::encode(const FpVector &v) const {
  std::uint64_t code = 0;
  for (unsigned i = dim; i-- > 0;)
    code = code * p + v.e[i];
  if (domain == VectorDomain::Nonzero) {
    if (code == 0)
      throw std::invalid_argument("VectorAction::encode: zero vector excluded");
    return code - 1;
  }
  return code;
}

FpVector VectorAction::decode(std::uint64_t point) const {
  std::uint64_t code = domain == VectorDomain::Nonzero ? point + 1 : point;
  FpVector v = fp_zero(p, dim);
  for (unsigned i = 0; i < dim; ++i) {
    v.e[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return v;
}

VectorAction as_permutation_group(const MatrixGroup &h, VectorDomain domain,
                                  std::uint64_t point_cap,
                                  const std::optional<BigUint> &known_order) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < h.dim; ++i) {
    total *= h.p;
    if (total > point_cap)
      throw cap_exceeded("as_permutation_group: p^dim exceeds the point cap");
  }
  VectorAction action;
  action.p = h.p;
  action.dim = h.dim;
  action.domain = domain;
  std::uint64_t npoints = action.point_count();

  std::vector<Perm> gens;
  gens.reserve(h.generators.size());
  for (const FpMatrix &m : h.generators) {
    std::vector<Point> img(npoints);
    for (std::uint64_t pt = 0; pt < npoints; ++pt)
      img[pt] = static_cast<Point>(action.encode(m.apply(action.decode(pt))));
    gens.emplace_back(std::move(img));
  }
  action.group = PermGroup(static_cast<unsigned>(npoints), std::move(gens));
  if (known_order)
    action.group.set_known_order(*known_order);
  return action;
}

PermGroup affine_group(const MatrixGroup &h, std::uint64_t point_cap) {
  VectorAction linear = as_permutation_group(h, VectorDomain::All, point_cap);
  std::uint64_t npoints = linear.point_count();
  std::vector<Perm> gens = linear.group.generators();
  for (unsigned i = 0; i < h.dim; ++i) {
    FpVector e = fp_unit(h.p, h.dim, i);
    std::vector<Point> img(npoints);
    for (std::uint64_t pt = 0; pt < npoints; ++pt)
      img[pt] = static_cast<Point>(linear.encode(fp_add(linear.decode(pt), e)));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(static_cast<unsigned>(npoints), std::move(gens));
}

SubspaceBasis::SubspaceBasis(std::uint32_t p, unsigned ambient,
                             std::vector<FpVector> basis)
    : p_(p), ambient_(ambient), basis_(std::move(basis)) {
  for (const auto &v : basis_)
    if (v.p != p || v.dim() != ambient)
      throw std::invalid_argument("SubspaceBasis: vector shape mismatch");
  rref_ = basis_;
  unsigned rows = static_cast<unsigned>(rref_.size());
  transform_.assign(rows, std::vector<std::uint32_t>(rows, 0));
  for (unsigned i = 0; i < rows; ++i)
    transform_[i][i] = 1;
  unsigned rank = 0;
  for (unsigned col = 0; col < ambient && rank < rows; ++col) {
    unsigned pivot = rows;
    for (unsigned r = rank; r < rows; ++r)
      if (rref_[r].e[col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == rows)
      continue;
    std::swap(rref_[pivot], rref_[rank]);
    std::swap(transform_[pivot], transform_[rank]);
    std::uint32_t inv = fp_inverse_scalar(rref_[rank].e[col], p_);
    rref_[rank] = fp_scale(rref_[rank], inv);
    for (auto &t : transform_[rank])
      t = static_cast<std::uint32_t>(static_cast<std::uint64_t>(t) * inv % p_);
    for (unsigned r = 0; r < rows; ++r) {
      if (r == rank || rref_[r].e[col] == 0)
        continue;
      std::uint32_t f = rref_[r].e[col];
      rref_[r] = fp_add(rref_[r], fp_scale(rref_[rank], p_ - f));
      for (unsigned j = 0; j < rows; ++j)
        transform_[r][j] = static_cast<std::uint32_t>(
            (transform_[r][j] +
             static_cast<std::uint64_t>(p_ - f) * transform_[rank][j]) %
            p_);
    }
    pivots_.push_back(col);
    ++rank;
  }
  if (rank != rows)
    throw std::invalid_argument("SubspaceBasis: basis is linearly dependent");
}

bool SubspaceBasis::contains(const FpVector &v) const {
  FpVector r = v;
  for (unsigned i = 0; i < rref_.size(); ++i) {
    std::uint32_t f = r.e[pivots_[i]];
    if (f)
      r = fp_add(r, fp_scale(rref_[i], p_ - f));
  }
  return r.is_zero();
}

std::vector<std::uint32_t> SubspaceBasis::coords(const FpVector &v) const {
  FpVector r = v;
  std::vector<std::uint32_t> c_rref(rref_.size(), 0);
  for (unsigned i = 0; i < rref_.size(); ++i) {
    std::uint32_t f = r.e[pivots_[i]];
    c_rref[i] = f;
    if (f)
      r = fp_add(r, fp_scale(rref_[i], p_ - f));
  }
  if (!r.is_zero())
    throw std::invalid_argument("SubspaceBasis::coords: vector outside the span");
  // convert rref coordinates to original-basis coordinates
  std::vector<std::uint32_t> out(rref_.size(), 0);
  for (unsigned i = 0; i < rref_.size(); ++i)
    for (unsigned j = 0; j < rref_.size(); ++j)
      out[j] = static_cast<std::uint32_t>(
          (out[j] + static_cast<std::uint64_t>(c_rref[i]) * transform_[i][j]) % p_);
  return out;
}

FpVector SubspaceBasis::from_coords(const std::vector<std::uint32_t> &c) const {
  FpVector v = fp_zero(p_, ambient_);
  for (unsigned i = 0; i < basis_.size(); ++i)
    v = fp_add(v, fp_scale(basis_[i], c[i]));
  return v;
}

} // namespace pgt
