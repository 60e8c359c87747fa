#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgt/perm_group.hpp"

namespace pgt {

struct FpVector {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> e;

  unsigned dim() const { return static_cast<unsigned>(e.size()); }
  bool is_zero() const;
  bool operator==(const FpVector &o) const { return p == o.p && e == o.e; }
};

FpVector fp_vector(std::uint32_t p, std::vector<std::uint32_t> entries);
FpVector fp_zero(std::uint32_t p, unsigned dim);
FpVector fp_unit(std::uint32_t p, unsigned dim, unsigned i);
FpVector fp_add(const FpVector &a, const FpVector &b);
FpVector fp_scale(const FpVector &a, std::uint32_t scalar);

std::uint32_t fp_inverse_scalar(std::uint32_t a, std::uint32_t p);

// Square matrix over F_p, row major.
class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, unsigned dim); // zero matrix
  static FpMatrix identity(std::uint32_t p, unsigned dim);

  std::uint32_t p() const { return p_; }
  unsigned dim() const { return dim_; }
  std::uint32_t at(unsigned r, unsigned c) const { return a_[r * dim_ + c]; }
  void set(unsigned r, unsigned c, std::uint32_t v) { a_[r * dim_ + c] = v % p_; }

  FpVector apply(const FpVector &v) const;
  FpMatrix inverse() const; // throws on a singular matrix
  bool invertible() const;
  bool is_identity() const;

  bool operator==(const FpMatrix &o) const {
    return p_ == o.p_ && dim_ == o.dim_ && a_ == o.a_;
  }
  std::uint64_t hash() const;

private:
  std::uint32_t p_ = 0;
  unsigned dim_ = 0;
  std::vector<std::uint32_t> a_;
};

FpMatrix mat_mul(const FpMatrix &a, const FpMatrix &b);
FpVector mat_apply(const FpMatrix &m, const FpVector &v);
FpMatrix mat_inverse(const FpMatrix &m);
FpMatrix mat_pow(const FpMatrix &m, std::uint64_t e);
unsigned mat_rank(const FpMatrix &m);

struct MatrixGroup {
  std::uint32_t p = 0;
  unsigned dim = 0;
  std::vector<FpMatrix> generators;
  // direct sum decomposition preserved by the group, when one is tracked
  std::optional<std::vector<std::vector<FpVector>>> decomposition;
};

// validates primality of p and invertibility of the generators
MatrixGroup make_matrix_group(std::uint32_t p, unsigned dim,
                              std::vector<FpMatrix> generators);

enum class VectorDomain { All, Nonzero };

// Permutation realization of a matrix group on its vector domain, plus the
// point <-> vector index maps (radix encoding, least significant coordinate
// first).
struct VectorAction {
  PermGroup group;
  std::uint32_t p = 0;
  unsigned dim = 0;
  VectorDomain domain = VectorDomain::All;

  std::uint64_t point_count() const;
  std::uint64_t encode(const FpVector &v) const;
  FpVector decode(std::uint64_t point) const;
};

VectorAction as_permutation_group(const MatrixGroup &h, VectorDomain domain,
                                  std::uint64_t point_cap = 2000000,
                                  const std::optional<BigUint> &known_order = {});

// V semidirect H on p^dim points: the linear generators plus translations by
// the standard basis vectors.
PermGroup affine_group(const MatrixGroup &h, std::uint64_t point_cap = 2000000);

// Row space with coordinate solving against the original basis.
class SubspaceBasis {
public:
  SubspaceBasis(std::uint32_t p, unsigned ambient,
                std::vector<FpVector> basis);

  unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
  unsigned ambient() const { return ambient_; }
  const std::vector<FpVector> &basis() const { return basis_; }
  bool contains(const FpVector &v) const;
  // coordinates of v in the original basis; throws when v is outside
  std::vector<std::uint32_t> coords(const FpVector &v) const;
  FpVector from_coords(const std::vector<std::uint32_t> &c) const;

private:
  std::uint32_t p_;
  unsigned ambient_;
  std::vector<FpVector> basis_;
  std::vector<FpVector> rref_;            // row echelon rows
  std::vector<unsigned> pivots_;          // pivot column per rref row
  std::vector<std::vector<std::uint32_t>> transform_; // rref = transform * basis
};

} // namespace pgt
