#pragma once

#include <optional>
#include <vector>

#include "pgt/base_ops.hpp"
#include "pgt/distinguishing.hpp"
#include "pgt/gf_linear.hpp"

namespace pgt {

struct AffineOptions {
  std::uint64_t point_cap = 2000000;
  unsigned oracle_cap = 12;
};

// Bookkeeping for a matrix group preserving a direct sum decomposition:
// the summand action (with matrix witnesses), summand stabilizers and their
// restrictions, the kernel, and a faithful permutation action on the union
// of the summands' vectors that supplies |H| cheaply.
struct ImprimitiveModule {
  MatrixGroup group;
  unsigned summands = 0;    // t
  unsigned summand_dim = 0; // equal across summands
  std::vector<SubspaceBasis> bases;
  PermGroup summand_action; // P
  std::vector<std::optional<FpMatrix>> to_summand; // witness mapping V_1 onto V_i
  std::vector<std::vector<FpMatrix>> stabilizer_gens; // H_i
  std::vector<MatrixGroup> bottom_images;             // K_i in summand coords
  std::vector<FpMatrix> kernel_gens;                  // N
  std::vector<FpVector> union_vectors;
  PermGroup union_action;
  BigUint order{1}; // |H|
};

ImprimitiveModule analyze_imprimitive(const MatrixGroup &g);

struct VectorBaseCertificate {
  std::vector<FpVector> vectors;
  std::vector<Point> points; // encodings in the verification action
  BigUint residual_order{1};
  bool verified = false;
};

// Base of length ceil(log_{|V1|} d(P)) when every K_i is trivial, realized
// through the orbit correspondences between summands.
VectorBaseCertificate trivk1_base(const ImprimitiveModule &m,
                                  const AffineOptions &opts = {});

struct BoundedK1Result {
  VectorBaseCertificate cert;
  unsigned input_base_size = 0; // b
  unsigned residual_size = 0;   // vectors added for the residual group
  double bound = 0;             // b + 1 + log2(48) + log|P|/log|V|
};

// Sums a transported base of K_1 across the summands, then finishes with
// trivk1_base on the residual pointwise stabilizer.
BoundedK1Result boundedk1_base(const ImprimitiveModule &m,
                               const std::vector<FpVector> &base_of_k1,
                               const AffineOptions &opts = {});

enum class SourceGroup { Sym, Alt };

// Matrices of the standard Sym(k)/Alt(k) generators on the nontrivial
// irreducible component of the natural permutation module.
struct DeletedPermModule {
  unsigned k = 0;
  std::uint32_t p = 0;
  bool p_divides_k = false;
  unsigned module_dim = 0;        // k-1, or k-2 when p | k
  std::vector<Perm> source_gens;  // on k letters
  std::vector<FpMatrix> generator_images;
};

DeletedPermModule deleted_perm_module(unsigned k, std::uint32_t p,
                                      SourceGroup source);

// 2b+3 vectors on the direct sum of deleted permutation modules, built from
// a base of the letter-permutation module; k >= 7. Letters are laid out
// summand-major: letter (column i, position j) is point i*k + j.
VectorBaseCertificate alt_induced_base(const PermGroup &letters, unsigned k,
                                       unsigned t, std::uint32_t p,
                                       const std::vector<FpVector> &base_of_u,
                                       const AffineOptions &opts = {});

struct AltInducedReport {
  VectorBaseCertificate cert;
  unsigned base_of_u_size = 0;
  int letter_colors = 0;
  double achieved = 0;
  double bound = 0; // 17 + 2 log|H| / log|V|
  bool within_bound = false;
};

// Distinguishing coloring of the letters -> base of U -> alt_induced_base,
// with the 17 + 2 log|H|/log|V| bound report.
AltInducedReport alt_induced_pipeline(const PermGroup &letters, unsigned k,
                                      unsigned t, std::uint32_t p,
                                      const AffineOptions &opts = {});

struct RepeatedModuleResult {
  VectorBaseCertificate cert;
  unsigned base_w_size = 0; // b_W(L)
};

// ceil(b_W / l) vectors on W^l by chunking a minimal base of W.
RepeatedModuleResult repeated_module_base(const MatrixGroup &l,
                                          unsigned multiplicity,
                                          const AffineOptions &opts = {});

// l-fold block-diagonal module of a matrix group
MatrixGroup repeated_module(const MatrixGroup &l, unsigned multiplicity);

} // namespace pgt
