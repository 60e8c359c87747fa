#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "pgt/gf_linear.hpp"
#include "pgt/perm_group.hpp"

namespace pgt {

using GroupVariant = std::variant<PermGroup, MatrixGroup>;

// Named constructors for the group families used across the corpus.
PermGroup sym_group(unsigned n);
PermGroup alt_group(unsigned n);
PermGroup cyclic_group(unsigned n);
PermGroup dihedral_group(unsigned n);
// full wreath inner wr top in its imprimitive action on inner.degree * top.degree
// points; top must be transitive
PermGroup wreath_imprimitive(const PermGroup &inner, const PermGroup &top);
// kernel = one diagonal copy of Sym(m) per class of consecutive blocks;
// classes must form a block system of the top action
PermGroup diagonal_wreath(unsigned m, unsigned classes, const PermGroup &top);
// F_p^* wr top as monomial matrices on F_p^t
MatrixGroup monomial_group(std::uint32_t p, unsigned t, const PermGroup &top);
// permutation matrices over F_p with the coordinate-line decomposition
MatrixGroup permutation_matrix_group(const PermGroup &g, std::uint32_t p);
// regular (right multiplication) representation of a small group
PermGroup regular_representation(const PermGroup &g, std::size_t limit = 10000);
// action on unordered pairs of points
PermGroup pairs_action(const PermGroup &g);

// JSON group documents: {"kind":"perm"|"matrix"|"constructor", ...}
GroupVariant parse_group(const nlohmann::json &doc);
GroupVariant parse_group_text(const std::string &file_or_inline);

nlohmann::json serialize_group(const GroupVariant &g);

// content hash over degree and sorted generator images
std::string group_id(const GroupVariant &g);
std::string group_id(const PermGroup &g);

const PermGroup &as_perm_group(const GroupVariant &g);

} // namespace pgt
