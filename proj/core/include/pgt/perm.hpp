#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgt/util.hpp"

namespace pgt {

using Point = std::uint32_t;

// A permutation of {0..n-1}, stored as its image sequence.
class Perm {
public:
  Perm() = default;

  // identity of the given degree
  explicit Perm(unsigned degree);

  // validates that images is a bijection
  explicit Perm(std::vector<Point> images);

  static Perm from_cycles(unsigned degree,
                          const std::vector<std::vector<Point>> &cycles);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point> &images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;

  bool operator==(const Perm &o) const { return img_ == o.img_; }
  bool operator!=(const Perm &o) const { return img_ != o.img_; }
  bool operator<(const Perm &o) const { return img_ < o.img_; }

  std::uint64_t hash() const { return fnv1a(img_.data(), img_.size() * sizeof(Point)); }

  std::string cycle_string() const;

private:
  std::vector<Point> img_;
};

// result maps x to a(b(x))
Perm compose(const Perm &a, const Perm &b);

} // namespace pgt
