#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgt {

// Thrown when an operation's structural hypothesis fails (wrong block shape,
// non-normal subgroup, missing Alt(m) restriction, ...).
class hypothesis_error : public std::runtime_error {
public:
  explicit hypothesis_error(const std::string &what) : std::runtime_error(what) {}
};

// Thrown when a domain would exceed a configured cap. Campaigns record these
// as skipped, never as passes.
class cap_exceeded : public std::runtime_error {
public:
  explicit cap_exceeded(const std::string &what) : std::runtime_error(what) {}
};

// Thrown when an a-posteriori certificate check fails. Constructions never
// return unverified results silently.
class verification_error : public std::runtime_error {
public:
  explicit verification_error(const std::string &what) : std::runtime_error(what) {}
};

// Unsigned integer of arbitrary size. Orders and bound checks (d^n vs
// 48^n * |G|) overflow 128 bits, so exact comparisons go through this.
class BigUint {
public:
  BigUint() : limbs_{0} {}
  explicit BigUint(std::uint64_t v);

  static BigUint pow(std::uint64_t base, unsigned exp);
  static BigUint factorial(unsigned n);

  BigUint &operator*=(std::uint64_t m);
  BigUint &operator*=(const BigUint &m);
  friend BigUint operator*(BigUint a, const BigUint &b) { a *= b; return a; }

  int compare(const BigUint &o) const;
  bool operator==(const BigUint &o) const { return compare(o) == 0; }
  bool operator!=(const BigUint &o) const { return compare(o) != 0; }
  bool operator<(const BigUint &o) const { return compare(o) < 0; }
  bool operator<=(const BigUint &o) const { return compare(o) <= 0; }
  bool operator>(const BigUint &o) const { return compare(o) > 0; }
  bool operator>=(const BigUint &o) const { return compare(o) >= 0; }

  bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
  bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }

  // Exact value if it fits, otherwise nullopt-like flag via ok.
  std::uint64_t to_u64(bool *ok = nullptr) const;

  bool divides(const BigUint &other) const;

  double log2() const;
  std::string str() const;

private:
  void trim();
  // little-endian base 2^32
  std::vector<std::uint32_t> limbs_;
};

// FNV-1a, used for content hashes of group specs.
std::uint64_t fnv1a(const void *data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a_u32(std::uint64_t seed, std::uint32_t v);
std::string hex64(std::uint64_t v);

// Smallest b >= 0 with q^b >= d. Requires q >= 2, d >= 1.
int ceil_log(std::uint64_t q, std::uint64_t d);

// Smallest c >= 1 with c^m >= d. Requires m >= 1, d >= 1.
int ceil_root(std::uint64_t d, unsigned m);

bool is_prime(std::uint64_t n);

} // namespace pgt
