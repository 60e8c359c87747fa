#include "pgt/util.hpp"

#include <algorithm>
#include <cmath>

namespace pgt {

BigUint::BigUint(std::uint64_t v) {
  limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  trim();
}

void BigUint::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0)
    limbs_.pop_back();
  if (limbs_.empty())
    limbs_.push_back(0);
}

BigUint BigUint::pow(std::uint64_t base, unsigned exp) {
  BigUint r(1);
  for (unsigned i = 0; i < exp; ++i)
    r *= base;
  return r;
}

BigUint BigUint::factorial(unsigned n) {
  BigUint r(1);
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

BigUint &BigUint::operator*=(std::uint64_t m) {
  if (m == 0) {
    limbs_.assign(1, 0);
    return *this;
  }
  std::uint32_t lo = static_cast<std::uint32_t>(m & 0xffffffffu);
  std::uint32_t hi = static_cast<std::uint32_t>(m >> 32);
  if (hi == 0) {
    std::uint64_t carry = 0;
    for (auto &limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * lo + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    while (carry) {
      limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
      carry >>= 32;
    }
  } else {
    *this *= BigUint(m);
  }
  trim();
  return *this;
}

BigUint &BigUint::operator*=(const BigUint &m) {
  std::vector<std::uint32_t> out(limbs_.size() + m.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < m.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * m.limbs_[j] +
                          out[i + j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + m.limbs_.size();
    while (carry) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

int BigUint::compare(const BigUint &o) const {
  if (limbs_.size() != o.limbs_.size())
    return limbs_.size() < o.limbs_.size() ? -1 : 1;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != o.limbs_[i])
      return limbs_[i] < o.limbs_[i] ? -1 : 1;
  }
  return 0;
}

std::uint64_t BigUint::to_u64(bool *ok) const {
  if (limbs_.size() > 2) {
    if (ok) *ok = false;
    return 0;
  }
  if (ok) *ok = true;
  std::uint64_t r = limbs_[0];
  if (limbs_.size() == 2)
    r |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return r;
}

bool BigUint::divides(const BigUint &other) const {
  // long division remainder check; quotient discarded
  if (is_zero())
    return other.is_zero();
  std::vector<std::uint32_t> rem;
  for (std::size_t i = other.limbs_.size(); i-- > 0;) {
    rem.insert(rem.begin(), other.limbs_[i]);
    while (rem.size() > 1 && rem.back() == 0)
      rem.pop_back();
    // rem -= divisor * q by binary search over the single next quotient limb
    // simple schoolbook: repeatedly subtract shifted divisor
    // compare rem with divisor
    auto cmp = [&](const std::vector<std::uint32_t> &a,
                   const std::vector<std::uint32_t> &b) {
      if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
      for (std::size_t j = a.size(); j-- > 0;)
        if (a[j] != b[j])
          return a[j] < b[j] ? -1 : 1;
      return 0;
    };
    // binary-search quotient limb via multiply-compare
    std::uint64_t lo = 0, hi = 0xffffffffULL;
    auto fits = [&](std::uint64_t q) {
      // divisor * q <= rem ?
      std::vector<std::uint32_t> prod(limbs_.size() + 2, 0);
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(limbs_[j]) * q + carry;
        prod[j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      std::size_t j = limbs_.size();
      while (carry) {
        prod[j++] = static_cast<std::uint32_t>(carry & 0xffffffffu);
        carry >>= 32;
      }
      while (prod.size() > 1 && prod.back() == 0)
        prod.pop_back();
      return cmp(prod, rem) <= 0;
    };
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (fits(mid))
        lo = mid;
      else
        hi = mid - 1;
    }
    if (lo > 0) {
      // rem -= divisor * lo
      std::vector<std::uint32_t> prod(limbs_.size() + 2, 0);
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(limbs_[j]) * lo + carry;
        prod[j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      std::size_t j = limbs_.size();
      while (carry) {
        prod[j++] = static_cast<std::uint32_t>(carry & 0xffffffffu);
        carry >>= 32;
      }
      while (prod.size() > 1 && prod.back() == 0)
        prod.pop_back();
      std::int64_t borrow = 0;
      rem.resize(std::max(rem.size(), prod.size()), 0);
      for (std::size_t jj = 0; jj < rem.size(); ++jj) {
        std::int64_t cur = static_cast<std::int64_t>(rem[jj]) - borrow -
                           (jj < prod.size() ? prod[jj] : 0);
        borrow = 0;
        if (cur < 0) {
          cur += (1LL << 32);
          borrow = 1;
        }
        rem[jj] = static_cast<std::uint32_t>(cur);
      }
      while (rem.size() > 1 && rem.back() == 0)
        rem.pop_back();
    }
  }
  return rem.size() == 1 && rem[0] == 0;
}

double BigUint::log2() const {
  std::size_t n = limbs_.size();
  std::size_t lo = n > 3 ? n - 3 : 0;
  double x = 0.0;
  for (std::size_t i = n; i-- > lo;)
    x = x * 4294967296.0 + limbs_[i];
  if (x == 0.0)
    return 0.0;
  return std::log2(x) + 32.0 * static_cast<double>(lo);
}

std::string BigUint::str() const {
  std::vector<std::uint32_t> tmp = limbs_;
  std::string out;
  auto all_zero = [&] {
    for (auto v : tmp)
      if (v)
        return false;
    return true;
  };
  if (all_zero())
    return "0";
  while (!all_zero()) {
    std::uint64_t rem = 0;
    for (std::size_t i = tmp.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | tmp[i];
      tmp[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    std::string chunk = std::to_string(rem);
    if (!all_zero())
      chunk = std::string(9 - chunk.size(), '0') + chunk;
    out = chunk + out;
  }
  return out;
}

std::uint64_t fnv1a(const void *data, std::size_t len, std::uint64_t seed) {
  const auto *p = static_cast<const unsigned char *>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a_u32(std::uint64_t seed, std::uint32_t v) {
  return fnv1a(&v, sizeof(v), seed);
}

std::string hex64(std::uint64_t v) {
  static const char *digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

int ceil_log(std::uint64_t q, std::uint64_t d) {
  if (q < 2)
    throw std::invalid_argument("ceil_log: q must be >= 2");
  int b = 0;
  BigUint power(1);
  BigUint target(d);
  while (power < target) {
    power *= q;
    ++b;
  }
  return b;
}

int ceil_root(std::uint64_t d, unsigned m) {
  if (m == 0)
    throw std::invalid_argument("ceil_root: m must be >= 1");
  if (d <= 1)
    return 1;
  int c = 1;
  while (BigUint::pow(static_cast<std::uint64_t>(c), m) < BigUint(d))
    ++c;
  return c;
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

} // namespace pgt
