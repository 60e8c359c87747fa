#include "pgt/perm.hpp"

#include <numeric>
#include <stdexcept>

namespace pgt {

Perm::Perm(unsigned degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0u);
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point v : img_) {
    if (v >= img_.size() || seen[v])
      throw std::invalid_argument("Perm: image sequence is not a bijection");
    seen[v] = true;
  }
}

Perm Perm::from_cycles(unsigned degree,
                       const std::vector<std::vector<Point>> &cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  for (const auto &cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point from = cyc[i];
      Point to = cyc[(i + 1) % cyc.size()];
      if (from >= degree || to >= degree)
        throw std::invalid_argument("Perm::from_cycles: point out of range");
      img[from] = to;
    }
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (Point i = 0; i < img_.size(); ++i)
    if (img_[i] != i)
      return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<Point> inv(img_.size());
  for (Point i = 0; i < img_.size(); ++i)
    inv[img_[i]] = i;
  Perm p;
  p.img_ = std::move(inv); // already a bijection, skip validation
  return p;
}

Perm compose(const Perm &a, const Perm &b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<Point> img(a.degree());
  for (Point x = 0; x < a.degree(); ++x)
    img[x] = a[b[x]];
  return Perm(std::move(img));
}

std::string Perm::cycle_string() const {
  std::string out;
  std::vector<bool> done(img_.size(), false);
  for (Point i = 0; i < img_.size(); ++i) {
    if (done[i] || img_[i] == i)
      continue;
    out += '(';
    Point x = i;
    bool first = true;
    while (!done[x]) {
      done[x] = true;
      if (!first)
        out += ' ';
      out += std::to_string(x);
      first = false;
      x = img_[x];
    }
    out += ')';
  }
  if (out.empty())
    out = "()";
  return out;
}

} // namespace pgt
