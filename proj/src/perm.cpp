#include "residua/perm.hpp"

#include <algorithm>
#include <numeric>

namespace residua {

Permutation::Permutation(int degree) : img_(static_cast<std::size_t>(degree)) {
  check_internal(degree >= 1, "Permutation: degree must be >= 1");
  std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  require_input(!img_.empty(), "permutation must have degree >= 1");
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    require_input(v >= 0 && v < degree(), "permutation image out of range");
    require_input(!seen[static_cast<std::size_t>(v)], "permutation image repeated");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  check_internal(degree() == rhs.degree(), "permutation degree mismatch");
  std::vector<int> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    out[i] = rhs.img_[static_cast<std::size_t>(img_[i])];
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    out[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  // (g^-1 * this * g)[i] maps i^g-preimage chain; computed directly.
  check_internal(degree() == g.degree(), "permutation degree mismatch");
  std::vector<int> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    out[static_cast<std::size_t>(g.img_[i])] = g.img_[static_cast<std::size_t>(img_[i])];
  Permutation p;
  p.img_ = std::move(out);
  return p;
}

Permutation Permutation::power(long e) const {
  long n = element_order();
  e %= n;
  if (e < 0) e += n;
  Permutation acc = identity(degree());
  Permutation base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

long Permutation::element_order() const {
  long out = 1;
  for (const auto& c : cycles()) out = std::lcm(out, static_cast<long>(c.size()));
  return out;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || img_[static_cast<std::size_t>(i)] == i) continue;
    std::vector<int> cyc;
    int j = i;
    while (!seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      cyc.push_back(j);
      j = img_[static_cast<std::size_t>(j)];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Permutation::to_cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::size_t Permutation::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : img_) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Permutation parse_cycles(const std::string& text, int degree) {
  require_input(degree >= 1, "degree must be >= 1");
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(degree), 0);

  auto fail = [&](std::size_t pos, const std::string& what) {
    throw input_error("cycle syntax at byte " + std::to_string(pos) + ": " + what);
  };

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };

  bool any_cycle = false;
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail(i, "expected '('");
    std::size_t open = i;
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
      if (i >= text.size()) fail(open, "unclosed cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail(i, "expected point or ')'");
      std::size_t start = i;
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > degree) fail(start, "point exceeds degree");
        ++i;
      }
      if (v < 1) fail(start, "points are 1-indexed");
      int pt = static_cast<int>(v) - 1;
      if (used[static_cast<std::size_t>(pt)]) fail(start, "point repeated across cycles");
      used[static_cast<std::size_t>(pt)] = 1;
      cyc.push_back(pt);
    }
    any_cycle = true;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  if (!any_cycle) fail(0, "expected at least one cycle, e.g. \"()\"");
  return Permutation(std::move(img));
}

}  // namespace residua
