#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "residua/errors.hpp"

namespace residua {

// Permutation of {0, ..., degree-1}, stored as its image table.
// Composition is left-to-right: (a * b) applies a first, then b,
// so point^(a*b) == (point^a)^b.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);                 // identity
  explicit Permutation(std::vector<int> images);    // validates bijection

  static Permutation identity(int degree) { return Permutation(degree); }

  int degree() const { return static_cast<int>(img_.size()); }
  int apply(int point) const { return img_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& g) const;  // g^-1 * this * g
  Permutation power(long e) const;

  bool operator==(const Permutation& rhs) const { return img_ == rhs.img_; }
  bool operator!=(const Permutation& rhs) const { return img_ != rhs.img_; }
  bool operator<(const Permutation& rhs) const { return img_ < rhs.img_; }

  // Order of the permutation: lcm of its cycle lengths. Fits in long for
  // the supported degrees.
  long element_order() const;

  std::vector<std::vector<int>> cycles() const;  // nontrivial cycles, min point first

  // Disjoint-cycle text with 1-indexed points, "()" for the identity.
  std::string to_cycle_string() const;

  std::size_t hash() const;

 private:
  std::vector<int> img_;
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

// Parses 1-indexed disjoint cycle notation, e.g. "(1 2 3)(4 5)" or "()".
// Commas and whitespace both separate points. Points must lie in
// [1, degree] and appear at most once. Throws input_error with a byte
// offset into `text` on malformed input.
Permutation parse_cycles(const std::string& text, int degree);

}  // namespace residua
