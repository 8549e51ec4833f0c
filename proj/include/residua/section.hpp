#pragma once

#include "residua/bigint.hpp"
#include "residua/perm_group.hpp"

namespace residua {

// Section H/K of an ambient group G with K <= H and both normal in G.
// Validated on construction; immutable afterwards.
class NormalSection {
 public:
  NormalSection(PermGroup ambient, PermGroup top, PermGroup bottom);

  const PermGroup& ambient() const { return ambient_; }
  const PermGroup& top() const { return top_; }
  const PermGroup& bottom() const { return bottom_; }

  BigInt factor_order() const { return top_.order() / bottom_.order(); }
  bool factor_trivial() const { return top_.order() == bottom_.order(); }

  // Distinct primes dividing |H/K|.
  std::vector<long> factor_primes() const;

 private:
  PermGroup ambient_, top_, bottom_;
};

}  // namespace residua
