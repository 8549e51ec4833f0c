#include "residua/section.hpp"

#include <utility>

#include "residua/errors.hpp"

namespace residua {

NormalSection::NormalSection(PermGroup ambient, PermGroup top, PermGroup bottom)
    : ambient_(std::move(ambient)), top_(std::move(top)), bottom_(std::move(bottom)) {
  require_input(ambient_.degree() == top_.degree() && top_.degree() == bottom_.degree(),
                "section groups must share a degree");
  require_input(top_.contains_group(bottom_), "section bottom must lie in its top");
  require_input(ambient_.contains_group(top_), "section top must lie in the ambient group");
  require_input(bottom_.is_normal_in(ambient_), "section bottom must be normal in the ambient group");
  require_input(top_.is_normal_in(ambient_), "section top must be normal in the ambient group");
}

std::vector<long> NormalSection::factor_primes() const {
  BigInt q = top_.order() / bottom_.order();
  return prime_factors_bounded(q, top_.degree());
}

}  // namespace residua
