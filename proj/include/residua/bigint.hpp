#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "residua/errors.hpp"

namespace residua {

// Group orders are exact. Every prime factor of a degree-n group order is <= n,
// so trial division by small primes is always complete here.
using BigInt = boost::multiprecision::cpp_int;

inline bool divides(const BigInt& d, const BigInt& n) { return d != 0 && n % d == 0; }

// Distinct prime divisors of n, all of which must be <= limit.
inline std::vector<long> prime_factors_bounded(BigInt n, long limit) {
  check_internal(n > 0, "prime_factors_bounded: n must be positive");
  std::vector<long> out;
  for (long p = 2; p <= limit && n > 1; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  check_internal(n == 1, "prime_factors_bounded: factor above limit");
  return out;
}

// Largest power of p dividing n.
inline BigInt p_part(BigInt n, long p) {
  BigInt out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

// Exact logarithm: n == p^k. Throws internal_error otherwise.
inline int exact_log(BigInt n, long p) {
  int k = 0;
  while (n > 1) {
    check_internal(n % p == 0, "exact_log: not a power of p");
    n /= p;
    ++k;
  }
  return k;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Product of the distinct primes dividing m (1 for m == 1).
inline long radical_of(long m) {
  check_internal(m >= 1, "radical_of: m must be >= 1");
  long out = 1;
  for (long p = 2; p <= m; ++p) {
    if (is_prime(p) && m % p == 0) out *= p;
  }
  return out;
}

inline std::vector<long> prime_factors_long(long m) {
  std::vector<long> out;
  for (long p = 2; p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  return out;
}

}  // namespace residua
