#pragma once

// Shared catalog of small groups used across the test files. Everything is
// built from explicit generators so expected values can be checked by hand
// or against the naive helpers.

#include <string>
#include <vector>

#include "residua/perm.hpp"
#include "residua/perm_group.hpp"

namespace residua::testgroups {

inline PermGroup from_cycles(int degree, const std::vector<std::string>& gens) {
  std::vector<Permutation> ps;
  ps.reserve(gens.size());
  for (const auto& s : gens) ps.push_back(parse_cycles(s, degree));
  return build_group(degree, ps);
}

inline PermGroup symmetric(int n) {
  if (n <= 1) return trivial_group(n < 1 ? 1 : n);
  std::vector<Permutation> gens;
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
  std::swap(t[0], t[1]);
  gens.emplace_back(t);
  if (n >= 3) {
    std::vector<int> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
    gens.emplace_back(c);
  }
  return build_group(n, gens);
}

inline PermGroup alternating(int n) {
  if (n <= 2) return trivial_group(n < 1 ? 1 : n);
  std::vector<Permutation> gens;
  gens.push_back(parse_cycles("(1 2 3)", n));
  if (n >= 4) {
    if (n % 2 == 1) {
      std::string cyc = "(";
      for (int i = 1; i <= n; ++i) cyc += std::to_string(i) + (i < n ? " " : ")");
      gens.push_back(parse_cycles(cyc, n));
    } else {
      std::string cyc = "(";
      for (int i = 2; i <= n; ++i) cyc += std::to_string(i) + (i < n ? " " : ")");
      gens.push_back(parse_cycles(cyc, n));
    }
  }
  return build_group(n, gens);
}

inline PermGroup cyclic(int n) {
  if (n <= 1) return trivial_group(1);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
  return build_group(n, {Permutation(c)});
}

inline PermGroup v4() { return from_cycles(4, {"(1 2)(3 4)", "(1 3)(2 4)"}); }

inline PermGroup d8() { return from_cycles(4, {"(1 2 3 4)", "(1 3)"}); }

// Quaternions in their regular action; points are 1,-1,i,-i,j,-j,k,-k.
inline PermGroup q8() {
  Permutation i(std::vector<int>{2, 3, 1, 0, 7, 6, 4, 5});
  Permutation j(std::vector<int>{4, 5, 6, 7, 1, 0, 3, 2});
  return build_group(8, {i, j});
}

// SL(2,3) acting on the eight nonzero vectors of F_3^2, ordered
// (0,1),(0,2),(1,0),(1,1),(1,2),(2,0),(2,1),(2,2).
inline PermGroup sl23() {
  Permutation s(std::vector<int>{2, 5, 1, 4, 7, 0, 3, 6});
  Permutation t(std::vector<int>{0, 1, 3, 4, 2, 7, 5, 6});
  return build_group(8, {s, t});
}

inline PermGroup c2_x_a5() {
  return from_cycles(7, {"(1 2)", "(3 4 5)", "(3 4 5 6 7)"});
}

inline PermGroup s3_x_s3() {
  return from_cycles(6, {"(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"});
}

inline PermGroup a5_x_a5() {
  return from_cycles(10, {"(1 2 3)", "(1 2 3 4 5)", "(6 7 8)", "(6 7 8 9 10)"});
}

}  // namespace residua::testgroups
