#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "residua/fpmodule.hpp"
#include "test_groups.hpp"

using namespace residua;
namespace tg = residua::testgroups;

namespace {

MatFp mat(long p, const std::vector<std::vector<long>>& rows) {
  MatFp m(p, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
  return m;
}

MatModule make_module(long p, const std::vector<MatFp>& action) {
  MatModule m;
  m.p = p;
  m.dim = action.empty() ? 0 : action[0].rows();
  m.action = action;
  return m;
}

std::vector<long> act(const std::vector<long>& v, const MatFp& m) {
  std::vector<long> out(static_cast<std::size_t>(m.cols()), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(j)] =
          (out[static_cast<std::size_t>(j)] + v[static_cast<std::size_t>(i)] * m.at(i, j)) %
          m.p();
  return out;
}

// All submodules by brute span enumeration; only for tiny p^dim.
std::vector<RowSpace> brute_submodules(const MatModule& m) {
  std::vector<std::vector<long>> vectors;
  std::vector<long> v(static_cast<std::size_t>(m.dim), 0);
  while (true) {
    int j = m.dim - 1;
    while (j >= 0) {
      if (++v[static_cast<std::size_t>(j)] < m.p) break;
      v[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    vectors.push_back(v);
  }
  std::vector<RowSpace> out;
  std::set<std::vector<std::vector<long>>> seen;
  std::size_t subsets = static_cast<std::size_t>(1) << vectors.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::vector<long>> seeds;
    for (std::size_t b = 0; b < vectors.size(); ++b)
      if (mask & (static_cast<std::size_t>(1) << b)) seeds.push_back(vectors[b]);
    auto space = spin(m, seeds);
    if (seen.insert(space.rows()).second) out.push_back(space);
  }
  return out;
}

bool same_space(const RowSpace& a, const RowSpace& b) { return a.rows() == b.rows(); }

}  // namespace

TEST_CASE("rref and nullspaces") {
  auto m = mat(2, {{1, 1, 0}, {0, 1, 1}});
  auto ns = row_nullspace(m);  // v (len 2) with v m = 0
  CHECK(ns.empty());
  auto cns = column_nullspace(m);  // x (len 3) with m x = 0
  REQUIRE(cns.size() == 1);
  CHECK(cns[0] == std::vector<long>{1, 1, 1});

  auto sq = mat(3, {{1, 2}, {2, 4 % 3}});
  auto rn = row_nullspace(sq);
  REQUIRE(rn.size() == 1);
  CHECK(act(rn[0], sq) == std::vector<long>{0, 0});

  CHECK(row_nullspace(MatFp::identity(5, 3)).empty());
  CHECK(column_nullspace(MatFp(5, 3, 3)).size() == 3);
  CHECK(inv_mod(2, 5) == 3);
  CHECK(inv_mod(4, 7) == 2);
}

TEST_CASE("row space insertion and coordinates") {
  RowSpace s(3, 3);
  CHECK(s.insert({1, 2, 0}));
  CHECK(s.insert({0, 1, 1}));
  CHECK_FALSE(s.insert({1, 0, 1}));  // equals (1,2,0) + (0,1,1) over F_3
  CHECK(s.dim() == 2);
  CHECK(s.contains({2, 1, 0}));
  CHECK_FALSE(s.contains({0, 0, 1}));
  auto c = s.coordinates({1, 2, 0});
  std::vector<long> back(3, 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int j = 0; j < 3; ++j)
      back[static_cast<std::size_t>(j)] =
          (back[static_cast<std::size_t>(j)] + c[i] * s.rows()[i][static_cast<std::size_t>(j)]) % 3;
  CHECK(back == std::vector<long>{1, 2, 0});
  CHECK(s.insert({0, 0, 1}));
  CHECK(s.dim() == 3);
}

TEST_CASE("spin generates the smallest invariant subspace") {
  // jordan block: e2 fixed, e1 -> e1 + e2
  auto m = make_module(2, {mat(2, {{1, 1}, {0, 1}})});
  auto w = spin(m, {{0, 1}});
  CHECK(w.dim() == 1);
  auto full = spin(m, {{1, 0}});
  CHECK(full.dim() == 2);
  CHECK(spin(m, {}).dim() == 0);
}

TEST_CASE("chop and radical of a uniserial module") {
  auto m = make_module(2, {mat(2, {{1, 1}, {0, 1}})});
  Rng rng(3);
  auto types = composition_factor_types(m, rng);
  REQUIRE(types.size() == 1);  // both factors are the trivial module
  CHECK(types[0].dim == 1);
  auto rad = module_radical(m, rng);
  REQUIRE(rad.dim() == 1);
  CHECK(rad.contains({0, 1}));

  auto brute = brute_submodules(m);
  // expected lattice: 0, span{(0,1)}, full
  CHECK(brute.size() == 3);
  // radical is the intersection of the maximal proper submodules
  RowSpace expect(2, 2);
  expect.insert({0, 1});
  bool found = false;
  for (const auto& s : brute)
    if (same_space(s, rad)) found = true;
  CHECK(found);
  CHECK(same_space(rad, expect));
}

TEST_CASE("irreducible module is certified") {
  // companion matrix of x^2 + x + 1 over F_2: no invariant lines
  auto m = make_module(2, {mat(2, {{0, 1}, {1, 1}})});
  Rng rng(5);
  CHECK_FALSE(find_proper_submodule(m, rng).has_value());
  auto types = composition_factor_types(m, rng);
  REQUIRE(types.size() == 1);
  CHECK(types[0].dim == 2);
  CHECK(module_radical(m, rng).dim() == 0);
  CHECK(brute_submodules(m).size() == 2);
}

TEST_CASE("semisimple decomposition of a direct sum") {
  // simple 2-dim block plus two trivial lines
  auto a = mat(2, {{0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  auto m = make_module(2, {a});
  Rng rng(7);
  auto parts = semisimple_summands(m, rng);
  REQUIRE(parts.size() == 3);
  std::multiset<int> dims;
  for (const auto& s : parts) dims.insert(s.dim());
  CHECK(dims == std::multiset<int>{1, 1, 2});
  RowSpace total(2, 4);
  for (const auto& s : parts)
    for (const auto& r : s.rows()) total.insert(r);
  CHECK(total.dim() == 4);
}

TEST_CASE("radical of a three dimensional mixed module") {
  auto a = mat(2, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  auto m = make_module(2, {a});
  Rng rng(9);
  auto rad = module_radical(m, rng);
  REQUIRE(rad.dim() == 1);
  CHECK(rad.contains({0, 1, 0}));

  // brute force: intersect the maximal proper submodules
  auto subs = brute_submodules(m);
  RowSpace expect(2, 3);
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 2; ++y)
      for (long z = 0; z < 2; ++z) {
        std::vector<long> v{x, y, z};
        bool in_all_maximal = true;
        for (const auto& s : subs)
          if (s.dim() == m.dim - 1 && !s.contains(v)) in_all_maximal = false;
        if (in_all_maximal) expect.insert(v);
      }
  CHECK(same_space(rad, expect));
}

TEST_CASE("hom spaces separate isomorphism types") {
  auto simple2 = make_module(2, {mat(2, {{0, 1}, {1, 1}})});
  auto trivial1 = make_module(2, {mat(2, {{1}})});
  CHECK(hom_space(simple2, trivial1).empty());
  CHECK(hom_space(trivial1, simple2).empty());
  CHECK(hom_space(simple2, simple2).size() >= 1);
  CHECK(hom_space(trivial1, trivial1).size() == 1);
}

TEST_CASE("module from a group section: V4 under S4 is simple") {
  auto s4 = tg::symmetric(4);
  FpModule mod(NormalSection(s4, tg::v4(), trivial_group(4)));
  CHECK(mod.p() == 2);
  CHECK(mod.dim() == 2);
  Rng rng(11);
  CHECK_FALSE(find_proper_submodule(mod.mat_module(), rng).has_value());
  CHECK(module_radical(mod.mat_module(), rng).dim() == 0);

  // coordinates round trip over the whole section
  for (const auto& x : tg::v4().elements(10)) {
    auto c = mod.coordinates(x);
    CHECK(mod.representative(c) == x);
  }
  // each generator's matrix matches its conjugation action on coordinates
  for (std::size_t gi = 0; gi < s4.generators().size(); ++gi) {
    const auto& t = s4.generators()[gi];
    const auto& a = mod.mat_module().action[gi];
    for (const auto& x : tg::v4().elements(10)) {
      auto lhs = mod.coordinates(x.conjugated_by(t));
      auto rhs = act(mod.coordinates(x), a);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("module from a group section: V4 under D8 has the center as radical") {
  auto d8 = tg::d8();
  FpModule mod(NormalSection(d8, tg::v4(), trivial_group(4)));
  CHECK(mod.dim() == 2);
  Rng rng(17);
  auto rad = module_radical(mod.mat_module(), rng);
  REQUIRE(rad.dim() == 1);
  auto z = mod.pullback(rad);
  CHECK(z.order() == 2);
  CHECK(z.contains(parse_cycles("(1 3)(2 4)", 4)));  // the center of D8
  auto types = composition_factor_types(mod.mat_module(), rng);
  REQUIRE(types.size() == 1);
  CHECK(types[0].dim == 1);
}

TEST_CASE("module from an odd section") {
  auto s3 = tg::symmetric(3);
  auto a3 = tg::alternating(3);
  FpModule mod(NormalSection(s3, a3, trivial_group(3)));
  CHECK(mod.p() == 3);
  CHECK(mod.dim() == 1);
  Rng rng(19);
  CHECK(module_radical(mod.mat_module(), rng).dim() == 0);
  auto parts = semisimple_summands(mod.mat_module(), rng);
  CHECK(parts.size() == 1);
  auto full = mod.pullback(parts[0]);
  CHECK(full.same_group_as(a3));
}

TEST_CASE("quotient and restriction modules") {
  auto m = make_module(2, {mat(2, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})});
  RowSpace sub(2, 3);
  sub.insert({0, 1, 0});
  auto res = restriction_to(m, sub);
  CHECK(res.dim == 1);
  CHECK(res.action[0].at(0, 0) == 1);
  auto quo = quotient_by(m, sub);
  CHECK(quo.dim == 2);
  // e1 maps to e1 + e2 which reduces to e1 mod sub
  CHECK(quo.action[0].at(0, 0) == 1);
  CHECK(quo.action[0].at(0, 1) == 0);
  auto lifted = lift_from_quotient(sub, 3, {1, 0});
  CHECK(lifted == std::vector<long>{1, 0, 0});
}
