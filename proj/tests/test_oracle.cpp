#include <algorithm>
#include <vector>

#include "doctest.h"
#include "residua/group_ops.hpp"
#include "residua/oracle.hpp"
#include "test_groups.hpp"

using namespace residua;
using namespace residua::testgroups;

namespace {

// Minimal chief functions for driving the oracle; the real catalog lives in
// the formations layer and is cross-checked against these elsewhere.
ChiefFunction prime_cyclic_fn() {
  return ChiefFunction("test-prime-cyclic", true, [](const NormalSection& sec) {
    auto ps = sec.factor_primes();
    return ps.size() == 1 && sec.factor_order() == ps[0];
  });
}

ChiefFunction central_fn() {
  return ChiefFunction("test-central", true, [](const NormalSection& sec) {
    return centralizer_section(sec).order() == sec.ambient().order();
  });
}

ChiefFunction never_fn() {
  return ChiefFunction("test-never", true, [](const NormalSection&) { return false; });
}

}  // namespace

TEST_CASE("normal lattice sizes on frozen examples") {
  CHECK(normal_lattice(symmetric(4))->members.size() == 4);
  CHECK(normal_lattice(q8())->members.size() == 6);
  CHECK(normal_lattice(cyclic(7))->members.size() == 2);
  CHECK(normal_lattice(alternating(5))->members.size() == 2);
  CHECK(normal_lattice(trivial_group(3))->members.size() == 1);
}

TEST_CASE("normal lattice equals the normal members of the subgroup lattice") {
  for (const PermGroup& g : {symmetric(4), d8(), q8(), s3_x_s3(), cyclic(12), alternating(4),
                             c2_x_a5()}) {
    auto lat = normal_lattice(g);
    REQUIRE(!lat->maybe_partial);
    std::vector<PermGroup> expected;
    for (const auto& s : all_subgroups(g))
      if (s.is_normal_in(g)) expected.push_back(s);
    REQUIRE(lat->members.size() == expected.size());
    for (const auto& e : expected) CHECK(lat->index_of(e) >= 0);
  }
}

TEST_CASE("normal lattice order, adjacency and lookup") {
  auto lat = normal_lattice(symmetric(4));
  REQUIRE(lat->members.size() == 4);
  CHECK(lat->members.front().is_trivial());
  CHECK(lat->members[1].order() == 4);
  CHECK(lat->members[2].order() == 12);
  CHECK(lat->members[3].order() == 24);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(lat->leq[0][i]);
    CHECK(lat->leq[i][3]);
  }
  CHECK(!lat->leq[2][1]);
  CHECK(lat->covers_of(0) == std::vector<int>{1});
  CHECK(lat->covers_of(1) == std::vector<int>{2});

  PermGroup v = v4();
  CHECK(lat->index_of(v) == 1);
  CHECK(lat->index_of(alternating(4)) == 2);
  CHECK(lat->index_of(build_group(4, {parse_cycles("(1 2)", 4)})) == -1);

  auto q = normal_lattice(q8());
  // Center of order 2, three cyclics of order 4.
  CHECK(q->covers_of(0).size() == 1);
  CHECK(q->covers_of(1).size() == 3);
}

TEST_CASE("sampled lattice marks itself partial") {
  LatticeOptions opt;
  opt.deterministic_order_cap = 10;
  auto lat = normal_lattice(alternating(5), opt);
  CHECK(lat->maybe_partial);
  REQUIRE(lat->members.size() == 2);
  CHECK(lat->members[0].is_trivial());
  CHECK(lat->members[1].order() == 60);

  auto s6 = normal_lattice(symmetric(6), opt);
  CHECK(s6->maybe_partial);
  CHECK(s6->members.size() == 3);  // sampling still finds A6 here

  LatticeOptions tight;
  tight.order_cap = 10;
  CHECK_THROWS_AS((void)normal_lattice(symmetric(4), tight), resource_error);
}

TEST_CASE("quotient membership walks one chief chain") {
  PermGroup s4 = symmetric(4);
  ChiefFunction u = prime_cyclic_fn(), n = central_fn();

  CHECK(brute_member(s4, v4(), u));
  CHECK(brute_member(s4, alternating(4), u));
  CHECK(!brute_member(s4, trivial_group(4), u));
  CHECK(brute_member(s4, s4, u));

  CHECK(brute_member(s4, alternating(4), n));
  CHECK(!brute_member(s4, v4(), n));  // S4/V4 is S3, not nilpotent

  PermGroup a4 = alternating(4);
  CHECK(brute_member(a4, v4(), n));
  CHECK(!brute_member(a4, trivial_group(4), n));

  CHECK(brute_member(cyclic(12), trivial_group(12), n));
  CHECK_THROWS_AS((void)brute_member(s4, d8(), u), input_error);
}

TEST_CASE("brute residuals are unique lattice minima") {
  ChiefFunction u = prime_cyclic_fn(), n = central_fn();

  CHECK(brute_residual(symmetric(4), u).same_group_as(v4()));
  CHECK(brute_residual(symmetric(4), n).same_group_as(alternating(4)));
  CHECK(brute_residual(alternating(5), n).order() == 60);
  CHECK(brute_residual(alternating(5), u).order() == 60);
  CHECK(brute_residual(cyclic(12), n).is_trivial());
  CHECK(brute_residual(sl23(), n).order() == 8);  // SL(2,3) over Q8 is C3
  CHECK(brute_residual(s3_x_s3(), n).order() == 9);
  CHECK(brute_residual(symmetric(4), never_fn()).order() == 24);
}

TEST_CASE("subgroup enumeration by cyclic joins") {
  CHECK(all_subgroups(symmetric(4)).size() == 30);
  CHECK(all_subgroups(alternating(4)).size() == 10);
  CHECK(all_subgroups(d8()).size() == 10);
  CHECK(all_subgroups(q8()).size() == 6);
  CHECK(all_subgroups(cyclic(12)).size() == 6);
  CHECK(all_subgroups(symmetric(3)).size() == 6);
  CHECK_THROWS_AS((void)all_subgroups(symmetric(6)), resource_error);

  auto subs = all_subgroups(v4());
  REQUIRE(subs.size() == 5);
  CHECK(subs.front().is_trivial());
  CHECK(subs.back().order() == 4);
}

TEST_CASE("exhaustive subnormality search") {
  PermGroup s4 = symmetric(4);
  PermGroup c2 = build_group(4, {parse_cycles("(1 2)", 4)});
  PermGroup c4 = build_group(4, {parse_cycles("(1 2 3 4)", 4)});
  ChiefFunction u = prime_cyclic_fn(), n = central_fn(), never = never_fn();

  CHECK(!brute_kf_subnormal(s4, c2, n, SubnormalKind::k));
  CHECK(brute_kf_subnormal(s4, c2, u, SubnormalKind::plain));
  CHECK(brute_kf_subnormal(s4, c2, u, SubnormalKind::k));
  CHECK(brute_kf_subnormal(s4, s4, never, SubnormalKind::plain));
  CHECK(brute_kf_subnormal(s4, alternating(4), never, SubnormalKind::k));
  CHECK(!brute_kf_subnormal(s4, alternating(4), never, SubnormalKind::plain));

  // With a function that rejects everything, kind K degenerates to ordinary
  // subnormality: normality chains only.
  CHECK(brute_kf_subnormal(s4, v4(), never, SubnormalKind::k));
  PermGroup c22 = build_group(4, {parse_cycles("(1 2)(3 4)", 4)});
  CHECK(brute_kf_subnormal(s4, c22, never, SubnormalKind::k));
  CHECK(!brute_kf_subnormal(s4, c4, never, SubnormalKind::k));
  CHECK(brute_kf_subnormal(s4, d8(), u, SubnormalKind::plain));
  CHECK(!brute_kf_subnormal(alternating(4), build_group(4, {parse_cycles("(1 2 3)", 4)}),
                            n, SubnormalKind::k));

  CHECK_THROWS_AS((void)brute_kf_subnormal(s4, build_group(5, {parse_cycles("(1 2)", 5)}),
                                           u, SubnormalKind::k),
                  input_error);
  PermGroup s3_in_6 = from_cycles(6, {"(1 2)", "(1 2 3)"});
  CHECK_THROWS_AS((void)brute_kf_subnormal(symmetric(6), s3_in_6, u, SubnormalKind::k),
                  resource_error);
}
