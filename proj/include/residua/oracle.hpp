#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "residua/chief_function.hpp"
#include "residua/perm_group.hpp"

namespace residua {

// Reference implementations that trade time for obviousness. They enumerate
// where the main algorithms compute, and exist so the two can be compared.

enum class SubnormalKind { plain, k };

// Every normal subgroup of `group`, sorted by order (ties by generator key).
// `leq[i][j]` records members[i] <= members[j]. `maybe_partial` marks
// lattices seeded by sampling instead of full conjugacy-class enumeration;
// such a lattice under-approximates but every member is genuinely normal.
struct NormalLattice {
  PermGroup group;
  std::vector<PermGroup> members;
  std::vector<std::vector<bool>> leq;
  bool maybe_partial = false;

  // Indices of members covering members[i]: strictly above with nothing
  // between, so the factor is a chief factor when the lattice is complete.
  std::vector<int> covers_of(int i) const;
  int index_of(const PermGroup& n) const;  // -1 when absent
};

struct LatticeOptions {
  // Above this order, seeding switches from conjugacy-class representatives
  // to random sampling and the result is marked maybe_partial.
  std::uint64_t deterministic_order_cap = 100000;
  std::uint64_t order_cap = 1000000;
  std::size_t member_cap = 1000;
};

// Cached per group; the pointer stays valid for the process lifetime.
std::shared_ptr<const NormalLattice> normal_lattice(const PermGroup& g,
                                                    const LatticeOptions& opt = {});

// Does G/K lie in the formation whose chief factor test is f? Walks one
// maximal chain of the normal lattice above K and evaluates f on each step.
// Requires K normal in G and a complete lattice.
bool brute_member(const PermGroup& g, const PermGroup& k, const ChiefFunction& f);

// Smallest normal subgroup N with G/N in the formation. Scans all lattice
// members and asserts the qualifying set has a unique minimum.
PermGroup brute_residual(const PermGroup& g, const ChiefFunction& f);

// Subnormality by exhaustion: enumerates every subgroup of G (|G| <= 500),
// draws an edge A -> B when the step A <= B is permitted, and tests
// reachability from H to G. Plain steps need B/Core_B(A) in the formation
// (maximality dropped, valid for hereditary f); kind K also accepts A normal
// in B.
bool brute_kf_subnormal(const PermGroup& g, const PermGroup& h, const ChiefFunction& f,
                        SubnormalKind kind);

// All subgroups of g as the join closure of its cyclic subgroups.
std::vector<PermGroup> all_subgroups(const PermGroup& g, std::uint64_t order_cap = 500);

}  // namespace residua
