#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "residua/bigint.hpp"
#include "residua/chain_guard.hpp"
#include "residua/perm.hpp"
#include "residua/rng.hpp"

namespace residua {

// Base and strong generating set, built by a deterministic incremental
// Schreier-Sims. Level i generates the pointwise stabilizer of
// base[0..i-1] inside the full group; fundamental orbits carry explicit
// transversals, so orders, membership sifting, uniform random elements,
// element enumeration and canonical coset representatives are direct reads.
class StabilizerChain {
 public:
  explicit StabilizerChain(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  BigInt order() const;

  // Adds one generator; returns false when it was already a member.
  bool extend_with(const Permutation& g);

  bool contains(const Permutation& g) const;

  // Sifts g through the chain: returns the residue and the level index at
  // which sifting stopped (depth() when every level consumed its factor).
  std::pair<Permutation, int> strip(const Permutation& g, int from_level = 0) const;

  // Unique minimal representative of the right coset K*x of this chain's
  // group K; equal cosets yield equal permutations.
  Permutation canonical_coset_rep(const Permutation& x) const;

  Permutation random_element(Rng& rng) const;

  // All elements; throws resource_error when the order exceeds cap.
  std::vector<Permutation> elements(std::uint64_t cap) const;

  const std::vector<int>& base_points() const { return base_; }
  std::vector<Permutation> strong_generators() const;

  // Read access to one level's fundamental orbit, for backtrack searches.
  int level_base(int level) const { return levels_[static_cast<std::size_t>(level)].base; }
  const std::vector<int>& level_orbit(int level) const {
    return levels_[static_cast<std::size_t>(level)].orbit;
  }
  const Permutation& level_transversal(int level, int orbit_index) const {
    return levels_[static_cast<std::size_t>(level)].transversal[static_cast<std::size_t>(orbit_index)];
  }

  // Structural self-check for tests: transversal maps, prefix stabilization
  // and every Schreier generator sifting to the identity.
  void verify() const;

 private:
  struct Level {
    int base = -1;
    std::vector<Permutation> gens;
    std::vector<std::size_t> processed;  // Schreier pairs consumed per gen
    std::vector<int> orbit;              // orbit[0] == base
    std::vector<int> orbit_pos;          // point -> index in orbit, else -1
    std::vector<Permutation> transversal;  // transversal[i] maps base -> orbit[i]
  };

  void new_level(int base_point);
  void add_gen_to_level(int level, const Permutation& g);
  void close_orbit(int level);
  // Processes pending Schreier pairs of one level; returns a non-identity
  // residue and its dropout level on failure.
  std::optional<std::pair<Permutation, int>> process_pending(int level);
  void complete();

  int degree_;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

// Immutable permutation group value. Cheap to copy; all derived data lives
// behind a shared const implementation.
class PermGroup {
 public:
  PermGroup() = default;

  int degree() const;
  const BigInt& order() const;
  bool is_trivial() const { return order() == 1; }

  // Supplied generators after dropping identities and duplicates; reduced to
  // an irredundant set only if the list would exceed degree^2.
  const std::vector<Permutation>& generators() const;

  const StabilizerChain& chain() const;

  bool contains(const Permutation& g) const;
  bool contains_group(const PermGroup& h) const;
  bool same_group_as(const PermGroup& h) const;
  bool is_normal_in(const PermGroup& g) const;  // this normalized by g's generators

  Permutation random_element(Rng& rng) const;
  std::vector<Permutation> elements(std::uint64_t cap) const;

  Permutation identity() const { return Permutation::identity(degree()); }

  // Deterministic cache key: degree plus the sorted generator image tables.
  const std::string& key() const;

  friend PermGroup build_group(int degree, const std::vector<Permutation>& gens);
  friend class GroupBuilder;

 private:
  struct Impl;
  const Impl& self() const;  // throws internal_error when uninitialized
  std::shared_ptr<const Impl> impl_;
};

// Validates degree agreement and assembles the chain.
PermGroup build_group(int degree, const std::vector<Permutation>& gens);

PermGroup trivial_group(int degree);

// Mutable assembly of a group by repeated generator insertion, frozen into
// a PermGroup at the end. Used by closure-style loops.
class GroupBuilder {
 public:
  explicit GroupBuilder(int degree);
  explicit GroupBuilder(const PermGroup& start);

  // Returns true when g enlarged the group.
  bool add(const Permutation& g);
  bool contains(const Permutation& g) const { return chain_.contains(g); }
  BigInt order() const { return chain_.order(); }
  int degree() const { return chain_.degree(); }
  const std::vector<Permutation>& added_generators() const { return kept_; }

  PermGroup freeze() const;

 private:
  StabilizerChain chain_;
  std::vector<Permutation> seed_gens_;
  std::vector<Permutation> kept_;
  ChainGuard guard_;  // each successful add is a strict subgroup step
};

}  // namespace residua
