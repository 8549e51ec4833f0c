#pragma once

#include <unordered_map>
#include <vector>

#include "residua/bigint.hpp"
#include "residua/perm_group.hpp"
#include "residua/rng.hpp"
#include "residua/section.hpp"

namespace residua {

// Distinct primes dividing |G|, ascending. Always succeeds: every prime
// divisor of the order of a degree-n group is at most n.
std::vector<long> primes_of(const PermGroup& g);

// <H, K>. Degrees must match.
PermGroup join(const PermGroup& h, const PermGroup& k);

PermGroup join_with_element(const PermGroup& h, const Permutation& x);

// <seed>^G, the normal closure of the given elements inside g. The seed
// elements must lie in g.
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& seed);
PermGroup normal_closure(const PermGroup& g, const PermGroup& h);

// [H, K], computed as the closure of generator commutators inside <H, K>.
PermGroup commutator(const PermGroup& h, const PermGroup& k);

// Derived subgroup N' = [N, N].
PermGroup derived_subgroup(const PermGroup& n);

// N' N^p for a prime p; the smallest normal subgroup of N with elementary
// abelian p-quotient. Requires n normal in ambient; the result then is too.
PermGroup agemo_derived(const PermGroup& n, long p, const PermGroup& ambient);

// Pointwise stabilizer of the listed points (0-indexed).
PermGroup stabilizer_of_points(const PermGroup& g, const std::vector<int>& pts);

// C_G(H/K) = {g in G : [H, g] <= K} for a section with H, K normal in G.
// Work is bounded by the factor order; throws resource_error when |H/K|
// exceeds the cap.
PermGroup centralizer_section(const NormalSection& sec, std::uint64_t factor_cap = 100000);

// C_G(x) for a single element, via the conjugation orbit of x in G.
PermGroup element_centralizer(const PermGroup& g, const Permutation& x,
                              std::uint64_t orbit_cap = 2000000);

// Largest normal subgroup of g contained in h (h <= g). Enumerates the
// right cosets of h; throws resource_error when the index exceeds the cap.
PermGroup core(const PermGroup& g, const PermGroup& h, std::uint64_t index_cap = 100000);

// Right coset action of g on the cosets of h <= g, as a permutation group
// on {0, ..., index-1}. The kernel of act() is core(g, h); when h is
// normal the image is the quotient g/h.
class CosetImage {
 public:
  CosetImage(const PermGroup& g, const PermGroup& h, std::uint64_t index_cap);

  const PermGroup& image() const { return image_; }
  int index() const { return static_cast<int>(reps_.size()); }
  const std::vector<Permutation>& reps() const { return reps_; }

  // Induced permutation of the coset points for any x in g.
  Permutation act(const Permutation& x) const;

 private:
  PermGroup sub_;
  PermGroup image_;
  std::vector<Permutation> reps_;
  std::unordered_map<Permutation, int, PermHash> pos_;
};

CosetImage coset_action_image(const PermGroup& g, const PermGroup& h,
                              std::uint64_t index_cap = 100000);

// N_G(H) for h <= g. Backtrack over the stabilizer chain of g with
// orbit-partition pruning; intended for moderate group orders.
PermGroup normalizer(const PermGroup& g, const PermGroup& h);

// A Sylow p-subgroup of g, built by normalizer ascent from random p-elements.
PermGroup sylow_subgroup(const PermGroup& g, long p, Rng& rng);

// O^p(G): the smallest normal subgroup with p-power quotient, as the normal
// closure of the subgroups generated by Sylow q-subgroups over all q != p.
PermGroup op_subgroup(const PermGroup& g, long p, Rng& rng);

// A intersect B. Fast paths on containment; otherwise filters the elements
// of the smaller group and throws resource_error above the cap.
PermGroup intersection(const PermGroup& a, const PermGroup& b,
                       std::uint64_t smaller_cap = 100000);

bool is_elementary_abelian(const PermGroup& g, long& p_out);
bool is_abelian(const PermGroup& g);

}  // namespace residua
