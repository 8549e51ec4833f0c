#pragma once

#include <vector>

#include "residua/perm_group.hpp"
#include "residua/rng.hpp"

namespace residua {

// One semisimple layer of a normal subgroup N of G: N/residual is the
// direct product of the chief factors M_i/residual of G.
struct Decomposition {
  PermGroup residual;
  std::vector<PermGroup> minimals;
};

// Smallest normal subgroup R of N with N/R a direct product of nonabelian
// simple groups; N itself when no proper R works. Computed by intersecting
// the maximal normal subgroups of N that miss the derived subgroup, so it
// rests on the normal lattice and inherits its caps.
PermGroup nonabelian_residual(const PermGroup& n);

// Splits the nonabelian head of N into chief factors of G. Requires N
// normal in G. (S5, A5) gives residual 1 and one minimal A5; (S4, A4)
// gives residual A4 and no minimals.
Decomposition nonabelian_decomposition(const PermGroup& g, const PermGroup& n, Rng& rng);

// Splits the largest G-semisimple elementary abelian p-layer off the top
// of N: residual is the preimage of the module radical over N'N^p, the
// minimals pull back the irreducible summands.
Decomposition p_decomposition(const PermGroup& g, const PermGroup& n, long p, Rng& rng);

// Some B with K normal in B, B/K simple and B subnormal in A. Requires K
// subnormal in A and K != A.
PermGroup minimal_subnormal_over(const PermGroup& a, const PermGroup& k, Rng& rng);

// Descending chief series G = S_0 > S_1 > ... > 1, every S_i normal in G
// and each factor a chief factor of G.
std::vector<PermGroup> chief_series(const PermGroup& g, Rng& rng);

// Descending composition series of G passing through every given subgroup.
// The subgroups must form a chain under inclusion and each must be
// subnormal in G, else input_error.
std::vector<PermGroup> composition_series_through(const PermGroup& g,
                                                  std::vector<PermGroup> through,
                                                  Rng& rng);

}  // namespace residua
