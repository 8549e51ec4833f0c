#pragma once

#include <string>
#include <vector>

#include "residua/chief_function.hpp"
#include "residua/perm_group.hpp"
#include "residua/series.hpp"

namespace residua {

// The formation residual G^F for F defined by the chief factor function f:
// the smallest normal subgroup with quotient in F. Deterministic; results
// are cached per (group, formation name).
PermGroup residual(const PermGroup& g, const ChiefFunction& f);

// One corrective step: joins dec.residual with the minimals whose factor
// evaluates to 0. dec must decompose N over its residual inside G.
PermGroup residual_part(const PermGroup& g, const PermGroup& n, const Decomposition& dec,
                        const ChiefFunction& f);

bool member(const PermGroup& g, const ChiefFunction& f);

// G/K in F, decided through residual(G) K = K (so no quotient group is
// ever constructed). K must be normal in G.
bool member_mod(const PermGroup& g, const PermGroup& k, const ChiefFunction& f);

// Lattice of formations: pointwise boolean combinations of the chief factor
// tests. Hereditary flags are cleared, local data is dropped.
ChiefFunction meet(const ChiefFunction& a, const ChiefFunction& b);
ChiefFunction join(const ChiefFunction& a, const ChiefFunction& b);
ChiefFunction complement(const ChiefFunction& a);

// Formation from a local definition: a factor is good when
// [G^{f(p)}, H] <= K for every prime p dividing |H/K|.
ChiefFunction local_formation(const std::string& name, ChiefFunction::LocalResidual fns,
                              bool hereditary);

// Baer-local variant: nonabelian factors use the f(0) slot instead of the
// per-prime tests.
ChiefFunction baer_local_formation(const std::string& name, ChiefFunction::LocalResidual fns,
                                   ChiefFunction::GroupResidual f0);

// G^{F(p)} for the canonical local definition F(p) = N_p(F and f(p)),
// computed as O^p(<G^{f(p)}, G^F>). Needs local data.
PermGroup canonical_local_residual(const ChiefFunction& f, const PermGroup& g, long p);

// Quasi-F: good factors are the F-central ones (canonical test) and those
// on which every ambient element induces an inner automorphism, i.e.
// H C_G(H/K) = G. Needs local data.
ChiefFunction quasi(const ChiefFunction& f);

// Builtin catalog; pgroups and noncentral take one prime parameter.
ChiefFunction builtin(const std::string& name, const std::vector<long>& params = {});
const std::vector<std::string>& builtin_names();

}  // namespace residua
