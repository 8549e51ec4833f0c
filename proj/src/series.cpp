#include "residua/series.hpp"

#include <algorithm>
#include <optional>

#include "residua/bigint.hpp"
#include "residua/chain_guard.hpp"
#include "residua/errors.hpp"
#include "residua/fpmodule.hpp"
#include "residua/group_ops.hpp"
#include "residua/oracle.hpp"
#include "residua/section.hpp"

namespace residua {
namespace {

// Below this index a perfect factor B/K is certified simple by exhausting
// coset representatives; above it, failed probes are accepted as evidence.
constexpr std::uint64_t kExhaustiveIndexCap = 512;

// Order alone pins the giants: a group moving exactly m points sits inside
// Sym(support), so order m! forces equality and order m!/2 forces the sign
// kernel, the unique index-2 subgroup, once m >= 5. Returns 0 for neither,
// 1 for Alt(support), 2 for Sym(support).
int natural_giant(const PermGroup& g) {
  std::vector<char> moved(static_cast<std::size_t>(g.degree()), 0);
  for (const auto& s : g.generators())
    for (int pt = 0; pt < g.degree(); ++pt)
      if (s.apply(pt) != pt) moved[static_cast<std::size_t>(pt)] = 1;
  long m = std::count(moved.begin(), moved.end(), 1);
  BigInt fact = 1;
  for (long i = 2; i <= m; ++i) fact *= i;
  if (m >= 2 && g.order() == fact) return 2;
  if (m >= 5 && g.order() * 2 == fact) return 1;
  return 0;
}

// Candidate C with K < C < B and C normal in B; K <= C by construction.
// Returns nothing when B/K is (certified or probably) simple. Throws
// input_error when K turns out not to be subnormal in B.
std::optional<PermGroup> find_proper_normal_over(const PermGroup& b, const PermGroup& k,
                                                 Rng& rng) {
  // A properly subnormal K has a proper normal closure, and that closure is
  // itself a valid intermediate step.
  if (!k.is_normal_in(b)) {
    PermGroup ncl = normal_closure(b, k);
    require_input(ncl.order() < b.order(),
                  "composition series: subgroup is not subnormal");
    return ncl;
  }

  PermGroup der = derived_subgroup(b);
  if (k.contains_group(der)) {
    // Abelian factor: every intermediate subgroup is normal, so the search
    // is exact. A prime-order factor has none.
    BigInt m = b.order() / k.order();
    auto ps = prime_factors_bounded(m, b.degree());
    if (m == ps.front()) return std::nullopt;
    const Permutation* x = nullptr;
    for (const auto& gen : b.generators())
      if (!k.contains(gen)) {
        x = &gen;
        break;
      }
    check_internal(x != nullptr, "abelian factor with no generator outside K");
    PermGroup c = join_with_element(k, *x);
    if (c.order() < b.order()) return c;
    // <K, x> = B: the factor is cyclic of composite order, step down by the
    // smallest prime.
    return join_with_element(k, x->power(static_cast<long>(ps.front())));
  }

  PermGroup dk = join(der, k);
  if (dk.order() < b.order()) return dk;

  // Alternating groups are simple, and the order certificate is exact.
  if (k.is_trivial() && natural_giant(b) == 1) return std::nullopt;

  // Perfect factor. Every normal subgroup strictly between K and B contains
  // <K, closure(r)> for one of its coset representatives r, so scanning all
  // representatives is a certificate when the index is small.
  BigInt index = b.order() / k.order();
  if (index <= kExhaustiveIndexCap) {
    CosetImage ci(b, k, kExhaustiveIndexCap);
    for (const auto& r : ci.reps()) {
      if (k.contains(r)) continue;
      PermGroup c = join(k, normal_closure(b, std::vector<Permutation>{r}));
      if (c.order() < b.order()) return c;
    }
    return std::nullopt;
  }

  // Large perfect factor: random probes. Prime-power parts split direct
  // products whose components show different element orders; commutators
  // and plain closures cover the rest. Failure to split is accepted as
  // simplicity, mistakes are caught downstream by order bookkeeping.
  auto try_elt = [&](const Permutation& z) -> std::optional<PermGroup> {
    if (z.is_identity() || k.contains(z)) return std::nullopt;
    PermGroup c = join(k, normal_closure(b, std::vector<Permutation>{z}));
    if (c.order() < b.order()) return c;
    return std::nullopt;
  };
  for (const auto& x : b.generators())
    if (auto c = try_elt(x)) return c;
  Permutation prev = b.identity();
  for (int t = 0; t < 48; ++t) {
    Permutation z = b.random_element(rng);
    if (auto c = try_elt(z)) return c;
    long n = z.element_order();
    for (long p : prime_factors_long(n)) {
      long q = n;
      while (q % p == 0) q /= p;
      if (auto c = try_elt(z.power(q))) return c;
    }
    if (auto c = try_elt(prev.inverse() * z.inverse() * prev * z)) return c;
    prev = z;
  }
  return std::nullopt;
}

}  // namespace

PermGroup minimal_subnormal_over(const PermGroup& a, const PermGroup& k, Rng& rng) {
  require_input(a.degree() == k.degree(), "minimal_subnormal_over: degree mismatch");
  require_input(a.contains_group(k), "minimal_subnormal_over: K is not a subgroup of A");
  require_input(k.order() < a.order(), "minimal_subnormal_over: K equals A");

  PermGroup cur = a;
  ChainGuard guard(a.degree(), "minimal subnormal descent");
  while (auto c = find_proper_normal_over(cur, k, rng)) {
    cur = std::move(*c);
    guard.step();
  }
  check_internal(k.is_normal_in(cur), "minimal_subnormal_over: floor not normal at exit");
  return cur;
}

PermGroup nonabelian_residual(const PermGroup& n) {
  if (n.is_trivial()) return n;
  // Giants first: Alt is simple, Sym has only the sign quotient, so the
  // lattice is not needed for either.
  switch (natural_giant(n)) {
    case 1:
      return trivial_group(n.degree());
    case 2:
      return n;
    default:
      break;
  }
  // Exact class enumeration costs order(n) work, so hand larger groups to
  // the sampled lattice. Sampling only under-approximates: intersecting a
  // subset of the kernels still leaves N/R a subdirect product of
  // nonabelian simples, at the price of extra outer passes in callers.
  LatticeOptions opts;
  opts.deterministic_order_cap = 2000;
  auto lat = normal_lattice(n, opts);
  int top = static_cast<int>(lat->members.size()) - 1;
  PermGroup der = derived_subgroup(n);

  // Maximal normal subgroups missing N' are exactly the kernels of the
  // nonabelian simple quotients; their intersection realizes the largest
  // direct product of such quotients.
  std::optional<PermGroup> r;
  for (int i = 0; i < top; ++i) {
    bool maximal = true;
    for (int j = 0; j < top && maximal; ++j)
      if (j != i && lat->leq[i][j]) maximal = false;
    if (!maximal || lat->members[i].contains_group(der)) continue;
    r = r ? intersection(*r, lat->members[i]) : lat->members[i];
  }
  return r ? *r : n;
}

Decomposition nonabelian_decomposition(const PermGroup& g, const PermGroup& n, Rng& rng) {
  require_input(g.degree() == n.degree(), "nonabelian_decomposition: degree mismatch");
  require_input(n.is_normal_in(g) && g.contains_group(n),
                "nonabelian_decomposition: N is not normal in G");

  Decomposition d;
  d.residual = nonabelian_residual(n);
  check_internal(d.residual.is_normal_in(g),
                 "nonabelian residual must be normal in the ambient group");

  PermGroup a = n;
  ChainGuard guard(g.degree(), "nonabelian head split");
  while (a.order() > d.residual.order()) {
    PermGroup b = minimal_subnormal_over(a, d.residual, rng);
    PermGroup m = join(normal_closure(g, b), d.residual);
    check_internal(a.contains_group(m), "chief closure escaped the layer");
    check_internal(!d.residual.contains_group(derived_subgroup(m)),
                   "nonabelian layer produced an abelian factor");
    d.minimals.push_back(m);
    if (m.order() == a.order()) {
      // The full layer was one chief factor; its centralizer section in A
      // is the floor because the product of nonabelian simples is centerless.
      a = d.residual;
    } else {
      a = centralizer_section(NormalSection(a, m, d.residual));
    }
    guard.step();
  }

  BigInt covered = d.residual.order();
  for (const auto& m : d.minimals) covered *= m.order() / d.residual.order();
  check_internal(covered == n.order(), "nonabelian layer does not multiply out");
  return d;
}

Decomposition p_decomposition(const PermGroup& g, const PermGroup& n, long p, Rng& rng) {
  require_input(p >= 2 && is_prime(p), "p_decomposition: p must be prime");
  require_input(g.degree() == n.degree(), "p_decomposition: degree mismatch");
  require_input(n.is_normal_in(g) && g.contains_group(n),
                "p_decomposition: N is not normal in G");

  Decomposition d;
  if (n.is_trivial()) {
    d.residual = n;
    return d;
  }
  PermGroup w = agemo_derived(n, p, g);
  if (w.order() == n.order()) {
    d.residual = n;
    return d;
  }

  FpModule mod(NormalSection(g, n, w));
  RowSpace rad = module_radical(mod.mat_module(), rng);
  d.residual = mod.pullback(rad);

  MatModule head = quotient_by(mod.mat_module(), rad);
  for (const RowSpace& part : semisimple_summands(head, rng)) {
    std::vector<std::vector<long>> rows = rad.rows();
    for (const auto& qr : part.rows())
      rows.push_back(lift_from_quotient(rad, mod.dim(), qr));
    PermGroup m = mod.pullback(rows);
    check_internal(m.is_normal_in(g), "module summand pullback must be normal");
    d.minimals.push_back(std::move(m));
  }

  BigInt covered = d.residual.order();
  for (const auto& m : d.minimals) covered *= m.order() / d.residual.order();
  check_internal(covered == n.order(), "p-layer does not multiply out");
  return d;
}

std::vector<PermGroup> chief_series(const PermGroup& g, Rng& rng) {
  std::vector<PermGroup> series{g};
  PermGroup cur = g;
  ChainGuard guard(g.degree(), "chief series");

  while (!cur.is_trivial()) {
    Decomposition d = nonabelian_decomposition(g, cur, rng);
    if (d.residual.order() == cur.order()) {
      bool split = false;
      for (long p : primes_of(cur)) {
        Decomposition dp = p_decomposition(g, cur, p, rng);
        if (dp.residual.order() < cur.order()) {
          d = std::move(dp);
          split = true;
          break;
        }
      }
      // A group with no nonabelian head and all agemo subgroups full would
      // be perfect with a perfect Frattini-like top, which cannot happen.
      check_internal(split, "chief series made no progress");
    }

    // Layer walls: residual < M_1R < M_1M_2R < ... < current.
    std::vector<PermGroup> walls{d.residual};
    for (std::size_t i = 0; i + 1 < d.minimals.size(); ++i)
      walls.push_back(join(walls.back(), d.minimals[i]));
    for (auto it = walls.rbegin(); it != walls.rend(); ++it) {
      series.push_back(*it);
      guard.step();
    }
    cur = d.residual;
  }
  return series;
}

std::vector<PermGroup> composition_series_through(const PermGroup& g,
                                                  std::vector<PermGroup> through,
                                                  Rng& rng) {
  for (const auto& h : through) {
    require_input(h.degree() == g.degree(), "composition series: degree mismatch");
    require_input(g.contains_group(h), "composition series: not a subgroup");
  }
  through.push_back(g);
  through.push_back(trivial_group(g.degree()));
  std::sort(through.begin(), through.end(), [](const PermGroup& x, const PermGroup& y) {
    return x.order() > y.order();
  });
  through.erase(std::unique(through.begin(), through.end(),
                            [](const PermGroup& x, const PermGroup& y) {
                              return x.order() == y.order() && x.same_group_as(y);
                            }),
                through.end());
  for (std::size_t i = 0; i + 1 < through.size(); ++i)
    require_input(through[i].contains_group(through[i + 1]),
                  "composition series: subgroups do not form a chain");

  std::vector<PermGroup> series{through.front()};
  for (std::size_t i = 0; i + 1 < through.size(); ++i) {
    const PermGroup& a = through[i];
    // Climb from the floor: each step is a minimal subnormal of A over the
    // last, so consecutive entries are normal with simple factor.
    std::vector<PermGroup> climb{through[i + 1]};
    ChainGuard guard(g.degree(), "composition series gap");
    while (climb.back().order() < a.order()) {
      climb.push_back(minimal_subnormal_over(a, climb.back(), rng));
      guard.step();
    }
    for (auto it = climb.rbegin() + 1; it != climb.rend(); ++it) series.push_back(*it);
  }
  return series;
}

}  // namespace residua
