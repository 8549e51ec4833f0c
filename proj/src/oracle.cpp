#include "residua/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <unordered_set>
#include <utility>

#include "residua/bigint.hpp"
#include "residua/errors.hpp"
#include "residua/group_ops.hpp"
#include "residua/rng.hpp"

namespace residua {
namespace {

// Group equality against a pool, scanning only order peers.
bool pool_has(const std::vector<PermGroup>& pool, const PermGroup& c) {
  for (const auto& m : pool) {
    if (m.order() == c.order() && m.same_group_as(c)) return true;
  }
  return false;
}

std::vector<Permutation> conjugacy_class_reps(const PermGroup& g, std::uint64_t cap) {
  auto elems = g.elements(cap);
  std::unordered_set<Permutation, PermHash> seen;
  std::vector<Permutation> reps;
  for (const auto& e : elems) {
    if (seen.count(e)) continue;
    reps.push_back(e);
    std::vector<Permutation> work{e};
    seen.insert(e);
    while (!work.empty()) {
      Permutation x = std::move(work.back());
      work.pop_back();
      for (const auto& s : g.generators()) {
        Permutation y = x.conjugated_by(s);
        if (seen.insert(y).second) work.push_back(y);
      }
    }
  }
  return reps;
}

// Seeds for groups too large to enumerate: closures of generators, their
// commutators, and prime-power parts of random elements. Every closure is a
// genuine normal subgroup, so sampling can only miss members, never invent.
std::vector<Permutation> sampled_seed_elements(const PermGroup& g) {
  Rng rng(fnv1a(g.key()));

  std::vector<Permutation> seeds = g.generators();
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      seeds.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);

  Permutation prev = g.identity();
  for (int t = 0; t < 64; ++t) {
    Permutation z = g.random_element(rng);
    seeds.push_back(z);
    seeds.push_back(z * z);
    seeds.push_back(prev.inverse() * z.inverse() * prev * z);
    long n = z.element_order();
    for (long p : prime_factors_long(n)) {
      long q = n;
      while (q % p == 0) q /= p;
      seeds.push_back(z.power(q));
    }
    prev = z;
  }
  return seeds;
}

std::shared_ptr<const NormalLattice> build_lattice(const PermGroup& g,
                                                   const LatticeOptions& opt) {
  BigInt order = g.order();
  if (order > opt.order_cap)
    throw resource_error("normal lattice: group order exceeds cap " +
                         std::to_string(opt.order_cap));

  auto lat = std::make_shared<NormalLattice>();
  lat->group = g;
  lat->maybe_partial = order > opt.deterministic_order_cap;

  std::vector<Permutation> seeds =
      lat->maybe_partial ? sampled_seed_elements(g)
                         : conjugacy_class_reps(g, opt.deterministic_order_cap);

  auto& mem = lat->members;
  mem.push_back(trivial_group(g.degree()));
  if (!g.is_trivial()) mem.push_back(g);
  for (const auto& s : seeds) {
    if (s.is_identity()) continue;
    PermGroup n = normal_closure(g, std::vector<Permutation>{s});
    if (!pool_has(mem, n)) {
      mem.push_back(std::move(n));
      if (mem.size() > opt.member_cap)
        throw resource_error("normal lattice: member count exceeds cap");
    }
  }

  // Fixpoint under pairwise join and intersection. Joins and intersections
  // of normal subgroups are normal, so the pool stays inside the lattice.
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t frozen = mem.size();
    for (std::size_t i = 0; i < frozen; ++i) {
      for (std::size_t j = i + 1; j < frozen; ++j) {
        for (PermGroup c : {join(mem[i], mem[j]), intersection(mem[i], mem[j])}) {
          if (!pool_has(mem, c)) {
            mem.push_back(std::move(c));
            changed = true;
            if (mem.size() > opt.member_cap)
              throw resource_error("normal lattice: member count exceeds cap");
          }
        }
      }
    }
  }

  std::sort(mem.begin(), mem.end(), [](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.key() < b.key();
  });

  lat->leq.assign(mem.size(), std::vector<bool>(mem.size(), false));
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = 0; j < mem.size(); ++j)
      lat->leq[i][j] = divides(mem[i].order(), mem[j].order()) && mem[j].contains_group(mem[i]);

  if (mem.size() <= 64) {
    for (const auto& m : mem)
      check_internal(m.is_normal_in(g), "normal lattice: member not normal");
    for (std::size_t i = 0; i < mem.size(); ++i) {
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        check_internal(pool_has(mem, join(mem[i], mem[j])),
                       "normal lattice: not join closed");
        check_internal(pool_has(mem, intersection(mem[i], mem[j])),
                       "normal lattice: not intersection closed");
      }
    }
  }
  return lat;
}

std::mutex cache_mu;
std::map<std::string, std::shared_ptr<const NormalLattice>> lattice_cache;
std::map<std::string, bool> member_cache;

}  // namespace

std::vector<int> NormalLattice::covers_of(int i) const {
  std::vector<int> out;
  int n = static_cast<int>(members.size());
  for (int j = 0; j < n; ++j) {
    if (j == i || !leq[i][j]) continue;
    bool covered = true;
    for (int k = 0; k < n && covered; ++k)
      if (k != i && k != j && leq[i][k] && leq[k][j]) covered = false;
    if (covered) out.push_back(j);
  }
  return out;
}

int NormalLattice::index_of(const PermGroup& n) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].order() == n.order() && members[i].same_group_as(n))
      return static_cast<int>(i);
  return -1;
}

std::shared_ptr<const NormalLattice> normal_lattice(const PermGroup& g,
                                                    const LatticeOptions& opt) {
  std::string key = g.key() + "#" + std::to_string(opt.deterministic_order_cap) + "#" +
                    std::to_string(opt.order_cap) + "#" + std::to_string(opt.member_cap);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = lattice_cache.find(key);
    if (it != lattice_cache.end()) return it->second;
  }
  auto lat = build_lattice(g, opt);
  std::lock_guard<std::mutex> lock(cache_mu);
  return lattice_cache.emplace(std::move(key), std::move(lat)).first->second;
}

bool brute_member(const PermGroup& g, const PermGroup& k, const ChiefFunction& f) {
  auto lat = normal_lattice(g);
  if (lat->maybe_partial)
    throw resource_error("brute_member: normal lattice may be partial");
  int ki = lat->index_of(k);
  require_input(ki >= 0, "brute_member: K is not a normal subgroup of G");

  std::string key = g.key() + "|" + lat->members[ki].key() + "|" + f.name();
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = member_cache.find(key);
    if (it != member_cache.end()) return it->second;
  }

  // Any one maximal chain above K decides: chief series of G/K share factor
  // types, and f is constant on isomorphic chief factors.
  int top = static_cast<int>(lat->members.size()) - 1;
  bool ok = true;
  int cur = ki;
  while (cur != top && ok) {
    auto above = lat->covers_of(cur);
    check_internal(!above.empty(), "brute_member: chain stuck below top");
    int next = above.front();
    ok = f(NormalSection(g, lat->members[next], lat->members[cur]));
    cur = next;
  }

  std::lock_guard<std::mutex> lock(cache_mu);
  member_cache.emplace(std::move(key), ok);
  return ok;
}

PermGroup brute_residual(const PermGroup& g, const ChiefFunction& f) {
  auto lat = normal_lattice(g);
  if (lat->maybe_partial)
    throw resource_error("brute_residual: normal lattice may be partial");

  std::vector<int> good;
  for (std::size_t i = 0; i < lat->members.size(); ++i)
    if (brute_member(g, lat->members[i], f)) good.push_back(static_cast<int>(i));
  check_internal(!good.empty(), "brute_residual: top member must qualify");

  // Formations are closed under subdirect products, so the qualifying set
  // has a least element. Anything else means f is not a chief function of a
  // formation.
  int least = good.front();
  for (int i : good)
    check_internal(lat->leq[least][i], "brute_residual: no unique minimum");
  return lat->members[least];
}

std::vector<PermGroup> all_subgroups(const PermGroup& g, std::uint64_t order_cap) {
  if (g.order() > order_cap)
    throw resource_error("all_subgroups: group order exceeds cap " +
                         std::to_string(order_cap));
  auto elems = g.elements(order_cap);

  std::vector<PermGroup> subs;
  subs.push_back(trivial_group(g.degree()));
  for (const auto& x : elems) {
    if (x.is_identity()) continue;
    PermGroup c = build_group(g.degree(), {x});
    if (!pool_has(subs, c)) subs.push_back(std::move(c));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t frozen = subs.size();
    for (std::size_t i = 0; i < frozen; ++i) {
      for (std::size_t j = i + 1; j < frozen; ++j) {
        PermGroup c = join(subs[i], subs[j]);
        if (!pool_has(subs, c)) {
          subs.push_back(std::move(c));
          changed = true;
          check_internal(subs.size() <= 100000, "all_subgroups: runaway count");
        }
      }
    }
  }

  std::sort(subs.begin(), subs.end(), [](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.key() < b.key();
  });
  return subs;
}

namespace {

struct SubnormalDag {
  std::vector<PermGroup> subs;
  std::vector<std::vector<int>> edges;
};

std::map<std::string, std::shared_ptr<const SubnormalDag>> dag_cache;

std::shared_ptr<const SubnormalDag> subnormal_dag(const PermGroup& g,
                                                  const ChiefFunction& f,
                                                  SubnormalKind kind) {
  std::string key =
      g.key() + "|" + f.name() + "|" + (kind == SubnormalKind::k ? "k" : "plain");
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = dag_cache.find(key);
    if (it != dag_cache.end()) return it->second;
  }

  auto dag = std::make_shared<SubnormalDag>();
  dag->subs = all_subgroups(g, 500);
  std::size_t n = dag->subs.size();
  dag->edges.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const PermGroup& a = dag->subs[i];
      const PermGroup& b = dag->subs[j];
      if (i == j || a.order() >= b.order() || !divides(a.order(), b.order())) continue;
      if (!b.contains_group(a)) continue;
      bool step = false;
      if (kind == SubnormalKind::k && a.is_normal_in(b)) step = true;
      if (!step) {
        // B/Core_B(A) is the image of B acting on the cosets of A.
        CosetImage ci(b, a, 500);
        step = brute_member(ci.image(), trivial_group(ci.image().degree()), f);
      }
      if (step) dag->edges[i].push_back(static_cast<int>(j));
    }
  }

  std::lock_guard<std::mutex> lock(cache_mu);
  return dag_cache.emplace(std::move(key), std::move(dag)).first->second;
}

}  // namespace

bool brute_kf_subnormal(const PermGroup& g, const PermGroup& h, const ChiefFunction& f,
                        SubnormalKind kind) {
  require_input(g.degree() == h.degree(), "brute_kf_subnormal: degree mismatch");
  require_input(g.contains_group(h), "brute_kf_subnormal: H is not a subgroup of G");
  if (h.order() == g.order()) return true;

  auto dag = subnormal_dag(g, f, kind);
  int start = -1, goal = -1;
  for (std::size_t i = 0; i < dag->subs.size(); ++i) {
    if (start < 0 && dag->subs[i].order() == h.order() && dag->subs[i].same_group_as(h))
      start = static_cast<int>(i);
    if (dag->subs[i].order() == g.order()) goal = static_cast<int>(i);
  }
  check_internal(start >= 0 && goal >= 0, "brute_kf_subnormal: enumeration missed a subgroup");

  std::vector<char> seen(dag->subs.size(), 0);
  std::vector<int> work{start};
  seen[start] = 1;
  while (!work.empty()) {
    int cur = work.back();
    work.pop_back();
    if (cur == goal) return true;
    for (int nxt : dag->edges[cur]) {
      if (!seen[nxt]) {
        seen[nxt] = 1;
        work.push_back(nxt);
      }
    }
  }
  return false;
}

}  // namespace residua
