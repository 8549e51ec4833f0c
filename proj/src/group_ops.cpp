#include "residua/group_ops.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <utility>

#include "residua/chain_guard.hpp"
#include "residua/errors.hpp"

namespace residua {

namespace {

void require_same_degree(const PermGroup& a, const PermGroup& b, const char* what) {
  check_internal(a.degree() == b.degree(), std::string(what) + ": degree mismatch");
}

Permutation commutator_of(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

// Orbit of a coset K*rep0 under cosets-to-cosets action of the generators
// of c, with the stabilizer of the start coset assembled from Schreier
// generators. Cosets are identified by their canonical representatives.
PermGroup coset_point_stabilizer(
    const PermGroup& c, const StabilizerChain& kchain, const Permutation& start,
    const std::function<Permutation(const Permutation&, const Permutation&)>& act,
    std::uint64_t orbit_cap, const char* where) {
  Permutation rep0 = kchain.canonical_coset_rep(start);
  std::vector<Permutation> orbit{rep0};
  std::vector<Permutation> tr{c.identity()};
  std::unordered_map<Permutation, std::size_t, PermHash> pos;
  pos.emplace(rep0, 0);
  GroupBuilder stab(c.degree());
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : c.generators()) {
      Permutation moved = kchain.canonical_coset_rep(act(orbit[i], s));
      auto it = pos.find(moved);
      if (it == pos.end()) {
        if (orbit.size() >= orbit_cap)
          throw resource_error(std::string(where) + ": coset orbit exceeds cap " +
                               std::to_string(orbit_cap));
        pos.emplace(moved, orbit.size());
        orbit.push_back(std::move(moved));
        tr.push_back(tr[i] * s);
      } else {
        stab.add(tr[i] * s * tr[it->second].inverse());
      }
    }
  }
  PermGroup out = stab.freeze();
  check_internal(out.order() * static_cast<long>(orbit.size()) == c.order(),
                 std::string(where) + ": orbit-stabilizer count mismatch");
  return out;
}

Permutation conj_act(const Permutation& rep, const Permutation& s) {
  return rep.conjugated_by(s);
}

Permutation mult_act(const Permutation& rep, const Permutation& s) { return rep * s; }

// Canonical representatives of the right cosets of h in g, in a BFS order
// from the identity coset. Optionally records, per generator of g, the
// index map induced on the cosets.
std::vector<Permutation> right_coset_reps(const PermGroup& g, const PermGroup& h,
                                          std::uint64_t index_cap,
                                          std::vector<std::vector<int>>* gen_maps) {
  require_same_degree(g, h, "coset enumeration");
  check_internal(g.contains_group(h), "coset enumeration: subgroup not contained");
  BigInt index = g.order() / h.order();
  check_internal(index * h.order() == g.order(), "coset enumeration: index not integral");
  if (index > index_cap)
    throw resource_error("coset enumeration: index " + index.str() + " exceeds cap " +
                         std::to_string(index_cap));
  std::size_t target = static_cast<std::size_t>(index);

  const auto& kchain = h.chain();
  std::vector<Permutation> reps{kchain.canonical_coset_rep(g.identity())};
  reps.reserve(target);
  std::unordered_map<Permutation, int, PermHash> pos;
  pos.emplace(reps[0], 0);
  const auto& gens = g.generators();
  if (gen_maps) gen_maps->assign(gens.size(), std::vector<int>(target, -1));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Permutation moved = kchain.canonical_coset_rep(reps[i] * gens[gi]);
      auto it = pos.find(moved);
      int j;
      if (it == pos.end()) {
        check_internal(reps.size() < target, "coset enumeration: too many cosets");
        j = static_cast<int>(reps.size());
        pos.emplace(moved, j);
        reps.push_back(std::move(moved));
      } else {
        j = it->second;
      }
      if (gen_maps) (*gen_maps)[gi][i] = j;
    }
  }
  check_internal(reps.size() == target, "coset enumeration: wrong coset count");
  return reps;
}

}  // namespace

std::vector<long> primes_of(const PermGroup& g) {
  return prime_factors_bounded(g.order(), g.degree());
}

PermGroup join(const PermGroup& h, const PermGroup& k) {
  require_same_degree(h, k, "join");
  if (h.contains_group(k)) return h;
  if (k.contains_group(h)) return k;
  GroupBuilder b(h);
  for (const auto& x : k.generators()) b.add(x);
  return b.freeze();
}

PermGroup join_with_element(const PermGroup& h, const Permutation& x) {
  if (h.contains(x)) return h;
  GroupBuilder b(h);
  b.add(x);
  return b.freeze();
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& seed) {
  GroupBuilder b(g.degree());
  std::deque<Permutation> work;
  for (const auto& s : seed) {
    check_internal(g.contains(s), "normal closure: seed element outside the group");
    if (b.add(s)) work.push_back(s);
  }
  // Conjugating the kept generators by the generators of g closes the whole
  // subgroup under conjugation by g; finiteness upgrades that to invariance.
  while (!work.empty()) {
    Permutation x = std::move(work.front());
    work.pop_front();
    for (const auto& t : g.generators()) {
      Permutation c = x.conjugated_by(t);
      if (b.add(c)) work.push_back(std::move(c));
    }
  }
  return b.freeze();
}

PermGroup normal_closure(const PermGroup& g, const PermGroup& h) {
  require_same_degree(g, h, "normal closure");
  if (h.is_normal_in(g)) return h;
  return normal_closure(g, h.generators());
}

PermGroup commutator(const PermGroup& h, const PermGroup& k) {
  require_same_degree(h, k, "commutator");
  PermGroup ambient = join(h, k);
  std::vector<Permutation> seed;
  for (const auto& x : h.generators())
    for (const auto& y : k.generators()) {
      Permutation c = commutator_of(x, y);
      if (!c.is_identity()) seed.push_back(std::move(c));
    }
  return normal_closure(ambient, seed);
}

PermGroup derived_subgroup(const PermGroup& n) {
  const auto& gens = n.generators();
  std::vector<Permutation> seed;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator_of(gens[i], gens[j]);
      if (!c.is_identity()) seed.push_back(std::move(c));
    }
  return normal_closure(n, seed);
}

PermGroup agemo_derived(const PermGroup& n, long p, const PermGroup& ambient) {
  require_same_degree(n, ambient, "agemo");
  check_internal(p >= 2 && is_prime(p), "agemo: p must be prime");
  const auto& gens = n.generators();
  std::vector<Permutation> seed;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator_of(gens[i], gens[j]);
      if (!c.is_identity()) seed.push_back(std::move(c));
    }
    Permutation pw = gens[i].power(p);
    if (!pw.is_identity()) seed.push_back(std::move(pw));
  }
  // The quotient of n by this closure is elementary abelian of exponent p,
  // and any normal subgroup with such a quotient contains every generator
  // commutator and p-th power, so this is N' N^p.
  PermGroup out = normal_closure(n, seed);
  check_internal(out.is_normal_in(ambient), "agemo: result must be normal in the ambient group");
  return out;
}

PermGroup stabilizer_of_points(const PermGroup& g, const std::vector<int>& pts) {
  PermGroup cur = g;
  for (int pt : pts) {
    require_input(pt >= 0 && pt < g.degree(), "point stabilizer: point out of range");
    bool moved = false;
    for (const auto& s : cur.generators())
      if (s.apply(pt) != pt) {
        moved = true;
        break;
      }
    if (!moved) continue;
    std::vector<int> orbit{pt};
    std::vector<Permutation> tr{cur.identity()};
    std::vector<int> pos(static_cast<std::size_t>(g.degree()), -1);
    pos[static_cast<std::size_t>(pt)] = 0;
    GroupBuilder stab(g.degree());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& s : cur.generators()) {
        int q = s.apply(orbit[i]);
        if (pos[static_cast<std::size_t>(q)] < 0) {
          pos[static_cast<std::size_t>(q)] = static_cast<int>(orbit.size());
          orbit.push_back(q);
          tr.push_back(tr[i] * s);
        } else {
          stab.add(tr[i] * s * tr[static_cast<std::size_t>(pos[static_cast<std::size_t>(q)])].inverse());
        }
      }
    }
    PermGroup next = stab.freeze();
    check_internal(next.order() * static_cast<long>(orbit.size()) == cur.order(),
                   "point stabilizer: orbit-stabilizer count mismatch");
    cur = next;
  }
  return cur;
}

PermGroup centralizer_section(const NormalSection& sec, std::uint64_t factor_cap) {
  if (sec.factor_trivial()) return sec.ambient();
  if (sec.factor_order() > factor_cap)
    throw resource_error("section centralizer: factor order " + sec.factor_order().str() +
                         " exceeds cap " + std::to_string(factor_cap));
  const auto& kchain = sec.bottom().chain();
  PermGroup c = sec.ambient();
  // Elements centralizing the coset of every generator of the top group
  // centralize the whole factor, since cosets multiply through K.
  for (const auto& m : sec.top().generators()) {
    if (sec.bottom().contains(m)) continue;
    Permutation rep = kchain.canonical_coset_rep(m);
    bool fixed = true;
    for (const auto& s : c.generators())
      if (kchain.canonical_coset_rep(m.conjugated_by(s)) != rep) {
        fixed = false;
        break;
      }
    if (fixed) continue;
    c = coset_point_stabilizer(c, kchain, rep, conj_act, factor_cap, "section centralizer");
  }
  return c;
}

PermGroup element_centralizer(const PermGroup& g, const Permutation& x,
                              std::uint64_t orbit_cap) {
  check_internal(x.degree() == g.degree(), "element centralizer: degree mismatch");
  StabilizerChain empty(g.degree());
  return coset_point_stabilizer(g, empty, x, conj_act, orbit_cap, "element centralizer");
}

PermGroup core(const PermGroup& g, const PermGroup& h, std::uint64_t index_cap) {
  require_same_degree(g, h, "core");
  check_internal(g.contains_group(h), "core: subgroup not contained");
  if (h.is_trivial()) return h;
  if (h.is_normal_in(g)) return h;
  auto reps = right_coset_reps(g, h, index_cap, nullptr);
  const auto& kchain = h.chain();
  PermGroup c = g;
  for (const auto& rep : reps) {
    if (c.is_trivial()) break;
    bool fixed = true;
    for (const auto& s : c.generators())
      if (kchain.canonical_coset_rep(rep * s) != rep) {
        fixed = false;
        break;
      }
    if (fixed) continue;
    c = coset_point_stabilizer(c, kchain, rep, mult_act, index_cap, "core");
  }
  check_internal(h.contains_group(c) && c.is_normal_in(g), "core: postcondition failed");
  return c;
}

CosetImage::CosetImage(const PermGroup& g, const PermGroup& h, std::uint64_t index_cap)
    : sub_(h) {
  std::vector<std::vector<int>> gen_maps;
  reps_ = right_coset_reps(g, h, index_cap, &gen_maps);
  for (std::size_t i = 0; i < reps_.size(); ++i) pos_.emplace(reps_[i], static_cast<int>(i));
  std::vector<Permutation> imgs;
  imgs.reserve(gen_maps.size());
  for (auto& m : gen_maps) imgs.emplace_back(std::move(m));
  image_ = build_group(static_cast<int>(reps_.size()), imgs);
}

Permutation CosetImage::act(const Permutation& x) const {
  const auto& kchain = sub_.chain();
  std::vector<int> out(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    auto it = pos_.find(kchain.canonical_coset_rep(reps_[i] * x));
    check_internal(it != pos_.end(), "coset action: element leaves the coset space");
    out[i] = it->second;
  }
  return Permutation(std::move(out));
}

CosetImage coset_action_image(const PermGroup& g, const PermGroup& h,
                              std::uint64_t index_cap) {
  return CosetImage(g, h, index_cap);
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
  require_same_degree(g, h, "normalizer");
  check_internal(g.contains_group(h), "normalizer: subgroup not contained");
  if (h.is_trivial()) return g;
  if (h.is_normal_in(g)) return g;

  int deg = g.degree();
  // H-orbit data for pruning: a normalizing element permutes the orbits of
  // h, preserving sizes and the same-orbit relation on base images.
  std::vector<int> orbit_id(static_cast<std::size_t>(deg), -1);
  std::vector<int> orbit_size;
  for (int pt = 0; pt < deg; ++pt) {
    if (orbit_id[static_cast<std::size_t>(pt)] >= 0) continue;
    int id = static_cast<int>(orbit_size.size());
    std::vector<int> stack{pt};
    orbit_id[static_cast<std::size_t>(pt)] = id;
    int count = 0;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      ++count;
      for (const auto& s : h.generators()) {
        int b = s.apply(a);
        if (orbit_id[static_cast<std::size_t>(b)] < 0) {
          orbit_id[static_cast<std::size_t>(b)] = id;
          stack.push_back(b);
        }
      }
    }
    orbit_size.push_back(count);
  }

  GroupBuilder found(deg);
  for (const auto& x : h.generators()) found.add(x);

  const StabilizerChain& ch = g.chain();
  int depth = ch.depth();
  std::vector<int> base_img(static_cast<std::size_t>(depth), -1);

  std::function<void(int, const Permutation&)> dfs = [&](int d, const Permutation& partial) {
    if (d == depth) {
      if (found.contains(partial)) return;
      for (const auto& x : h.generators())
        if (!h.contains(x.conjugated_by(partial))) return;
      found.add(partial);
      return;
    }
    int base = ch.level_base(d);
    const auto& orb = ch.level_orbit(d);
    for (std::size_t oi = 0; oi < orb.size(); ++oi) {
      int gamma = partial.apply(orb[oi]);
      if (orbit_size[static_cast<std::size_t>(orbit_id[static_cast<std::size_t>(gamma)])] !=
          orbit_size[static_cast<std::size_t>(orbit_id[static_cast<std::size_t>(base)])])
        continue;
      bool ok = true;
      for (int j = 0; j < d; ++j) {
        bool same_src = orbit_id[static_cast<std::size_t>(ch.level_base(j))] ==
                        orbit_id[static_cast<std::size_t>(base)];
        bool same_img = orbit_id[static_cast<std::size_t>(base_img[static_cast<std::size_t>(j)])] ==
                        orbit_id[static_cast<std::size_t>(gamma)];
        if (same_src != same_img) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      base_img[static_cast<std::size_t>(d)] = gamma;
      dfs(d + 1, ch.level_transversal(d, static_cast<int>(oi)) * partial);
    }
  };
  dfs(0, g.identity());

  PermGroup out = found.freeze();
  check_internal(g.contains_group(out) && h.is_normal_in(out), "normalizer: postcondition failed");
  return out;
}

PermGroup sylow_subgroup(const PermGroup& g, long p, Rng& rng) {
  check_internal(p >= 2 && is_prime(p), "sylow: p must be prime");
  BigInt target = p_part(g.order(), p);
  PermGroup cur = trivial_group(g.degree());
  if (target == 1) return cur;
  ChainGuard guard(g.degree(), "sylow ascent");
  while (cur.order() < target) {
    PermGroup nrm = cur.is_trivial() ? g : normalizer(g, cur);
    // The p-part of the normalizer exceeds |cur| while cur is not Sylow,
    // so a p-element outside cur exists there.
    Permutation next = g.identity();
    bool have = false;
    for (int tries = 0; tries < 512 && !have; ++tries) {
      Permutation z = nrm.random_element(rng);
      long m = z.element_order();
      long r = m;
      while (r % p == 0) r /= p;
      if (r == m) continue;
      Permutation y = z.power(r);
      if (!cur.contains(y)) {
        next = std::move(y);
        have = true;
      }
    }
    if (!have) {
      for (const auto& z : nrm.elements(200000)) {
        long m = z.element_order();
        long r = m;
        while (r % p == 0) r /= p;
        if (r == m) continue;
        Permutation y = z.power(r);
        if (!cur.contains(y)) {
          next = std::move(y);
          have = true;
          break;
        }
      }
    }
    check_internal(have, "sylow: no p-element found in the normalizer");
    GroupBuilder b(cur);
    b.add(next);
    cur = b.freeze();
    check_internal(cur.order() == p_part(cur.order(), p), "sylow: ascent left the p-group");
    guard.step();
  }
  check_internal(cur.order() == target, "sylow: wrong final order");
  return cur;
}

PermGroup op_subgroup(const PermGroup& g, long p, Rng& rng) {
  check_internal(p >= 2 && is_prime(p), "O^p: p must be prime");
  std::vector<Permutation> seed;
  for (long q : primes_of(g)) {
    if (q == p) continue;
    PermGroup s = sylow_subgroup(g, q, rng);
    const auto& gs = s.generators();
    seed.insert(seed.end(), gs.begin(), gs.end());
  }
  if (seed.empty()) return trivial_group(g.degree());
  PermGroup out = normal_closure(g, seed);
  check_internal((g.order() / out.order()) == p_part(g.order() / out.order(), p),
                 "O^p: quotient must be a p-group");
  return out;
}

PermGroup intersection(const PermGroup& a, const PermGroup& b, std::uint64_t smaller_cap) {
  require_same_degree(a, b, "intersection");
  if (a.contains_group(b)) return b;
  if (b.contains_group(a)) return a;
  const PermGroup& small = (a.order() <= b.order()) ? a : b;
  const PermGroup& large = (a.order() <= b.order()) ? b : a;
  if (small.order() > smaller_cap)
    throw resource_error("intersection: smaller order " + small.order().str() +
                         " exceeds cap " + std::to_string(smaller_cap));
  GroupBuilder out(small.degree());
  for (const auto& x : small.elements(smaller_cap))
    if (!out.contains(x) && large.contains(x)) out.add(x);
  return out.freeze();
}

bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutator_of(gens[i], gens[j]).is_identity()) return false;
  return true;
}

bool is_elementary_abelian(const PermGroup& g, long& p_out) {
  if (g.is_trivial()) return false;
  auto primes = primes_of(g);
  if (primes.size() != 1) return false;
  if (!is_abelian(g)) return false;
  long p = primes[0];
  for (const auto& x : g.generators())
    if (!x.power(p).is_identity()) return false;
  p_out = p;
  return true;
}

}  // namespace residua
