#include "residua/formations.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "residua/bigint.hpp"
#include "residua/chain_guard.hpp"
#include "residua/errors.hpp"
#include "residua/group_ops.hpp"
#include "residua/rng.hpp"

namespace residua {
namespace {

std::mutex cache_mu;
std::map<std::string, PermGroup> residual_cache;
std::map<std::string, PermGroup> canonical_cache;
std::map<std::string, Decomposition> layer_cache;

// Layers depend only on (G, K, p), not on the chief function, so residual
// runs over many formations share them. Any valid decomposition serves.
Decomposition cached_nonabelian(const PermGroup& g, const PermGroup& k, Rng& rng) {
  std::string key = g.key() + "|" + k.key() + "|na";
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = layer_cache.find(key);
    if (it != layer_cache.end()) return it->second;
  }
  Decomposition d = nonabelian_decomposition(g, k, rng);
  std::lock_guard<std::mutex> lock(cache_mu);
  return layer_cache.emplace(std::move(key), std::move(d)).first->second;
}

Decomposition cached_pdec(const PermGroup& g, const PermGroup& k, long p, Rng& rng) {
  std::string key = g.key() + "|" + k.key() + "|" + std::to_string(p);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = layer_cache.find(key);
    if (it != layer_cache.end()) return it->second;
  }
  Decomposition d = p_decomposition(g, k, p, rng);
  std::lock_guard<std::mutex> lock(cache_mu);
  return layer_cache.emplace(std::move(key), std::move(d)).first->second;
}

// [X, H] <= K for K normal in the common ambient group; generator pairs
// suffice because K absorbs the commutator identities.
bool centralizes_mod(const PermGroup& x, const PermGroup& h, const PermGroup& k) {
  for (const auto& a : x.generators())
    for (const auto& b : h.generators())
      if (!k.contains(a.inverse() * b.inverse() * a * b)) return false;
  return true;
}

ChiefFunction::LocalResidual memoized(ChiefFunction::LocalResidual fns) {
  auto memo = std::make_shared<std::map<std::string, PermGroup>>();
  auto mu = std::make_shared<std::mutex>();
  return [fns = std::move(fns), memo, mu](const PermGroup& g, long p) -> PermGroup {
    std::string key = g.key() + "#" + std::to_string(p);
    {
      std::lock_guard<std::mutex> lock(*mu);
      auto it = memo->find(key);
      if (it != memo->end()) return it->second;
    }
    PermGroup r = fns(g, p);
    std::lock_guard<std::mutex> lock(*mu);
    return memo->emplace(std::move(key), std::move(r)).first->second;
  };
}

std::vector<Permutation> pair_commutators(const std::vector<Permutation>& s) {
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      out.push_back(s[i].inverse() * s[j].inverse() * s[i] * s[j]);
  return out;
}

void append_powers(std::vector<Permutation>& out, const std::vector<Permutation>& s,
                   long e) {
  for (const auto& x : s) out.push_back(x.power(e));
}

Rng sylow_rng(const PermGroup& g, long q) {
  return Rng(fnv1a(g.key()) ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(q)));
}

// Exponent used by the supersoluble family: p-1 itself or its radical.
enum class PowerRule { pm1, rad_pm1, none };

long exponent_for(PowerRule rule, long p) {
  switch (rule) {
    case PowerRule::pm1:
      return p - 1;
    case PowerRule::rad_pm1:
      return radical_of(p - 1);
    default:
      return 0;
  }
}

// G^{f(p)} = <[x,y], x^e : x,y in S>^G with S the group generators.
ChiefFunction::LocalResidual global_generator_fns(PowerRule rule) {
  return [rule](const PermGroup& g, long p) -> PermGroup {
    std::vector<Permutation> elts = pair_commutators(g.generators());
    if (long e = exponent_for(rule, p)) append_powers(elts, g.generators(), e);
    return normal_closure(g, elts);
  };
}

// Same shape with S ranging over generators of one Sylow q-subgroup per
// prime q of G.
ChiefFunction::LocalResidual sylow_generator_fns(PowerRule rule) {
  return [rule](const PermGroup& g, long p) -> PermGroup {
    std::vector<Permutation> elts;
    for (long q : primes_of(g)) {
      Rng rng = sylow_rng(g, q);
      auto sg = sylow_subgroup(g, q, rng).generators();
      auto cs = pair_commutators(sg);
      elts.insert(elts.end(), cs.begin(), cs.end());
      if (long e = exponent_for(rule, p)) append_powers(elts, sg, e);
    }
    return normal_closure(g, elts);
  };
}

// Sylow q-subgroups for every q outside pi(p-1); their closure is the
// S_{pi(p-1)}-residual.
ChiefFunction::LocalResidual shu_fns() {
  return [](const PermGroup& g, long p) -> PermGroup {
    auto skip = prime_factors_long(p - 1);
    std::vector<Permutation> elts;
    for (long q : primes_of(g)) {
      if (std::find(skip.begin(), skip.end(), q) != skip.end()) continue;
      Rng rng = sylow_rng(g, q);
      auto sg = sylow_subgroup(g, q, rng).generators();
      elts.insert(elts.end(), sg.begin(), sg.end());
    }
    return normal_closure(g, elts);
  };
}

}  // namespace

PermGroup residual_part(const PermGroup& g, const PermGroup& n, const Decomposition& dec,
                        const ChiefFunction& f) {
  PermGroup t = dec.residual;
  for (const auto& m : dec.minimals)
    if (!f(NormalSection(g, m, dec.residual))) t = join(t, m);
  check_internal(n.contains_group(t), "residual part escaped the layer");
  return t;
}

PermGroup residual(const PermGroup& g, const ChiefFunction& f) {
  check_internal(f.valid(), "residual: empty chief function");
  std::string ckey = g.key() + "|" + f.name();
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = residual_cache.find(ckey);
    if (it != residual_cache.end()) return it->second;
  }

  Rng rng(fnv1a(ckey));
  PermGroup k = g;
  // Walls of the good factors, re-evaluated afterwards: together they form
  // a chief series of G over the result.
  std::vector<std::pair<PermGroup, PermGroup>> sweep;

  auto apply = [&](const Decomposition& dec) {
    PermGroup t = dec.residual;
    std::vector<const PermGroup*> good;
    for (const auto& m : dec.minimals) {
      if (f(NormalSection(g, m, dec.residual)))
        good.push_back(&m);
      else
        t = join(t, m);
    }
    PermGroup wall = t;
    for (const PermGroup* m : good) {
      PermGroup next = join(wall, *m);
      sweep.emplace_back(wall, next);
      wall = std::move(next);
    }
    check_internal(wall.order() == k.order(), "residual layer does not cover");
    k = std::move(t);
  };

  ChainGuard guard(g.degree(), "formation residual");
  while (true) {
    PermGroup n = k;
    apply(cached_nonabelian(g, k, rng));
    for (long p : primes_of(k)) apply(cached_pdec(g, k, p, rng));
    if (k.order() == n.order()) break;
    guard.step();
  }

  // The loop evaluated each factor as a minimal over its layer residual;
  // the series walls present the same factors in different coordinates, so
  // disagreement means f is not constant on isomorphic chief factors.
  for (const auto& [bot, top] : sweep)
    require_input(f(NormalSection(g, top, bot)),
                  "'" + f.name() + "' is not a chief factor function: value changed "
                  "along the verification series");

  std::lock_guard<std::mutex> lock(cache_mu);
  return residual_cache.emplace(std::move(ckey), std::move(k)).first->second;
}

bool member(const PermGroup& g, const ChiefFunction& f) { return residual(g, f).is_trivial(); }

bool member_mod(const PermGroup& g, const PermGroup& k, const ChiefFunction& f) {
  require_input(g.degree() == k.degree(), "member_mod: degree mismatch");
  require_input(k.is_normal_in(g) && g.contains_group(k), "member_mod: K is not normal in G");
  return join(residual(g, f), k).order() == k.order();
}

ChiefFunction meet(const ChiefFunction& a, const ChiefFunction& b) {
  return ChiefFunction("meet(" + a.name() + "," + b.name() + ")", false,
                       [a, b](const NormalSection& s) { return a(s) && b(s); });
}

ChiefFunction join(const ChiefFunction& a, const ChiefFunction& b) {
  return ChiefFunction("join(" + a.name() + "," + b.name() + ")", false,
                       [a, b](const NormalSection& s) { return a(s) || b(s); });
}

ChiefFunction complement(const ChiefFunction& a) {
  return ChiefFunction("not(" + a.name() + ")", false,
                       [a](const NormalSection& s) { return !a(s); });
}

ChiefFunction local_formation(const std::string& name, ChiefFunction::LocalResidual fns,
                              bool hereditary) {
  auto m = memoized(std::move(fns));
  ChiefFunction f(name, hereditary, [m](const NormalSection& sec) {
    for (long p : sec.factor_primes())
      if (!centralizes_mod(m(sec.ambient(), p), sec.top(), sec.bottom())) return false;
    return true;
  });
  f.attach_local(m);
  return f;
}

ChiefFunction baer_local_formation(const std::string& name, ChiefFunction::LocalResidual fns,
                                   ChiefFunction::GroupResidual f0) {
  auto m = memoized(std::move(fns));
  auto m0 = memoized([f0 = std::move(f0)](const PermGroup& g, long) { return f0(g); });
  ChiefFunction f(name, false, [m, m0](const NormalSection& sec) {
    if (sec.bottom().contains_group(derived_subgroup(sec.top()))) {
      for (long p : sec.factor_primes())
        if (!centralizes_mod(m(sec.ambient(), p), sec.top(), sec.bottom())) return false;
      return true;
    }
    return centralizes_mod(m0(sec.ambient(), 0), sec.top(), sec.bottom());
  });
  f.attach_local(m);
  f.attach_baer0([m0](const PermGroup& g) { return m0(g, 0); });
  return f;
}

PermGroup canonical_local_residual(const ChiefFunction& f, const PermGroup& g, long p) {
  require_input(p >= 2 && is_prime(p), "canonical local residual: p must be prime");
  if (!f.has_local())
    throw capability_error("canonical local residual needs a local definition, '" +
                           f.name() + "' has none");
  std::string ckey = g.key() + "|" + f.name() + "|" + std::to_string(p);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = canonical_cache.find(ckey);
    if (it != canonical_cache.end()) return it->second;
  }
  PermGroup base = join(f.local_residual(g, p), residual(g, f));
  Rng rng(fnv1a(ckey));
  PermGroup r = op_subgroup(base, p, rng);
  std::lock_guard<std::mutex> lock(cache_mu);
  return canonical_cache.emplace(std::move(ckey), std::move(r)).first->second;
}

ChiefFunction quasi(const ChiefFunction& f) {
  if (!f.has_local())
    throw capability_error("quasi needs a locally defined formation, '" + f.name() +
                           "' has none");
  return ChiefFunction(
      "quasi(" + f.name() + ")", false, [f](const NormalSection& sec) {
        bool central = true;
        for (long p : sec.factor_primes()) {
          if (!centralizes_mod(canonical_local_residual(f, sec.ambient(), p), sec.top(),
                               sec.bottom())) {
            central = false;
            break;
          }
        }
        if (central) return true;
        // Every element of G induces an inner automorphism of H/K exactly
        // when H C_G(H/K) = G.
        PermGroup c = centralizer_section(sec);
        return join(sec.top(), c).order() == sec.ambient().order();
      });
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{
      "nilpotent",      "supersoluble", "wsupersoluble", "ssupersoluble",
      "smsupersoluble", "na",           "shu",           "pgroups",
      "noncentral",     "quasinilpotent"};
  return names;
}

ChiefFunction builtin(const std::string& name, const std::vector<long>& params) {
  auto no_params = [&] {
    require_input(params.empty(), "formation '" + name + "' takes no parameters");
  };
  auto one_prime = [&]() -> long {
    require_input(params.size() == 1, "formation '" + name + "' takes one prime parameter");
    require_input(params[0] >= 2 && is_prime(params[0]),
                  "formation '" + name + "': parameter must be a prime");
    return params[0];
  };

  if (name == "nilpotent") {
    no_params();
    return local_formation("nilpotent", [](const PermGroup& g, long) { return g; }, true);
  }
  if (name == "supersoluble") {
    no_params();
    return local_formation(name, global_generator_fns(PowerRule::pm1), true);
  }
  if (name == "ssupersoluble") {
    no_params();
    return local_formation(name, global_generator_fns(PowerRule::rad_pm1), true);
  }
  if (name == "wsupersoluble") {
    no_params();
    return local_formation(name, sylow_generator_fns(PowerRule::pm1), true);
  }
  if (name == "smsupersoluble") {
    no_params();
    return local_formation(name, sylow_generator_fns(PowerRule::rad_pm1), true);
  }
  if (name == "na") {
    no_params();
    return local_formation(name, sylow_generator_fns(PowerRule::none), true);
  }
  if (name == "shu") {
    no_params();
    return local_formation(name, shu_fns(), true);
  }
  if (name == "pgroups") {
    long p = one_prime();
    return ChiefFunction("pgroups(" + std::to_string(p) + ")", false,
                         [p](const NormalSection& sec) {
                           auto ps = sec.factor_primes();
                           return ps.size() == 1 && ps[0] == p;
                         });
  }
  if (name == "noncentral") {
    long r = one_prime();
    return ChiefFunction("noncentral(" + std::to_string(r) + ")", false,
                         [r](const NormalSection& sec) {
                           auto ps = sec.factor_primes();
                           if (ps.size() != 1 || ps[0] != r) return true;
                           return !centralizes_mod(sec.ambient(), sec.top(), sec.bottom());
                         });
  }
  if (name == "quasinilpotent") {
    no_params();
    return quasi(builtin("nilpotent"));
  }
  throw input_error("unknown formation: " + name);
}

}  // namespace residua
