#include "residua/subnormal.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>

#include "residua/bigint.hpp"
#include "residua/chain_guard.hpp"
#include "residua/errors.hpp"
#include "residua/formations.hpp"
#include "residua/group_ops.hpp"
#include "residua/rng.hpp"

namespace residua {
namespace {

constexpr std::uint64_t kQuotientIndexCap = 100000;

std::mutex cache_mu;
std::map<std::string, bool> member_cache;
std::map<std::string, PermGroup> residual_cache;
std::atomic<long> second_pass_count{0};

void require_subgroup(const PermGroup& g, const PermGroup& h, const char* what) {
  require_input(g.degree() == h.degree(), std::string(what) + ": degree mismatch");
  require_input(g.contains_group(h), std::string(what) + ": H is not a subgroup of G");
}

void require_hereditary(const ChiefFunction& f, const char* what) {
  check_internal(f.valid(), std::string(what) + ": empty chief function");
  if (!f.hereditary())
    throw capability_error(std::string(what) + " needs a hereditary formation, '" +
                           f.name() + "' is not marked hereditary");
}

std::uint64_t mixed(long p) {
  return 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(p);
}

}  // namespace

DescentTrace is_k_f_subnormal(const PermGroup& g, const PermGroup& h,
                              const ChiefFunction& f) {
  require_subgroup(g, h, "is_k_f_subnormal");
  require_hereditary(f, "is_k_f_subnormal");

  DescentTrace tr;
  PermGroup c = g;
  tr.chain.push_back(c);
  ChainGuard guard(g.degree(), "K-F-subnormal descent");
  while (true) {
    if (c.order() == h.order()) {
      tr.verdict = true;
      tr.terminal = c;
      return tr;
    }
    PermGroup j = join(h, residual(c, f));
    if (j.order() != c.order()) {
      c = std::move(j);
    } else {
      PermGroup n = normal_closure(c, h);
      if (n.order() == c.order()) {
        tr.verdict = false;
        tr.terminal = c;
        return tr;
      }
      c = std::move(n);
    }
    tr.chain.push_back(c);
    guard.step();
  }
}

DescentTrace is_f_subnormal(const PermGroup& g, const PermGroup& h,
                            const ChiefFunction& f) {
  require_subgroup(g, h, "is_f_subnormal");
  require_hereditary(f, "is_f_subnormal");

  DescentTrace tr;
  PermGroup c = g;
  tr.chain.push_back(c);
  ChainGuard guard(g.degree(), "F-subnormal descent");
  while (true) {
    if (c.order() == h.order()) {
      tr.verdict = true;
      tr.terminal = c;
      return tr;
    }
    PermGroup j = join(h, residual(c, f));
    if (j.order() == c.order()) {
      tr.verdict = false;
      tr.terminal = c;
      return tr;
    }
    c = std::move(j);
    tr.chain.push_back(c);
    guard.step();
  }
}

bool is_subnormal(const PermGroup& g, const PermGroup& h) {
  require_subgroup(g, h, "is_subnormal");
  PermGroup c = g;
  ChainGuard guard(g.degree(), "normal closure descent");
  while (c.order() != h.order()) {
    PermGroup n = normal_closure(c, h);
    if (n.order() == c.order()) return false;
    c = std::move(n);
    guard.step();
  }
  return true;
}

SylowSubnormClass::SylowSubnormClass(ChiefFunction f, std::vector<long> pi,
                                     SubnormalKind kind)
    : f_(std::move(f)), pi_(std::move(pi)), kind_(kind) {
  require_hereditary(f_, "sylow subnormal class");
  require_input(!pi_.empty(), "sylow subnormal class: empty prime set");
  std::sort(pi_.begin(), pi_.end());
  pi_.erase(std::unique(pi_.begin(), pi_.end()), pi_.end());
  for (long p : pi_)
    require_input(p >= 2 && is_prime(p),
                  "sylow subnormal class: " + std::to_string(p) + " is not prime");
  std::ostringstream name;
  name << (kind_ == SubnormalKind::k ? "sylwk(" : "sylw(") << f_.name() << ",";
  for (std::size_t i = 0; i < pi_.size(); ++i) name << (i ? " " : "") << pi_[i];
  name << ")";
  name_ = name.str();
}

DescentTrace SylowSubnormClass::descend(const PermGroup& g,
                                        const PermGroup& sylow) const {
  return kind_ == SubnormalKind::k ? is_k_f_subnormal(g, sylow, f_)
                                   : is_f_subnormal(g, sylow, f_);
}

bool SylowSubnormClass::member(const PermGroup& g) const {
  std::string ckey = "m|" + name_ + "|" + g.key();
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = member_cache.find(ckey);
    if (it != member_cache.end()) return it->second;
  }
  bool ok = true;
  for (long p : primes_of(g)) {
    if (!std::binary_search(pi_.begin(), pi_.end(), p)) continue;
    Rng rng(fnv1a(g.key()) ^ mixed(p));
    if (!descend(g, sylow_subgroup(g, p, rng)).verdict) {
      ok = false;
      break;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mu);
  member_cache.emplace(std::move(ckey), ok);
  return ok;
}

PermGroup SylowSubnormClass::one_pass(const PermGroup& g) const {
  PermGroup s = trivial_group(g.degree());
  for (long p : primes_of(g)) {
    if (!std::binary_search(pi_.begin(), pi_.end(), p)) continue;
    Rng rng(fnv1a(g.key()) ^ mixed(p));
    DescentTrace tr = descend(g, sylow_subgroup(g, p, rng));
    if (tr.verdict) continue;
    // The terminal M absorbs its Sylow p-subgroup, so O^p(M) is nontrivial
    // and its closure forces progress.
    Rng oprng(fnv1a(g.key() + "#op") ^ mixed(p));
    s = join(s, normal_closure(g, op_subgroup(tr.terminal, p, oprng)));
  }
  return s;
}

PermGroup SylowSubnormClass::residual(const PermGroup& g) const {
  std::string ckey = "r|" + name_ + "|" + g.key();
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = residual_cache.find(ckey);
    if (it != residual_cache.end()) return it->second;
  }
  PermGroup n = one_pass(g);
  ChainGuard guard(g.degree(), "sylow subnorm residual");
  while (!n.is_trivial() && n.order() != g.order()) {
    CosetImage ci = coset_action_image(g, n, kQuotientIndexCap);
    if (member(ci.image())) break;
    ++second_pass_count;
    PermGroup d = one_pass(ci.image());
    check_internal(!d.is_trivial(), "sylow subnorm residual made no progress");
    std::vector<Permutation> lift = n.generators();
    for (const auto& r : ci.reps())
      if (d.contains(ci.act(r))) lift.push_back(r);
    n = build_group(g.degree(), lift);
    guard.step();
  }
  std::lock_guard<std::mutex> lock(cache_mu);
  return residual_cache.emplace(std::move(ckey), std::move(n)).first->second;
}

long SylowSubnormClass::second_passes() { return second_pass_count.load(); }

void SylowSubnormClass::reset_second_passes() { second_pass_count.store(0); }

}  // namespace residua
