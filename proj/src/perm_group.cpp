#include "residua/perm_group.hpp"

#include <algorithm>
#include <limits>

namespace residua {

BigInt StabilizerChain::order() const {
  BigInt out = 1;
  for (const auto& lv : levels_) out *= static_cast<long>(lv.orbit.size());
  return out;
}

void StabilizerChain::new_level(int base_point) {
  Level lv;
  lv.base = base_point;
  lv.orbit_pos.assign(static_cast<std::size_t>(degree_), -1);
  lv.orbit.push_back(base_point);
  lv.orbit_pos[static_cast<std::size_t>(base_point)] = 0;
  lv.transversal.push_back(Permutation::identity(degree_));
  levels_.push_back(std::move(lv));
  base_.push_back(base_point);
}

void StabilizerChain::add_gen_to_level(int level, const Permutation& g) {
  levels_[static_cast<std::size_t>(level)].gens.push_back(g);
  levels_[static_cast<std::size_t>(level)].processed.push_back(0);
  close_orbit(level);
}

void StabilizerChain::close_orbit(int level) {
  auto& lv = levels_[static_cast<std::size_t>(level)];
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    for (const auto& g : lv.gens) {
      int img = g.apply(lv.orbit[i]);
      if (lv.orbit_pos[static_cast<std::size_t>(img)] < 0) {
        lv.orbit_pos[static_cast<std::size_t>(img)] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(img);
        lv.transversal.push_back(lv.transversal[i] * g);
      }
    }
  }
}

std::pair<Permutation, int> StabilizerChain::strip(const Permutation& g, int from_level) const {
  Permutation h = g;
  for (int i = from_level; i < depth(); ++i) {
    const auto& lv = levels_[static_cast<std::size_t>(i)];
    int x = h.apply(lv.base);
    int pos = lv.orbit_pos[static_cast<std::size_t>(x)];
    if (pos < 0) return {h, i};
    h = h * lv.transversal[static_cast<std::size_t>(pos)].inverse();
  }
  return {h, depth()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  check_internal(g.degree() == degree_, "contains: degree mismatch");
  auto [h, lvl] = strip(g);
  return lvl == depth() && h.is_identity();
}

std::optional<std::pair<Permutation, int>> StabilizerChain::process_pending(int level) {
  auto& lv = levels_[static_cast<std::size_t>(level)];
  for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
    while (lv.processed[gi] < lv.orbit.size()) {
      std::size_t oi = lv.processed[gi]++;
      const Permutation& s = lv.gens[gi];
      int p = lv.orbit[oi];
      int q = s.apply(p);
      int qpos = lv.orbit_pos[static_cast<std::size_t>(q)];
      Permutation schreier =
          lv.transversal[oi] * s * lv.transversal[static_cast<std::size_t>(qpos)].inverse();
      if (schreier.is_identity()) continue;
      auto [r, j] = strip(schreier, level + 1);
      if (!r.is_identity()) return std::make_pair(r, j);
    }
  }
  return std::nullopt;
}

void StabilizerChain::complete() {
  int i = depth() - 1;
  while (i >= 0) {
    auto bad = process_pending(i);
    if (!bad) {
      --i;
      continue;
    }
    auto& [r, j] = *bad;
    if (j == depth()) {
      int moved = -1;
      for (int pt = 0; pt < degree_; ++pt) {
        if (r.apply(pt) != pt) {
          moved = pt;
          break;
        }
      }
      check_internal(moved >= 0, "complete: identity residue escaped");
      new_level(moved);
    }
    int deepest = std::min(j, depth() - 1);
    for (int k = i + 1; k <= deepest; ++k) add_gen_to_level(k, r);
    i = deepest;
  }
}

bool StabilizerChain::extend_with(const Permutation& g) {
  check_internal(g.degree() == degree_, "extend_with: degree mismatch");
  auto [h, j] = strip(g);
  if (j == depth() && h.is_identity()) return false;
  if (j == depth()) {
    int moved = -1;
    for (int pt = 0; pt < degree_; ++pt) {
      if (h.apply(pt) != pt) {
        moved = pt;
        break;
      }
    }
    new_level(moved);
  }
  for (int k = 0; k <= std::min(j, depth() - 1); ++k) add_gen_to_level(k, h);
  complete();
  return true;
}

Permutation StabilizerChain::canonical_coset_rep(const Permutation& x) const {
  check_internal(x.degree() == degree_, "canonical_coset_rep: degree mismatch");
  // Greedy minimization of the base image tuple over the coset K*x; the
  // chosen images pin a unique k in K, so the result is coset-canonical.
  Permutation r = x;
  for (const auto& lv : levels_) {
    int best_pos = 0;
    int best_img = r.apply(lv.orbit[0]);
    for (std::size_t i = 1; i < lv.orbit.size(); ++i) {
      int img = r.apply(lv.orbit[i]);
      if (img < best_img) {
        best_img = img;
        best_pos = static_cast<int>(i);
      }
    }
    r = lv.transversal[static_cast<std::size_t>(best_pos)] * r;
  }
  return r;
}

Permutation StabilizerChain::random_element(Rng& rng) const {
  Permutation out = Permutation::identity(degree_);
  for (int i = depth() - 1; i >= 0; --i) {
    const auto& lv = levels_[static_cast<std::size_t>(i)];
    out = out * lv.transversal[rng.below(lv.transversal.size())];
  }
  return out;
}

std::vector<Permutation> StabilizerChain::elements(std::uint64_t cap) const {
  if (order() > cap)
    throw resource_error("element enumeration above cap " + std::to_string(cap) +
                         " (order " + order().str() + ")");
  std::vector<Permutation> out{Permutation::identity(degree_)};
  for (int i = depth() - 1; i >= 0; --i) {
    const auto& lv = levels_[static_cast<std::size_t>(i)];
    std::vector<Permutation> next;
    next.reserve(out.size() * lv.transversal.size());
    for (const auto& e : out)
      for (const auto& t : lv.transversal) next.push_back(e * t);
    out = std::move(next);
  }
  return out;
}

std::vector<Permutation> StabilizerChain::strong_generators() const {
  std::vector<Permutation> out;
  if (!levels_.empty()) out = levels_[0].gens;
  return out;
}

void StabilizerChain::verify() const {
  for (int i = 0; i < depth(); ++i) {
    const auto& lv = levels_[static_cast<std::size_t>(i)];
    check_internal(lv.orbit_pos[static_cast<std::size_t>(lv.base)] == 0, "verify: base not first");
    for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
      check_internal(lv.transversal[oi].apply(lv.base) == lv.orbit[oi],
                     "verify: transversal image mismatch");
    }
    for (const auto& g : lv.gens) {
      for (int k = 0; k < i; ++k)
        check_internal(g.apply(base_[static_cast<std::size_t>(k)]) ==
                           base_[static_cast<std::size_t>(k)],
                       "verify: generator moves earlier base point");
      for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
        int q = g.apply(lv.orbit[oi]);
        int qpos = lv.orbit_pos[static_cast<std::size_t>(q)];
        check_internal(qpos >= 0, "verify: orbit not closed");
        Permutation schreier =
            lv.transversal[oi] * g * lv.transversal[static_cast<std::size_t>(qpos)].inverse();
        auto [r, lvl] = strip(schreier, i + 1);
        check_internal(lvl == depth() && r.is_identity(), "verify: Schreier condition fails");
      }
    }
  }
}

struct PermGroup::Impl {
  int degree = 1;
  std::vector<Permutation> gens;
  StabilizerChain chain{1};
  BigInt order = 1;
  mutable std::string key;
};

const PermGroup::Impl& PermGroup::self() const {
  check_internal(impl_ != nullptr, "PermGroup used before initialization");
  return *impl_;
}

int PermGroup::degree() const { return self().degree; }
const BigInt& PermGroup::order() const { return self().order; }
const std::vector<Permutation>& PermGroup::generators() const { return self().gens; }
const StabilizerChain& PermGroup::chain() const { return self().chain; }

bool PermGroup::contains(const Permutation& g) const {
  require_input(g.degree() == degree(), "membership test across degrees");
  return chain().contains(g);
}

bool PermGroup::contains_group(const PermGroup& h) const {
  require_input(h.degree() == degree(), "containment test across degrees");
  for (const auto& g : h.generators())
    if (!chain().contains(g)) return false;
  return true;
}

bool PermGroup::same_group_as(const PermGroup& h) const {
  return order() == h.order() && contains_group(h);
}

bool PermGroup::is_normal_in(const PermGroup& g) const {
  require_input(g.degree() == degree(), "normality test across degrees");
  if (!g.contains_group(*this)) return false;
  for (const auto& x : generators())
    for (const auto& c : g.generators())
      if (!chain().contains(x.conjugated_by(c))) return false;
  return true;
}

Permutation PermGroup::random_element(Rng& rng) const { return chain().random_element(rng); }

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  return chain().elements(cap);
}

const std::string& PermGroup::key() const {
  const Impl* im = &self();
  if (im->key.empty()) {
    std::vector<std::string> parts;
    parts.reserve(im->gens.size());
    for (const auto& g : im->gens) {
      std::string s;
      s.reserve(static_cast<std::size_t>(im->degree) * 3);
      for (int v : g.images()) {
        s += std::to_string(v);
        s += ',';
      }
      parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = std::to_string(im->degree) + "|";
    for (auto& p : parts) {
      out += p;
      out += ';';
    }
    im->key = std::move(out);
  }
  return im->key;
}

PermGroup build_group(int degree, const std::vector<Permutation>& gens) {
  require_input(degree >= 1, "group degree must be >= 1");
  auto impl = std::make_shared<PermGroup::Impl>();
  impl->degree = degree;
  impl->chain = StabilizerChain(degree);
  std::vector<Permutation> kept;
  for (const auto& g : gens) {
    require_input(g.degree() == degree, "generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(kept.begin(), kept.end(), g) != kept.end()) continue;
    kept.push_back(g);
  }
  std::vector<Permutation> grew;
  ChainGuard guard(degree, "group assembly");
  for (const auto& g : kept) {
    if (impl->chain.extend_with(g)) {
      guard.step();
      grew.push_back(g);
    }
  }
  const std::size_t cap = static_cast<std::size_t>(degree) * static_cast<std::size_t>(degree);
  impl->gens = (kept.size() <= cap) ? std::move(kept) : std::move(grew);
  check_internal(impl->gens.size() <= cap, "generator list exceeds degree^2");
  impl->order = impl->chain.order();
  PermGroup g;
  g.impl_ = std::move(impl);
  return g;
}

PermGroup trivial_group(int degree) { return build_group(degree, {}); }

GroupBuilder::GroupBuilder(int degree) : chain_(degree), guard_(degree, "group growth") {
  require_input(degree >= 1, "group degree must be >= 1");
}

GroupBuilder::GroupBuilder(const PermGroup& start)
    : chain_(start.chain()),
      seed_gens_(start.generators()),
      guard_(start.degree(), "group growth") {}

bool GroupBuilder::add(const Permutation& g) {
  if (g.is_identity()) return false;
  if (!chain_.extend_with(g)) return false;
  guard_.step();
  kept_.push_back(g);
  return true;
}

PermGroup GroupBuilder::freeze() const {
  std::vector<Permutation> gens = seed_gens_;
  gens.insert(gens.end(), kept_.begin(), kept_.end());
  return build_group(chain_.degree(), gens);
}

}  // namespace residua
