#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "residua/errors.hpp"
#include "residua/section.hpp"

namespace residua {

// Predicate on chief factors H/K of an ambient group, the unit from which
// formations are defined: a group lies in the class when the predicate
// holds on every chief factor. Evaluations are memoized per section.
// Locally defined formations additionally carry the residual functions
// G -> G^{f(p)} of their local definition; Baer-local ones also the f(0)
// slot for nonabelian factors.
class ChiefFunction {
 public:
  using Fn = std::function<bool(const NormalSection&)>;
  using LocalResidual = std::function<PermGroup(const PermGroup&, long)>;
  using GroupResidual = std::function<PermGroup(const PermGroup&)>;

  ChiefFunction() = default;
  ChiefFunction(std::string name, bool hereditary, Fn fn) : impl_(std::make_shared<Impl>()) {
    impl_->name = std::move(name);
    impl_->hereditary = hereditary;
    impl_->fn = std::move(fn);
  }

  const std::string& name() const { return impl_->name; }
  bool hereditary() const { return impl_->hereditary; }
  bool valid() const { return impl_ != nullptr; }

  // Local definition data; attach only during construction, before sharing.
  void attach_local(LocalResidual fns) { impl_->local = std::move(fns); }
  void attach_baer0(GroupResidual f0) { impl_->baer0 = std::move(f0); }
  bool has_local() const { return static_cast<bool>(impl_->local); }
  bool has_baer0() const { return static_cast<bool>(impl_->baer0); }

  // G^{f(p)} of the local definition.
  PermGroup local_residual(const PermGroup& g, long p) const {
    if (!has_local())
      throw capability_error("formation '" + name() + "' has no local definition");
    return impl_->local(g, p);
  }
  PermGroup baer0_residual(const PermGroup& g) const {
    if (!has_baer0())
      throw capability_error("formation '" + name() + "' has no f(0) slot");
    return impl_->baer0(g);
  }

  bool operator()(const NormalSection& sec) const {
    std::string key =
        sec.ambient().key() + "|" + sec.top().key() + "|" + sec.bottom().key();
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = impl_->memo.find(key);
      if (it != impl_->memo.end()) return it->second;
    }
    bool value = impl_->fn(sec);
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->memo.emplace(std::move(key), value);
    return value;
  }

 private:
  struct Impl {
    std::string name;
    bool hereditary = false;
    Fn fn;
    LocalResidual local;
    GroupResidual baer0;
    std::unordered_map<std::string, bool> memo;
    std::mutex mu;
  };
  std::shared_ptr<Impl> impl_;
};

}  // namespace residua
