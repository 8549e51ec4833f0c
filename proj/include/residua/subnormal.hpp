#pragma once

#include <string>
#include <vector>

#include "residua/chief_function.hpp"
#include "residua/oracle.hpp"
#include "residua/perm_group.hpp"

namespace residua {

// Record of one subnormality descent. The chain starts at G and strictly
// decreases; on failure the terminal group M satisfies H^M = M and
// H M^F = M, which is what the Sylow residual construction consumes.
struct DescentTrace {
  std::vector<PermGroup> chain;
  bool verdict = false;
  PermGroup terminal;
};

// K-F-subnormality: descend through H G^F, falling back to the normal
// closure of H when the join stalls. Requires a hereditary chief function.
DescentTrace is_k_f_subnormal(const PermGroup& g, const PermGroup& h,
                              const ChiefFunction& f);

// F-subnormality: descent through H G^F only.
DescentTrace is_f_subnormal(const PermGroup& g, const PermGroup& h,
                            const ChiefFunction& f);

// Classical subnormality via the descending normal-closure series.
bool is_subnormal(const PermGroup& g, const PermGroup& h);

// Formation of groups whose Sylow p-subgroups, p in pi, are F-subnormal
// (plain) or K-F-subnormal (k). Membership tests one Sylow subgroup per
// prime; the residual joins normal closures of O^p of the failed descent
// terminals, then re-checks the quotient and iterates if needed.
class SylowSubnormClass {
 public:
  SylowSubnormClass(ChiefFunction f, std::vector<long> pi, SubnormalKind kind);

  const std::string& name() const { return name_; }
  const ChiefFunction& base() const { return f_; }
  const std::vector<long>& primes() const { return pi_; }
  SubnormalKind kind() const { return kind_; }

  bool member(const PermGroup& g) const;
  PermGroup residual(const PermGroup& g) const;

  // Times the one-pass residual left a quotient outside the class and a
  // further pass ran.
  static long second_passes();
  static void reset_second_passes();

 private:
  DescentTrace descend(const PermGroup& g, const PermGroup& sylow) const;
  PermGroup one_pass(const PermGroup& g) const;

  ChiefFunction f_;
  std::vector<long> pi_;
  SubnormalKind kind_;
  std::string name_;
};

}  // namespace residua
