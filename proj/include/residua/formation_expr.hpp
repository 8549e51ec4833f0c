#pragma once

#include <memory>
#include <string>

#include "residua/chief_function.hpp"
#include "residua/subnormal.hpp"

namespace residua {

// Result of parsing a formation expression. Sylow subnormality classes are
// not chief factor functions, so they only appear at the top level and are
// carried separately.
struct FormationExpr {
  ChiefFunction fn;
  std::shared_ptr<const SylowSubnormClass> sylow;

  bool is_sylow() const { return sylow != nullptr; }
  const std::string& name() const { return is_sylow() ? sylow->name() : fn.name(); }
};

// Grammar: expr := NAME | NAME(p) | meet(expr,expr) | join(expr,expr)
//                | not(expr) | quasi(expr)
// plus top-level sylw(expr, p1 p2 ...) / sylwk(expr, p1 p2 ...).
// Whitespace-insensitive; parse errors report byte offsets.
FormationExpr parse_formation(const std::string& text);

}  // namespace residua
