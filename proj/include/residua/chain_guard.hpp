#pragma once

#include <atomic>
#include <string>

#include "residua/errors.hpp"

namespace residua {

// Every strictly increasing or decreasing chain of subgroups of a degree-n
// group has at most max(1, 2n-3) strict inclusions. Loops that walk such
// chains step() once per strict inclusion; exceeding the bound is a bug.
class ChainGuard {
 public:
  ChainGuard(int degree, std::string where)
      : bound_(degree >= 2 ? 2 * degree - 3 : 1), where_(std::move(where)) {}

  void step() {
    ++steps_;
    note_steps(steps_);
    if (steps_ > bound_) {
      note_violation();
      throw internal_error("subgroup chain bound exceeded in " + where_ + ": " +
                           std::to_string(steps_) + " > " + std::to_string(bound_));
    }
  }

  int steps() const { return steps_; }
  int bound() const { return bound_; }

  // Process-wide statistics consumed by the acceptance suite.
  static long violations();
  static int max_steps_seen();
  static void reset_stats();

 private:
  static void note_steps(int steps);
  static void note_violation();

  int bound_;
  int steps_ = 0;
  std::string where_;
};

}  // namespace residua
