#include "residua/chain_guard.hpp"

namespace residua {

namespace {
std::atomic<long> g_violations{0};
std::atomic<int> g_max_steps{0};
}  // namespace

long ChainGuard::violations() { return g_violations.load(); }

int ChainGuard::max_steps_seen() { return g_max_steps.load(); }

void ChainGuard::reset_stats() {
  g_violations.store(0);
  g_max_steps.store(0);
}

void ChainGuard::note_steps(int steps) {
  int prev = g_max_steps.load();
  while (steps > prev && !g_max_steps.compare_exchange_weak(prev, steps)) {
  }
}

void ChainGuard::note_violation() { ++g_violations; }

}  // namespace residua
