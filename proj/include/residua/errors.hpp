#pragma once

#include <stdexcept>
#include <string>

namespace residua {

// Error taxonomy mirrors the CLI exit codes: input 2, capability 3, resource 4.
// internal_error signals a broken invariant and has no stable exit mapping.

struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct capability_error : std::runtime_error {
  explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void require_input(bool ok, const std::string& msg) {
  if (!ok) throw input_error(msg);
}

inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) throw internal_error(msg);
}

}  // namespace residua
