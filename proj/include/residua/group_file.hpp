#pragma once

#include <optional>
#include <string>

#include "residua/perm_group.hpp"

namespace residua {

// Parsed group file: `degree: <n>` first, then `gen:` lines building the
// group and optional `sub:` lines building a distinguished subgroup.
// `#` starts a comment, blank lines are ignored.
struct GroupFile {
  int degree = 0;
  PermGroup group;
  std::optional<PermGroup> subgroup;
};

// Errors carry "<source>:<line>".
GroupFile parse_group_text(const std::string& text, const std::string& source);
GroupFile read_group_file(const std::string& path);

}  // namespace residua
