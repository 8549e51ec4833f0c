#include "residua/group_file.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "residua/errors.hpp"
#include "residua/perm.hpp"

namespace residua {
namespace {

std::string strip(std::string line) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  auto a = line.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = line.find_last_not_of(" \t\r");
  return line.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& source, int lineno, const std::string& msg) {
  throw input_error(source + ":" + std::to_string(lineno) + ": " + msg);
}

}  // namespace

GroupFile parse_group_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int degree = 0;
  bool have_degree = false;
  std::vector<Permutation> gens, subs;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos) fail(source, lineno, "expected 'key: value'");
    std::string key = strip(line.substr(0, colon));
    std::string value = strip(line.substr(colon + 1));

    if (key == "degree") {
      if (have_degree) fail(source, lineno, "duplicate degree line");
      try {
        std::size_t used = 0;
        degree = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(source, lineno, "degree is not a number: '" + value + "'");
      }
      if (degree < 1 || degree > 1000)
        fail(source, lineno, "degree must be between 1 and 1000");
      have_degree = true;
      continue;
    }
    if (!have_degree) fail(source, lineno, "degree line must come first");
    if (key != "gen" && key != "sub")
      fail(source, lineno, "unknown directive '" + key + "'");
    try {
      (key == "gen" ? gens : subs).push_back(parse_cycles(value, degree));
    } catch (const input_error& e) {
      fail(source, lineno, e.what());
    }
  }
  if (!have_degree) fail(source, lineno, "missing degree line");

  GroupFile out;
  out.degree = degree;
  out.group = build_group(degree, gens);
  if (!subs.empty()) {
    PermGroup sub = build_group(degree, subs);
    if (!out.group.contains_group(sub))
      throw input_error(source + ": sub lines do not define a subgroup of the group");
    out.subgroup = std::move(sub);
  }
  return out;
}

GroupFile read_group_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open group file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str(), path);
}

}  // namespace residua
