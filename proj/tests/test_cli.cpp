#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "residua/group_file.hpp"
#include "residua/perm.hpp"
#include "residua/perm_group.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(RESIDUA_BIN) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) {
  return std::string(RESIDUA_CORPUS_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("cli info and chief series") {
  auto r = run("info " + corpus("s4.grp"));
  CHECK(r.code == 0);
  CHECK(r.out.find("order 24") != std::string::npos);
  CHECK(r.out.find("2 (abelian), 3 (abelian), 4 (abelian)") != std::string::npos);

  auto t = run("info " + corpus("c1.grp"));
  CHECK(t.code == 0);
  CHECK(t.out.find("order 1") != std::string::npos);
  CHECK(t.out.find("none") != std::string::npos);

  auto s = run("chief-series --json " + corpus("sl23.grp"));
  CHECK(s.code == 0);
  auto j = json::parse(s.out);
  CHECK(j["orders"] == json({"24", "8", "2", "1"}));
}

TEST_CASE("cli residual json round-trips") {
  auto r = run("residual --json --formation supersoluble " + corpus("s4.grp"));
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["order"] == "4");

  residua::GroupFile gf = residua::read_group_file(corpus("s4.grp"));
  std::vector<residua::Permutation> gens;
  for (const auto& c : j["generators"])
    gens.push_back(residua::parse_cycles(c.get<std::string>(), gf.degree));
  auto back = residua::build_group(gf.degree, gens);
  CHECK(back.order() == 4);
  CHECK(gf.group.contains_group(back));
}

TEST_CASE("cli exit codes") {
  CHECK(run("member --formation supersoluble " + corpus("s3.grp")).code == 0);
  CHECK(run("member --formation nilpotent " + corpus("s4.grp")).code == 1);
  CHECK(run("member --formation bogus " + corpus("s4.grp")).code == 2);
  CHECK(run("member --formation 'quasi(pgroups(2))' " + corpus("s4.grp")).code == 3);
  CHECK(run("member --formation nilpotent --max-order 10 " + corpus("s4.grp")).code == 4);
  CHECK(run("residual --formation 'meet(sylw(nilpotent,2),na)' " + corpus("s4.grp")).code ==
        3);

  auto bad = run("info /nonexistent.grp", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("cannot open") != std::string::npos);

  fs::path tmp = fs::temp_directory_path() / "residua_bad_cycles.grp";
  std::ofstream(tmp) << "degree: 4\ngen: (1 2)(2 3)\n";
  auto overlap = run("info " + tmp.string(), true);
  CHECK(overlap.code == 2);
  CHECK(overlap.out.find(":2:") != std::string::npos);
}

TEST_CASE("cli membership of quotients") {
  std::string mod = " --mod '(1 2)(3 4)' --mod '(1 3)(2 4)' ";
  CHECK(run("member --formation supersoluble" + mod + corpus("s4.grp")).code == 0);
  CHECK(run("member --formation nilpotent" + mod + corpus("s4.grp")).code == 1);
  CHECK(run("member --formation nilpotent --mod '(1 2)' " + corpus("s4.grp")).code == 2);
}

TEST_CASE("cli subnormal descent") {
  auto r = run("subnormal --formation supersoluble " + corpus("s4.grp"));
  CHECK(r.code == 0);
  CHECK(r.out.find("true, chain orders [24, 8, 2]") != std::string::npos);

  CHECK(run("subnormal --formation nilpotent " + corpus("s4.grp")).code == 1);
  CHECK(run("subnormal --formation nilpotent --kind f --sub '(1 2 3)' " +
            corpus("s4.grp")).code == 1);
  CHECK(run("subnormal --formation 'pgroups(2)' " + corpus("s4.grp")).code == 3);
  CHECK(run("subnormal --formation supersoluble " + corpus("s3.grp")).code == 2);

  CHECK(run("oracle subnormal --formation supersoluble " + corpus("s4.grp")).code == 0);
  CHECK(run("oracle subnormal --formation nilpotent " + corpus("s4.grp")).code == 1);
}

TEST_CASE("cli oracle mirrors the fast path") {
  for (const std::string f : {"nilpotent", "supersoluble", "quasinilpotent"}) {
    auto fast = run("residual --json --formation " + f + " " + corpus("sl23.grp"));
    auto slow = run("oracle residual --json --formation " + f + " " + corpus("sl23.grp"));
    REQUIRE(fast.code == 0);
    REQUIRE(slow.code == 0);
    CHECK(json::parse(fast.out)["order"] == json::parse(slow.out)["order"]);
  }
  CHECK(run("oracle member --formation supersoluble " + corpus("a4.grp")).code == 1);
  CHECK(run("oracle member --formation na " + corpus("a4.grp")).code == 0);
}

TEST_CASE("cli output is deterministic and jobs only reorder work") {
  std::string files = corpus("s3.grp") + " " + corpus("s4.grp") + " " + corpus("s5.grp");
  auto a = run("chief-series --json --seed 7 " + files);
  auto b = run("chief-series --json --seed 7 " + files);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  auto one = run("residual --json --formation supersoluble " + files);
  auto par = run("residual --json --formation supersoluble --jobs 2 " + files);
  CHECK(one.code == 0);
  CHECK(one.out == par.out);
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 3);
  CHECK(one.out.find("\"file\"") != std::string::npos);
}

TEST_CASE("cli regen-fixtures reproduces the committed sidecars") {
  fs::path tmp = fs::temp_directory_path() / "residua_regen";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  int copied = 0;
  for (const auto& e : fs::directory_iterator(RESIDUA_CORPUS_DIR))
    if (e.path().extension() == ".grp") {
      fs::copy_file(e.path(), tmp / e.path().filename());
      ++copied;
    }
  REQUIRE(copied > 20);

  auto r = run("regen-fixtures " + tmp.string());
  REQUIRE(r.code == 0);

  int compared = 0;
  for (const auto& e : fs::directory_iterator(RESIDUA_CORPUS_DIR))
    if (e.path().string().ends_with(".expected.json")) {
      CAPTURE(e.path().filename().string());
      CHECK(slurp(e.path()) == slurp(tmp / e.path().filename()));
      ++compared;
    }
  CHECK(compared == copied);
  fs::remove_all(tmp);
}
