#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "residua/errors.hpp"
#include "residua/formation_expr.hpp"
#include "residua/formations.hpp"
#include "residua/group_file.hpp"
#include "residua/group_ops.hpp"
#include "residua/oracle.hpp"
#include "residua/rng.hpp"
#include "residua/series.hpp"
#include "residua/subnormal.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace residua;

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  long long max_order = 0;
  int jobs = 1;
  std::string formation;
  std::vector<std::string> mod, sub;
  std::string kind = "k";
  long prime = 0;
};

std::string dec(const BigInt& n) { return n.str(); }

GroupFile load(const std::string& path, const Options& o) {
  GroupFile gf = read_group_file(path);
  if (o.max_order > 0 && gf.group.order() > BigInt(o.max_order))
    throw resource_error(path + ": group order " + dec(gf.group.order()) +
                         " exceeds --max-order " + std::to_string(o.max_order));
  return gf;
}

PermGroup group_from_cycles(const GroupFile& gf, const std::vector<std::string>& cycles) {
  std::vector<Permutation> gens;
  gens.reserve(cycles.size());
  for (const auto& c : cycles) gens.push_back(parse_cycles(c, gf.degree));
  PermGroup h = build_group(gf.degree, gens);
  require_input(gf.group.contains_group(h),
                "given permutations do not generate a subgroup of the group");
  return h;
}

PermGroup distinguished_subgroup(const GroupFile& gf, const Options& o, const char* what) {
  if (!o.sub.empty()) return group_from_cycles(gf, o.sub);
  if (gf.subgroup) return *gf.subgroup;
  throw input_error(std::string(what) + ": no subgroup given (use sub: lines or --sub)");
}

ChiefFunction plain_formation(const FormationExpr& fx, const char* what) {
  if (fx.is_sylow())
    throw capability_error(std::string(what) +
                           " needs a chief factor function, not a sylow class");
  return fx.fn;
}

ordered_json factor_json(const std::vector<PermGroup>& series) {
  ordered_json factors = ordered_json::array();
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    ordered_json f;
    f["order"] = dec(series[i].order() / series[i + 1].order());
    f["abelian"] = series[i + 1].contains_group(derived_subgroup(series[i]));
    factors.push_back(std::move(f));
  }
  return factors;
}

std::string factor_text(const std::vector<PermGroup>& series) {
  if (series.size() < 2) return "none";
  std::string out;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    if (i) out += ", ";
    out += dec(series[i].order() / series[i + 1].order());
    out += series[i + 1].contains_group(derived_subgroup(series[i])) ? " (abelian)"
                                                                     : " (nonabelian)";
  }
  return out;
}

ordered_json group_report(const PermGroup& r) {
  ordered_json j;
  j["order"] = dec(r.order());
  ordered_json gens = ordered_json::array();
  for (const auto& p : r.generators()) gens.push_back(p.to_cycle_string());
  j["generators"] = std::move(gens);
  return j;
}

std::string generators_text(const PermGroup& r) {
  if (r.generators().empty()) return "()";
  std::string out;
  for (const auto& p : r.generators()) {
    if (!out.empty()) out += ", ";
    out += p.to_cycle_string();
  }
  return out;
}

// Commands return the process exit code and append their report to out.

int run_info(const std::string& path, const Options& o, std::string& out) {
  GroupFile gf = load(path, o);
  Rng rng(o.seed ^ fnv1a(gf.group.key()));
  auto series = chief_series(gf.group, rng);
  if (o.json) {
    ordered_json j;
    j["file"] = path;
    j["order"] = dec(gf.group.order());
    j["primes"] = primes_of(gf.group);
    j["chief_factors"] = factor_json(series);
    out = j.dump() + "\n";
  } else {
    std::string primes;
    for (long p : primes_of(gf.group)) primes += (primes.empty() ? "" : ", ") + std::to_string(p);
    out = path + ": order " + dec(gf.group.order()) + ", primes {" + primes + "}\n" +
          "  chief factors (top down): " + factor_text(series) + "\n";
  }
  return 0;
}

int run_chief_series(const std::string& path, const Options& o, std::string& out) {
  GroupFile gf = load(path, o);
  Rng rng(o.seed ^ fnv1a(gf.group.key()));
  auto series = chief_series(gf.group, rng);
  if (o.json) {
    ordered_json j;
    j["file"] = path;
    ordered_json orders = ordered_json::array();
    for (const auto& s : series) orders.push_back(dec(s.order()));
    j["orders"] = std::move(orders);
    j["factors"] = factor_json(series);
    out = j.dump() + "\n";
  } else {
    std::string orders;
    for (const auto& s : series) orders += (orders.empty() ? "" : " > ") + dec(s.order());
    out = path + ": " + orders + "\n  factors (top down): " + factor_text(series) + "\n";
  }
  return 0;
}

int run_residual(const std::string& path, const Options& o, std::string& out,
                 bool oracle, bool with_file) {
  GroupFile gf = load(path, o);
  FormationExpr fx = parse_formation(o.formation);
  PermGroup r;
  if (oracle)
    r = brute_residual(gf.group, plain_formation(fx, "oracle residual"));
  else
    r = fx.is_sylow() ? fx.sylow->residual(gf.group) : residual(gf.group, fx.fn);
  if (o.json) {
    ordered_json j;
    if (with_file) j["file"] = path;
    ordered_json rep = group_report(r);
    j["order"] = rep["order"];
    j["generators"] = rep["generators"];
    out = j.dump() + "\n";
  } else {
    out = path + ": residual(" + fx.name() + ") has order " + dec(r.order()) +
          "\n  generators: " + generators_text(r) + "\n";
  }
  return 0;
}

int run_member(const std::string& path, const Options& o, std::string& out, bool oracle) {
  GroupFile gf = load(path, o);
  FormationExpr fx = parse_formation(o.formation);
  bool verdict;
  if (fx.is_sylow()) {
    if (oracle) throw capability_error("oracle member needs a chief factor function");
    if (o.mod.empty()) {
      verdict = fx.sylow->member(gf.group);
    } else {
      PermGroup k = group_from_cycles(gf, o.mod);
      require_input(k.is_normal_in(gf.group), "--mod subgroup is not normal");
      verdict = fx.sylow->member(coset_action_image(gf.group, k).image());
    }
  } else {
    PermGroup k = o.mod.empty() ? trivial_group(gf.degree) : group_from_cycles(gf, o.mod);
    require_input(k.is_normal_in(gf.group), "--mod subgroup is not normal");
    verdict = oracle ? brute_member(gf.group, k, fx.fn) : member_mod(gf.group, k, fx.fn);
  }
  if (o.json) {
    ordered_json j;
    j["file"] = path;
    j["formation"] = fx.name();
    j["member"] = verdict;
    out = j.dump() + "\n";
  } else {
    out = std::string(verdict ? "true" : "false") + "\n";
  }
  return verdict ? 0 : 1;
}

int run_subnormal(const std::string& path, const Options& o, std::string& out, bool oracle) {
  GroupFile gf = load(path, o);
  FormationExpr fx = parse_formation(o.formation);
  ChiefFunction f = plain_formation(fx, "subnormal");
  PermGroup h = distinguished_subgroup(gf, o, "subnormal");
  require_input(o.kind == "k" || o.kind == "f", "--kind must be 'k' or 'f'");

  bool verdict;
  std::vector<std::string> chain;
  if (oracle) {
    verdict = brute_kf_subnormal(gf.group, h, f,
                                 o.kind == "k" ? SubnormalKind::k : SubnormalKind::plain);
  } else {
    DescentTrace tr = o.kind == "k" ? is_k_f_subnormal(gf.group, h, f)
                                    : is_f_subnormal(gf.group, h, f);
    verdict = tr.verdict;
    for (const auto& c : tr.chain) chain.push_back(dec(c.order()));
  }
  if (o.json) {
    ordered_json j;
    j["file"] = path;
    j["formation"] = f.name();
    j["kind"] = o.kind;
    j["subnormal"] = verdict;
    if (!oracle) j["chain"] = chain;
    out = j.dump() + "\n";
  } else {
    out = std::string(verdict ? "true" : "false");
    if (!oracle) {
      out += ", chain orders [";
      for (std::size_t i = 0; i < chain.size(); ++i) out += (i ? ", " : "") + chain[i];
      out += "]";
    }
    out += "\n";
  }
  return verdict ? 0 : 1;
}

int run_decompose(const std::string& path, const Options& o, std::string& out) {
  GroupFile gf = load(path, o);
  PermGroup n = o.sub.empty() && !gf.subgroup ? gf.group
                                              : distinguished_subgroup(gf, o, "decompose");
  require_input(n.is_normal_in(gf.group), "decompose: subgroup is not normal");
  Rng rng(o.seed ^ fnv1a(gf.group.key() + "|" + n.key()));
  Decomposition d = o.prime ? p_decomposition(gf.group, n, o.prime, rng)
                            : nonabelian_decomposition(gf.group, n, rng);
  if (o.json) {
    ordered_json j;
    j["file"] = path;
    j["layer"] = o.prime ? std::to_string(o.prime) : std::string("nonabelian");
    j["residual_order"] = dec(d.residual.order());
    ordered_json mins = ordered_json::array(), facs = ordered_json::array();
    for (const auto& m : d.minimals) {
      mins.push_back(dec(m.order()));
      facs.push_back(dec(m.order() / d.residual.order()));
    }
    j["minimal_orders"] = std::move(mins);
    j["factor_orders"] = std::move(facs);
    out = j.dump() + "\n";
  } else {
    out = path + ": layer residual order " + dec(d.residual.order()) + "; " +
          std::to_string(d.minimals.size()) + " minimal factor(s)";
    if (!d.minimals.empty()) {
      out += " of order ";
      for (std::size_t i = 0; i < d.minimals.size(); ++i)
        out += (i ? ", " : "") + dec(d.minimals[i].order() / d.residual.order());
    }
    out += "\n";
  }
  return 0;
}

const std::vector<std::string>& fixture_atoms() {
  static const std::vector<std::string> atoms{
      "nilpotent",      "supersoluble", "wsupersoluble", "ssupersoluble",
      "smsupersoluble", "na",           "shu",           "quasinilpotent",
      "pgroups(2)",     "pgroups(3)"};
  return atoms;
}

// Chiefness of a series factor inside the complete lattice: both ends are
// members and nothing sits strictly between them.
bool lattice_chief(const NormalLattice& lat, const PermGroup& top, const PermGroup& bot) {
  int t = lat.index_of(top), b = lat.index_of(bot);
  if (t < 0 || b < 0) return false;
  for (std::size_t m = 0; m < lat.members.size(); ++m) {
    int mi = static_cast<int>(m);
    if (mi == t || mi == b) continue;
    if (lat.leq[b][mi] && lat.leq[mi][t]) return false;
  }
  return true;
}

int run_regen(const std::string& dir, const Options& o) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".grp") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  require_input(!files.empty(), "regen-fixtures: no .grp files in " + dir);

  for (const auto& path : files) {
    GroupFile gf = load(path.string(), o);
    const PermGroup& g = gf.group;
    auto lat = normal_lattice(g);

    Rng rng(fnv1a(g.key()));
    auto series = chief_series(g, rng);
    std::vector<std::string> factor_orders;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
      check_internal(lattice_chief(*lat, series[i], series[i + 1]),
                     "fixture series factor is not chief per the lattice");
      factor_orders.push_back(dec(series[i].order() / series[i + 1].order()));
    }
    std::sort(factor_orders.begin(), factor_orders.end(),
              [](const std::string& a, const std::string& b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
              });

    ordered_json j;
    j["file"] = path.filename().string();
    j["order"] = dec(g.order());
    j["primes"] = primes_of(g);
    j["chief_factor_orders"] = factor_orders;
    ordered_json res;
    for (const auto& atom : fixture_atoms())
      res[atom] = dec(brute_residual(g, parse_formation(atom).fn).order());
    j["residual_orders"] = std::move(res);

    fs::path sidecar = path;
    sidecar.replace_extension(".expected.json");
    std::ofstream outf(sidecar, std::ios::binary | std::ios::trunc);
    require_input(static_cast<bool>(outf), "cannot write " + sidecar.string());
    outf << j.dump(2) << "\n";
    std::printf("wrote %s\n", sidecar.string().c_str());
  }
  return 0;
}

// Runs fn over the files, optionally in parallel, printing reports in input
// order. The exit code is the maximum over the per-file codes.
template <typename Fn>
int over_files(const std::vector<std::string>& files, const Options& o, Fn fn) {
  std::vector<std::string> outs(files.size());
  std::vector<int> codes(files.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      try {
        codes[i] = fn(files[i], outs[i]);
      } catch (const input_error& e) {
        outs[i] = "";
        codes[i] = 2;
        std::fprintf(stderr, "error: %s\n", e.what());
      } catch (const capability_error& e) {
        outs[i] = "";
        codes[i] = 3;
        std::fprintf(stderr, "error: %s\n", e.what());
      } catch (const resource_error& e) {
        outs[i] = "";
        codes[i] = 4;
        std::fprintf(stderr, "error: %s\n", e.what());
      }
    }
  };
  int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(files.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& s : outs) std::fputs(s.c_str(), stdout);
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formation residuals and subnormality in finite permutation groups"};
  app.require_subcommand(1);

  Options o;
  std::vector<std::string> files;
  std::string regen_dir;

  auto add_common = [&](CLI::App* c, bool multi) {
    c->add_flag("--json", o.json, "machine readable output");
    c->add_option("--seed", o.seed, "seed for randomized series sampling");
    c->add_option("--max-order", o.max_order, "refuse groups larger than this");
    if (multi) {
      c->add_option("--jobs", o.jobs, "parallelize over input files")
          ->check(CLI::PositiveNumber);
      c->add_option("files", files, "group files")->required()->expected(-1);
    } else {
      c->add_option("file", files, "group file")->required()->expected(1);
    }
    return c;
  };
  auto add_formation = [&](CLI::App* c) {
    c->add_option("--formation", o.formation, "formation expression")->required();
    return c;
  };

  auto* info = add_common(app.add_subcommand("info", "order, primes, chief factors"), true);
  auto* series = add_common(
      app.add_subcommand("chief-series", "descending chief series"), true);
  auto* resid = add_formation(add_common(
      app.add_subcommand("residual", "smallest normal subgroup with quotient in the class"),
      true));
  auto* memb = add_formation(add_common(
      app.add_subcommand("member", "does the group (or quotient) lie in the class"),
      false));
  memb->add_option("--mod", o.mod, "normal subgroup generators; tests the quotient");
  auto* subn = add_formation(add_common(
      app.add_subcommand("subnormal", "F-subnormality of the distinguished subgroup"),
      false));
  subn->add_option("--kind", o.kind, "k (with normality steps) or f (joins only)");
  subn->add_option("--sub", o.sub, "subgroup generators, overriding sub: lines");
  auto* deco = add_common(
      app.add_subcommand("decompose", "one chief layer over a normal subgroup"), false);
  deco->add_option("--prime", o.prime, "p-layer instead of the nonabelian head");
  deco->add_option("--sub", o.sub, "normal subgroup generators (default: whole group)");

  auto* oracle = app.add_subcommand("oracle", "brute-force reference computations");
  oracle->require_subcommand(1);
  auto* oresid = add_formation(
      add_common(oracle->add_subcommand("residual", "lattice-scan residual"), true));
  auto* omemb = add_formation(add_common(
      oracle->add_subcommand("member", "definition-level membership"), false));
  omemb->add_option("--mod", o.mod, "normal subgroup generators; tests the quotient");
  auto* osubn = add_formation(add_common(
      oracle->add_subcommand("subnormal", "exhaustive chain search"), false));
  osubn->add_option("--kind", o.kind, "k or f");
  osubn->add_option("--sub", o.sub, "subgroup generators, overriding sub: lines");

  auto* regen = app.add_subcommand("regen-fixtures", "rewrite corpus sidecar files");
  regen->add_option("dir", regen_dir, "corpus directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (info->parsed())
      return over_files(files, o, [&](const std::string& p, std::string& s) {
        return run_info(p, o, s);
      });
    if (series->parsed())
      return over_files(files, o, [&](const std::string& p, std::string& s) {
        return run_chief_series(p, o, s);
      });
    if (resid->parsed())
      return over_files(files, o, [&](const std::string& p, std::string& s) {
        return run_residual(p, o, s, false, files.size() > 1);
      });
    if (memb->parsed()) {
      std::string s;
      int code = run_member(files[0], o, s, false);
      std::fputs(s.c_str(), stdout);
      return code;
    }
    if (subn->parsed()) {
      std::string s;
      int code = run_subnormal(files[0], o, s, false);
      std::fputs(s.c_str(), stdout);
      return code;
    }
    if (deco->parsed()) {
      std::string s;
      int code = run_decompose(files[0], o, s);
      std::fputs(s.c_str(), stdout);
      return code;
    }
    if (oresid->parsed())
      return over_files(files, o, [&](const std::string& p, std::string& s) {
        return run_residual(p, o, s, true, files.size() > 1);
      });
    if (omemb->parsed()) {
      std::string s;
      int code = run_member(files[0], o, s, true);
      std::fputs(s.c_str(), stdout);
      return code;
    }
    if (osubn->parsed()) {
      std::string s;
      int code = run_subnormal(files[0], o, s, true);
      std::fputs(s.c_str(), stdout);
      return code;
    }
    if (regen->parsed()) return run_regen(regen_dir, o);
  } catch (const input_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const capability_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const resource_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 5;
  }
  return 2;
}
