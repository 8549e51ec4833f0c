// Release gate: one pass/fail line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "residua/bigint.hpp"
#include "residua/chain_guard.hpp"
#include "residua/errors.hpp"
#include "residua/formations.hpp"
#include "residua/fpmodule.hpp"
#include "residua/group_file.hpp"
#include "residua/group_ops.hpp"
#include "residua/oracle.hpp"
#include "residua/perm.hpp"
#include "residua/perm_group.hpp"
#include "residua/rng.hpp"
#include "residua/series.hpp"
#include "residua/subnormal.hpp"

namespace fs = std::filesystem;
using namespace residua;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CorpusEntry {
  std::string name;
  GroupFile file;
};

std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : fs::directory_iterator(RESIDUA_CORPUS_DIR))
    if (e.path().extension() == ".grp")
      out.push_back({e.path().stem().string(), read_group_file(e.path().string())});
  std::sort(out.begin(), out.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  if (out.empty()) throw input_error("corpus directory is empty");
  return out;
}

const PermGroup& corpus_group(const std::vector<CorpusEntry>& c, const std::string& name) {
  for (const auto& e : c)
    if (e.name == name) return e.file.group;
  throw input_error("corpus group missing: " + name);
}

PermGroup from_cycles(int degree, const std::vector<std::string>& gens) {
  std::vector<Permutation> ps;
  for (const auto& s : gens) ps.push_back(parse_cycles(s, degree));
  return build_group(degree, ps);
}

std::vector<ChiefFunction> atom_list() {
  std::vector<ChiefFunction> fs;
  for (const auto& n : builtin_names())
    if (n == "pgroups" || n == "noncentral") {
      fs.push_back(builtin(n, {2}));
      fs.push_back(builtin(n, {3}));
    } else {
      fs.push_back(builtin(n));
    }
  return fs;
}

std::vector<ChiefFunction> hereditary_atoms() {
  std::vector<ChiefFunction> fs;
  for (const auto& n : builtin_names()) {
    if (n == "pgroups" || n == "noncentral") continue;
    auto f = builtin(n);
    if (f.hereditary()) fs.push_back(f);
  }
  return fs;
}

// ---- criterion bodies, each returns a detail string or throws ----

std::string crit_fixed_values(const std::vector<CorpusEntry>& corpus) {
  auto ss = builtin("supersoluble");
  auto nil = builtin("nilpotent");
  auto qn = builtin("quasinilpotent");

  struct Item {
    const char* label;
    const PermGroup* g;
    const ChiefFunction* f;
    PermGroup expect;
  };
  const auto& s4 = corpus_group(corpus, "s4");
  const auto& s5 = corpus_group(corpus, "s5");
  const auto& a5 = corpus_group(corpus, "a5");
  const auto& s3 = corpus_group(corpus, "s3");
  const auto& sl = corpus_group(corpus, "sl23");
  PermGroup v4 = from_cycles(4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  PermGroup a4 = from_cycles(4, {"(1 2 3)", "(2 3 4)"});
  PermGroup a5g = from_cycles(5, {"(1 2 3)", "(1 2 3 4 5)"});
  Rng sylow_rng(1);
  PermGroup q8 = sylow_subgroup(sl, 2, sylow_rng);  // normal, hence the unique Q8
  check_internal(q8.order() == 8 && q8.is_normal_in(sl), "SL(2,3) Sylow 2 sanity");
  std::vector<Item> items = {
      {"S4^supersoluble", &s4, &ss, v4},
      {"S4^nilpotent", &s4, &nil, a4},
      {"SL(2,3)^supersoluble", &sl, &ss, q8},
      {"S5^quasinilpotent", &s5, &qn, a5g},
      {"A5^supersoluble", &a5, &ss, a5},
      {"S3^supersoluble", &s3, &ss, trivial_group(3)},
  };

  double worst = 0;
  for (const auto& it : items) {
    auto t0 = Clock::now();
    PermGroup r = residual(*it.g, *it.f);
    double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (!(r.order() == it.expect.order() && r.same_group_as(it.expect)))
      throw internal_error(std::string(it.label) + ": wrong residual, order " +
                           r.order().str());
    if (dt >= 1.0)
      throw resource_error(std::string(it.label) + ": took " + std::to_string(dt) + "s");
  }
  std::ostringstream d;
  d << items.size() << " fixed residuals exact, slowest " << std::fixed
    << std::setprecision(3) << worst << "s";
  return d.str();
}

std::string crit_differential(const std::vector<CorpusEntry>& corpus) {
  auto atoms = atom_list();
  auto t0 = Clock::now();
  long checked = 0;
  for (const auto& e : corpus)
    for (const auto& f : atoms) {
      PermGroup fast = residual(e.file.group, f);
      PermGroup slow = brute_residual(e.file.group, f);
      bool same = fast.order() == slow.order();
      for (const auto& x : fast.generators()) same = same && slow.contains(x);
      for (const auto& x : slow.generators()) same = same && fast.contains(x);
      if (!same)
        throw internal_error(e.name + " x " + f.name() + ": fast " + fast.order().str() +
                             " vs oracle " + slow.order().str());
      ++checked;
    }
  double dt = seconds_since(t0);
  if (dt >= 300) throw resource_error("differential suite took " + std::to_string(dt) + "s");
  std::ostringstream d;
  d << checked << " group x formation residuals match the oracle in " << std::fixed
    << std::setprecision(1) << dt << "s";
  return d.str();
}

std::string crit_member_mod(const std::vector<CorpusEntry>& corpus) {
  auto atoms = atom_list();
  auto t0 = Clock::now();
  long checked = 0;
  for (const auto& e : corpus) {
    auto lat = normal_lattice(e.file.group);
    if (lat->maybe_partial) throw internal_error(e.name + ": partial lattice");
    for (const auto& f : atoms) {
      PermGroup r = residual(e.file.group, f);
      for (const auto& k : lat->members) {
        bool quotient_in = member_mod(e.file.group, k, f);
        bool below = k.contains_group(r);
        if (quotient_in != below)
          throw internal_error(e.name + " x " + f.name() + " mod |K|=" + k.order().str() +
                               ": member " + (quotient_in ? "true" : "false") +
                               " but residual below is " + (below ? "true" : "false"));
        ++checked;
      }
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 300) throw resource_error("member_mod sweep took " + std::to_string(dt) + "s");
  std::ostringstream d;
  d << checked << " quotient memberships agree with residual containment in " << std::fixed
    << std::setprecision(1) << dt << "s";
  return d.str();
}

std::string crit_meet_identity(const std::vector<CorpusEntry>& corpus) {
  auto atoms = atom_list();
  long checked = 0;
  for (const auto& e : corpus)
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i; j < atoms.size(); ++j) {
        PermGroup lhs = residual(e.file.group, meet(atoms[i], atoms[j]));
        PermGroup rhs =
            join(residual(e.file.group, atoms[i]), residual(e.file.group, atoms[j]));
        if (!(lhs.order() == rhs.order() && lhs.same_group_as(rhs)))
          throw internal_error(e.name + ": meet(" + atoms[i].name() + "," +
                               atoms[j].name() + ") residual " + lhs.order().str() +
                               " != join of residuals " + rhs.order().str());
        ++checked;
      }
  return std::to_string(checked) + " meet residuals equal the join of the residuals";
}

std::string crit_subnormal(const std::vector<CorpusEntry>& corpus) {
  auto nil = builtin("nilpotent");
  auto heredits = hereditary_atoms();
  auto t0 = Clock::now();
  long classical = 0, oracle = 0;
  for (const auto& e : corpus) {
    if (e.file.group.order() > 200) continue;
    auto subs = all_subgroups(e.file.group);
    for (const auto& h : subs) {
      bool fast = is_k_f_subnormal(e.file.group, h, nil).verdict;
      if (fast != is_subnormal(e.file.group, h))
        throw internal_error(e.name + " |H|=" + h.order().str() +
                             ": nilpotent descent disagrees with iterated closure");
      ++classical;
      for (const auto& f : heredits) {
        bool k_fast = is_k_f_subnormal(e.file.group, h, f).verdict;
        bool p_fast = is_f_subnormal(e.file.group, h, f).verdict;
        bool k_slow = brute_kf_subnormal(e.file.group, h, f, SubnormalKind::k);
        bool p_slow = brute_kf_subnormal(e.file.group, h, f, SubnormalKind::plain);
        if (k_fast != k_slow || p_fast != p_slow)
          throw internal_error(e.name + " |H|=" + h.order().str() + " x " + f.name() +
                               ": descent disagrees with path search");
        oracle += 2;
      }
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 600) throw resource_error("subnormality suite took " + std::to_string(dt) + "s");
  std::ostringstream d;
  d << classical << " classical + " << oracle << " oracle verdicts agree in " << std::fixed
    << std::setprecision(1) << dt << "s";
  return d.str();
}

void check_decomposition(const std::string& where, const PermGroup& g, const PermGroup& n,
                         const Decomposition& d, const NormalLattice& lat, bool p_layer,
                         long p) {
  check_internal(d.residual.is_normal_in(g), where + ": residual not normal");
  check_internal(n.contains_group(d.residual), where + ": residual escapes N");
  if (d.minimals.empty()) {
    check_internal(d.residual.order() == n.order(), where + ": empty layer must be trivial");
    return;
  }
  int ri = lat.index_of(d.residual);
  check_internal(ri >= 0, where + ": residual missing from the lattice");
  auto covers = lat.covers_of(ri);
  BigInt product = 1;
  PermGroup span = d.residual;
  for (const auto& m : d.minimals) {
    check_internal(m.contains_group(d.residual) && n.contains_group(m),
                   where + ": factor outside [residual, N]");
    int mi = lat.index_of(m);
    check_internal(mi >= 0 && std::count(covers.begin(), covers.end(), mi) == 1,
                   where + ": factor is not G-minimal over the residual");
    BigInt factor = m.order() / d.residual.order();
    if (p_layer)
      check_internal(factor == p_part(factor, p), where + ": factor is not a p-group");
    else
      check_internal(!d.residual.contains_group(derived_subgroup(m)),
                     where + ": factor is abelian");
    product *= factor;
    span = join(span, m);
  }
  check_internal(product * d.residual.order() == n.order(),
                 where + ": orders do not factor the layer");
  check_internal(span.order() == n.order() && span.same_group_as(n),
                 where + ": factors do not span N");
}

std::string crit_decompositions(const std::vector<CorpusEntry>& corpus) {
  long layers = 0;
  for (const auto& e : corpus) {
    if (e.file.group.order() > 500) continue;
    const auto& g = e.file.group;
    auto lat = normal_lattice(g);
    Rng rng(fnv1a(e.name));
    for (const auto& n : lat->members) {
      if (n.order() == 1) continue;
      auto dn = nonabelian_decomposition(g, n, rng);
      check_decomposition(e.name + " nonabelian |N|=" + n.order().str(), g, n, dn, *lat,
                          false, 0);
      ++layers;
      for (long p : primes_of(n)) {
        auto dp = p_decomposition(g, n, p, rng);
        check_decomposition(e.name + " p=" + std::to_string(p) + " |N|=" + n.order().str(),
                            g, n, dp, *lat, true, p);
        ++layers;
      }
    }
  }
  return std::to_string(layers) + " decompositions satisfy the layer contracts";
}

// Every submodule arises from spinning joins of cyclic submodules.
std::vector<RowSpace> brute_submodules(const MatModule& m) {
  auto key_of = [](const RowSpace& s) {
    std::string k;
    for (const auto& r : s.rows())
      for (long x : r) k += std::to_string(x) + ",";
    return k;
  };
  std::map<std::string, RowSpace> seen;
  RowSpace zero(m.p, m.dim);
  seen.emplace(key_of(zero), zero);

  long total = 1;
  for (int i = 0; i < m.dim; ++i) total *= m.p;
  std::vector<std::vector<long>> vectors;
  for (long code = 1; code < total; ++code) {
    std::vector<long> v(m.dim);
    long c = code;
    for (int i = 0; i < m.dim; ++i) {
      v[i] = c % m.p;
      c /= m.p;
    }
    vectors.push_back(std::move(v));
  }
  for (const auto& v : vectors) {
    RowSpace s = spin(m, {v});
    seen.emplace(key_of(s), s);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RowSpace> snapshot;
    for (const auto& [k, s] : seen) snapshot.push_back(s);
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        auto rows = snapshot[i].rows();
        rows.insert(rows.end(), snapshot[j].rows().begin(), snapshot[j].rows().end());
        RowSpace s = spin(m, rows);
        grew = seen.emplace(key_of(s), std::move(s)).second || grew;
      }
  }
  std::vector<RowSpace> out;
  for (const auto& [k, s] : seen) out.push_back(s);
  return out;
}

std::string crit_module_radical() {
  auto t0 = Clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(1000 + trial);
    long p = (trial % 2 == 0) ? 2 : 3;
    int dim = 1 + static_cast<int>((trial / 2) % 5);
    int ngens = 1 + trial % 3;

    MatModule m;
    m.p = p;
    m.dim = dim;
    for (int gi = 0; gi < ngens; ++gi) {
      while (true) {
        MatFp a(p, dim, dim);
        RowSpace rank(p, dim);
        for (int i = 0; i < dim; ++i) {
          std::vector<long> row(dim);
          for (int j = 0; j < dim; ++j) row[j] = static_cast<long>(rng.below(p));
          for (int j = 0; j < dim; ++j) a.set(i, j, row[j]);
          rank.insert(std::move(row));
        }
        if (rank.dim() == dim) {
          m.action.push_back(std::move(a));
          break;
        }
      }
    }

    Rng radical_rng(trial);
    RowSpace rad = module_radical(m, radical_rng);

    auto subs = brute_submodules(m);
    std::vector<const RowSpace*> maximal;
    for (const auto& s : subs) {
      if (s.dim() == dim) continue;
      bool is_max = true;
      for (const auto& t : subs) {
        if (t.dim() == dim || t.dim() <= s.dim()) continue;
        bool inside = true;
        for (const auto& r : s.rows()) inside = inside && t.contains(r);
        if (inside) {
          is_max = false;
          break;
        }
      }
      if (is_max) maximal.push_back(&s);
    }
    check_internal(!maximal.empty(), "module has no maximal submodule");

    long total = 1;
    for (int i = 0; i < dim; ++i) total *= p;
    RowSpace meet_space(p, dim);
    for (long code = 1; code < total; ++code) {
      std::vector<long> v(dim);
      long c = code;
      for (int i = 0; i < dim; ++i) {
        v[i] = c % p;
        c /= p;
      }
      bool in_all = true;
      for (const auto* s : maximal) in_all = in_all && s->contains(v);
      if (in_all) meet_space.insert(std::move(v));
    }

    bool same = rad.dim() == meet_space.dim();
    for (const auto& r : rad.rows()) same = same && meet_space.contains(r);
    if (!same)
      throw internal_error("trial " + std::to_string(trial) + ": radical dim " +
                           std::to_string(rad.dim()) + " vs maximal intersection dim " +
                           std::to_string(meet_space.dim()));
  }
  double dt = seconds_since(t0);
  if (dt >= 60) throw resource_error("module suite took " + std::to_string(dt) + "s");
  std::ostringstream d;
  d << "100 random modules: radical equals the intersection of maximals in " << std::fixed
    << std::setprecision(1) << dt << "s";
  return d.str();
}

std::string crit_jordan_holder(const std::vector<CorpusEntry>& corpus) {
  long runs = 0;
  for (const auto& e : corpus) {
    std::vector<std::string> reference;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      auto series = chief_series(e.file.group, rng);
      std::vector<std::string> factors;
      for (std::size_t i = 0; i + 1 < series.size(); ++i)
        factors.push_back(BigInt(series[i].order() / series[i + 1].order()).str());
      std::sort(factors.begin(), factors.end());
      if (seed == 0)
        reference = factors;
      else if (factors != reference)
        throw internal_error(e.name + ": chief factor multiset changed at seed " +
                             std::to_string(seed));
      ++runs;
    }
  }
  return std::to_string(runs) + " reseeded chief series share each group's factor multiset";
}

std::string crit_chain_guard() {
  if (ChainGuard::violations() != 0)
    throw internal_error(std::to_string(ChainGuard::violations()) +
                         " chain guard violations");
  return "zero guard violations, deepest chain " +
         std::to_string(ChainGuard::max_steps_seen()) + " steps";
}

std::string crit_scaling() {
  auto ss = builtin("supersoluble");
  auto sn_shifted = [](int n, int shift) {
    std::ostringstream cyc;
    cyc << "(";
    for (int i = 1; i <= n; ++i) cyc << (i == 1 ? "" : " ") << i + shift;
    cyc << ")";
    std::ostringstream swap;
    swap << "(" << 1 + shift << " " << 2 + shift << ")";
    return from_cycles(n + shift, {swap.str(), cyc.str()});
  };

  auto t0 = Clock::now();
  residual(sn_shifted(4, 9), ss);  // warm up code paths off the clock

  std::vector<double> xs, ys;
  std::ostringstream detail;
  detail << "ms per n:";
  for (int n = 4; n <= 9; ++n) {
    std::vector<double> times;
    for (int shift = 1; shift <= 5; ++shift) {
      PermGroup g = sn_shifted(n, shift);
      auto t1 = Clock::now();
      PermGroup r = residual(g, ss);
      times.push_back(std::max(seconds_since(t1), 2e-5));
      BigInt expect = g.order() / (n == 4 ? 6 : 2);
      check_internal(r.order() == expect, "scaling run: wrong residual at n=" +
                                              std::to_string(n));
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(median));
    detail << " " << std::fixed << std::setprecision(2) << median * 1e3;
  }

  double xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) xbar += xs[i], ybar += ys[i];
  xbar /= xs.size(), ybar /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - xbar) * (ys[i] - ybar);
    den += (xs[i] - xbar) * (xs[i] - xbar);
  }
  double slope = num / den;
  double dt = seconds_since(t0);
  if (dt >= 120) throw resource_error("scaling suite took " + std::to_string(dt) + "s");
  detail << ", log-log slope " << std::setprecision(2) << slope;
  if (slope >= 2.0) throw internal_error("superquadratic trend: " + detail.str());
  return "subquadratic growth, " + detail.str();
}

}  // namespace

int main() {
  ChainGuard::reset_stats();
  std::vector<CorpusEntry> corpus;
  try {
    corpus = load_corpus();
  } catch (const std::exception& ex) {
    std::printf("[FAIL] criterion 0: corpus load: %s\n", ex.what());
    return 1;
  }

  struct Criterion {
    int num;
    const char* label;
    std::function<std::string()> run;
  };
  std::vector<Criterion> plan = {
      {1, "fixed residual values", [&] { return crit_fixed_values(corpus); }},
      {2, "differential residual suite", [&] { return crit_differential(corpus); }},
      {3, "quotient membership vs residual", [&] { return crit_member_mod(corpus); }},
      {4, "meet identity", [&] { return crit_meet_identity(corpus); }},
      {5, "subnormality agreement", [&] { return crit_subnormal(corpus); }},
      {6, "decomposition contracts", [&] { return crit_decompositions(corpus); }},
      {7, "module radical", [] { return crit_module_radical(); }},
      {8, "chief factor multiset invariance", [&] { return crit_jordan_holder(corpus); }},
      {10, "residual scaling trend", [] { return crit_scaling(); }},
      {9, "descent chain bound", [] { return crit_chain_guard(); }},  // last: global tally
  };

  struct Line {
    int num;
    bool pass;
    std::string text;
  };
  std::vector<Line> lines;
  for (const auto& c : plan) {
    try {
      lines.push_back({c.num, true, c.run()});
    } catch (const std::exception& ex) {
      lines.push_back({c.num, false, std::string(c.label) + ": " + ex.what()});
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.num < b.num; });

  bool all = true;
  for (const auto& l : lines) {
    std::printf("[%s] criterion %d: %s\n", l.pass ? "PASS" : "FAIL", l.num, l.text.c_str());
    all = all && l.pass;
  }
  return all ? 0 : 1;
}
