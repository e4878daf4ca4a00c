#include "charpow/json_io.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

using namespace charpow;
using Json = nlohmann::ordered_json;

namespace {

int ceil_log_p(long long p, long long m) {
  int e = 0;
  long long v = 1;
  while (v < m) {
    v *= p;
    ++e;
  }
  return e;
}

int floor_log_p(long long p, long long m) {
  int e = 0;
  long long v = 1;
  while (v * p <= m) {
    v *= p;
    ++e;
  }
  return e;
}

// exponent of the p-part of G: largest p^k among element orders
int p_part_exp(FiniteGroup const &G, long long p) {
  int e = 0;
  for (size_t i = 0; i < G.order(); ++i) {
    if (!G.is_p_power_order(static_cast<int>(i), p)) continue;
    long long o = G.element_order(static_cast<int>(i));
    int k = 0;
    while (o > 1) {
      o /= p;
      ++k;
    }
    e = std::max(e, k);
  }
  return e;
}

void emit(std::string const &path, std::string const &data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw usage_error("cannot open output file " + path);
  os << data;
}

std::string slurp(std::string const &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw usage_error("cannot read file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string flat_mat(Mat const &A) {
  std::ostringstream os;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) os << (i + j ? " " : "") << A.at(i, j);
  return os.str();
}

// ---- subgroups ----------------------------------------------------------

struct SubgroupsOpts {
  long long p = 2;
  int n = 1, k = 1, N = 0;
  std::string format = "json", out;
};

int run_subgroups(SubgroupsOpts const &o) {
  int N = o.N > 0 ? o.N : std::max(o.k, 1);
  Context ctx(o.p, o.n, N);
  auto subs = enumerate_subgroups(ctx, o.k);
  std::ostringstream cmd;
  cmd << "subgroups --p " << o.p << " --n " << o.n << " --k " << o.k << " --N " << N
      << " --format " << o.format;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "# count " << subs.size() << "\norder_exp,basis\n";
    for (auto const &H : subs) os << H.order_exp << "," << flat_mat(H.basis) << "\n";
    emit(o.out, os.str());
  } else {
    Json j;
    j["kind"] = "subgroups";
    j["p"] = o.p;
    j["n"] = o.n;
    j["N"] = N;
    j["k"] = o.k;
    j["count"] = subs.size();
    Json rows = Json::array();
    for (auto const &H : subs) {
      Json r;
      r["order_exp"] = H.order_exp;
      Json basis = Json::array();
      for (int i = 0; i < H.basis.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < H.basis.cols(); ++c)
          row.push_back(H.basis.at(i, c).convert_to<long long>());
        basis.push_back(std::move(row));
      }
      r["basis"] = std::move(basis);
      rows.push_back(std::move(r));
    }
    j["subgroups"] = std::move(rows);
    emit(o.out, "// charpow " + cmd.str() + "\n" + j.dump(2) + "\n");
  }
  if (!o.out.empty()) std::cout << "subgroups: " << subs.size() << " rows -> " << o.out << "\n";
  return 0;
}

// ---- census --------------------------------------------------------------

struct CensusOpts {
  std::string group = "C2";
  long long p = 2;
  int n = 1, m = 2, N = 0;
  size_t cap = kDefaultGroupCap;
  std::string format = "json", out;
};

int run_census(CensusOpts const &o) {
  if (o.m < 1) throw usage_error("census: m must be >= 1");
  GroupPtr G = make_group(o.group, o.cap);
  int N = o.N > 0 ? o.N : std::max({ceil_log_p(o.p, o.m), p_part_exp(*G, o.p), 1});
  Context ctx(o.p, o.n, N);
  VerificationReport r = verify_bijection(G, ctx, o.m, o.cap);
  long long brute = 0, data = 0;
  for (auto const &[k, v] : r.counts) {
    if (k == "brute_classes") brute = v;
    if (k == "sum_data") data = v;
  }
  std::ostringstream cmd;
  cmd << "census --group " << o.group << " --p " << o.p << " --n " << o.n << " --m " << o.m
      << " --N " << N << " --format " << o.format;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "group,p,n,N,m,brute_classes,sum_data,match\n"
       << o.group << "," << o.p << "," << o.n << "," << N << "," << o.m << "," << brute << ","
       << data << "," << (r.pass ? "true" : "false") << "\n";
    emit(o.out, os.str());
  } else {
    Json j;
    j["kind"] = "census";
    j["group"] = o.group;
    j["p"] = o.p;
    j["n"] = o.n;
    j["N"] = N;
    j["m"] = o.m;
    j["brute_classes"] = brute;
    j["sum_data"] = data;
    j["match"] = r.pass;
    if (!r.pass) j["witness"] = r.witness;
    emit(o.out, "// charpow " + cmd.str() + "\n" + j.dump(2) + "\n");
  }
  std::cerr << report_to_text(r) << "\n";
  return r.pass ? 0 : 1;
}

// ---- section ---------------------------------------------------------------

struct SectionOpts {
  long long p = 2;
  int n = 2, level = 1, N = 0;
  bool verify = false;
  std::string out;
};

int run_section(SectionOpts const &o) {
  int N = o.N > 0 ? o.N : std::max(o.n * o.level, 1);
  Context ctx(o.p, o.n, N);
  Section s = build_power_section(ctx, o.level);
  std::ostringstream cmd;
  cmd << "section --p " << o.p << " --n " << o.n << " --level " << o.level << " --N " << N;
  if (!o.out.empty()) emit(o.out, section_to_json(s, cmd.str()));
  std::cout << "section: p=" << o.p << " n=" << o.n << " level=" << o.level << " N=" << N
            << " entries=" << s.table.size();
  if (!o.out.empty()) std::cout << " -> " << o.out;
  std::cout << "\n";
  if (o.verify) {
    auto defect = section_defect(s);
    std::cout << "section property: " << (defect ? "FAIL " + *defect : "PASS") << "\n";
    return defect ? 1 : 0;
  }
  return 0;
}

// ---- power -----------------------------------------------------------------

struct PowerOpts {
  std::string in;
  int m = 2;
  std::string section = "built";
  bool mod_transfer = false;
  size_t cap = kDefaultGroupCap;
  std::string out;
};

int run_power(PowerOpts const &o) {
  if (o.m < 1) throw usage_error("power: m must be >= 1");
  LoadedClassFn in = classfn_from_json(slurp(o.in));
  Context const &ctx = in.f.ctx;
  int level = floor_log_p(ctx.p, o.m);
  Section s;
  if (o.section == "built") {
    s = build_power_section(ctx, level);
  } else {
    s = section_from_json(slurp(o.section));
    if (!(s.ctx == ctx)) throw usage_error("power: section context differs from the class function");
    if (s.level < level) throw usage_error("power: section level too shallow for m");
  }
  WreathGroup wg = wreath_product(in.G, o.m, o.cap);
  auto cs_w = std::make_shared<ClassSet>(wg.W, ctx.p, ctx.n);
  ClassFunction out = o.mod_transfer ? power_mod_transfer(in.f, wg, cs_w, s)
                                     : power_op(in.f, wg, cs_w, s);
  std::ostringstream cmd;
  cmd << "power --in " << o.in << " --m " << o.m << " --section " << o.section;
  if (o.mod_transfer) cmd << " --mod-transfer";
  emit(o.out, classfn_to_json(out, group_spec_of(*wg.W), cmd.str()));
  if (!o.out.empty())
    std::cout << "power: " << cs_w->count() << " classes on " << wg.W->name() << " -> " << o.out
              << "\n";
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOpts {
  std::string suite;
  std::string group;  // empty: use the suite's default grid
  long long p = 2;
  int n = 1, m = 2, l = 1, t = 1, k = 1, N = 0;
  uint64_t seed = 12345;
  int funcs = 20;
  bool mutated = false;
  int jobs = 1;
  size_t cap = kDefaultGroupCap;
  std::string section = "built";
  std::string format = "json", out;
};

using Task = std::function<VerificationReport()>;

Context grid_ctx(VerifyOpts const &o, GroupPtr const &G, long long p, int n, int min_level) {
  int N = o.N > 0 ? o.N : std::max({p_part_exp(*G, p), n * min_level, 1});
  return Context(p, n, N);
}

// built section of the level needed for wreath degree m, plus a unit-mutated copy
Section built_section(Context const &ctx, int level) { return build_power_section(ctx, level); }

Mat default_unit(Context const &ctx) {
  if (ctx.n == 1) {
    Mat u(1, 1);
    u.at(0, 0) = ctx.p == 2 ? 3 : 2;
    if (ctx.p == 2 && ctx.N == 1) throw usage_error("descent: no nontrivial unit at p=2, N=1");
    return u;
  }
  Mat u = Mat::identity(ctx.n);
  u.at(0, 1) = 1;
  return u;
}

void add_descent_tasks(std::vector<Task> &tasks, VerifyOpts const &o, std::string const &group,
                       long long p, int n) {
  GroupPtr G = make_group(group, o.cap);
  int level = ceil_log_p(p, o.m);
  // the aut action on Cl(G wr Sigma_m) needs p^N above the wreath exponent
  int minN = std::max({p_part_exp(*G, p) + level, n * level, 1});
  if (p == 2) minN = std::max(minN, 2);  // (Z/2)^* is trivial: mutations need N >= 2
  Context ctx = (o.N > 0) ? Context(p, n, o.N) : Context(p, n, minN);
  Section s = built_section(ctx, level);
  // unit-mutated at the least order-p subgroup (level >= 1 grids)
  Section s_unit = s;
  if (level >= 1) {
    FiniteSubgroup H = enumerate_subgroups(ctx, 1).front();
    s_unit = mutate_section(s, H, default_unit(ctx));
  }
  uint64_t seed = o.seed;
  int funcs = o.funcs;
  size_t cap = o.cap;
  tasks.push_back([G, ctx, m = o.m, s, s_unit, seed, funcs]() {
    return verify_descent(G, ctx, m, s, s_unit, seed, funcs);
  });
  if (n == 1) {
    Section s_e = mutate_section(s, trivial_subgroup(ctx), default_unit(ctx));
    tasks.push_back([G, ctx, m = o.m, s, s_e, seed, funcs]() {
      return verify_descent(G, ctx, m, s, s_e, seed, funcs);
    });
  }
  (void)cap;
}

std::vector<Task> build_tasks(VerifyOpts const &o) {
  std::vector<Task> tasks;
  bool explicit_grid = !o.group.empty();

  auto bijection_inst = [&](std::string const &g, long long p, int n, int m) {
    GroupPtr G = make_group(g, o.cap);
    int N = o.N > 0 ? o.N : std::max({ceil_log_p(p, m), p_part_exp(*G, p), 1});
    Context ctx(p, n, N);
    size_t cap = o.cap;
    tasks.push_back([G, ctx, m, cap]() { return verify_bijection(G, ctx, m, cap); });
  };
  auto relations_inst = [&](std::string const &g, long long p, int n, int m, int l) {
    if (o.funcs < 1) throw usage_error("relations: funcs must be >= 1");
    GroupPtr G = make_group(g, o.cap);
    int level = ceil_log_p(p, m + l);
    int N = o.N > 0 ? o.N : std::max({level, p_part_exp(*G, p), n * level, 1});
    Context ctx(p, n, N);
    Section s = built_section(ctx, level);
    tasks.push_back([G, ctx, m, l, s, seed = o.seed, funcs = o.funcs]() {
      return verify_relations(G, ctx, m, l, s, seed, funcs);
    });
  };
  auto global_inst = [&](std::string const &g, long long p, int n, int t, int l) {
    GroupPtr G = make_group(g, o.cap);
    int level = t + l;
    int N = o.N > 0 ? o.N : std::max({level, p_part_exp(*G, p), n * level, 1});
    Context ctx(p, n, N);
    Section s = o.section == "built" ? built_section(ctx, level)
                                     : section_from_json(slurp(o.section));
    if (!(s.ctx == ctx)) throw usage_error("verify: section context mismatch");
    tasks.push_back([G, ctx, t, l, s]() { return verify_global_power(G, ctx, t, l, s, "built"); });
  };
  auto injection_inst = [&](std::string const &g, long long p, int k) {
    GroupPtr G = make_group(g, o.cap);
    int N = o.N > 0 ? o.N : std::max({k, p_part_exp(*G, p), 1});
    Context ctx(p, 1, N);
    tasks.push_back([G, ctx, k]() { return verify_injection(G, ctx, k); });
  };
  auto abelian_inst = [&](std::string const &g, long long p) {
    GroupPtr G = make_group(g, o.cap);
    int N = o.N > 0 ? o.N : std::max(p_part_exp(*G, p), 1);
    Context ctx(p, o.n, N);
    tasks.push_back([G, ctx]() { return verify_abelian_embedding(G, ctx); });
  };
  auto assembly_inst = [&](std::string const &g, long long p, int m) {
    GroupPtr G = make_group(g, o.cap);
    int N = o.N > 0 ? o.N : std::max({ceil_log_p(p, m), p_part_exp(*G, p), 1});
    Context ctx(p, o.n, N);
    tasks.push_back([G, ctx, m]() { return verify_assembly(G, ctx, m); });
  };

  if (o.suite == "bijection") {
    if (explicit_grid) {
      bijection_inst(o.group, o.p, o.n, o.m);
    } else {
      bijection_inst("trivial", 2, 1, 2);
      bijection_inst("C2", 2, 1, 2);
      bijection_inst("trivial", 2, 1, 3);
      bijection_inst("C2", 2, 2, 2);
      bijection_inst("C3", 3, 1, 3);
    }
  } else if (o.suite == "relations") {
    if (explicit_grid) {
      relations_inst(o.group, o.p, o.n, o.m, o.l);
    } else {
      relations_inst("C2", 2, 1, 1, 1);
      relations_inst("C2", 2, 1, 2, 1);
      relations_inst("trivial", 2, 1, 2, 2);
      relations_inst("C3", 3, 1, 1, 1);
    }
  } else if (o.suite == "global-power") {
    if (o.mutated) {
      for (auto const &cfg : shipped_mutations()) {
        GroupPtr G = make_group("trivial");
        Section s = built_section(cfg.ctx, cfg.level);
        FiniteSubgroup H = subgroup_from_basis(cfg.ctx, cfg.subgroup_basis);
        Section sm = mutate_section(s, H, cfg.unit);
        tasks.push_back([G, ctx = cfg.ctx, sm, name = cfg.name]() {
          return verify_global_power(G, ctx, 1, 1, sm, name);
        });
      }
    } else if (explicit_grid) {
      global_inst(o.group, o.p, o.n, o.t, o.l);
    } else {
      global_inst("trivial", 2, 1, 1, 1);
      global_inst("C2", 2, 1, 1, 1);
      global_inst("trivial", 3, 1, 1, 1);
    }
  } else if (o.suite == "descent") {
    if (o.funcs < 1) throw usage_error("descent: funcs must be >= 1");
    if (explicit_grid) {
      add_descent_tasks(tasks, o, o.group, o.p, o.n);
    } else {
      add_descent_tasks(tasks, o, "C2", 2, 1);
      add_descent_tasks(tasks, o, "C4", 2, 1);
      add_descent_tasks(tasks, o, "S3", 2, 1);
      add_descent_tasks(tasks, o, "C2", 2, 2);
    }
  } else if (o.suite == "injection") {
    if (explicit_grid) {
      injection_inst(o.group, o.p, o.k);
    } else {
      injection_inst("trivial", 2, 1);
      injection_inst("C2", 2, 1);
      injection_inst("trivial", 3, 1);
    }
  } else if (o.suite == "abelian-embedding") {
    if (explicit_grid) {
      abelian_inst(o.group, o.p);
    } else {
      abelian_inst("S3", 2);
      abelian_inst("S3", 3);
      abelian_inst("C4", 2);
    }
  } else if (o.suite == "assembly") {
    if (explicit_grid) {
      assembly_inst(o.group, o.p, o.m);
    } else {
      assembly_inst("C2", 2, 2);
      assembly_inst("C2", 2, 3);
      assembly_inst("C2", 2, 4);
      assembly_inst("trivial", 3, 3);
      assembly_inst("S3", 2, 3);
    }
  } else {
    throw usage_error("verify: unknown suite '" + o.suite + "'");
  }
  if (tasks.empty()) throw usage_error("verify: empty grid");
  return tasks;
}

std::vector<VerificationReport> run_tasks(std::vector<Task> const &tasks, int jobs) {
  std::vector<VerificationReport> reports(tasks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) reports[i] = tasks[i]();
    return reports;
  }
  std::vector<std::exception_ptr> errs(tasks.size());
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  int workers = std::min<int>(jobs, static_cast<int>(tasks.size()));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          reports[i] = tasks[i]();
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  for (auto &th : pool) th.join();
  for (auto const &e : errs)
    if (e) std::rethrow_exception(e);
  return reports;
}

int run_verify(VerifyOpts const &o) {
  auto tasks = build_tasks(o);
  auto reports = run_tasks(tasks, o.jobs);
  for (auto const &r : reports) std::cout << report_to_text(r) << "\n";
  std::ostringstream cmd;
  cmd << "verify " << o.suite;
  if (!o.group.empty())
    cmd << " --group " << o.group << " --p " << o.p << " --n " << o.n;
  if (o.mutated) cmd << " --mutated";
  cmd << " --seed " << o.seed;
  if (!o.out.empty()) {
    if (o.format == "csv")
      emit(o.out, report_to_csv(reports));
    else
      emit(o.out, reports_to_json(reports, cmd.str()));
  }
  bool all = true;
  for (auto const &r : reports) all = all && r.pass;
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"charpow: exact character-level power operations on wreath products"};
  app.require_subcommand(1);

  SubgroupsOpts so;
  auto *sub = app.add_subcommand("subgroups", "enumerate subgroups of the dual torsion module");
  sub->add_option("--p", so.p, "prime");
  sub->add_option("--n", so.n, "rank");
  sub->add_option("--k", so.k, "subgroup order exponent");
  sub->add_option("--N", so.N, "torsion level (default max(k,1))");
  sub->add_option("--format", so.format)->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", so.out, "output file (default stdout)");

  CensusOpts co;
  auto *cen = app.add_subcommand("census", "brute-force class count vs sum-data enumeration");
  cen->add_option("--group", co.group, "inner group spec");
  cen->add_option("--p", co.p, "prime");
  cen->add_option("--n", co.n, "rank");
  cen->add_option("--m", co.m, "wreath degree");
  cen->add_option("--N", co.N, "torsion level (default: fits m and the group)");
  cen->add_option("--cap", co.cap, "group order cap");
  cen->add_option("--format", co.format)->check(CLI::IsMember({"json", "csv"}));
  cen->add_option("--out", co.out, "output file (default stdout)");

  SectionOpts eo;
  auto *sec = app.add_subcommand("section", "build a power section, optionally verifying it");
  sec->add_option("--p", eo.p, "prime");
  sec->add_option("--n", eo.n, "rank (1 or 2)");
  sec->add_option("--level", eo.level, "section level");
  sec->add_option("--N", eo.N, "torsion level (default n*level)");
  sec->add_flag("--verify", eo.verify, "check the section property exactly");
  sec->add_option("--out", eo.out, "section file to write");

  PowerOpts po;
  auto *pow = app.add_subcommand("power", "evaluate the total power operation on a class function");
  pow->add_option("--in", po.in, "input class function file")->required();
  pow->add_option("--m", po.m, "wreath degree");
  pow->add_option("--section", po.section, "'built' or a section file");
  pow->add_flag("--mod-transfer", po.mod_transfer, "reduce modulo the transfer ideal");
  pow->add_option("--cap", po.cap, "group order cap");
  pow->add_option("--out", po.out, "output file (default stdout)");

  VerifyOpts vo;
  auto *ver = app.add_subcommand("verify", "run oracle verification suites");
  ver->add_option("suite", vo.suite,
                  "bijection|relations|global-power|descent|injection|abelian-embedding|assembly")
      ->required();
  ver->add_option("--group", vo.group, "inner group spec (default: built-in grid)");
  ver->add_option("--p", vo.p, "prime");
  ver->add_option("--n", vo.n, "rank");
  ver->add_option("--m", vo.m, "wreath degree");
  ver->add_option("--l", vo.l, "second degree / level");
  ver->add_option("--t", vo.t, "outer level for global-power");
  ver->add_option("--k", vo.k, "prime-power exponent for injection");
  ver->add_option("--N", vo.N, "torsion level override");
  ver->add_option("--seed", vo.seed, "seed for random class functions");
  ver->add_option("--funcs", vo.funcs, "random functions per instance");
  ver->add_flag("--mutated", vo.mutated, "use the shipped mutated sections (global-power)");
  ver->add_option("--jobs", vo.jobs, "parallel instances")->check(CLI::PositiveNumber);
  ver->add_option("--cap", vo.cap, "group order cap");
  ver->add_option("--section", vo.section, "'built' or a section file");
  ver->add_option("--format", vo.format)->check(CLI::IsMember({"json", "csv"}));
  ver->add_option("--out", vo.out, "report file");

  int rc = 0;
  sub->callback([&]() { rc = run_subgroups(so); });
  cen->callback([&]() { rc = run_census(co); });
  sec->callback([&]() { rc = run_section(eo); });
  pow->callback([&]() { rc = run_power(po); });
  ver->callback([&]() { rc = run_verify(vo); });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (usage_error const &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (precision_error const &e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 3;
  } catch (cap_error const &e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
