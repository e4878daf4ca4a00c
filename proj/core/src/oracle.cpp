#include "charpow/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace charpow {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

void put(VerificationReport &r, std::string k, std::string v) {
  r.params.emplace_back(std::move(k), std::move(v));
}

void count(VerificationReport &r, std::string k, long long v) {
  r.counts.emplace_back(std::move(k), v);
}

// ---- scratch-built group facts (independent of the classify machinery) ----

long long scratch_order(FiniteGroup const &W, int e) {
  long long o = 1;
  int x = e;
  while (x != 0) {
    x = W.mult(x, e);
    ++o;
  }
  return o;
}

bool scratch_p_power(FiniteGroup const &W, int e, long long p) {
  long long o = scratch_order(W, e);
  while (o % p == 0) o /= p;
  return o == 1;
}

std::vector<int> brute_p_elements(FiniteGroup const &W, long long p) {
  std::vector<int> out;
  for (size_t e = 0; e < W.order(); ++e)
    if (scratch_p_power(W, static_cast<int>(e), p)) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<std::vector<int>> brute_commuting_tuples(FiniteGroup const &W,
                                                     std::vector<int> const &pp, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto &&self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int cand : pp) {
      bool ok = true;
      for (int prev : cur)
        if (W.mult(prev, cand) != W.mult(cand, prev)) {
          ok = false;
          break;
        }
      if (ok) {
        cur.push_back(cand);
        self(self);
        cur.pop_back();
      }
    }
  };
  rec(rec);
  return out;
}

// Conjugacy classes of tuples by full-orbit scans; returns tuple -> class id
// and one representative per class (first in lexicographic tuple order).
struct BruteClasses {
  std::map<std::vector<int>, int> cls;
  std::vector<std::vector<int>> reps;
};

BruteClasses brute_tuple_classes(FiniteGroup const &W, std::vector<std::vector<int>> const &tuples) {
  BruteClasses out;
  for (auto const &t : tuples) {
    if (out.cls.count(t)) continue;
    int id = static_cast<int>(out.reps.size());
    out.reps.push_back(t);
    std::vector<int> ct(t.size());
    for (size_t g = 0; g < W.order(); ++g) {
      int gi = W.inv(static_cast<int>(g));
      for (size_t i = 0; i < t.size(); ++i) ct[i] = W.mult(W.mult(static_cast<int>(g), t[i]), gi);
      out.cls.emplace(ct, id);
    }
  }
  return out;
}

std::string tuple_str(std::vector<int> const &t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

void base_params(VerificationReport &r, GroupPtr const &G, Context const &ctx) {
  put(r, "group", G->name());
  put(r, "p", std::to_string(ctx.p));
  put(r, "n", std::to_string(ctx.n));
  put(r, "N", std::to_string(ctx.N));
}

// iterated external power f^{x m} on the class set of G^m
ClassFunction ext_power(ClassFunction const &f, PowerGroup const &Gm, ClassSetPtr cs_gm) {
  ClassFunction r = cf_zero(f.ctx, std::move(cs_gm));
  for (size_t c = 0; c < r.vals.size(); ++c) {
    std::vector<int> const &t = r.cs->rep(static_cast<int>(c));
    CoeffValue v = coeff_const(Rat(1));
    for (auto const &pr : Gm.proj) {
      std::vector<int> a(t.size());
      for (size_t i = 0; i < t.size(); ++i) a[i] = pr(t[i]);
      v = coeff_mul(v, f.at(f.cs->class_of(a)));
    }
    r.vals[c] = v;
  }
  return r;
}

}  // namespace

std::string report_to_text(VerificationReport const &r) {
  std::ostringstream os;
  os << r.check << " [";
  for (size_t i = 0; i < r.params.size(); ++i)
    os << (i ? " " : "") << r.params[i].first << "=" << r.params[i].second;
  os << "] " << (r.pass ? "PASS" : "FAIL");
  for (auto const &[k, v] : r.counts) os << " " << k << "=" << v;
  if (!r.pass) os << " witness: " << r.witness;
  os << " (" << r.wall_ms << " ms)";
  return os.str();
}

VerificationReport verify_bijection(GroupPtr const &G, Context const &ctx, int m, size_t cap) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "bijection";
  base_params(r, G, ctx);
  put(r, "m", std::to_string(m));

  WreathGroup wg = wreath_product(G, m, cap);
  FiniteGroup const &W = *wg.W;
  auto pp = brute_p_elements(W, ctx.p);
  auto tuples = brute_commuting_tuples(W, pp, ctx.n);
  BruteClasses bc = brute_tuple_classes(W, tuples);

  auto csG = std::make_shared<ClassSet>(G, ctx.p, ctx.n);
  auto data = enumerate_sum_data(*csG, ctx, m);

  count(r, "wreath_order", static_cast<long long>(W.order()));
  count(r, "tuples", static_cast<long long>(tuples.size()));
  count(r, "brute_classes", static_cast<long long>(bc.reps.size()));
  count(r, "sum_data", static_cast<long long>(data.size()));

  r.pass = true;
  if (bc.reps.size() != data.size()) {
    r.pass = false;
    r.witness = "class count != sum-data count";
    r.wall_ms = ms_since(t0);
    return r;
  }

  // data -> classes: distinct and classify-consistent
  std::set<int> hit;
  for (auto const &d : data) {
    auto rep = standard_representative(wg, ctx, d);
    SumDatum back = classify(wg, ctx, rep);
    if (!(back == d)) {
      r.pass = false;
      r.witness = "round-trip broke at datum " + sum_datum_to_string(d) + " -> " +
                  sum_datum_to_string(back);
      break;
    }
    auto it = bc.cls.find(rep);
    if (it == bc.cls.end()) {
      r.pass = false;
      r.witness = "representative " + tuple_str(rep) + " missing from the brute census";
      break;
    }
    if (!hit.insert(it->second).second) {
      r.pass = false;
      r.witness = "two data map to brute class of " + tuple_str(rep);
      break;
    }
  }

  // classes -> data: classify lands in the list, representative returns home
  if (r.pass) {
    auto less = [](SumDatum const &a, SumDatum const &b) { return sum_datum_less(a, b); };
    for (size_t id = 0; id < bc.reps.size(); ++id) {
      auto const &t = bc.reps[id];
      SumDatum d = classify(wg, ctx, t);
      if (!std::binary_search(data.begin(), data.end(), d, less)) {
        r.pass = false;
        r.witness = "classify of " + tuple_str(t) + " = " + sum_datum_to_string(d) +
                    " not in enumerate_sum_data";
        break;
      }
      auto rep = standard_representative(wg, ctx, d);
      auto it = bc.cls.find(rep);
      if (it == bc.cls.end() || it->second != static_cast<int>(id)) {
        r.pass = false;
        r.witness = "representative of classify(" + tuple_str(t) + ") lies in a different class";
        break;
      }
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

VerificationReport verify_relations(GroupPtr const &G, Context const &ctx, int m, int l,
                                    Section const &s, uint64_t seed, int nfuncs) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "relations";
  base_params(r, G, ctx);
  put(r, "m", std::to_string(m));
  put(r, "l", std::to_string(l));
  put(r, "seed", std::to_string(seed));
  put(r, "funcs", std::to_string(nfuncs));

  int mt = m + l;
  auto csG = std::make_shared<ClassSet>(G, ctx.p, ctx.n);

  // shared structures, built once
  WreathGroup wg1 = wreath_product(G, 1);
  std::map<int, WreathGroup> wgs;
  std::map<int, ClassSetPtr> css;
  for (int j = 1; j <= mt; ++j) {
    wgs.emplace(j, wreath_product(G, j));
    css.emplace(j, std::make_shared<ClassSet>(wgs.at(j).W, ctx.p, ctx.n));
  }
  struct PairEmb {
    ProductGroup prod;
    GroupHom emb;
    ClassSetPtr cs;
  };
  std::map<int, PairEmb> pairs;  // j -> (W_j x W_{mt-j} -> W_mt)
  for (int j = 1; j < mt; ++j) {
    ProductGroup pg = direct_product(wgs.at(j).W, wgs.at(mt - j).W);
    GroupHom emb = wreath_pair_embed(pg, wgs.at(j), wgs.at(mt - j), wgs.at(mt));
    auto cs = std::make_shared<ClassSet>(pg.group, ctx.p, ctx.n);
    pairs.emplace(j, PairEmb{std::move(pg), std::move(emb), std::move(cs)});
  }

  // relation 2 plumbing over G x C2
  GroupPtr K = make_group("C2");
  auto csK = std::make_shared<ClassSet>(K, ctx.p, ctx.n);
  ProductGroup gk = direct_product(G, K);
  auto cs_gk = std::make_shared<ClassSet>(gk.group, ctx.p, ctx.n);
  WreathGroup wg_mixed = wreath_product(gk.group, m);
  auto cs_mixed = std::make_shared<ClassSet>(wg_mixed.W, ctx.p, ctx.n);
  WreathGroup wk = wreath_product(K, m);
  auto cs_wk = std::make_shared<ClassSet>(wk.W, ctx.p, ctx.n);
  ProductGroup tgt = direct_product(wgs.at(m).W, wk.W);
  auto cs_tgt = std::make_shared<ClassSet>(tgt.group, ctx.p, ctx.n);
  GroupHom delta = wreath_delta_product(wg_mixed, gk, wgs.at(m), wk, tgt);

  // relation 3 plumbing
  PowerGroup Gm = product_power(G, m);
  GroupHom base = wreath_base_embed(wgs.at(m), Gm);
  auto cs_gm = std::make_shared<ClassSet>(Gm.group, ctx.p, ctx.n);

  count(r, "classes_G", static_cast<long long>(csG->count()));
  count(r, "classes_Wmt", static_cast<long long>(css.at(mt)->count()));

  r.pass = true;
  for (int i = 0; i < nfuncs && r.pass; ++i) {
    ClassFunction f = cf_random(ctx, csG, seed + 4ull * static_cast<uint64_t>(i));
    ClassFunction f2 = cf_random(ctx, csG, seed + 4ull * static_cast<uint64_t>(i) + 1);
    ClassFunction gfun = cf_random(ctx, csK, seed + 4ull * static_cast<uint64_t>(i) + 2);

    ClassFunction pm = power_op(f, wgs.at(m), css.at(m), s);
    ClassFunction pl = power_op(f, wgs.at(l), css.at(l), s);
    ClassFunction pmt = power_op(f, wgs.at(mt), css.at(mt), s);

    // (1) restriction to the pair subgroup
    {
      auto const &pe = pairs.at(m);
      ClassFunction lhs = restrict_along(pmt, pe.emb, pe.cs);
      ClassFunction rhs =
          external_product(pm, pe.prod.proj_left, pl, pe.prod.proj_right, pe.cs);
      if (!cf_equal(lhs, rhs)) {
        r.pass = false;
        r.witness = "relation (1) failed at func " + std::to_string(i);
        break;
      }
    }
    // (2) delta-compatibility over G x C2
    {
      ClassFunction fg = external_product(f, gk.proj_left, gfun, gk.proj_right, cs_gk);
      ClassFunction lhs = power_op(fg, wg_mixed, cs_mixed, s);
      ClassFunction pk = power_op(gfun, wk, cs_wk, s);
      ClassFunction rhs = restrict_along(
          external_product(pm, tgt.proj_left, pk, tgt.proj_right, cs_tgt), delta, cs_mixed);
      if (!cf_equal(lhs, rhs)) {
        r.pass = false;
        r.witness = "relation (2) failed at func " + std::to_string(i);
        break;
      }
    }
    // (3) restriction to the base
    {
      ClassFunction lhs = restrict_along(pm, base, cs_gm);
      ClassFunction p1 = power_op(f, wg1, csG, s);
      ClassFunction rhs = ext_power(p1, Gm, cs_gm);
      if (!cf_equal(lhs, rhs)) {
        r.pass = false;
        r.witness = "relation (3) failed at func " + std::to_string(i);
        break;
      }
    }
    // (4) additivity through transfers, j = 0..mt with degenerate ends inline
    {
      ClassFunction lhs = power_op(cf_add(f, f2), wgs.at(mt), css.at(mt), s);
      ClassFunction acc = cf_add(pmt, power_op(f2, wgs.at(mt), css.at(mt), s));
      for (int j = 1; j < mt; ++j) {
        auto const &pe = pairs.at(j);
        ClassFunction pj = power_op(f, wgs.at(j), css.at(j), s);
        ClassFunction pmj = power_op(f2, wgs.at(mt - j), css.at(mt - j), s);
        ClassFunction prod =
            external_product(pj, pe.prod.proj_left, pmj, pe.prod.proj_right, pe.cs);
        acc = cf_add(acc, transfer_along(prod, pe.emb, css.at(mt)));
      }
      if (!cf_equal(lhs, acc)) {
        r.pass = false;
        r.witness = "relation (4) failed at func " + std::to_string(i);
        break;
      }
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

VerificationReport verify_global_power(GroupPtr const &G, Context const &ctx, int t, int l,
                                       Section const &s, std::string const &section_tag) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "global-power";
  base_params(r, G, ctx);
  put(r, "t", std::to_string(t));
  put(r, "l", std::to_string(l));
  put(r, "section", section_tag);

  long long pl = pow_int(ctx.p, l).convert_to<long long>();
  long long pt = pow_int(ctx.p, t).convert_to<long long>();
  long long ptl = pl * pt;

  auto csG = std::make_shared<ClassSet>(G, ctx.p, ctx.n);
  WreathGroup wg_l = wreath_product(G, static_cast<int>(pl));
  WreathGroup wg_big = wreath_product(G, static_cast<int>(ptl));
  WreathGroup wg_outer = wreath_product(wg_l.W, static_cast<int>(pt));
  GroupHom nabla = wreath_nabla(wg_outer, wg_l, wg_big);
  auto cs_l = std::make_shared<ClassSet>(wg_l.W, ctx.p, ctx.n);
  auto cs_big = std::make_shared<ClassSet>(wg_big.W, ctx.p, ctx.n);
  auto cs_outer = std::make_shared<ClassSet>(wg_outer.W, ctx.p, ctx.n);

  count(r, "classes_G", static_cast<long long>(csG->count()));
  count(r, "classes_big", static_cast<long long>(cs_big->count()));
  count(r, "classes_outer", static_cast<long long>(cs_outer->count()));

  std::vector<CoeffValue> vals;
  vals.push_back(coeff_const(Rat(1)));
  for (int i = 0; i < ctx.n; ++i) {
    std::vector<long long> e(static_cast<size_t>(ctx.n), 0);
    e[static_cast<size_t>(i)] = 1;
    vals.push_back(coeff_var(ctx, e));
  }

  r.pass = true;
  long long deltas = 0;
  for (size_t c0 = 0; c0 < csG->count() && r.pass; ++c0) {
    for (size_t vi = 0; vi < vals.size() && r.pass; ++vi) {
      ++deltas;
      ClassFunction f = cf_delta(ctx, csG, static_cast<int>(c0), vals[vi]);
      ClassFunction lhs = restrict_along(power_op(f, wg_big, cs_big, s), nabla, cs_outer);
      ClassFunction rhs = power_op(power_op(f, wg_l, cs_l, s), wg_outer, cs_outer, s);
      if (!cf_equal(lhs, rhs)) {
        r.pass = false;
        for (size_t c = 0; c < cs_outer->count(); ++c) {
          if (lhs.vals[c] == rhs.vals[c]) continue;
          r.witness = "delta(class " + std::to_string(c0) + ", " +
                      coeff_to_string(ctx, vals[vi]) + "): outer class " +
                      tuple_str(cs_outer->rep(static_cast<int>(c))) + ": nabla^* P gives " +
                      coeff_to_string(ctx, lhs.vals[c]) + " vs P.P " +
                      coeff_to_string(ctx, rhs.vals[c]);
          break;
        }
      }
    }
  }
  count(r, "deltas", deltas);
  r.wall_ms = ms_since(t0);
  return r;
}

VerificationReport verify_descent(GroupPtr const &G, Context const &ctx, int m,
                                  Section const &s, Section const &s2, uint64_t seed,
                                  int nfuncs, size_t unit_cap) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "descent";
  base_params(r, G, ctx);
  put(r, "m", std::to_string(m));
  put(r, "seed", std::to_string(seed));
  put(r, "funcs", std::to_string(nfuncs));

  auto csG = std::make_shared<ClassSet>(G, ctx.p, ctx.n);
  WreathGroup wg = wreath_product(G, m);
  auto csW = std::make_shared<ClassSet>(wg.W, ctx.p, ctx.n);
  count(r, "classes_G", static_cast<long long>(csG->count()));
  count(r, "classes_W", static_cast<long long>(csW->count()));

  r.pass = true;
  for (int i = 0; i < nfuncs && r.pass; ++i) {
    ClassFunction f = aut_average(cf_random(ctx, csG, seed + static_cast<uint64_t>(i)), unit_cap);
    if (!is_aut_invariant(f)) {
      r.pass = false;
      r.witness = "averaged function not invariant at func " + std::to_string(i);
      break;
    }
    ClassFunction pf = power_op(f, wg, csW, s);
    if (!is_aut_invariant(pf)) {
      r.pass = false;
      r.witness = "P(f) not Aut-invariant at func " + std::to_string(i);
      break;
    }
    ClassFunction pf2 = power_op(f, wg, csW, s2);
    if (!cf_equal(pf, pf2)) {
      r.pass = false;
      for (size_t c = 0; c < csW->count(); ++c) {
        if (pf.vals[c] == pf2.vals[c]) continue;
        r.witness = "sections disagree at func " + std::to_string(i) + ", class " +
                    tuple_str(csW->rep(static_cast<int>(c))) + ": " +
                    coeff_to_string(ctx, pf.vals[c]) + " vs " + coeff_to_string(ctx, pf2.vals[c]);
        break;
      }
      break;
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

VerificationReport verify_injection(GroupPtr const &G, Context const &ctx, int k) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "injection";
  base_params(r, G, ctx);
  put(r, "k", std::to_string(k));

  long long m = pow_int(ctx.p, k).convert_to<long long>();
  WreathGroup wg = wreath_product(G, static_cast<int>(m));
  FiniteGroup const &W = *wg.W;
  auto csW = std::make_shared<ClassSet>(wg.W, ctx.p, ctx.n);

  std::set<int> sub_part;
  for (size_t c = 0; c < csW->count(); ++c)
    if (classify(wg, ctx, csW->rep(static_cast<int>(c))).parts.size() == 1)
      sub_part.insert(static_cast<int>(c));

  // classes meeting the block subgroup (G wr Sigma_{p^(k-1)})^p, found by a
  // scratch scan over all commuting tuples
  std::set<int> res_part;
  if (k >= 1) {
    long long block = m / ctx.p;
    int d = G->degree();
    auto pp = brute_p_elements(W, ctx.p);
    auto tuples = brute_commuting_tuples(W, pp, ctx.n);
    for (auto const &t : tuples) {
      bool keeps = true;
      for (int e : t) {
        Perm const &w = W.perm(e);
        for (size_t x = 0; x < w.size() && keeps; ++x) {
          long long slot_from = static_cast<long long>(x) / d;
          long long slot_to = static_cast<long long>(w[x]) / d;
          if (slot_from / block != slot_to / block) keeps = false;
        }
        if (!keeps) break;
      }
      if (keeps) res_part.insert(csW->class_of(t));
    }
    count(r, "tuples", static_cast<long long>(tuples.size()));
  }

  count(r, "classes", static_cast<long long>(csW->count()));
  count(r, "sub_part", static_cast<long long>(sub_part.size()));
  count(r, "res_part", static_cast<long long>(res_part.size()));

  r.pass = true;
  for (size_t c = 0; c < csW->count(); ++c) {
    int ci = static_cast<int>(c);
    if (!sub_part.count(ci) && !res_part.count(ci)) {
      r.pass = false;
      r.witness = "class " + tuple_str(csW->rep(ci)) + " reached by neither index map";
      break;
    }
  }
  r.wall_ms = ms_since(t0);
  return r;
}

VerificationReport verify_abelian_embedding(GroupPtr const &G, Context const &ctx) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "abelian-embedding";
  base_params(r, G, ctx);

  if (G->order() > 2000) throw cap_error("abelian embedding: group too large for brute force");

  // every subgroup, by closure of extensions
  auto closure = [&](std::vector<int> gens) {
    std::set<int> have{0};
    std::vector<int> stack{0};
    for (int g : gens)
      if (have.insert(g).second) stack.push_back(g);
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : have) {
        for (int c : {G->mult(a, b), G->mult(b, a)}) {
          if (have.insert(c).second) stack.push_back(c);
        }
        if (have.size() > G->order()) throw internal_error("subgroup closure overflow");
      }
    }
    return std::vector<int>(have.begin(), have.end());
  };

  std::set<std::vector<int>> subs;
  std::vector<std::vector<int>> queue{closure({})};
  subs.insert(queue[0]);
  while (!queue.empty()) {
    std::vector<int> S = queue.back();
    queue.pop_back();
    for (size_t g = 0; g < G->order(); ++g) {
      if (std::binary_search(S.begin(), S.end(), static_cast<int>(g))) continue;
      std::vector<int> gens = S;
      gens.push_back(static_cast<int>(g));
      auto T = closure(gens);
      if (subs.insert(T).second) queue.push_back(T);
    }
  }

  long long nabelian = 0;
  auto csG = std::make_shared<ClassSet>(G, ctx.p, ctx.n);
  std::set<int> covered;
  for (auto const &A : subs) {
    bool abelian = true;
    for (size_t i = 0; i < A.size() && abelian; ++i)
      for (size_t j = i + 1; j < A.size(); ++j)
        if (G->mult(A[i], A[j]) != G->mult(A[j], A[i])) {
          abelian = false;
          break;
        }
    if (!abelian) continue;
    ++nabelian;
    std::vector<int> pe;
    for (int a : A)
      if (scratch_p_power(*G, a, ctx.p)) pe.push_back(a);
    // all n-tuples over the p-part of A (commuting is automatic)
    std::vector<size_t> idx(static_cast<size_t>(ctx.n), 0);
    if (!pe.empty()) {
      for (;;) {
        std::vector<int> t(static_cast<size_t>(ctx.n));
        for (int i = 0; i < ctx.n; ++i) t[static_cast<size_t>(i)] = pe[idx[static_cast<size_t>(i)]];
        covered.insert(csG->class_of(t));
        size_t i = idx.size();
        while (i > 0 && ++idx[i - 1] == pe.size()) idx[--i] = 0;
        if (i == 0) break;
      }
    }
  }

  count(r, "subgroups", static_cast<long long>(subs.size()));
  count(r, "abelian", nabelian);
  count(r, "classes", static_cast<long long>(csG->count()));
  count(r, "covered", static_cast<long long>(covered.size()));

  r.pass = true;
  for (size_t c = 0; c < csG->count(); ++c)
    if (!covered.count(static_cast<int>(c))) {
      r.pass = false;
      r.witness = "class " + tuple_str(csG->rep(static_cast<int>(c))) +
                  " missed by every abelian subgroup";
      break;
    }
  r.wall_ms = ms_since(t0);
  return r;
}

VerificationReport verify_assembly(GroupPtr const &G, Context const &ctx, int m) {
  auto t0 = Clock::now();
  VerificationReport r;
  r.check = "assembly";
  base_params(r, G, ctx);
  put(r, "m", std::to_string(m));

  auto csG = std::make_shared<ClassSet>(G, ctx.p, ctx.n);
  auto full = enumerate_sum_data(*csG, ctx, m);

  // p-adic digits of m and the per-digit menus
  std::vector<int> digits;
  for (long long v = m; v > 0; v /= ctx.p) digits.push_back(static_cast<int>(v % ctx.p));
  std::vector<std::vector<SumDatum>> menus(digits.size());
  for (size_t j = 0; j < digits.size(); ++j)
    if (digits[j] > 0)
      menus[j] = enumerate_sum_data(*csG, ctx, pow_int(ctx.p, static_cast<long long>(j)).convert_to<int>());

  std::set<SumDatum, decltype(&sum_datum_less)> image(&sum_datum_less);
  std::vector<LevelDatum> cur;
  auto rec = [&](auto &&self, size_t digit, int picked, size_t from) -> void {
    if (digit == digits.size()) {
      image.insert(make_sum_datum(cur));
      return;
    }
    if (picked == digits[digit]) {
      self(self, digit + 1, 0, 0);
      return;
    }
    for (size_t i = from; i < menus[digit].size(); ++i) {
      size_t before = cur.size();
      for (auto const &part : menus[digit][i].parts) cur.push_back(part);
      self(self, digit, picked + 1, i);
      cur.resize(before);
    }
  };
  rec(rec, 0, 0, 0);

  count(r, "sum_data", static_cast<long long>(full.size()));
  count(r, "image", static_cast<long long>(image.size()));

  r.pass = image.size() == full.size();
  if (r.pass) {
    for (auto const &d : full)
      if (!image.count(d)) {
        r.pass = false;
        break;
      }
  }
  if (!r.pass) {
    for (auto const &d : full)
      if (!image.count(d)) {
        r.witness = "datum " + sum_datum_to_string(d) + " not assembled from p-adic digits";
        break;
      }
    if (r.witness.empty()) r.witness = "image contains data outside the full enumeration";
  }
  r.wall_ms = ms_since(t0);
  return r;
}

}  // namespace charpow
