#include "charpow/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace charpow {

bool level_datum_less(LevelDatum const &a, LevelDatum const &b) {
  if (!(a.H == b.H)) return subgroup_less(a.H, b.H);
  return a.tuple < b.tuple;
}

SumDatum make_sum_datum(std::vector<LevelDatum> parts) {
  std::sort(parts.begin(), parts.end(), level_datum_less);
  return SumDatum{std::move(parts)};
}

bool sum_datum_less(SumDatum const &a, SumDatum const &b) {
  return std::lexicographical_compare(
      a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(), level_datum_less);
}

std::string sum_datum_to_string(SumDatum const &d) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < d.parts.size(); ++i) {
    if (i) os << " + ";
    os << "(" << subgroup_to_string(d.parts[i].H) << ", alpha=";
    for (size_t j = 0; j < d.parts[i].tuple.size(); ++j) {
      if (j) os << ",";
      os << d.parts[i].tuple[j];
    }
    os << ")";
  }
  os << "]";
  return os.str();
}

std::vector<int> canonical_tuple(FiniteGroup const &G, std::vector<int> const &t) {
  // element index order is image-tuple order, so index-vector comparison is
  // the lexicographic key comparison
  std::vector<int> best = t;
  std::vector<int> cj(t.size());
  for (size_t g = 0; g < G.order(); ++g) {
    for (size_t i = 0; i < t.size(); ++i) cj[i] = G.conj(static_cast<int>(g), t[i]);
    if (cj < best) best = cj;
  }
  return best;
}

namespace {

long long perm_order(Perm const &s) {
  Perm cur = s;
  Perm id = perm_identity(static_cast<int>(s.size()));
  long long ord = 1;
  while (cur != id) {
    cur = perm_compose(cur, s);
    ++ord;
  }
  return ord;
}

void require_level(FiniteGroup const &G, Context const &ctx, std::vector<int> const &tuple) {
  for (int e : tuple) {
    long long ord = G.element_order(e);
    Int q = pow_int(ctx.p, ctx.N);
    if (q % ord != 0)
      throw precision_error("tuple element order exceeds the context torsion level");
  }
}

// exponent of m as a power of p; usage_error when m is not one
int p_log(long long p, long long m) {
  int k = 0;
  long long v = m;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  if (v != 1) throw usage_error("block size is not a power of p");
  return k;
}

}  // namespace

std::vector<int> tuple_change_of_basis(FiniteGroup const &G, Context const &ctx,
                                       std::vector<int> const &tuple, Mat const &C) {
  require_level(G, ctx, tuple);
  if (C.rows() != static_cast<int>(tuple.size()))
    throw internal_error("tuple_change_of_basis: shape mismatch");
  Int q = pow_int(ctx.p, ctx.N);
  std::vector<int> out(static_cast<size_t>(C.cols()), 0);
  for (int j = 0; j < C.cols(); ++j) {
    int acc = 0;
    for (int i = 0; i < C.rows(); ++i) {
      Int e = C.at(i, j) % q;
      if (e < 0) e += q;
      acc = G.mult(acc, G.pow(tuple[static_cast<size_t>(i)], e.convert_to<long long>()));
    }
    out[static_cast<size_t>(j)] = acc;
  }
  return out;
}

LevelDatum classify_transitive(WreathGroup const &wg, Context const &ctx,
                               std::vector<int> const &tuple) {
  FiniteGroup const &W = *wg.W;
  FiniteGroup const &G = *wg.inner;
  int m = wg.m, n = ctx.n;
  if (static_cast<int>(tuple.size()) != n) throw usage_error("classify: tuple arity != n");
  for (size_t i = 0; i < tuple.size(); ++i)
    for (size_t j = i + 1; j < tuple.size(); ++j)
      if (W.mult(tuple[i], tuple[j]) != W.mult(tuple[j], tuple[i]))
        throw usage_error("classify: tuple entries do not commute");

  // slot permutations
  std::vector<Perm> sigma(tuple.size());
  std::vector<std::vector<int>> base(tuple.size());
  for (size_t i = 0; i < tuple.size(); ++i) wg.decode(W.perm(tuple[i]), base[i], sigma[i]);

  // transitivity on slots
  {
    std::vector<bool> seen(static_cast<size_t>(std::max(1, m)), false);
    std::vector<int> stack{0};
    seen[0] = true;
    size_t cnt = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (auto const &sg : sigma) {
        int t = sg[static_cast<size_t>(s)];
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = true;
          ++cnt;
          stack.push_back(t);
        }
      }
    }
    if (static_cast<int>(cnt) != std::max(1, m))
      throw usage_error("classify_transitive: slot action is not transitive");
  }
  int k = p_log(ctx.p, std::max(1, m));
  if (k > ctx.N) throw precision_error("classify: block size exceeds torsion level");

  // stabilizer lattice Lambda_0 = {x : sigma^x(0) = 0}
  std::vector<long long> ords(sigma.size());
  std::vector<std::vector<Perm>> pows(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) {
    ords[i] = perm_order(sigma[i]);
    Perm cur = perm_identity(static_cast<int>(sigma[i].size()));
    for (long long t = 0; t < ords[i]; ++t) {
      pows[i].push_back(cur);
      cur = perm_compose(cur, sigma[i]);
    }
  }
  std::vector<std::vector<Int>> relations;
  std::vector<long long> x(sigma.size(), 0);
  for (;;) {
    int slot = 0;
    for (size_t i = 0; i < sigma.size(); ++i) slot = pows[i][static_cast<size_t>(x[i])][static_cast<size_t>(slot)];
    if (slot == 0) {
      std::vector<Int> v(x.begin(), x.end());
      relations.push_back(std::move(v));
    }
    size_t i = sigma.size();
    while (i > 0 && ++x[i - 1] == ords[i - 1]) x[--i] = 0;
    if (i == 0) break;
  }
  Mat L0cat(n, static_cast<int>(relations.size()) + n);
  for (size_t c = 0; c < relations.size(); ++c)
    for (int r = 0; r < n; ++r) L0cat.at(r, static_cast<int>(c)) = relations[c][static_cast<size_t>(r)];
  for (int i = 0; i < n; ++i) L0cat.at(i, static_cast<int>(relations.size()) + i) = ords[static_cast<size_t>(i)];
  Mat L0 = hnf(L0cat);

  // H = annihilator of Lambda_0 inside Lambda^*[p^N]
  auto X = solve_integral(L0, Mat::scalar(n, pow_int(ctx.p, ctx.N)));
  if (!X) throw precision_error("classify: subgroup needs torsion beyond level N");
  Mat LH = hnf(X->transpose());
  FiniteSubgroup H{ctx, k, LH};
  {
    Int d = LH.det();
    if (pow_int(ctx.p, static_cast<long long>(n) * ctx.N - k) != d)
      throw internal_error("classify: dual subgroup order mismatch");
  }

  // alpha_bar on the canonical annihilator basis of Lambda_H (= Lambda_0)
  Mat B = annihilator_basis(H);
  std::vector<int> abar(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    int w = 0;
    for (int i = 0; i < n; ++i) {
      Int e = B.at(i, j);
      w = W.mult(w, W.pow(tuple[static_cast<size_t>(i)], e.convert_to<long long>()));
    }
    std::vector<int> wb;
    Perm ws;
    wg.decode(W.perm(w), wb, ws);
    if (wg.m > 0 && ws[0] != 0)
      throw internal_error("classify: annihilator column does not stabilize slot 0");
    abar[static_cast<size_t>(j)] = wg.m > 0 ? wb[0] : 0;
  }
  (void)G;
  return LevelDatum{H, canonical_tuple(*wg.inner, abar)};
}

SumDatum classify(WreathGroup const &wg, Context const &ctx, std::vector<int> const &tuple) {
  FiniteGroup const &W = *wg.W;
  int m = wg.m;
  if (m == 0) return SumDatum{};
  std::vector<Perm> sigma(tuple.size());
  std::vector<std::vector<int>> base(tuple.size());
  for (size_t i = 0; i < tuple.size(); ++i) wg.decode(W.perm(tuple[i]), base[i], sigma[i]);

  // slot orbits, processed in order of least slot
  std::vector<bool> seen(static_cast<size_t>(m), false);
  std::vector<LevelDatum> parts;
  std::map<int, WreathGroup> sub_cache;
  for (int s0 = 0; s0 < m; ++s0) {
    if (seen[static_cast<size_t>(s0)]) continue;
    std::vector<int> orbit{s0};
    seen[static_cast<size_t>(s0)] = true;
    std::vector<int> stack{s0};
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (auto const &sg : sigma) {
        int t = sg[static_cast<size_t>(s)];
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = true;
          orbit.push_back(t);
          stack.push_back(t);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    int mo = static_cast<int>(orbit.size());

    WreathGroup const *sub = nullptr;
    if (mo == m) {
      sub = &wg;
    } else {
      auto it = sub_cache.find(mo);
      if (it == sub_cache.end())
        it = sub_cache.emplace(mo, wreath_product(wg.inner, mo)).first;
      sub = &it->second;
    }
    // restrict the tuple to the orbit slots
    std::vector<int> restricted(tuple.size());
    std::vector<int> pos(static_cast<size_t>(m), -1);
    for (int t = 0; t < mo; ++t) pos[static_cast<size_t>(orbit[static_cast<size_t>(t)])] = t;
    for (size_t i = 0; i < tuple.size(); ++i) {
      std::vector<int> rb(static_cast<size_t>(mo));
      Perm rs(static_cast<size_t>(mo));
      for (int t = 0; t < mo; ++t) {
        int slot = orbit[static_cast<size_t>(t)];
        int img = sigma[i][static_cast<size_t>(slot)];
        rs[static_cast<size_t>(t)] = static_cast<uint16_t>(pos[static_cast<size_t>(img)]);
        rb[static_cast<size_t>(pos[static_cast<size_t>(img)])] = base[i][static_cast<size_t>(img)];
      }
      restricted[i] = sub->encode_index(rb, rs);
    }
    parts.push_back(classify_transitive(*sub, ctx, restricted));
  }
  return make_sum_datum(std::move(parts));
}

namespace {

// HNF coset representatives of Z^n / (columns of B), lexicographic order;
// reduce() maps any integer vector to its representative.
struct CosetBox {
  Mat B;
  std::vector<long long> radix;

  explicit CosetBox(Mat const &basis) : B(basis) {
    radix.resize(static_cast<size_t>(B.rows()));
    for (int i = 0; i < B.rows(); ++i) radix[static_cast<size_t>(i)] = B.at(i, i).convert_to<long long>();
  }

  size_t count() const {
    size_t c = 1;
    for (long long r : radix) c *= static_cast<size_t>(r);
    return c;
  }

  std::vector<Int> rep(size_t idx) const {
    std::vector<Int> r(radix.size());
    for (size_t i = radix.size(); i-- > 0;) {
      r[i] = static_cast<long long>(idx % static_cast<size_t>(radix[i]));
      idx /= static_cast<size_t>(radix[i]);
    }
    return r;
  }

  std::vector<Int> reduce(std::vector<Int> x) const {
    int n = B.rows();
    for (int i = 0; i < n; ++i) {
      Int q = x[static_cast<size_t>(i)] / B.at(i, i);
      Int rem = x[static_cast<size_t>(i)] % B.at(i, i);
      if (rem < 0) q -= 1;
      if (q == 0) continue;
      for (int r = i; r < n; ++r) x[static_cast<size_t>(r)] -= q * B.at(r, i);
    }
    return x;
  }

  size_t index(std::vector<Int> const &reduced) const {
    size_t idx = 0;
    for (size_t i = 0; i < radix.size(); ++i)
      idx = idx * static_cast<size_t>(radix[i]) + reduced[i].convert_to<size_t>();
    return idx;
  }
};

}  // namespace

std::vector<int> standard_representative(WreathGroup const &wg, Context const &ctx,
                                         SumDatum const &d) {
  FiniteGroup const &G = *wg.inner;
  int n = ctx.n, m = wg.m;
  size_t total = 0;
  for (auto const &part : d.parts) total += static_cast<size_t>(pow_int(ctx.p, part.H.order_exp).convert_to<long long>());
  if (total != static_cast<size_t>(m))
    throw usage_error("standard_representative: sum datum total does not match m");

  int d_inner = G.degree();
  (void)d_inner;
  std::vector<std::vector<int>> bases(static_cast<size_t>(n),
                                      std::vector<int>(static_cast<size_t>(std::max(1, m)), 0));
  std::vector<Perm> sigmas(static_cast<size_t>(n), perm_identity(std::max(1, m)));

  size_t offset = 0;
  for (auto const &part : d.parts) {
    require_level(G, ctx, part.tuple);
    Mat B = annihilator_basis(part.H);
    CosetBox box(B);
    size_t sz = box.count();

    // cocycle delta_i(j) = s[r_j] + e_i - s[r_j + e_i] in Lambda_H
    auto delta = [&](int i, size_t j, size_t &j2) {
      std::vector<Int> r = box.rep(j);
      std::vector<Int> shifted = r;
      shifted[static_cast<size_t>(i)] += 1;
      std::vector<Int> red = box.reduce(shifted);
      j2 = box.index(red);
      std::vector<Int> z = r;
      z[static_cast<size_t>(i)] += 1;
      for (size_t t = 0; t < red.size(); ++t) z[t] -= red[t];
      return z;
    };

    // gauge by the first-direction cocycle: conjugating by the base tuple
    // alpha_bar(delta_1(-)) moves each cycle's monodromy onto its closing
    // step, giving the block form (e,...,e,a; cycle)
    std::vector<std::vector<Int>> d1(sz);
    for (size_t j = 0; j < sz; ++j) {
      size_t ignore = 0;
      d1[j] = delta(0, j, ignore);
    }

    for (int i = 0; i < n; ++i) {
      for (size_t j = 0; j < sz; ++j) {
        size_t j2 = 0;
        std::vector<Int> z = delta(i, j, j2);
        for (size_t t = 0; t < z.size(); ++t) z[t] += d1[j2][t] - d1[j][t];
        Mat zc(n, 1);
        for (int t = 0; t < n; ++t) zc.at(t, 0) = z[static_cast<size_t>(t)];
        auto y = solve_integral(B, zc);
        if (!y) throw internal_error("standard_representative: cocycle outside Lambda_H");
        Int q = pow_int(ctx.p, ctx.N);
        int g = 0;
        for (int t = 0; t < n; ++t) {
          Int e = y->at(t, 0) % q;
          if (e < 0) e += q;
          g = G.mult(g, G.pow(part.tuple[static_cast<size_t>(t)], e.convert_to<long long>()));
        }
        sigmas[static_cast<size_t>(i)][offset + j] = static_cast<uint16_t>(offset + j2);
        bases[static_cast<size_t>(i)][offset + j2] = g;
      }
    }
    offset += sz;
  }

  std::vector<int> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = wg.encode_index(bases[static_cast<size_t>(i)], sigmas[static_cast<size_t>(i)]);
  return out;
}

std::vector<SumDatum> enumerate_sum_data(ClassSet const &cs, Context const &ctx, int m) {
  if (m < 0) throw usage_error("enumerate_sum_data: negative m");
  std::vector<std::pair<long long, LevelDatum>> menu;  // (size, datum), sorted
  for (int k = 0; pow_int(ctx.p, k) <= m; ++k) {
    if (k > ctx.N) throw precision_error("enumerate_sum_data: m exceeds torsion level range");
    long long sz = pow_int(ctx.p, k).convert_to<long long>();
    for (auto const &H : enumerate_subgroups(ctx, k))
      for (size_t c = 0; c < cs.count(); ++c)
        menu.emplace_back(sz, LevelDatum{H, cs.rep(static_cast<int>(c))});
  }
  std::vector<SumDatum> out;
  std::vector<LevelDatum> cur;
  auto rec = [&](auto &&self, size_t from, long long rem) -> void {
    if (rem == 0) {
      out.push_back(make_sum_datum(cur));
      return;
    }
    for (size_t i = from; i < menu.size(); ++i) {
      if (menu[i].first > rem) continue;
      cur.push_back(menu[i].second);
      self(self, i, rem - menu[i].first);
      cur.pop_back();
    }
  };
  rec(rec, 0, m);
  std::sort(out.begin(), out.end(), sum_datum_less);
  return out;
}

LevelDatum diagonal_datum(Context const &ctx, FiniteSubgroup const &H, FiniteGroup const &G,
                          std::vector<int> const &tuple) {
  Mat B = annihilator_basis(H);
  auto u = tuple_change_of_basis(G, ctx, tuple, B);
  return LevelDatum{H, canonical_tuple(G, u)};
}

SumDatum compose_wreath_data(WreathGroup const &inner_wg, Context const &ctx,
                             SumDatum const &outer) {
  FiniteGroup const &G = *inner_wg.inner;
  std::vector<LevelDatum> parts;
  for (auto const &op : outer.parts) {
    Mat Bi = annihilator_basis(op.H);
    SumDatum inner = classify(inner_wg, ctx, op.tuple);
    for (auto const &ip : inner.parts) {
      FiniteSubgroup T = subgroup_preimage(ctx, Bi.transpose(), ip.H);
      Mat M = Bi * annihilator_basis(ip.H);
      Mat BT = annihilator_basis(T);
      if (!(hnf(M) == BT))
        throw internal_error("compose_wreath_data: annihilator lattice mismatch");
      auto D = solve_integral(M, BT);
      if (!D) throw internal_error("compose_wreath_data: change of basis not integral");
      auto tup = tuple_change_of_basis(G, ctx, ip.tuple, *D);
      parts.push_back(LevelDatum{T, canonical_tuple(G, tup)});
    }
  }
  return make_sum_datum(std::move(parts));
}

SumDatum aut_on_sum_datum(Context const &ctx, FiniteGroup const &G, Mat const &sigma,
                          SumDatum const &d) {
  Int det = sigma.det();
  if (det == 0 || vp(det, ctx.p) != 0) throw usage_error("aut action: matrix is not a unit");
  std::vector<LevelDatum> parts;
  for (auto const &part : d.parts) {
    FiniteSubgroup H2 = subgroup_image(ctx, sigma, part.H);
    if (H2.order_exp != part.H.order_exp)
      throw internal_error("aut action: unit changed subgroup order");
    Mat B2 = annihilator_basis(H2);
    auto C = solve_integral(annihilator_basis(part.H), sigma.transpose() * B2);
    if (!C) throw internal_error("aut action: dual change of basis not integral");
    auto tup = tuple_change_of_basis(G, ctx, part.tuple, *C);
    parts.push_back(LevelDatum{H2, canonical_tuple(G, tup)});
  }
  return make_sum_datum(std::move(parts));
}

}  // namespace charpow
