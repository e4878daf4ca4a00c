#include "charpow/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <sstream>

namespace charpow {

Perm perm_identity(int degree) {
  Perm p(static_cast<size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<size_t>(i)] = static_cast<uint16_t>(i);
  return p;
}

Perm perm_compose(Perm const &a, Perm const &b) {
  if (a.size() != b.size()) throw internal_error("perm_compose: degree mismatch");
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm perm_inverse(Perm const &a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<uint16_t>(i);
  return r;
}

FiniteGroup FiniteGroup::from_generators(int degree, std::vector<Perm> gens, std::string name,
                                         size_t cap) {
  if (degree < 1) throw usage_error("group: degree must be >= 1");
  for (auto const &g : gens) {
    if (static_cast<int>(g.size()) != degree) throw usage_error("group: generator degree mismatch");
    std::vector<bool> seen(g.size(), false);
    for (uint16_t v : g) {
      if (v >= g.size() || seen[v]) throw usage_error("group: generator is not a permutation");
      seen[v] = true;
    }
  }
  // BFS closure
  std::unordered_map<Perm, int, PermHash> idx;
  std::vector<Perm> elems;
  std::deque<size_t> queue;
  Perm id = perm_identity(degree);
  idx.emplace(id, 0);
  elems.push_back(id);
  queue.push_back(0);
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (auto const &g : gens) {
      Perm nxt = perm_compose(elems[cur], g);
      if (idx.emplace(nxt, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(nxt));
        if (elems.size() > cap) throw cap_error("group: size cap exceeded for " + name);
        queue.push_back(elems.size() - 1);
      }
    }
  }
  std::sort(elems.begin(), elems.end());

  FiniteGroup G;
  G.degree_ = degree;
  G.name_ = std::move(name);
  G.elems_ = std::move(elems);
  G.index_.reserve(G.elems_.size() * 2);
  for (size_t i = 0; i < G.elems_.size(); ++i) G.index_.emplace(G.elems_[i], static_cast<int>(i));
  for (auto const &g : gens) G.gens_.push_back(G.index_.at(g));
  if (G.gens_.empty()) G.gens_.push_back(0);
  G.inv_.resize(G.elems_.size());
  for (size_t i = 0; i < G.elems_.size(); ++i)
    G.inv_[i] = G.index_.at(perm_inverse(G.elems_[i]));
  return G;
}

int FiniteGroup::index_of(Perm const &p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

bool same_group(FiniteGroup const &a, FiniteGroup const &b) {
  if (&a == &b) return true;
  if (a.degree() != b.degree() || a.order() != b.order()) return false;
  for (size_t i = 0; i < a.order(); ++i)
    if (a.perm(static_cast<int>(i)) != b.perm(static_cast<int>(i))) return false;
  return true;
}

int FiniteGroup::mult(int a, int b) const {
  Perm r = perm_compose(elems_[static_cast<size_t>(a)], elems_[static_cast<size_t>(b)]);
  auto it = index_.find(r);
  if (it == index_.end()) throw internal_error("group: product escaped element set");
  return it->second;
}

int FiniteGroup::conj(int g, int x) const { return mult(mult(g, x), inv(g)); }

int FiniteGroup::pow(int a, long long e) const {
  long long ord = element_order(a);
  e %= ord;
  if (e < 0) e += ord;
  int acc = 0, base = a;
  while (e > 0) {
    if (e & 1) acc = mult(acc, base);
    base = mult(base, base);
    e >>= 1;
  }
  return acc;
}

long long FiniteGroup::element_order(int a) const {
  long long ord = 1;
  int x = a;
  while (x != 0) {
    x = mult(x, a);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_p_power_order(int a, long long p) const {
  long long ord = element_order(a);
  while (ord % p == 0) ord /= p;
  return ord == 1;
}

namespace {

std::vector<std::string> split(std::string const &s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Perm parse_cycles(std::string const &word, int degree) {
  Perm p = perm_identity(degree);
  size_t i = 0;
  while (i < word.size()) {
    if (std::isspace(static_cast<unsigned char>(word[i]))) {
      ++i;
      continue;
    }
    if (word[i] != '(') throw usage_error("perm spec: expected '(' in " + word);
    size_t close = word.find(')', i);
    if (close == std::string::npos) throw usage_error("perm spec: unbalanced '(' in " + word);
    std::string inner = word.substr(i + 1, close - i - 1);
    for (auto &c : inner)
      if (c == ',') c = ' ';
    std::istringstream is(inner);
    std::vector<int> cyc;
    int v;
    while (is >> v) {
      if (v < 1 || v > degree) throw usage_error("perm spec: point out of range");
      cyc.push_back(v - 1);
    }
    for (size_t t = 0; t + 1 < cyc.size(); ++t) {
      if (p[static_cast<size_t>(cyc[t])] != cyc[t])
        throw usage_error("perm spec: point repeated across cycles");
      p[static_cast<size_t>(cyc[t])] = static_cast<uint16_t>(cyc[t + 1]);
    }
    if (cyc.size() > 1) {
      if (p[static_cast<size_t>(cyc.back())] != cyc.back())
        throw usage_error("perm spec: point repeated across cycles");
      p[static_cast<size_t>(cyc.back())] = static_cast<uint16_t>(cyc[0]);
    }
    i = close + 1;
  }
  return p;
}

GroupPtr make_atom(std::string const &spec, size_t cap) {
  if (spec == "trivial" || spec == "C1" || spec == "S1")
    return std::make_shared<FiniteGroup>(
        FiniteGroup::from_generators(1, {}, "trivial", cap));
  if (spec.size() >= 2 && spec[0] == 'C') {
    int k = std::stoi(spec.substr(1));
    if (k < 1) throw usage_error("group spec: bad cyclic order in " + spec);
    Perm cyc(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cyc[static_cast<size_t>(i)] = static_cast<uint16_t>((i + 1) % k);
    return std::make_shared<FiniteGroup>(FiniteGroup::from_generators(k, {cyc}, spec, cap));
  }
  if (spec.size() >= 2 && spec[0] == 'S') {
    int m = std::stoi(spec.substr(1));
    return sym_group(m, cap);
  }
  throw usage_error("group spec: cannot parse '" + spec + "'");
}

}  // namespace

GroupPtr sym_group(int m, size_t cap) {
  if (m < 1) throw usage_error("S_m: m must be >= 1");
  std::vector<Perm> gens;
  if (m >= 2) {
    Perm t = perm_identity(m);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    Perm c(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) c[static_cast<size_t>(i)] = static_cast<uint16_t>((i + 1) % m);
    gens.push_back(c);
  }
  return std::make_shared<FiniteGroup>(
      FiniteGroup::from_generators(m, std::move(gens), "S" + std::to_string(m), cap));
}

GroupPtr make_group(std::string const &spec, size_t cap) {
  if (spec.rfind("perm:", 0) == 0) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw usage_error("group spec: want perm:<degree>:<gens>");
    int degree = std::stoi(parts[1]);
    std::vector<Perm> gens;
    for (auto const &w : split(parts[2], ';'))
      if (!w.empty()) gens.push_back(parse_cycles(w, degree));
    return std::make_shared<FiniteGroup>(
        FiniteGroup::from_generators(degree, std::move(gens), spec, cap));
  }
  auto atoms = split(spec, 'x');
  GroupPtr acc = make_atom(atoms[0], cap);
  for (size_t i = 1; i < atoms.size(); ++i)
    acc = direct_product(acc, make_atom(atoms[i], cap), cap).group;
  return acc;
}

bool GroupHom::is_homomorphism() const {
  size_t n = src->order();
  for (size_t a = 0; a < n; ++a)
    for (int g : src->generators()) {
      int ab = src->mult(static_cast<int>(a), g);
      if (map[static_cast<size_t>(ab)] !=
          dst->mult(map[a], map[static_cast<size_t>(g)]))
        return false;
    }
  return true;
}

bool GroupHom::is_injective() const {
  std::vector<int> seen;
  seen = map;
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

namespace {

GroupHom make_hom(GroupPtr src, GroupPtr dst, std::vector<int> map) {
  GroupHom h{std::move(src), std::move(dst), std::move(map)};
  if (!h.is_homomorphism()) throw internal_error("constructed map is not a homomorphism");
  return h;
}

// builds the hom by evaluating a per-element image formula on permutations
GroupHom hom_by_perm(GroupPtr const &src, GroupPtr const &dst,
                     std::function<Perm(Perm const &)> const &f) {
  std::vector<int> map(src->order());
  for (size_t i = 0; i < src->order(); ++i) {
    int j = dst->index_of(f(src->perm(static_cast<int>(i))));
    if (j < 0) throw internal_error("hom image escaped target group");
    map[i] = j;
  }
  return make_hom(src, dst, std::move(map));
}

}  // namespace

ProductGroup direct_product(GroupPtr const &A, GroupPtr const &B, size_t cap) {
  int da = A->degree(), db = B->degree();
  int degree = da + db;
  auto lift_a = [&](Perm const &p) {
    Perm r = perm_identity(degree);
    for (int i = 0; i < da; ++i) r[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
    return r;
  };
  auto lift_b = [&](Perm const &p) {
    Perm r = perm_identity(degree);
    for (int i = 0; i < db; ++i)
      r[static_cast<size_t>(da + i)] = static_cast<uint16_t>(da + p[static_cast<size_t>(i)]);
    return r;
  };
  if (static_cast<double>(A->order()) * static_cast<double>(B->order()) >
      static_cast<double>(cap))
    throw cap_error("direct product: size cap exceeded");
  std::vector<Perm> gens;
  for (int g : A->generators()) gens.push_back(lift_a(A->perm(g)));
  for (int g : B->generators()) gens.push_back(lift_b(B->perm(g)));
  auto P = std::make_shared<FiniteGroup>(FiniteGroup::from_generators(
      degree, std::move(gens), "(" + A->name() + ")x(" + B->name() + ")", cap));

  auto proj_a = hom_by_perm(P, A, [&](Perm const &p) {
    Perm r(static_cast<size_t>(da));
    for (int i = 0; i < da; ++i) r[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
    return r;
  });
  auto proj_b = hom_by_perm(P, B, [&](Perm const &p) {
    Perm r(static_cast<size_t>(db));
    for (int i = 0; i < db; ++i)
      r[static_cast<size_t>(i)] = static_cast<uint16_t>(p[static_cast<size_t>(da + i)] - da);
    return r;
  });
  auto emb_a = hom_by_perm(A, P, lift_a);
  auto emb_b = hom_by_perm(B, P, lift_b);
  return ProductGroup{P, std::move(proj_a), std::move(proj_b), std::move(emb_a),
                      std::move(emb_b)};
}

PowerGroup product_power(GroupPtr const &G, int m, size_t cap) {
  if (m < 1) throw usage_error("product power: m must be >= 1");
  int d = G->degree();
  int degree = d * m;
  double sz = 1;
  for (int i = 0; i < m; ++i) sz *= static_cast<double>(G->order());
  if (sz > static_cast<double>(cap)) throw cap_error("product power: size cap exceeded");
  std::vector<Perm> gens;
  for (int slot = 0; slot < m; ++slot)
    for (int g : G->generators()) {
      Perm r = perm_identity(degree);
      Perm const &p = G->perm(g);
      for (int i = 0; i < d; ++i)
        r[static_cast<size_t>(slot * d + i)] =
            static_cast<uint16_t>(slot * d + p[static_cast<size_t>(i)]);
      gens.push_back(std::move(r));
    }
  auto P = std::make_shared<FiniteGroup>(FiniteGroup::from_generators(
      degree, std::move(gens), "(" + G->name() + ")^" + std::to_string(m), cap));
  PowerGroup out;
  out.group = P;
  for (int slot = 0; slot < m; ++slot) {
    out.proj.push_back(hom_by_perm(P, G, [&, slot](Perm const &p) {
      Perm r(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i)
        r[static_cast<size_t>(i)] = static_cast<uint16_t>(p[static_cast<size_t>(slot * d + i)] - slot * d);
      return r;
    }));
  }
  return out;
}

Perm WreathGroup::encode(std::vector<int> const &base, Perm const &sigma) const {
  int d = inner->degree();
  Perm w(static_cast<size_t>(std::max(1, d * m)));
  if (m == 0) return perm_identity(1);
  for (int j = 0; j < m; ++j) {
    int tj = sigma[static_cast<size_t>(j)];
    Perm const &g = inner->perm(base[static_cast<size_t>(tj)]);
    for (int a = 0; a < d; ++a)
      w[static_cast<size_t>(j * d + a)] =
          static_cast<uint16_t>(tj * d + g[static_cast<size_t>(a)]);
  }
  return w;
}

void WreathGroup::decode(Perm const &w, std::vector<int> &base, Perm &sigma) const {
  int d = inner->degree();
  base.assign(static_cast<size_t>(m), 0);
  sigma = perm_identity(std::max(1, m));
  for (int j = 0; j < m; ++j) {
    int tj = w[static_cast<size_t>(j * d)] / d;
    sigma[static_cast<size_t>(j)] = static_cast<uint16_t>(tj);
    Perm g(static_cast<size_t>(d));
    for (int a = 0; a < d; ++a)
      g[static_cast<size_t>(a)] = static_cast<uint16_t>(w[static_cast<size_t>(j * d + a)] - tj * d);
    int gi = inner->index_of(g);
    if (gi < 0) throw internal_error("wreath decode: base entry not in inner group");
    base[static_cast<size_t>(tj)] = gi;
  }
}

int WreathGroup::encode_index(std::vector<int> const &base, Perm const &sigma) const {
  int i = W->index_of(encode(base, sigma));
  if (i < 0) throw internal_error("wreath encode: element not in group");
  return i;
}

WreathGroup wreath_product(GroupPtr const &G, int m, size_t cap) {
  if (m < 0) throw usage_error("wreath: m must be >= 0");
  WreathGroup wg;
  wg.inner = G;
  wg.m = m;
  if (m == 0) {
    wg.W = std::make_shared<FiniteGroup>(
        FiniteGroup::from_generators(1, {}, G->name() + " wr S0", cap));
    return wg;
  }
  double sz = 1;
  for (int i = 0; i < m; ++i) sz *= static_cast<double>(G->order());
  for (int i = 2; i <= m; ++i) sz *= i;
  if (sz > static_cast<double>(cap)) throw cap_error("wreath: size cap exceeded");

  int d = G->degree();
  int degree = d * m;
  std::vector<Perm> gens;
  // inner generators in slot 0
  for (int g : G->generators()) {
    Perm r = perm_identity(degree);
    Perm const &p = G->perm(g);
    for (int a = 0; a < d; ++a) r[static_cast<size_t>(a)] = p[static_cast<size_t>(a)];
    gens.push_back(std::move(r));
  }
  // slot permutations from Sigma_m generators
  auto slot_perm = [&](Perm const &s) {
    Perm r(static_cast<size_t>(degree));
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < d; ++a)
        r[static_cast<size_t>(j * d + a)] = static_cast<uint16_t>(s[static_cast<size_t>(j)] * d + a);
    return r;
  };
  if (m >= 2) {
    Perm t = perm_identity(m);
    std::swap(t[0], t[1]);
    gens.push_back(slot_perm(t));
    Perm c(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) c[static_cast<size_t>(i)] = static_cast<uint16_t>((i + 1) % m);
    gens.push_back(slot_perm(c));
  }
  wg.W = std::make_shared<FiniteGroup>(FiniteGroup::from_generators(
      degree, std::move(gens), G->name() + " wr S" + std::to_string(m), cap));
  return wg;
}

GroupHom wreath_pi(WreathGroup const &wg) {
  GroupPtr Sm = sym_group(std::max(1, wg.m));
  int d = wg.inner->degree();
  return hom_by_perm(wg.W, Sm, [&, d](Perm const &w) {
    int m = std::max(1, wg.m);
    Perm s(static_cast<size_t>(m));
    if (wg.m == 0) return perm_identity(1);
    for (int j = 0; j < wg.m; ++j)
      s[static_cast<size_t>(j)] = static_cast<uint16_t>(w[static_cast<size_t>(j * d)] / d);
    return s;
  });
}

GroupHom wreath_diag(WreathGroup const &wg) {
  int d = wg.inner->degree();
  return hom_by_perm(wg.inner, wg.W, [&, d](Perm const &g) {
    if (wg.m == 0) return perm_identity(1);
    Perm w(static_cast<size_t>(d * wg.m));
    for (int j = 0; j < wg.m; ++j)
      for (int a = 0; a < d; ++a)
        w[static_cast<size_t>(j * d + a)] = static_cast<uint16_t>(j * d + g[static_cast<size_t>(a)]);
    return w;
  });
}

GroupHom wreath_base_embed(WreathGroup const &wg, PowerGroup const &Gm) {
  // both act on d*m points with the same layout; the embedding is identity
  return hom_by_perm(Gm.group, wg.W, [](Perm const &p) { return p; });
}

GroupHom wreath_pair_embed(ProductGroup const &pair, WreathGroup const &wi,
                           WreathGroup const &wj, WreathGroup const &wij) {
  int d = wi.inner->degree();
  int di = d * wi.m;
  return hom_by_perm(pair.group, wij.W, [&, d, di](Perm const &p) {
    // pair acts on (d*i) + (d*j) points with the same block layout as wij
    Perm w(static_cast<size_t>(d * wij.m));
    for (int x = 0; x < di; ++x) w[static_cast<size_t>(x)] = p[static_cast<size_t>(x)];
    for (int x = 0; x < d * wj.m; ++x)
      w[static_cast<size_t>(di + x)] = static_cast<uint16_t>(p[static_cast<size_t>(di + x)]);
    return w;
  });
}

GroupHom wreath_nabla(WreathGroup const &outer, WreathGroup const &inner,
                      WreathGroup const &target) {
  // outer = (G wr Sigma_i) wr Sigma_j over inner = G wr Sigma_i,
  // target = G wr Sigma_{ij}; identify point (a, s, t) with a + d*(s + i*t).
  int d = inner.inner->degree();
  int i = inner.m, j = outer.m;
  if (target.m != i * j) throw internal_error("nabla: block count mismatch");
  int dw = d * i;  // degree of the inner wreath group
  return hom_by_perm(outer.W, target.W, [=](Perm const &p) {
    Perm w(static_cast<size_t>(d * i * j));
    for (int t = 0; t < j; ++t) {
      // outer point (x, t) with x in {0..dw-1} maps under p
      for (int x = 0; x < dw; ++x) {
        int y = p[static_cast<size_t>(t * dw + x)];
        int t2 = y / dw, x2 = y % dw;
        w[static_cast<size_t>(t * (d * i) + x)] = static_cast<uint16_t>(t2 * (d * i) + x2);
      }
    }
    return w;
  });
}

GroupHom wreath_delta_product(WreathGroup const &mixed, ProductGroup const &gk,
                              WreathGroup const &wg, WreathGroup const &wk,
                              ProductGroup const &target) {
  // mixed = (G x K) wr Sigma_m; split each base entry through the
  // projections of gk and rebuild the two wreath coordinates.
  int m = mixed.m;
  return hom_by_perm(mixed.W, target.group, [&, m](Perm const &p) {
    std::vector<int> base;
    Perm sigma;
    mixed.decode(p, base, sigma);
    std::vector<int> bg(static_cast<size_t>(m)), bk(static_cast<size_t>(m));
    for (int t = 0; t < m; ++t) {
      bg[static_cast<size_t>(t)] = gk.proj_left(base[static_cast<size_t>(t)]);
      bk[static_cast<size_t>(t)] = gk.proj_right(base[static_cast<size_t>(t)]);
    }
    Perm a = wg.encode(bg, sigma);
    Perm b = wk.encode(bk, sigma);
    // target is (G wr Sm) x (K wr Sm) acting on the disjoint union
    Perm w(a.size() + b.size());
    for (size_t x = 0; x < a.size(); ++x) w[x] = a[x];
    for (size_t x = 0; x < b.size(); ++x)
      w[a.size() + x] = static_cast<uint16_t>(a.size() + b[x]);
    return w;
  });
}

std::vector<std::vector<int>> commuting_tuples(FiniteGroup const &G, long long p, int n) {
  std::vector<int> pelems;
  for (size_t i = 0; i < G.order(); ++i)
    if (G.is_p_power_order(static_cast<int>(i), p)) pelems.push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto &&self) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int e : pelems) {
      bool ok = true;
      for (int prev : cur)
        if (G.mult(prev, e) != G.mult(e, prev)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(e);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<uint16_t> tuple_key(FiniteGroup const &G, std::vector<int> const &t) {
  std::vector<uint16_t> key;
  key.reserve(t.size() * static_cast<size_t>(G.degree()));
  for (int e : t) {
    Perm const &p = G.perm(e);
    key.insert(key.end(), p.begin(), p.end());
  }
  return key;
}

ClassSet::ClassSet(GroupPtr G, long long p, int n) : G_(std::move(G)), p_(p), n_(n) {
  auto tuples = commuting_tuples(*G_, p, n);
  // element indices are lex order on image tuples, so index-vector order
  // coincides with key order; orbits found by generator-conjugation BFS
  std::unordered_map<Perm, int, PermHash> seen;  // key -> class
  struct Pending {
    std::vector<int> rep;
    size_t size;
  };
  std::vector<Pending> found;
  for (auto const &t : tuples) {
    Perm k(tuple_key(*G_, t));
    if (seen.count(k)) continue;
    // BFS orbit
    std::vector<std::vector<int>> stack{t};
    seen.emplace(std::move(k), static_cast<int>(found.size()));
    std::vector<int> best = t;
    size_t orbit = 1;
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (int g : G_->generators()) {
        std::vector<int> cj(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) cj[i] = G_->conj(g, cur[i]);
        Perm ck(tuple_key(*G_, cj));
        if (seen.emplace(std::move(ck), static_cast<int>(found.size())).second) {
          ++orbit;
          if (cj < best) best = cj;
          stack.push_back(std::move(cj));
        }
      }
    }
    found.push_back({std::move(best), orbit});
  }
  // sort classes by representative key; remap indices
  std::vector<int> order(found.size());
  for (size_t i = 0; i < order.size(); ++i) order[static_cast<size_t>(i)] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return found[static_cast<size_t>(a)].rep < found[static_cast<size_t>(b)].rep;
  });
  std::vector<int> remap(found.size());
  for (size_t i = 0; i < order.size(); ++i) {
    remap[static_cast<size_t>(order[i])] = static_cast<int>(i);
    reps_.push_back(found[static_cast<size_t>(order[i])].rep);
    sizes_.push_back(found[static_cast<size_t>(order[i])].size);
  }
  key_class_.reserve(seen.size() * 2);
  for (auto &[k, c] : seen) key_class_.emplace(k, remap[static_cast<size_t>(c)]);
  for (auto const &t : tuples)
    for (int e : t) {
      long long ord = G_->element_order(e);
      int exp = 0;
      while (ord > 1) {
        ord /= p;
        ++exp;
      }
      max_exp_ = std::max(max_exp_, exp);
    }
}

int ClassSet::class_of(std::vector<int> const &t) const {
  if (static_cast<int>(t.size()) != n_) throw usage_error("class_of: tuple arity mismatch");
  Perm k(tuple_key(*G_, t));
  auto it = key_class_.find(k);
  if (it == key_class_.end())
    throw usage_error("class_of: tuple is not a commuting p-power tuple of this group");
  return it->second;
}

std::vector<int> fixed_cosets(FiniteGroup const &G, GroupHom const &incl,
                              std::vector<int> const &tuple) {
  if (incl.dst.get() != &G) throw usage_error("fixed_cosets: inclusion target mismatch");
  if (!incl.is_injective()) throw usage_error("fixed_cosets: map is not injective");
  std::vector<bool> in_image(G.order(), false);
  for (int img : incl.map) in_image[static_cast<size_t>(img)] = true;
  std::vector<bool> visited(G.order(), false);
  std::vector<int> out;
  for (size_t g = 0; g < G.order(); ++g) {
    if (visited[g]) continue;
    // mark the left coset g K
    for (int img : incl.map) visited[static_cast<size_t>(G.mult(static_cast<int>(g), img))] = true;
    bool fixed = true;
    int ginv = G.inv(static_cast<int>(g));
    for (int t : tuple)
      if (!in_image[static_cast<size_t>(G.mult(G.mult(ginv, t), static_cast<int>(g)))]) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(static_cast<int>(g));
  }
  return out;
}

}  // namespace charpow
