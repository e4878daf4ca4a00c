#include "charpow/classfn.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace charpow {

VarCodec::VarCodec(Context const &ctx_) : ctx(ctx_), q(ctx_.pN()) {
  Int box = 1;
  for (int i = 0; i < ctx.n; ++i) box *= q;
  if (box > (Int(1) << 62)) throw cap_error("coefficient ring: variable index space too large");
}

long long VarCodec::encode(std::vector<long long> const &v) const {
  if (static_cast<int>(v.size()) != ctx.n) throw internal_error("var encode: arity mismatch");
  long long id = 0;
  for (int i = ctx.n - 1; i >= 0; --i) {
    long long c = v[static_cast<size_t>(i)] % q;
    if (c < 0) c += q;
    id = id * q + c;
  }
  return id;
}

std::vector<long long> VarCodec::decode(long long id) const {
  std::vector<long long> v(static_cast<size_t>(ctx.n));
  for (int i = 0; i < ctx.n; ++i) {
    v[static_cast<size_t>(i)] = id % q;
    id /= q;
  }
  return v;
}

CoeffValue coeff_zero() { return CoeffValue{}; }

CoeffValue coeff_const(Rat const &c) {
  CoeffValue v;
  if (c != 0) v.terms.emplace(Monomial{}, c);
  return v;
}

CoeffValue coeff_var(Context const &ctx, std::vector<long long> const &v) {
  VarCodec codec(ctx);
  CoeffValue x;
  x.terms.emplace(Monomial{{codec.encode(v), 1}}, Rat(1));
  return x;
}

CoeffValue coeff_add(CoeffValue const &a, CoeffValue const &b) {
  CoeffValue r = a;
  for (auto const &[m, c] : b.terms) {
    auto it = r.terms.find(m);
    if (it == r.terms.end()) {
      r.terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

CoeffValue coeff_sub(CoeffValue const &a, CoeffValue const &b) {
  return coeff_add(a, coeff_scale(b, Rat(-1)));
}

CoeffValue coeff_scale(CoeffValue const &a, Rat const &c) {
  CoeffValue r;
  if (c == 0) return r;
  for (auto const &[m, x] : a.terms) r.terms.emplace(m, x * c);
  return r;
}

namespace {

Monomial monomial_mul(Monomial const &a, Monomial const &b) {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

CoeffValue coeff_mul(CoeffValue const &a, CoeffValue const &b) {
  CoeffValue r;
  for (auto const &[ma, ca] : a.terms)
    for (auto const &[mb, cb] : b.terms) {
      Monomial m = monomial_mul(ma, mb);
      Rat c = ca * cb;
      auto it = r.terms.find(m);
      if (it == r.terms.end()) {
        r.terms.emplace(std::move(m), c);
      } else {
        it->second += c;
        if (it->second == 0) r.terms.erase(it);
      }
    }
  return r;
}

CoeffValue coeff_act(Context const &ctx, Mat const &A, CoeffValue const &x) {
  if (A.rows() != ctx.n || A.cols() != ctx.n) throw usage_error("coeff_act: matrix shape");
  VarCodec codec(ctx);
  Int q(codec.q);
  CoeffValue r;
  for (auto const &[m, c] : x.terms) {
    std::map<long long, long long> image;  // merged exponents after substitution
    for (auto const &[var, exp] : m) {
      std::vector<long long> v = codec.decode(var);
      std::vector<long long> w(static_cast<size_t>(ctx.n));
      for (int j = 0; j < ctx.n; ++j) {
        Int acc = 0;
        for (int i = 0; i < ctx.n; ++i) acc += A.at(i, j) * v[static_cast<size_t>(i)];
        acc %= q;
        if (acc < 0) acc += q;
        w[static_cast<size_t>(j)] = acc.convert_to<long long>();
      }
      image[codec.encode(w)] += exp;
    }
    Monomial mm(image.begin(), image.end());
    auto it = r.terms.find(mm);
    if (it == r.terms.end()) {
      r.terms.emplace(std::move(mm), c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

std::string coeff_to_string(Context const &ctx, CoeffValue const &x) {
  if (x.terms.empty()) return "0";
  VarCodec codec(ctx);
  std::ostringstream os;
  bool first = true;
  for (auto const &[m, c] : x.terms) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (auto const &[var, exp] : m) {
      auto v = codec.decode(var);
      os << "*t(";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
      os << ")";
      if (exp != 1) os << "^" << exp;
    }
  }
  return os.str();
}

CoeffValue const &ClassFunction::at(int c) const {
  if (c < 0 || static_cast<size_t>(c) >= vals.size())
    throw usage_error("class function: class index out of range");
  if (!is_defined(c))
    throw usage_error("class function: value requested outside the restricted domain");
  return vals[static_cast<size_t>(c)];
}

namespace {

void check_class_set(Context const &ctx, ClassSetPtr const &cs) {
  if (!cs) throw usage_error("class function: null class set");
  if (cs->p() != ctx.p || cs->n() != ctx.n)
    throw usage_error("class function: class set parameters disagree with the context");
}

}  // namespace

ClassFunction cf_zero(Context const &ctx, ClassSetPtr cs) {
  check_class_set(ctx, cs);
  ClassFunction f;
  f.ctx = ctx;
  f.cs = std::move(cs);
  f.vals.assign(f.cs->count(), coeff_zero());
  return f;
}

ClassFunction cf_const(Context const &ctx, ClassSetPtr cs, Rat const &c) {
  ClassFunction f = cf_zero(ctx, std::move(cs));
  for (auto &v : f.vals) v = coeff_const(c);
  return f;
}

ClassFunction cf_one(Context const &ctx, ClassSetPtr cs) {
  return cf_const(ctx, std::move(cs), Rat(1));
}

ClassFunction cf_delta(Context const &ctx, ClassSetPtr cs, int cls) {
  return cf_delta(ctx, std::move(cs), cls, coeff_const(Rat(1)));
}

ClassFunction cf_delta(Context const &ctx, ClassSetPtr cs, int cls, CoeffValue const &val) {
  ClassFunction f = cf_zero(ctx, std::move(cs));
  if (cls < 0 || static_cast<size_t>(cls) >= f.vals.size())
    throw usage_error("delta: class index out of range");
  f.vals[static_cast<size_t>(cls)] = val;
  return f;
}

ClassFunction cf_random(Context const &ctx, ClassSetPtr cs, uint64_t seed) {
  ClassFunction f = cf_zero(ctx, std::move(cs));
  std::mt19937_64 rng(seed);
  long long q = ctx.pN();
  VarCodec codec(ctx);
  for (auto &val : f.vals) {
    CoeffValue v;
    uint64_t nterms = rng() % 3;
    for (uint64_t t = 0; t < nterms; ++t) {
      long long num = 1 + static_cast<long long>(rng() % 4);
      if (rng() % 2) num = -num;
      std::vector<long long> coords(static_cast<size_t>(ctx.n));
      for (auto &c : coords) c = static_cast<long long>(rng() % static_cast<uint64_t>(q));
      long long exp = 1 + static_cast<long long>(rng() % 2);
      CoeffValue term;
      term.terms.emplace(Monomial{{codec.encode(coords), exp}}, Rat(num));
      v = coeff_add(v, term);
    }
    if (rng() % 2)
      v = coeff_add(v, coeff_const(Rat(static_cast<long long>(rng() % 3) - 1)));
    val = v;
  }
  return f;
}

namespace {

void check_compatible(ClassFunction const &a, ClassFunction const &b) {
  if (!(a.ctx == b.ctx)) throw usage_error("class functions: contexts differ");
  if (!same_group(*a.cs->group(), *b.cs->group()) || a.cs->count() != b.cs->count())
    throw usage_error("class functions: class sets differ");
  if (a.defined != b.defined)
    throw usage_error("class functions: restricted domains differ");
}

}  // namespace

ClassFunction cf_add(ClassFunction const &a, ClassFunction const &b) {
  check_compatible(a, b);
  ClassFunction r = a;
  for (size_t c = 0; c < r.vals.size(); ++c)
    if (r.is_defined(static_cast<int>(c))) r.vals[c] = coeff_add(a.vals[c], b.vals[c]);
  return r;
}

ClassFunction cf_sub(ClassFunction const &a, ClassFunction const &b) {
  return cf_add(a, cf_scale(b, Rat(-1)));
}

ClassFunction cf_mul(ClassFunction const &a, ClassFunction const &b) {
  check_compatible(a, b);
  ClassFunction r = a;
  for (size_t c = 0; c < r.vals.size(); ++c)
    if (r.is_defined(static_cast<int>(c))) r.vals[c] = coeff_mul(a.vals[c], b.vals[c]);
  return r;
}

ClassFunction cf_scale(ClassFunction const &a, Rat const &c) {
  ClassFunction r = a;
  for (size_t i = 0; i < r.vals.size(); ++i)
    if (r.is_defined(static_cast<int>(i))) r.vals[i] = coeff_scale(a.vals[i], c);
  return r;
}

bool cf_equal(ClassFunction const &a, ClassFunction const &b) {
  if (!(a.ctx == b.ctx)) return false;
  if (a.cs->count() != b.cs->count()) return false;
  if (!same_group(*a.cs->group(), *b.cs->group())) return false;
  if (a.defined != b.defined) return false;
  for (size_t c = 0; c < a.vals.size(); ++c)
    if (a.is_defined(static_cast<int>(c)) && !(a.vals[c] == b.vals[c])) return false;
  return true;
}

CoeffValue cf_value(ClassFunction const &f, std::vector<int> const &t) {
  return f.at(f.cs->class_of(t));
}

ClassFunction restrict_along(ClassFunction const &f, GroupHom const &j, ClassSetPtr cs_src) {
  check_class_set(f.ctx, cs_src);
  if (!same_group(*f.cs->group(), *j.dst))
    throw usage_error("restrict: function does not live on the hom codomain");
  if (!same_group(*cs_src->group(), *j.src))
    throw usage_error("restrict: class set does not match the hom domain");
  if (!f.total()) throw usage_error("restrict: restricted-domain input");
  ClassFunction r = cf_zero(f.ctx, std::move(cs_src));
  r.domain = f.domain;
  for (size_t c = 0; c < r.vals.size(); ++c) {
    std::vector<int> t = r.cs->rep(static_cast<int>(c));
    for (auto &x : t) x = j(x);
    r.vals[c] = f.at(f.cs->class_of(t));
  }
  return r;
}

ClassFunction transfer_along(ClassFunction const &f, GroupHom const &j, ClassSetPtr cs_dst) {
  check_class_set(f.ctx, cs_dst);
  if (!same_group(*f.cs->group(), *j.src))
    throw usage_error("transfer: function does not live on the hom domain");
  if (!same_group(*cs_dst->group(), *j.dst))
    throw usage_error("transfer: class set does not match the hom codomain");
  if (!f.total()) throw usage_error("transfer: restricted-domain input");
  if (!j.is_injective()) throw usage_error("transfer: inclusion is not injective");
  FiniteGroup const &D = *j.dst;
  std::vector<int> pre(D.order(), -1);
  for (size_t a = 0; a < j.src->order(); ++a) pre[static_cast<size_t>(j(static_cast<int>(a)))] = static_cast<int>(a);

  ClassFunction r = cf_zero(f.ctx, std::move(cs_dst));
  r.domain = f.domain;
  for (size_t c = 0; c < r.vals.size(); ++c) {
    std::vector<int> const &t = r.cs->rep(static_cast<int>(c));
    CoeffValue acc;
    for (int g : fixed_cosets(D, j, t)) {
      int gi = D.inv(g);
      std::vector<int> s(t.size());
      for (size_t i = 0; i < t.size(); ++i) {
        int x = pre[static_cast<size_t>(D.conj(gi, t[i]))];
        if (x < 0) throw internal_error("transfer: fixed coset left the subgroup");
        s[i] = x;
      }
      acc = coeff_add(acc, f.at(f.cs->class_of(s)));
    }
    r.vals[c] = acc;
  }
  return r;
}

ClassFunction external_product(ClassFunction const &f, GroupHom const &pf,
                               ClassFunction const &g, GroupHom const &pg, ClassSetPtr cs_prod) {
  check_class_set(f.ctx, cs_prod);
  if (!(f.ctx == g.ctx)) throw usage_error("external product: contexts differ");
  if (!f.total() || !g.total()) throw usage_error("external product: restricted-domain input");
  if (!same_group(*pf.src, *pg.src) || !same_group(*pf.src, *cs_prod->group()))
    throw usage_error("external product: projections do not share the product group");
  if (!same_group(*pf.dst, *f.cs->group()) || !same_group(*pg.dst, *g.cs->group()))
    throw usage_error("external product: projections do not match the factors");
  ClassFunction r = cf_zero(f.ctx, std::move(cs_prod));
  for (size_t c = 0; c < r.vals.size(); ++c) {
    std::vector<int> const &t = r.cs->rep(static_cast<int>(c));
    std::vector<int> a(t.size()), b(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      a[i] = pf(t[i]);
      b[i] = pg(t[i]);
    }
    r.vals[c] = coeff_mul(f.at(f.cs->class_of(a)), g.at(g.cs->class_of(b)));
  }
  return r;
}

ClassFunction twist(ClassFunction const &f, Isogeny const &phi) {
  if (!(f.ctx == phi.ctx)) throw usage_error("twist: contexts differ");
  if (!f.total()) throw usage_error("twist: restricted-domain input");
  if (f.domain) throw usage_error("twist: input already lives on a proper sublattice");
  PsiDualMatrix pd = psi_dual(phi);
  FiniteGroup const &G = *f.cs->group();
  ClassFunction r = cf_zero(f.ctx, f.cs);
  r.domain = pd.H;
  for (size_t c = 0; c < r.vals.size(); ++c) {
    std::vector<int> beta = tuple_change_of_basis(G, f.ctx, r.cs->rep(static_cast<int>(c)), pd.mat);
    r.vals[c] = coeff_act(f.ctx, phi.mat, f.at(f.cs->class_of(beta)));
  }
  return r;
}

namespace {

struct PowerEval {
  ClassFunction const &f;
  Section const &s;
  std::map<LevelDatum, CoeffValue, decltype(&level_datum_less)> cache{&level_datum_less};

  CoeffValue part_value(LevelDatum const &part) {
    auto it = cache.find(part);
    if (it != cache.end()) return it->second;
    Isogeny const &A = s.at(part.H);
    PsiDualMatrix pd = psi_dual(A);
    if (!(pd.H == part.H)) throw internal_error("power: section entry kernel mismatch");
    FiniteGroup const &G = *f.cs->group();
    std::vector<int> beta = tuple_change_of_basis(G, f.ctx, part.tuple, pd.mat);
    CoeffValue v = coeff_act(f.ctx, A.mat, f.at(f.cs->class_of(beta)));
    cache.emplace(part, v);
    return v;
  }
};

void check_power_inputs(ClassFunction const &f, WreathGroup const &wg, ClassSetPtr const &cs_w,
                        Section const &s) {
  check_class_set(f.ctx, cs_w);
  if (!(f.ctx == s.ctx)) throw usage_error("power: section context differs");
  if (!f.total()) throw usage_error("power: restricted-domain input");
  if (f.domain) throw usage_error("power: input lives on a proper sublattice");
  if (!same_group(*f.cs->group(), *wg.inner))
    throw usage_error("power: function does not live on the wreath inner group");
  if (!same_group(*cs_w->group(), *wg.W))
    throw usage_error("power: class set does not match the wreath group");
}

}  // namespace

ClassFunction power_op(ClassFunction const &f, WreathGroup const &wg, ClassSetPtr cs_w,
                       Section const &s) {
  check_power_inputs(f, wg, cs_w, s);
  ClassFunction r = cf_zero(f.ctx, std::move(cs_w));
  PowerEval ev{f, s};
  for (size_t c = 0; c < r.vals.size(); ++c) {
    SumDatum d = classify(wg, f.ctx, r.cs->rep(static_cast<int>(c)));
    CoeffValue v = coeff_const(Rat(1));
    for (auto const &part : d.parts) v = coeff_mul(v, ev.part_value(part));
    r.vals[c] = v;
  }
  return r;
}

ClassFunction power_mod_transfer(ClassFunction const &f, WreathGroup const &wg, ClassSetPtr cs_w,
                                 Section const &s) {
  check_power_inputs(f, wg, cs_w, s);
  ClassFunction r = cf_zero(f.ctx, std::move(cs_w));
  r.defined.assign(r.vals.size(), 0);
  PowerEval ev{f, s};
  for (size_t c = 0; c < r.vals.size(); ++c) {
    SumDatum d = classify(wg, f.ctx, r.cs->rep(static_cast<int>(c)));
    if (d.parts.size() != 1) continue;
    r.defined[c] = 1;
    r.vals[c] = ev.part_value(d.parts[0]);
  }
  return r;
}

ClassFunction adams(ClassFunction const &f, int k) {
  if (k < 0) throw usage_error("adams: negative exponent");
  if (!f.total()) throw usage_error("adams: restricted-domain input");
  if (f.domain) throw usage_error("adams: input lives on a proper sublattice");
  FiniteGroup const &G = *f.cs->group();
  Int e = pow_int(f.ctx.p, k);
  Mat A = Mat::scalar(f.ctx.n, e);
  ClassFunction r = cf_zero(f.ctx, f.cs);
  for (size_t c = 0; c < r.vals.size(); ++c) {
    std::vector<int> t = r.cs->rep(static_cast<int>(c));
    for (auto &x : t) {
      Int re = e % G.element_order(x);
      x = G.pow(x, re.convert_to<long long>());
    }
    r.vals[c] = coeff_act(f.ctx, A, f.at(f.cs->class_of(t)));
  }
  return r;
}

ClassFunction aut_act(ClassFunction const &f, Mat const &U) {
  if (U.rows() != f.ctx.n || U.cols() != f.ctx.n) throw usage_error("aut_act: matrix shape");
  Int d = U.det();
  if (d == 0 || vp(d, f.ctx.p) != 0) throw usage_error("aut_act: matrix is not a unit");
  ClassFunction r = twist(f, make_isogeny(f.ctx, U));
  r.domain = f.domain;  // trivial kernel: still the full lattice
  return r;
}

std::vector<Mat> unit_matrices(Context const &ctx, size_t cap) {
  int cells = ctx.n * ctx.n;
  long long q = ctx.pN();
  Int box = 1;
  for (int i = 0; i < cells; ++i) box *= q;
  if (box > Int(static_cast<unsigned long long>(cap)))
    throw cap_error("unit enumeration: p^(N n^2) exceeds the cap");
  std::vector<Mat> out;
  std::vector<long long> digits(static_cast<size_t>(cells), 0);
  for (;;) {
    Mat U(ctx.n, ctx.n);
    for (int i = 0; i < ctx.n; ++i)
      for (int j = 0; j < ctx.n; ++j) U.at(i, j) = digits[static_cast<size_t>(i * ctx.n + j)];
    Int d = U.det();
    if (d % ctx.p != 0) out.push_back(std::move(U));
    int i = cells;
    while (i > 0 && ++digits[static_cast<size_t>(i - 1)] == q) digits[static_cast<size_t>(--i)] = 0;
    if (i == 0) break;
  }
  return out;
}

ClassFunction aut_average(ClassFunction const &f, size_t cap) {
  if (!f.total()) throw usage_error("aut_average: restricted-domain input");
  if (f.domain) throw usage_error("aut_average: input lives on a proper sublattice");
  std::vector<Mat> units = unit_matrices(f.ctx, cap);
  ClassFunction acc = cf_zero(f.ctx, f.cs);
  for (auto const &U : units) acc = cf_add(acc, aut_act(f, U));
  return cf_scale(acc, Rat(1, static_cast<long long>(units.size())));
}

namespace {

long long pow_mod_ll(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

// generators of (Z/p^N)^*: primitive root for odd p, {-1, 5} for p = 2
std::vector<long long> unit_gens(long long p, int N, long long q) {
  if (p == 2) {
    if (N == 1) return {};
    if (N == 2) return {3};
    return {q - 1, 5};
  }
  std::vector<long long> primes;
  long long r = p - 1;
  for (long long d = 2; d * d <= r; ++d)
    while (r % d == 0) {
      if (primes.empty() || primes.back() != d) primes.push_back(d);
      r /= d;
    }
  if (r > 1) primes.push_back(r);
  long long g = 2;
  for (;; ++g) {
    bool ok = true;
    for (long long ell : primes)
      if (pow_mod_ll(g, (p - 1) / ell, p) == 1) {
        ok = false;
        break;
      }
    if (ok) break;
  }
  if (N >= 2 && pow_mod_ll(g, p - 1, p * p) == 1) g += p;
  return {g % q};
}

}  // namespace

std::vector<Mat> aut_generators(Context const &ctx) {
  std::vector<Mat> gens;
  for (long long u : unit_gens(ctx.p, ctx.N, ctx.pN())) {
    Mat D = Mat::identity(ctx.n);
    D.at(0, 0) = u;
    gens.push_back(std::move(D));
  }
  for (int i = 0; i < ctx.n; ++i)
    for (int j = 0; j < ctx.n; ++j) {
      if (i == j) continue;
      Mat T = Mat::identity(ctx.n);
      T.at(i, j) = 1;
      gens.push_back(std::move(T));
    }
  return gens;
}

bool is_aut_invariant(ClassFunction const &f) {
  for (auto const &U : aut_generators(f.ctx))
    if (!cf_equal(aut_act(f, U), f)) return false;
  return true;
}

}  // namespace charpow
