#include "charpow/padic.hpp"

#include "charpow/errors.hpp"

#include <algorithm>
#include <sstream>

namespace charpow {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Context::Context(long long p_, int n_, int N_) : p(p_), n(n_), N(N_) {
  if (!is_prime(p)) throw usage_error("context: p must be prime");
  if (n < 1) throw usage_error("context: n must be >= 1");
  if (N < 1) throw usage_error("context: torsion level N must be >= 1");
  Int q = pow_int(p, N);
  if (q > Int((1LL << 31))) throw cap_error("context: p^N exceeds the supported range");
  pN_ = q.convert_to<long long>();
}

TorsionVector normalize(Context const &ctx, std::vector<long long> coords) {
  if (static_cast<int>(coords.size()) != ctx.n)
    throw usage_error("torsion vector: wrong number of coordinates");
  long long q = ctx.pN();
  for (auto &c : coords) {
    c %= q;
    if (c < 0) c += q;
  }
  return TorsionVector{std::move(coords)};
}

TorsionVector tv_add(Context const &ctx, TorsionVector const &a, TorsionVector const &b) {
  std::vector<long long> c(ctx.n);
  for (int i = 0; i < ctx.n; ++i) c[i] = a.coords[i] + b.coords[i];
  return normalize(ctx, std::move(c));
}

TorsionVector tv_scale(Context const &ctx, long long k, TorsionVector const &a) {
  std::vector<long long> c(ctx.n);
  long long q = ctx.pN();
  long long kk = k % q;
  if (kk < 0) kk += q;
  for (int i = 0; i < ctx.n; ++i) c[i] = (a.coords[i] % q) * kk % q;
  return normalize(ctx, std::move(c));
}

Int elem_order(Context const &ctx, TorsionVector const &v) {
  // order = p^(N - min_i v_p(c_i)), with v_p(0) treated as N
  long long minval = ctx.N;
  for (long long c : v.coords) {
    if (c == 0) continue;
    minval = std::min(minval, vp(Int(c), ctx.p));
  }
  return pow_int(ctx.p, ctx.N - minval);
}

bool subgroup_less(FiniteSubgroup const &a, FiniteSubgroup const &b) {
  if (a.order_exp != b.order_exp) return a.order_exp < b.order_exp;
  return lex_less(a.basis, b.basis);
}

namespace {

// |H| = p^(nN)/det(basis); returns the exponent, validating the det shape.
int order_exp_from_basis(Context const &ctx, Mat const &B) {
  Int d = B.det();
  if (d <= 0) throw internal_error("subgroup basis with non-positive determinant");
  long long v = vp(d, ctx.p);
  if (pow_int(ctx.p, v) != d)
    throw usage_error("subgroup basis determinant is not a power of p");
  long long k = static_cast<long long>(ctx.n) * ctx.N - v;
  if (k < 0) throw usage_error("subgroup basis lattice larger than Z^n");
  return static_cast<int>(k);
}

bool divides_scalar(Mat const &B, Int const &s) {
  // true iff s * B^{-1} is integral, i.e. the lattice contains s Z^n
  auto X = solve_integral(B, Mat::scalar(B.rows(), s));
  return X.has_value();
}

}  // namespace

FiniteSubgroup trivial_subgroup(Context const &ctx) {
  return FiniteSubgroup{ctx, 0, Mat::scalar(ctx.n, pow_int(ctx.p, ctx.N))};
}

FiniteSubgroup full_torsion_subgroup(Context const &ctx, int k) {
  if (k < 0 || k > ctx.N) throw precision_error("full torsion subgroup: level exceeds N");
  return FiniteSubgroup{ctx, ctx.n * k, Mat::scalar(ctx.n, pow_int(ctx.p, ctx.N - k))};
}

FiniteSubgroup subgroup_from_generators(Context const &ctx,
                                        std::vector<TorsionVector> const &gens) {
  int n = ctx.n;
  Mat A(n, static_cast<int>(gens.size()) + n);
  for (size_t g = 0; g < gens.size(); ++g) {
    if (static_cast<int>(gens[g].coords.size()) != n)
      throw usage_error("generator has wrong length");
    for (int i = 0; i < n; ++i) A.at(i, static_cast<int>(g)) = gens[g].coords[i] % ctx.pN();
  }
  Int q = pow_int(ctx.p, ctx.N);
  for (int i = 0; i < n; ++i) A.at(i, static_cast<int>(gens.size()) + i) = q;
  Mat B = hnf(A);
  return FiniteSubgroup{ctx, order_exp_from_basis(ctx, B), B};
}

FiniteSubgroup subgroup_from_basis(Context const &ctx, Mat const &basis) {
  if (basis.rows() != ctx.n || basis.cols() != ctx.n)
    throw usage_error("subgroup basis: wrong shape");
  Mat B = hnf(basis);
  if (!(B == basis)) throw usage_error("subgroup basis: not in Hermite normal form");
  if (!divides_scalar(B, pow_int(ctx.p, ctx.N)))
    throw usage_error("subgroup basis: lattice does not contain p^N Z^n");
  return FiniteSubgroup{ctx, order_exp_from_basis(ctx, B), B};
}

bool subgroup_contains(FiniteSubgroup const &big, FiniteSubgroup const &small) {
  if (!(big.ctx == small.ctx)) throw usage_error("subgroup_contains: context mismatch");
  return solve_integral(big.basis, small.basis).has_value();
}

bool subgroup_contains_vector(FiniteSubgroup const &H, TorsionVector const &v) {
  Mat c(H.ctx.n, 1);
  for (int i = 0; i < H.ctx.n; ++i) c.at(i, 0) = v.coords[i];
  return solve_integral(H.basis, c).has_value();
}

std::vector<TorsionVector> subgroup_elements(FiniteSubgroup const &H) {
  Context const &ctx = H.ctx;
  int n = ctx.n;
  // Enumerate lattice points B*x over the HNF fundamental box of p^N Z^n in L:
  // x_i in [0, p^N / B_ii).
  std::vector<long long> radix(n);
  long long q = ctx.pN();
  for (int i = 0; i < n; ++i) {
    long long d = H.basis.at(i, i).convert_to<long long>();
    radix[i] = q / d;
  }
  std::vector<TorsionVector> out;
  std::vector<long long> x(n, 0);
  for (;;) {
    std::vector<long long> c(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        c[i] += H.basis.at(i, j).convert_to<long long>() % q * x[j] % q;
    out.push_back(normalize(ctx, std::move(c)));
    int i = n - 1;
    while (i >= 0 && ++x[i] == radix[i]) x[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end(),
            [](TorsionVector const &a, TorsionVector const &b) { return a.coords < b.coords; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](TorsionVector const &a, TorsionVector const &b) {
                          return a.coords == b.coords;
                        }),
            out.end());
  return out;
}

int subgroup_exponent(FiniteSubgroup const &H) {
  // smallest e with p^e H = 0, i.e. p^e L <= p^N Z^n
  Context const &ctx = H.ctx;
  for (int e = 0; e <= ctx.N; ++e) {
    bool ok = true;
    Int pe = pow_int(ctx.p, e), q = pow_int(ctx.p, ctx.N);
    for (int i = 0; i < ctx.n && ok; ++i)
      for (int j = 0; j <= i && ok; ++j)
        if ((H.basis.at(i, j) * pe) % q != 0) ok = false;
    if (ok) return e;
  }
  throw internal_error("subgroup_exponent: exceeded N");
}

std::vector<FiniteSubgroup> enumerate_subgroups(Context const &ctx, int k) {
  if (k < 0) throw usage_error("enumerate_subgroups: negative order exponent");
  if (k > ctx.n * ctx.N)
    throw precision_error("enumerate_subgroups: order exceeds Lambda^*[p^N]");
  int n = ctx.n;
  long long target = static_cast<long long>(n) * ctx.N - k;  // det = p^target
  Int q = pow_int(ctx.p, ctx.N);

  std::vector<FiniteSubgroup> out;
  // Diagonal exponent profiles a_i in [0, N] with sum = target, then all HNF
  // fillings below the diagonal, filtered by p^N Z^n containment.
  std::vector<int> a(n, 0);
  auto emit_profile = [&](auto &&self, int pos, long long rem) -> void {
    if (pos == n) {
      if (rem != 0) return;
      // below-diagonal entries: B[i][j] in [0, p^a_i) for j < i
      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) slots.emplace_back(i, j);
      Mat B(n, n);
      for (int i = 0; i < n; ++i) B.at(i, i) = pow_int(ctx.p, a[i]);
      auto fill = [&](auto &&fs, size_t s) -> void {
        if (s == slots.size()) {
          if (divides_scalar(B, q)) {
            Mat C = B;
            out.push_back(FiniteSubgroup{ctx, k, C});
          }
          return;
        }
        auto [i, j] = slots[s];
        long long lim = pow_int(ctx.p, a[i]).convert_to<long long>();
        for (long long v = 0; v < lim; ++v) {
          B.at(i, j) = v;
          fs(fs, s + 1);
        }
        B.at(i, j) = 0;
      };
      fill(fill, 0);
      return;
    }
    for (int ai = 0; ai <= ctx.N && ai <= rem; ++ai) {
      a[pos] = ai;
      self(self, pos + 1, rem - ai);
    }
  };
  emit_profile(emit_profile, 0, target);
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

Mat annihilator_basis(FiniteSubgroup const &H) {
  // Lambda_H = p^N (B^T)^{-1} Z^n, integral because L >= p^N Z^n.
  Context const &ctx = H.ctx;
  auto X = solve_integral(H.basis, Mat::scalar(ctx.n, pow_int(ctx.p, ctx.N)));
  if (!X) throw internal_error("annihilator_basis: p^N B^{-1} not integral");
  return hnf(X->transpose());
}

FiniteSubgroup subgroup_image(Context const &ctx, Mat const &A, FiniteSubgroup const &H) {
  if (!(H.ctx == ctx)) throw usage_error("subgroup_image: context mismatch");
  int n = ctx.n;
  Mat AB = A * H.basis;
  Mat cat(n, 2 * n);
  Int q = pow_int(ctx.p, ctx.N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cat.at(i, j) = AB.at(i, j);
      cat.at(i, n + j) = (i == j) ? q : Int(0);
    }
  Mat B = hnf(cat);
  return FiniteSubgroup{ctx, order_exp_from_basis(ctx, B), B};
}

FiniteSubgroup subgroup_preimage(Context const &ctx, Mat const &A, FiniteSubgroup const &K) {
  if (!(K.ctx == ctx)) throw usage_error("subgroup_preimage: context mismatch");
  Int dA = A.det();
  if (dA == 0) throw usage_error("subgroup_preimage: singular matrix");
  // {c : A c in L_K} = {c : (B_K^{-1} A) c integral}
  ScaledMat R = solve_scaled(K.basis, A);
  Mat L = kernel_mod(R.num, R.den);
  FiniteSubgroup P{ctx, order_exp_from_basis(ctx, L), L};
  // completeness: full preimage in Lambda^* has order |K| * p^(v_p(det A))
  long long want = K.order_exp + vp(dA, ctx.p);
  if (P.order_exp != want)
    throw precision_error("subgroup_preimage: preimage needs torsion beyond level N");
  return P;
}

std::string subgroup_to_string(FiniteSubgroup const &H) {
  std::ostringstream os;
  os << "p^" << H.order_exp << ":[";
  for (int i = 0; i < H.basis.rows(); ++i) {
    if (i) os << ";";
    for (int j = 0; j < H.basis.cols(); ++j) {
      if (j) os << ",";
      os << H.basis.at(i, j);
    }
  }
  os << "]";
  return os.str();
}

}  // namespace charpow
