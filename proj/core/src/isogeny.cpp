#include "charpow/isogeny.hpp"

#include "charpow/errors.hpp"

#include <sstream>

namespace charpow {

Isogeny make_isogeny(Context const &ctx, Mat const &mat) {
  if (mat.rows() != ctx.n || mat.cols() != ctx.n)
    throw usage_error("isogeny: matrix must be n x n");
  Int d = mat.det();
  if (d == 0) throw usage_error("isogeny: determinant must be nonzero");
  return Isogeny{ctx, mat, vp(d, ctx.p)};
}

Isogeny compose(Isogeny const &after, Isogeny const &before) {
  if (!(after.ctx == before.ctx)) throw usage_error("compose: context mismatch");
  return make_isogeny(after.ctx, after.mat * before.mat);
}

FiniteSubgroup kernel(Isogeny const &A) {
  Context const &ctx = A.ctx;
  if (A.det_val > ctx.N)
    throw precision_error("kernel: det valuation exceeds torsion level N");
  // {c : A c == 0 mod p^N}
  Mat L = kernel_mod(A.mat, pow_int(ctx.p, ctx.N));
  FiniteSubgroup H{ctx, 0, L};
  Int d = L.det();
  long long v = vp(d, ctx.p);
  H.order_exp = static_cast<int>(static_cast<long long>(ctx.n) * ctx.N - v);
  if (H.order_exp != A.det_val) throw internal_error("kernel: order does not match det valuation");
  return H;
}

PsiDualMatrix psi_dual(Isogeny const &A) {
  Context const &ctx = A.ctx;
  FiniteSubgroup H = kernel(A);
  Mat B = annihilator_basis(H);
  auto X = solve_integral(B, A.mat.transpose());
  if (!X) throw internal_error("psi_dual: A^T does not land in Lambda_H");
  Mat mat = X->mod(pow_int(ctx.p, ctx.N));
  if (mat.det() % ctx.p == 0) throw internal_error("psi_dual: matrix not invertible mod p");
  return PsiDualMatrix{H, mat};
}

Isogeny const &Section::at(FiniteSubgroup const &H) const {
  auto it = table.find(H);
  if (it == table.end())
    throw usage_error("section: no entry for subgroup " + subgroup_to_string(H));
  return it->second;
}

bool Section::has(FiniteSubgroup const &H) const { return table.count(H) != 0; }

namespace {

// The p+1 order-p subgroups at n = 2 carry the explicit height-2 matrices.
Mat order_p_matrix(Context const &ctx, FiniteSubgroup const &H) {
  long long p = ctx.p;
  Int pN1 = pow_int(p, ctx.N - 1);
  // <(0, 1/p)>?
  {
    TorsionVector v = normalize(ctx, {0, pN1.convert_to<long long>()});
    if (subgroup_contains_vector(H, v)) {
      Mat A(2, 2);
      A.at(0, 1) = p;
      A.at(1, 0) = 1;
      return A;
    }
  }
  for (long long i = 0; i < p; ++i) {
    TorsionVector v =
        normalize(ctx, {pN1.convert_to<long long>(), i * pN1.convert_to<long long>()});
    if (subgroup_contains_vector(H, v)) {
      Mat A(2, 2);
      A.at(0, 0) = -i;
      A.at(0, 1) = 1;
      A.at(1, 0) = p - i * i;
      A.at(1, 1) = i;
      return A;
    }
  }
  throw internal_error("order_p_matrix: subgroup matched no generator form");
}

}  // namespace

Section build_power_section(Context const &ctx, int level) {
  if (level < 0 || level > ctx.N) throw precision_error("section: level exceeds N");
  if (ctx.n != 1 && ctx.n != 2)
    throw usage_error("section: power sections are built for n in {1, 2} only");
  if (ctx.N < ctx.n * level)
    throw precision_error("section: need N >= n*level so every kernel verifies");

  Section s;
  s.ctx = ctx;
  s.level = level;

  if (ctx.n == 1) {
    for (int k = 0; k <= level; ++k) {
      FiniteSubgroup H = full_torsion_subgroup(ctx, k);
      s.table.emplace(H, make_isogeny(ctx, Mat::scalar(1, pow_int(ctx.p, k))));
    }
    return s;
  }

  // n == 2: all subgroups of Lambda^*[p^level], grouped by order
  std::vector<FiniteSubgroup> subs;
  for (int k = 0; k <= 2 * level; ++k)
    for (auto &H : enumerate_subgroups(ctx, k))
      if (subgroup_exponent(H) <= level) subs.push_back(H);

  std::map<FiniteSubgroup, Mat, decltype(&subgroup_less)> memo(&subgroup_less);
  std::vector<FiniteSubgroup> atoms = enumerate_subgroups(ctx, 1);

  auto build = [&](auto &&self, FiniteSubgroup const &H) -> Mat {
    auto it = memo.find(H);
    if (it != memo.end()) return it->second;
    Mat result = Mat::identity(2);
    if (H.order_exp > 0) {
      // least order-p subgroup of H; atoms are sorted, take the first hit
      FiniteSubgroup const *K = nullptr;
      for (auto const &cand : atoms)
        if (subgroup_contains(H, cand)) {
          K = &cand;
          break;
        }
      if (!K) throw internal_error("section build: no order-p subgroup found");
      Mat AK = order_p_matrix(ctx, *K);
      FiniteSubgroup Himg = subgroup_image(ctx, AK, H);
      result = self(self, Himg) * AK;
    }
    memo.emplace(H, result);
    return result;
  };

  for (auto const &H : subs) s.table.emplace(H, make_isogeny(ctx, build(build, H)));

  // re-verify: each entry's kernel is its subgroup
  for (auto const &[H, A] : s.table)
    if (!(kernel(A) == H)) throw internal_error("section build: kernel mismatch");
  return s;
}

std::optional<std::string> section_defect(Section const &s) {
  for (auto const &[H, AH] : s.table) {
    for (auto const &[T, AT] : s.table) {
      if (!subgroup_contains(T, H)) continue;
      FiniteSubgroup Q = subgroup_image(s.ctx, AH.mat, T);
      if (!s.has(Q)) {
        std::ostringstream os;
        os << "image subgroup " << subgroup_to_string(Q) << " of pair H="
           << subgroup_to_string(H) << " T=" << subgroup_to_string(T) << " not covered";
        return os.str();
      }
      Mat lhs = AT.mat;
      Mat rhs = s.at(Q).mat * AH.mat;
      if (!(lhs == rhs)) {
        std::ostringstream os;
        os << "phi_T != phi_{phi_H(T)} . phi_H at H=" << subgroup_to_string(H)
           << " T=" << subgroup_to_string(T);
        return os.str();
      }
    }
  }
  return std::nullopt;
}

bool is_power_section(Section const &s) { return !section_defect(s).has_value(); }

Section mutate_section(Section const &s, FiniteSubgroup const &H, Mat const &u) {
  if (u.rows() != s.ctx.n || u.cols() != s.ctx.n) throw usage_error("mutate: unit must be n x n");
  Int d = u.det();
  if (d == 0 || vp(d, s.ctx.p) != 0) throw usage_error("mutate: matrix is not a unit mod p");
  if (!s.has(H)) throw usage_error("mutate: subgroup not in section table");
  Section out = s;
  Isogeny mutated = make_isogeny(s.ctx, u * s.at(H).mat);
  if (!(kernel(mutated) == H)) throw internal_error("mutate: kernel changed");
  out.table.erase(H);
  out.table.emplace(H, mutated);
  return out;
}

std::vector<MutationConfig> shipped_mutations() {
  std::vector<MutationConfig> out;
  {
    // n=1, p=2: scale phi_{Z/2} by the unit 3; visible from level N=6 on
    Context c(2, 1, 6);
    Mat basis(1, 1);
    basis.at(0, 0) = 32;  // lattice 2^{N-1} Z: the subgroup Z/2
    Mat u(1, 1);
    u.at(0, 0) = 3;
    out.push_back({"n1-p2-unit3", c, 2, basis, u});
  }
  {
    // n=1, p=3: scale phi_{Z/3} by the unit 2
    Context c(3, 1, 4);
    Mat basis(1, 1);
    basis.at(0, 0) = 27;
    Mat u(1, 1);
    u.at(0, 0) = 2;
    out.push_back({"n1-p3-unit2", c, 2, basis, u});
  }
  {
    // n=2, p=2: transvection at H = <(1/2, 0)>
    Context c(2, 2, 4);
    Mat basis(2, 2);
    basis.at(0, 0) = 8;
    basis.at(1, 1) = 16;
    Mat u = Mat::identity(2);
    u.at(0, 1) = 1;
    out.push_back({"n2-p2-transvection", c, 2, basis, u});
  }
  return out;
}

}  // namespace charpow
