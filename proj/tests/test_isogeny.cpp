#include "doctest.h"

#include "charpow/errors.hpp"
#include "charpow/isogeny.hpp"

#include <map>
#include <set>
#include <vector>

using namespace charpow;

namespace {

Mat mat2(long long a, long long b, long long c, long long d) {
  Mat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

TorsionVector tv(Context const &ctx, std::vector<long long> coords) {
  return normalize(ctx, std::move(coords));
}

// every product of order-p section steps along every maximal chain below H --
// Prop-style independence means this set is a singleton equal to s[H]
struct ChainOracle {
  Section const &s;
  std::vector<FiniteSubgroup> atoms;  // all order-p subgroups
  std::map<Mat, std::set<Mat, decltype(&lex_less)>, decltype(&lex_less)> memo{&lex_less};

  explicit ChainOracle(Section const &sec) : s(sec), atoms(enumerate_subgroups(sec.ctx, 1)) {}

  std::set<Mat, decltype(&lex_less)> const &chains(FiniteSubgroup const &H) {
    auto it = memo.find(H.basis);
    if (it != memo.end()) return it->second;
    std::set<Mat, decltype(&lex_less)> out(&lex_less);
    if (H.order_exp == 0) {
      out.insert(Mat::identity(s.ctx.n));
    } else {
      for (auto const &K : atoms) {
        if (!subgroup_contains(H, K)) continue;
        Mat const &step = s.at(K).mat;
        FiniteSubgroup img = subgroup_image(s.ctx, step, H);
        for (auto const &rest : chains(img)) out.insert(rest * step);
      }
    }
    return memo.emplace(H.basis, std::move(out)).first->second;
  }
};

}  // namespace

TEST_CASE("isogeny construction") {
  Context ctx(2, 2, 2);
  Isogeny A = make_isogeny(ctx, mat2(0, 2, 1, 0));
  CHECK(A.det_val == 1);
  CHECK(make_isogeny(ctx, Mat::scalar(2, 4)).det_val == 4);
  CHECK(make_isogeny(ctx, Mat::identity(2)).det_val == 0);
  CHECK_THROWS_AS(make_isogeny(ctx, mat2(1, 2, 2, 4)), usage_error);
  CHECK_THROWS_AS(make_isogeny(ctx, Mat::identity(3)), usage_error);
}

TEST_CASE("kernels") {
  Context ctx(2, 2, 2);
  CHECK(kernel(make_isogeny(ctx, mat2(0, 2, 1, 0))) ==
        subgroup_from_generators(ctx, {tv(ctx, {0, 2})}));  // <(0,1/2)>
  CHECK(kernel(make_isogeny(ctx, mat2(-1, 1, 1, 1))) ==
        subgroup_from_generators(ctx, {tv(ctx, {2, 2})}));  // <(1/2,1/2)>
  CHECK(kernel(make_isogeny(ctx, Mat::scalar(2, 2))) == full_torsion_subgroup(ctx, 1));
  Context deep(2, 2, 4);
  CHECK(kernel(make_isogeny(deep, Mat::scalar(2, 4))) == full_torsion_subgroup(deep, 2));

  // det valuation beyond N refused, even when the kernel itself would fit
  CHECK_THROWS_AS(kernel(make_isogeny(ctx, Mat::scalar(2, 4))), precision_error);
  Context shallow(2, 2, 1);
  CHECK_THROWS_AS(kernel(make_isogeny(shallow, Mat::scalar(2, 4))), precision_error);
}

TEST_CASE("composition") {
  Context ctx(2, 2, 2);
  Isogeny A = make_isogeny(ctx, mat2(-1, 1, 1, 1));
  Isogeny B = make_isogeny(ctx, mat2(0, 2, 1, 0));
  Isogeny I = make_isogeny(ctx, Mat::identity(2));
  CHECK(compose(A, I).mat == A.mat);
  CHECK(compose(I, A).mat == A.mat);

  // both height-2 order-2 matrices square to multiplication by 2
  CHECK(compose(A, A).mat == Mat::scalar(2, 2));
  CHECK(compose(B, B).mat == Mat::scalar(2, 2));
  CHECK(compose(A, A).det_val == 2);
  CHECK(compose(A, B).det_val == A.det_val + B.det_val);
}

TEST_CASE("psi dual matrices") {
  Context ctx(2, 2, 2);
  CHECK(psi_dual(make_isogeny(ctx, Mat::identity(2))).mat == Mat::identity(2));
  CHECK(psi_dual(make_isogeny(ctx, Mat::scalar(2, 2))).mat == Mat::identity(2));

  Isogeny A = make_isogeny(ctx, mat2(0, 2, 1, 0));
  PsiDualMatrix pd = psi_dual(A);
  CHECK(annihilator_basis(pd.H) == mat2(1, 0, 0, 2));
  CHECK(pd.mat == mat2(0, 1, 1, 0));

  // defining property over a whole section: B * mat == A^T mod p^N and the
  // determinant is a p-unit
  Context deep(2, 2, 4);
  Section s = build_power_section(deep, 2);
  for (auto const &[H, phi] : s.table) {
    PsiDualMatrix q = psi_dual(phi);
    CHECK(q.H == H);
    Mat B = annihilator_basis(H);
    CHECK((B * q.mat).mod(deep.pN()) == phi.mat.transpose().mod(deep.pN()));
    CHECK(q.mat.det() % deep.p != 0);
  }
}

TEST_CASE("built power section, frozen order-2 values") {
  Context ctx(2, 2, 4);
  Section s = build_power_section(ctx, 2);
  CHECK(s.level == 2);
  CHECK(s.table.size() == 15);  // every subgroup of (Z/4)^2

  FiniteSubgroup h10 = subgroup_from_generators(ctx, {tv(ctx, {8, 0})});   // <(1/2,0)>
  FiniteSubgroup h01 = subgroup_from_generators(ctx, {tv(ctx, {0, 8})});   // <(0,1/2)>
  FiniteSubgroup h11 = subgroup_from_generators(ctx, {tv(ctx, {8, 8})});   // <(1/2,1/2)>
  CHECK(s.at(h10).mat == mat2(0, 1, 2, 0));
  CHECK(s.at(h01).mat == mat2(0, 2, 1, 0));
  CHECK(s.at(h11).mat == mat2(-1, 1, 1, 1));
  CHECK(s.at(full_torsion_subgroup(ctx, 1)).mat == Mat::scalar(2, 2));
  CHECK(s.at(full_torsion_subgroup(ctx, 2)).mat == Mat::scalar(2, 4));
  CHECK(s.at(trivial_subgroup(ctx)).mat == Mat::identity(2));

  // every entry has the right kernel
  for (auto const &[H, phi] : s.table) CHECK(kernel(phi) == H);

  // missing entry is a hard error
  Context big(2, 2, 6);
  FiniteSubgroup deep3 = full_torsion_subgroup(big, 3);
  CHECK(!s.has(full_torsion_subgroup(ctx, 3)));
  CHECK_THROWS_AS(s.at(full_torsion_subgroup(ctx, 3)), usage_error);
  (void)deep3;
}

TEST_CASE("height-1 sections are scalar powers") {
  for (long long p : {2, 3}) {
    Context ctx(p, 1, 3);
    Section s = build_power_section(ctx, 3);
    CHECK(s.table.size() == 4);
    for (int k = 0; k <= 3; ++k)
      CHECK(s.at(full_torsion_subgroup(ctx, k)).mat == Mat::scalar(1, pow_int(p, k)));
    CHECK(is_power_section(s));
  }
  // the Z/9 value at p = 3 is multiplication by 9
  Context c3(3, 1, 2);
  CHECK(build_power_section(c3, 2).at(full_torsion_subgroup(c3, 2)).mat ==
        Mat::scalar(1, 9));
}

TEST_CASE("order-p values satisfy the three height-2 conditions") {
  for (long long p : {2, 3, 5}) {
    Context ctx(p, 2, 2);
    Section s = build_power_section(ctx, 1);
    FiniteSubgroup torsion = full_torsion_subgroup(ctx, 1);
    auto atoms = enumerate_subgroups(ctx, 1);
    CHECK(atoms.size() == static_cast<size_t>(p + 1));
    for (auto const &H : atoms) {
      Mat const &A = s.at(H).mat;
      CHECK(A * A == Mat::scalar(2, p));
      CHECK(kernel(s.at(H)) == H);
      CHECK(subgroup_image(ctx, A, torsion) == H);
    }
  }
}

TEST_CASE("composition series independence") {
  for (long long p : {2, 3}) {
    Context ctx(p, 2, 4);
    Section s = build_power_section(ctx, 2);
    ChainOracle oracle(s);
    for (auto const &[H, phi] : s.table) {
      auto const &prods = oracle.chains(H);
      REQUIRE(prods.size() == 1);
      CHECK(*prods.begin() == phi.mat);
    }
  }
}

TEST_CASE("power section verification") {
  Context ctx(2, 2, 6);
  Section s = build_power_section(ctx, 3);
  CHECK(s.table.size() == 37);  // every subgroup of (Z/8)^2
  CHECK(!section_defect(s).has_value());
  CHECK(is_power_section(s));
}

TEST_CASE("section construction guards") {
  CHECK_THROWS_AS(build_power_section(Context(2, 3, 4), 1), usage_error);
  CHECK_THROWS_AS(build_power_section(Context(2, 2, 2), 3), precision_error);
  CHECK_THROWS_AS(build_power_section(Context(2, 2, 3), 2), precision_error);
}

TEST_CASE("section mutation") {
  Context ctx(2, 2, 4);
  Section s = build_power_section(ctx, 2);
  FiniteSubgroup H = enumerate_subgroups(ctx, 1).front();

  // identity unit: nothing changes
  Section same = mutate_section(s, H, Mat::identity(2));
  for (auto const &[K, phi] : s.table) CHECK(same.at(K).mat == phi.mat);

  // transvection unit: kernels survive, the section property does not
  Mat u = Mat::identity(2);
  u.at(0, 1) = 1;
  Section bad = mutate_section(s, H, u);
  CHECK(kernel(bad.at(H)) == H);
  CHECK(bad.at(H).mat == u * s.at(H).mat);
  CHECK(!is_power_section(bad));
  auto defect = section_defect(bad);
  REQUIRE(defect.has_value());
  CHECK(!defect->empty());

  // non-unit mutations are rejected
  CHECK_THROWS_AS(mutate_section(s, H, Mat::scalar(2, 2)), usage_error);
}

TEST_CASE("shipped mutation configs break their sections") {
  auto configs = shipped_mutations();
  REQUIRE(configs.size() == 3);
  std::set<std::string> names;
  for (auto const &cfg : configs) {
    names.insert(cfg.name);
    Section s = build_power_section(cfg.ctx, cfg.level);
    CHECK(is_power_section(s));
    FiniteSubgroup H = subgroup_from_basis(cfg.ctx, cfg.subgroup_basis);
    Section bad = mutate_section(s, H, cfg.unit);
    CHECK(kernel(bad.at(H)) == H);
    CHECK(!is_power_section(bad));
  }
  CHECK(names.size() == 3);
}
