#include "doctest.h"

#include "charpow/classfn.hpp"
#include "charpow/classify.hpp"
#include "charpow/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace charpow;

namespace {

TorsionVector tv(Context const &ctx, std::vector<long long> coords) {
  return normalize(ctx, std::move(coords));
}

int order_4_generator(FiniteGroup const &G) {
  for (int i = 0; i < static_cast<int>(G.order()); ++i)
    if (G.element_order(i) == 4) return i;
  REQUIRE(false);
  return -1;
}

// exhaustive conjugacy test, independent of canonical_tuple
bool conjugate_tuples(FiniteGroup const &W, std::vector<int> const &a, std::vector<int> const &b) {
  for (int g = 0; g < static_cast<int>(W.order()); ++g) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) ok = W.conj(g, a[i]) == b[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("canonical tuples") {
  GroupPtr S3 = make_group("S3");
  for (auto const &t : commuting_tuples(*S3, 2, 2)) {
    auto c = canonical_tuple(*S3, t);
    CHECK(c <= t);
    CHECK(conjugate_tuples(*S3, t, c));
    for (int g = 0; g < 6; ++g) {
      std::vector<int> conj{S3->conj(g, t[0]), S3->conj(g, t[1])};
      CHECK(canonical_tuple(*S3, conj) == c);
    }
  }
}

TEST_CASE("classify a transitive C2 wreath tuple") {
  Context ctx(2, 1, 2);
  GroupPtr C2 = make_group("C2");
  WreathGroup wg = wreath_product(C2, 2);

  // (e, g; (12)) squares to the diagonal (g, g; e), so alpha_bar = (g) on Z/2
  int t = wg.encode_index({0, 1}, Perm{1, 0});
  LevelDatum d = classify_transitive(wg, ctx, {t});
  CHECK(d.H == full_torsion_subgroup(ctx, 1));
  CHECK(d.tuple == std::vector<int>{1});

  // conjugate inputs classify identically
  for (int g = 0; g < static_cast<int>(wg.W->order()); ++g) {
    LevelDatum dc = classify_transitive(wg, ctx, {wg.W->conj(g, t)});
    CHECK(dc == d);
  }
}

TEST_CASE("classify at m = 1 is the class itself") {
  Context ctx(2, 1, 1);
  GroupPtr C4 = make_group("C4");
  WreathGroup wg = wreath_product(C4, 1);
  int g = order_4_generator(*C4);
  int w = wg.encode_index({g}, Perm{0});
  LevelDatum d = classify_transitive(wg, ctx, {w});
  CHECK(d.H == trivial_subgroup(ctx));
  CHECK(d.tuple == canonical_tuple(*C4, {g}));
}

TEST_CASE("classify a height-2 transitive pair") {
  Context ctx(2, 2, 2);
  GroupPtr C2 = make_group("C2");
  WreathGroup wg = wreath_product(C2, 2);

  int diag = wg.encode_index({1, 1}, Perm{0, 1});
  int swap = wg.encode_index({0, 1}, Perm{1, 0});
  LevelDatum d = classify_transitive(wg, ctx, {diag, swap});
  CHECK(d.H == subgroup_from_generators(ctx, {tv(ctx, {0, 2})}));  // <(0,1/2)>
  CHECK(annihilator_basis(d.H) == [] {
    Mat m(2, 2);
    m.at(0, 0) = 1;
    m.at(1, 1) = 2;
    return m;
  }());
  CHECK(d.tuple == std::vector<int>{1, 1});  // (g, g)
}

TEST_CASE("classify splits orbits") {
  Context ctx(2, 1, 1);
  GroupPtr C2 = make_group("C2");
  WreathGroup wg = wreath_product(C2, 2);

  int diag = wg.encode_index({1, 1}, Perm{0, 1});
  SumDatum d = classify(wg, ctx, {diag});
  REQUIRE(d.parts.size() == 2);
  for (auto const &part : d.parts) {
    CHECK(part.H == trivial_subgroup(ctx));
    CHECK(part.tuple == std::vector<int>{1});
  }
}

TEST_CASE("classify a bare symmetric-group pair") {
  Context ctx(2, 2, 1);
  GroupPtr e = make_group("trivial");
  WreathGroup wg = wreath_product(e, 2);
  REQUIRE(same_group(*wg.W, *sym_group(2)));

  // first slot swaps, second is trivial: the subgroup dual to the first
  // coordinate projection
  int swap = wg.W->index_of(Perm{1, 0});
  SumDatum d = classify(wg, ctx, {swap, 0});
  REQUIRE(d.parts.size() == 1);
  CHECK(d.parts[0].H == subgroup_from_generators(ctx, {tv(ctx, {1, 0})}));  // <(1/2,0)>
  CHECK(d.parts[0].tuple == std::vector<int>{0, 0});

  // and it is listed by the enumeration
  ClassSet cs(e, 2, 2);
  auto all = enumerate_sum_data(cs, ctx, 2);
  CHECK(std::find(all.begin(), all.end(), d) != all.end());
}

TEST_CASE("standard representative, frozen wreath element") {
  Context ctx(2, 1, 1);
  GroupPtr C2 = make_group("C2");
  WreathGroup wg = wreath_product(C2, 2);
  SumDatum d = make_sum_datum({LevelDatum{full_torsion_subgroup(ctx, 1), {1}}});
  auto rep = standard_representative(wg, ctx, d);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0] == wg.encode_index({0, 1}, Perm{1, 0}));

  // m = 1, trivial H: the representative is the tuple itself
  WreathGroup w1 = wreath_product(C2, 1);
  SumDatum single = make_sum_datum({LevelDatum{trivial_subgroup(ctx), {1}}});
  auto rep1 = standard_representative(w1, ctx, single);
  CHECK(rep1 == std::vector<int>{w1.encode_index({1}, Perm{0})});
}

TEST_CASE("round trips over a small grid") {
  struct Inst {
    char const *g;
    long long p;
    int n, m, N;
  };
  for (auto const &inst : {Inst{"C2", 2, 1, 2, 1}, Inst{"C2", 2, 1, 4, 2},
                           Inst{"trivial", 2, 2, 2, 1}, Inst{"C3", 3, 1, 3, 1},
                           Inst{"C4", 2, 1, 2, 2}, Inst{"S3", 2, 1, 2, 1},
                           Inst{"C2", 2, 2, 2, 1}, Inst{"C2", 2, 2, 4, 2}}) {
    Context ctx(inst.p, inst.n, inst.N);
    GroupPtr G = make_group(inst.g);
    WreathGroup wg = wreath_product(G, inst.m);
    ClassSet cs(G, ctx.p, ctx.n);
    auto data = enumerate_sum_data(cs, ctx, inst.m);

    // forward: every enumerated datum is realized by its representative
    std::set<std::vector<int>> reps_seen;
    for (auto const &d : data) {
      auto rep = standard_representative(wg, ctx, d);
      CHECK(classify(wg, ctx, rep) == d);
      reps_seen.insert(rep);
    }
    CHECK(reps_seen.size() == data.size());

    // backward: the class census of the wreath group matches the enumeration
    ClassSet wcs(wg.W, ctx.p, ctx.n);
    CHECK(wcs.count() == data.size());
    std::set<std::vector<SumDatum>::const_iterator> hit;
    for (int c = 0; c < static_cast<int>(wcs.count()); ++c) {
      SumDatum d = classify(wg, ctx, wcs.rep(c));
      auto it = std::lower_bound(data.begin(), data.end(), d, sum_datum_less);
      REQUIRE(it != data.end());
      CHECK(*it == d);
      hit.insert(it);
    }
    CHECK(hit.size() == data.size());
  }
}

TEST_CASE("sum data enumeration counts") {
  GroupPtr e = make_group("trivial");
  ClassSet cs_e2(e, 2, 2);
  CHECK(enumerate_sum_data(cs_e2, Context(2, 2, 1), 2).size() == 4);

  ClassSet cs_e1(e, 2, 1);
  CHECK(enumerate_sum_data(cs_e1, Context(2, 1, 1), 2).size() == 2);
  ClassSet cs_e3(e, 3, 1);
  CHECK(enumerate_sum_data(cs_e3, Context(3, 1, 1), 3).size() == 2);

  // m = 1 lists exactly the classes of hom(Lambda, G)
  for (auto const &spec : {"C2", "C4", "S3", "C2xC2"}) {
    GroupPtr G = make_group(spec);
    ClassSet cs(G, 2, 1);
    auto data = enumerate_sum_data(cs, Context(2, 1, 1), 1);
    CHECK(data.size() == cs.count());
    for (auto const &d : data) {
      REQUIRE(d.parts.size() == 1);
      CHECK(d.parts[0].H.order_exp == 0);
    }
  }

  // the list is sorted and duplicate-free under the canonical order
  auto data = enumerate_sum_data(cs_e2, Context(2, 2, 2), 4);
  CHECK(std::is_sorted(data.begin(), data.end(), sum_datum_less));
  CHECK(std::adjacent_find(data.begin(), data.end()) == data.end());

  // deeper torsion does not change the count
  CHECK(enumerate_sum_data(cs_e2, Context(2, 2, 3), 2).size() == 4);

  // m beyond the torsion level is a precision error, not a truncation
  CHECK_THROWS_AS(enumerate_sum_data(cs_e1, Context(2, 1, 1), 4), precision_error);
}

TEST_CASE("sum datum strings and order") {
  Context ctx(2, 2, 1);
  GroupPtr e = make_group("trivial");
  ClassSet cs(e, 2, 2);
  auto data = enumerate_sum_data(cs, ctx, 2);
  std::set<std::string> strs;
  for (auto const &d : data) strs.insert(sum_datum_to_string(d));
  CHECK(strs.size() == data.size());
}

TEST_CASE("diagonal data") {
  Context ctx(2, 1, 2);
  GroupPtr C4 = make_group("C4");
  int g = order_4_generator(*C4);

  // trivial H restricts along the identity
  LevelDatum d0 = diagonal_datum(ctx, trivial_subgroup(ctx), *C4, {g});
  CHECK(d0.H == trivial_subgroup(ctx));
  CHECK(d0.tuple == canonical_tuple(*C4, {g}));

  // H = Z/2: the annihilator column is 2, so the image is g^2
  LevelDatum d1 = diagonal_datum(ctx, full_torsion_subgroup(ctx, 1), *C4, {g});
  CHECK(d1.H == full_torsion_subgroup(ctx, 1));
  CHECK(d1.tuple == std::vector<int>{C4->mult(g, g)});

  // order-p entries die on H = Lambda^*[p]
  GroupPtr C2 = make_group("C2");
  Context c1(2, 1, 1);
  LevelDatum d2 = diagonal_datum(c1, full_torsion_subgroup(c1, 1), *C2, {1});
  CHECK(d2.tuple == std::vector<int>{0});
}

TEST_CASE("wreath composition of data") {
  Context ctx(2, 1, 2);

  SUBCASE("all trivial subgroups flatten") {
    GroupPtr C2 = make_group("C2");
    WreathGroup wg = wreath_product(C2, 2);
    ClassSet wcs(wg.W, 2, 1);
    for (int c = 0; c < static_cast<int>(wcs.count()); ++c) {
      auto rep = wcs.rep(c);
      SumDatum outer =
          make_sum_datum({LevelDatum{trivial_subgroup(ctx), canonical_tuple(*wg.W, rep)}});
      CHECK(compose_wreath_data(wg, ctx, outer) == classify(wg, ctx, rep));
    }
  }

  SUBCASE("trivial inner classes pull back to the kernel") {
    GroupPtr C2 = make_group("C2");
    WreathGroup wg = wreath_product(C2, 2);
    int diag = wg.encode_index({1, 1}, Perm{0, 1});
    SumDatum outer = make_sum_datum(
        {LevelDatum{full_torsion_subgroup(ctx, 1), canonical_tuple(*wg.W, {diag})}});
    SumDatum got = compose_wreath_data(wg, ctx, outer);
    SumDatum expect = make_sum_datum({LevelDatum{full_torsion_subgroup(ctx, 1), {1}},
                                      LevelDatum{full_torsion_subgroup(ctx, 1), {1}}});
    CHECK(got == expect);
  }

  SUBCASE("Z/2 over Z/2 pulls back to Z/4") {
    GroupPtr e = make_group("trivial");
    WreathGroup wg = wreath_product(e, 2);
    int swap = wg.W->index_of(Perm{1, 0});
    SumDatum outer = make_sum_datum({LevelDatum{full_torsion_subgroup(ctx, 1), {swap}}});
    SumDatum got = compose_wreath_data(wg, ctx, outer);
    SumDatum expect = make_sum_datum({LevelDatum{full_torsion_subgroup(ctx, 2), {0}}});
    CHECK(got == expect);
  }

  SUBCASE("composition agrees with classification through nabla") {
    // classify in G wr Sigma_4 directly vs composing the outer classification
    GroupPtr e = make_group("trivial");
    WreathGroup w2 = wreath_product(e, 2);
    WreathGroup w4 = wreath_product(e, 4);
    WreathGroup outer = wreath_product(w2.W, 2);
    GroupHom nab = wreath_nabla(outer, w2, w4);
    ClassSet ocs(outer.W, 2, 1);
    for (int c = 0; c < static_cast<int>(ocs.count()); ++c) {
      auto rep = ocs.rep(c);
      SumDatum od = classify(outer, ctx, rep);
      SumDatum direct = classify(w4, ctx, {nab(rep[0])});
      CHECK(compose_wreath_data(w2, ctx, od) == direct);
    }
  }
}

TEST_CASE("unit action on sum data") {
  Context ctx(2, 2, 1);
  GroupPtr e = make_group("trivial");
  ClassSet cs(e, 2, 2);
  auto data = enumerate_sum_data(cs, ctx, 2);
  auto units = unit_matrices(ctx);
  REQUIRE(units.size() == 6);  // |GL_2(F_2)|

  for (auto const &d : data) {
    CHECK(aut_on_sum_datum(ctx, *e, Mat::identity(2), d) == d);
    for (auto const &u : units)
      for (auto const &v : units) {
        SumDatum lhs = aut_on_sum_datum(ctx, *e, v, aut_on_sum_datum(ctx, *e, u, d));
        SumDatum rhs = aut_on_sum_datum(ctx, *e, (v * u).mod(ctx.pN()), d);
        CHECK(lhs == rhs);
      }
  }

  // the three order-2 subgroups form a single orbit
  auto subs = enumerate_subgroups(ctx, 1);
  REQUIRE(subs.size() == 3);
  SumDatum seed = make_sum_datum({LevelDatum{subs[0], {0, 0}}});
  std::set<std::string> orbit;
  for (auto const &u : units)
    orbit.insert(subgroup_to_string(aut_on_sum_datum(ctx, *e, u, seed).parts[0].H));
  CHECK(orbit.size() == 3);

  // a genuine move: [3] is a unit mod 4, squares to the identity action
  GroupPtr C4 = make_group("C4");
  ClassSet cs4(C4, 2, 1);
  Context c12(2, 1, 2);
  Mat u3(1, 1);
  u3.at(0, 0) = 3;
  auto data4 = enumerate_sum_data(cs4, c12, 2);
  bool any_moved = false;
  for (auto const &d : data4) {
    SumDatum moved = aut_on_sum_datum(c12, *C4, u3, d);
    // part multiset of subgroups is fixed (n = 1), orders preserved
    REQUIRE(moved.parts.size() == d.parts.size());
    for (size_t i = 0; i < d.parts.size(); ++i)
      CHECK(moved.parts[i].H == d.parts[i].H);
    // image stays inside the enumeration and the action is an involution
    CHECK(std::find(data4.begin(), data4.end(), moved) != data4.end());
    CHECK(aut_on_sum_datum(c12, *C4, u3, moved) == d);
    if (!(moved == d)) any_moved = true;
  }
  CHECK(any_moved);
}

TEST_CASE("tuple change of basis") {
  Context ctx(2, 1, 2);
  GroupPtr C4 = make_group("C4");
  int g = order_4_generator(*C4);
  CHECK(tuple_change_of_basis(*C4, ctx, {g}, Mat::identity(1)) == std::vector<int>{g});
  CHECK(tuple_change_of_basis(*C4, ctx, {g}, Mat::scalar(1, 2)) ==
        std::vector<int>{C4->mult(g, g)});
  CHECK(tuple_change_of_basis(*C4, ctx, {g}, Mat::scalar(1, 4)) == std::vector<int>{0});

  // n = 2: columns mix the entries multiplicatively
  Context c2(2, 2, 1);
  GroupPtr V = make_group("C2xC2");
  std::vector<int> t{1, 2};
  Mat C(2, 2);
  C.at(0, 0) = 1;
  C.at(0, 1) = 1;
  C.at(1, 0) = 0;
  C.at(1, 1) = 1;
  auto moved = tuple_change_of_basis(*V, c2, t, C);
  CHECK(moved == std::vector<int>{t[0], V->mult(t[0], t[1])});

  // element order beyond the torsion level is refused
  Context shallow(2, 1, 1);
  CHECK_THROWS_AS(tuple_change_of_basis(*C4, shallow, {g}, Mat::identity(1)), precision_error);
}

TEST_CASE("classification input guards") {
  Context ctx(2, 1, 1);
  GroupPtr C2 = make_group("C2");
  WreathGroup wg = wreath_product(C2, 2);

  // non-transitive slot action
  int diag = wg.encode_index({1, 1}, Perm{0, 1});
  CHECK_THROWS_AS(classify_transitive(wg, ctx, {diag}), usage_error);

  // block size must be a power of p
  WreathGroup w3 = wreath_product(make_group("trivial"), 3);
  int cyc = w3.W->index_of(Perm{1, 2, 0});
  CHECK_THROWS_AS(classify_transitive(w3, Context(2, 1, 2), {cyc}), usage_error);

  // block size within p-powers but beyond N
  WreathGroup w4 = wreath_product(make_group("trivial"), 4);
  int four = w4.W->index_of(Perm{1, 2, 3, 0});
  CHECK_THROWS_AS(classify_transitive(w4, ctx, {four}), precision_error);

  // arity mismatch
  CHECK_THROWS_AS(classify(wg, ctx, {diag, diag}), usage_error);
}
