#include "doctest.h"

#include "charpow/errors.hpp"
#include "charpow/groups.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace charpow;

namespace {

int element_by_perm(FiniteGroup const &G, Perm const &p) {
  int i = G.index_of(p);
  REQUIRE(i >= 0);
  return i;
}

}  // namespace

TEST_CASE("permutation primitives") {
  Perm a{1, 0, 2};
  Perm b{0, 2, 1};
  CHECK(perm_identity(3) == Perm{0, 1, 2});
  CHECK(perm_compose(a, b) == Perm{1, 2, 0});  // a(b(x))
  CHECK(perm_compose(b, a) == Perm{2, 0, 1});
  CHECK(perm_inverse(perm_compose(a, b)) == Perm{2, 0, 1});
  CHECK(perm_compose(a, perm_inverse(a)) == perm_identity(3));
}

TEST_CASE("group construction from specs") {
  CHECK(make_group("trivial")->order() == 1);
  CHECK(make_group("S3")->order() == 6);
  CHECK(make_group("C5")->order() == 5);

  GroupPtr G = make_group("C2xC4");
  CHECK(G->order() == 8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) CHECK(G->mult(a, b) == G->mult(b, a));

  // explicit permutation spec builds the same group as the name
  CHECK(same_group(*make_group("perm:3:(1 2);(1 2 3)"), *make_group("S3")));
  CHECK(same_group(*make_group("perm:2:(1 2)"), *make_group("C2")));

  CHECK_THROWS_AS(make_group("Q8"), usage_error);
  CHECK_THROWS_AS(make_group("perm:2:(1 3)"), usage_error);
  CHECK_THROWS_AS((void)sym_group(8, 1000), cap_error);
}

TEST_CASE("element order and identity index") {
  for (auto const &spec : {"trivial", "C2", "C4", "S3", "C2xC2"}) {
    GroupPtr G = make_group(spec);
    CHECK(G->element_order(0) == 1);  // identity sorts first
    CHECK(G->perm(0) == perm_identity(G->degree()));
    for (int g = 0; g < static_cast<int>(G->order()); ++g) {
      CHECK(G->mult(g, G->inv(g)) == 0);
      CHECK(G->pow(g, G->element_order(g)) == 0);
      CHECK(G->conj(0, g) == g);
    }
  }
  GroupPtr C4 = make_group("C4");
  CHECK(C4->is_p_power_order(0, 2));
  int g = -1;
  for (int i = 0; i < 4; ++i)
    if (C4->element_order(i) == 4) g = i;
  REQUIRE(g >= 0);
  CHECK(C4->pow(g, 2) == C4->mult(g, g));
  CHECK(!make_group("C3")->is_p_power_order(1, 2));
}

TEST_CASE("wreath products") {
  CHECK(same_group(*wreath_product(make_group("trivial"), 3).W, *sym_group(3)));
  CHECK(wreath_product(make_group("C2"), 2).W->order() == 8);
  CHECK(wreath_product(make_group("S3"), 2).W->order() == 72);
  CHECK(wreath_product(make_group("C2"), 0).W->order() == 1);

  // G wr Sigma_1 is G itself on the same points
  CHECK(same_group(*wreath_product(make_group("S3"), 1).W, *make_group("S3")));
}

TEST_CASE("wreath encode/decode and the semidirect rule") {
  GroupPtr G = make_group("S3");
  WreathGroup wg = wreath_product(G, 3);
  std::mt19937_64 rng(42);
  auto random_elem = [&]() {
    std::vector<int> base(3);
    for (auto &x : base) x = static_cast<int>(rng() % G->order());
    Perm sigma = perm_identity(3);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    return std::make_pair(base, sigma);
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto [b1, s1] = random_elem();
    auto [b2, s2] = random_elem();
    int w1 = wg.encode_index(b1, s1);
    int w2 = wg.encode_index(b2, s2);

    // round trip
    std::vector<int> rb;
    Perm rs;
    wg.decode(wg.W->perm(w1), rb, rs);
    CHECK(rb == b1);
    CHECK(rs == s1);

    // (g; s)(h; t) = (g_{st(j)} h_{t(j)} ; s t) slotwise
    std::vector<int> pb;
    Perm ps;
    wg.decode(wg.W->perm(wg.W->mult(w1, w2)), pb, ps);
    CHECK(ps == perm_compose(s1, s2));
    for (int j = 0; j < 3; ++j) {
      int st = s1[s2[static_cast<size_t>(j)]];
      CHECK(pb[static_cast<size_t>(st)] ==
            G->mult(b1[static_cast<size_t>(st)], b2[static_cast<size_t>(s2[static_cast<size_t>(j)])]));
    }
  }
}

TEST_CASE("wreath homomorphisms") {
  GroupPtr G = make_group("C2");
  WreathGroup w2 = wreath_product(G, 2);
  WreathGroup w1 = wreath_product(G, 1);
  WreathGroup w3 = wreath_product(G, 3);

  GroupHom pi = wreath_pi(w2);
  CHECK(pi.is_homomorphism());
  CHECK(pi.dst->order() == 2);

  GroupHom diag = wreath_diag(w2);
  CHECK(diag.is_homomorphism());
  CHECK(diag.is_injective());
  for (size_t g = 0; g < G->order(); ++g)
    CHECK(pi(diag(static_cast<int>(g))) == 0);  // diagonal lands in the base

  PowerGroup Gm = product_power(G, 2);
  CHECK(Gm.group->order() == 4);
  GroupHom base = wreath_base_embed(w2, Gm);
  CHECK(base.is_homomorphism());
  CHECK(base.is_injective());
  for (size_t x = 0; x < Gm.group->order(); ++x) CHECK(pi(base(static_cast<int>(x))) == 0);

  ProductGroup pair = direct_product(w1.W, w2.W);
  GroupHom emb = wreath_pair_embed(pair, w1, w2, w3);
  CHECK(emb.is_homomorphism());
  CHECK(emb.is_injective());

  WreathGroup outer = wreath_product(w1.W, 2);
  GroupHom nabla = wreath_nabla(outer, w1, w2);
  CHECK(nabla.is_homomorphism());
  CHECK(nabla.is_injective());

  ProductGroup gk = direct_product(G, make_group("C2"));
  WreathGroup mixed = wreath_product(gk.group, 2);
  WreathGroup wk = wreath_product(make_group("C2"), 2);
  ProductGroup target = direct_product(w2.W, wk.W);
  GroupHom delta = wreath_delta_product(mixed, gk, w2, wk, target);
  CHECK(delta.is_homomorphism());
}

TEST_CASE("commuting tuple enumeration") {
  CHECK(commuting_tuples(*sym_group(2), 2, 1).size() == 2);
  CHECK(commuting_tuples(*make_group("trivial"), 2, 3).size() == 1);
  CHECK(commuting_tuples(*sym_group(3), 2, 1).size() == 4);
  CHECK(commuting_tuples(*sym_group(3), 3, 1).size() == 3);

  // abelian closed form: hom((Z^2), C2 x C4) has |G|^2 members at p = 2
  GroupPtr A = make_group("C2xC4");
  CHECK(commuting_tuples(*A, 2, 2).size() == 64);
  // p = 3 sees only the trivial 3-part
  CHECK(commuting_tuples(*A, 3, 1).size() == 1);

  // pairwise commutation and p-power orders hold for a nonabelian case
  for (auto const &t : commuting_tuples(*sym_group(3), 2, 2)) {
    REQUIRE(t.size() == 2);
    GroupPtr S3 = sym_group(3);
    CHECK(S3->mult(t[0], t[1]) == S3->mult(t[1], t[0]));
    CHECK(S3->is_p_power_order(t[0], 2));
    CHECK(S3->is_p_power_order(t[1], 2));
  }
}

TEST_CASE("class sets") {
  ClassSet s3(make_group("S3"), 2, 1);
  CHECK(s3.count() == 2);
  CHECK(s3.class_size(0) + s3.class_size(1) == 4);

  ClassSet ab(make_group("C2xC2"), 2, 1);
  CHECK(ab.count() == 4);
  for (int c = 0; c < 4; ++c) CHECK(ab.class_size(c) == 1);

  ClassSet pairs(sym_group(2), 2, 2);
  CHECK(pairs.count() == 4);

  // class_of is a left inverse of rep, and the sizes tile the tuple set
  ClassSet w(wreath_product(make_group("C2"), 2).W, 2, 1);
  size_t total = 0;
  for (int c = 0; c < static_cast<int>(w.count()); ++c) {
    CHECK(w.class_of(w.rep(c)) == c);
    total += w.class_size(c);
  }
  CHECK(total == commuting_tuples(*w.group(), 2, 1).size());

  CHECK(ClassSet(make_group("C4"), 2, 1).max_order_exp() == 2);
  CHECK(ClassSet(make_group("S3"), 2, 1).max_order_exp() == 1);
}

TEST_CASE("fixed cosets") {
  GroupPtr C2 = make_group("C2");

  // K = G: the one coset is always fixed
  GroupHom full{C2, C2, {0, 1}};
  CHECK(fixed_cosets(*C2, full, {0}).size() == 1);
  CHECK(fixed_cosets(*C2, full, {1}).size() == 1);

  // K = e inside C2: trivial tuple fixes both cosets, the generator neither
  GroupHom triv{make_group("trivial"), C2, {0}};
  CHECK(fixed_cosets(*C2, triv, {0}).size() == 2);
  CHECK(fixed_cosets(*C2, triv, {1}).empty());

  // S3 / <transposition>: the identity fixes all three cosets
  GroupPtr S3 = make_group("S3");
  int t = element_by_perm(*S3, Perm{1, 0, 2});
  GroupHom incl{C2, S3, {0, t}};
  REQUIRE(incl.is_homomorphism());
  CHECK(fixed_cosets(*S3, incl, {0}).size() == 3);
  // the transposition itself fixes exactly its own coset
  CHECK(fixed_cosets(*S3, incl, {t}).size() == 1);
}

TEST_CASE("tuple keys separate tuples") {
  GroupPtr G = make_group("C2xC2");
  std::set<std::vector<uint16_t>> keys;
  auto tuples = commuting_tuples(*G, 2, 2);
  for (auto const &t : tuples) keys.insert(tuple_key(*G, t));
  CHECK(keys.size() == tuples.size());
}
