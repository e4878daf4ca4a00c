#pragma once

#include "charpow/errors.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace charpow {

// Permutation on {0..degree-1}, stored as the image tuple.
using Perm = std::vector<uint16_t>;

struct PermHash {
  size_t operator()(Perm const &p) const {
    size_t h = 1469598103934665603ull;
    for (uint16_t v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

Perm perm_identity(int degree);
Perm perm_compose(Perm const &a, Perm const &b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(Perm const &a);

inline constexpr size_t kDefaultGroupCap = 1000000;

// Finite permutation group with all elements materialized.  Elements are
// sorted lexicographically by image tuple, so index order is a canonical
// total order and index 0 is the identity.
class FiniteGroup {
 public:
  static FiniteGroup from_generators(int degree, std::vector<Perm> gens, std::string name,
                                     size_t cap = kDefaultGroupCap);

  int degree() const { return degree_; }
  size_t order() const { return elems_.size(); }
  std::string const &name() const { return name_; }
  std::vector<int> const &generators() const { return gens_; }

  Perm const &perm(int i) const { return elems_[static_cast<size_t>(i)]; }
  int index_of(Perm const &p) const;  // -1 when absent

  int mult(int a, int b) const;
  int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
  int conj(int g, int x) const;  // g x g^{-1}
  int pow(int a, long long e) const;
  long long element_order(int a) const;
  bool is_p_power_order(int a, long long p) const;

 private:
  int degree_ = 1;
  std::string name_;
  std::vector<Perm> elems_;
  std::vector<int> gens_;
  std::vector<int> inv_;
  std::unordered_map<Perm, int, PermHash> index_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Same materialized group: identical degree and element list (element indices
// interchangeable).  Used to validate that separately built structures agree.
bool same_group(FiniteGroup const &a, FiniteGroup const &b);

// Grammar: "trivial" | "C<k>" | "S<m>" | products "A x B" written "AxB"
// | "perm:<degree>:<gen>;<gen>;..." with cycles like (1 2)(3 4), points 1-based.
GroupPtr make_group(std::string const &spec, size_t cap = kDefaultGroupCap);

GroupPtr sym_group(int m, size_t cap = kDefaultGroupCap);

// Total map homomorphism between materialized groups.
struct GroupHom {
  GroupPtr src, dst;
  std::vector<int> map;  // src element index -> dst element index

  int operator()(int i) const { return map[static_cast<size_t>(i)]; }
  bool is_homomorphism() const;  // full multiplication check
  bool is_injective() const;
};

// Direct product acting on the disjoint union of the factors' points.
struct ProductGroup {
  GroupPtr group;
  GroupHom proj_left, proj_right;    // projections
  GroupHom embed_left, embed_right;  // factor inclusions
};
ProductGroup direct_product(GroupPtr const &A, GroupPtr const &B, size_t cap = kDefaultGroupCap);

// Iterated direct product G^m (degree m * deg G) with coordinate projections.
struct PowerGroup {
  GroupPtr group;
  std::vector<GroupHom> proj;  // m projections onto G
};
PowerGroup product_power(GroupPtr const &G, int m, size_t cap = kDefaultGroupCap);

// Wreath product G wr Sigma_m acting on {0..deg*m-1}; element (g_1..g_m; s)
// sends (a, j) to (g_{s(j)}(a), s(j)).  m = 0 yields the trivial group.
struct WreathGroup {
  GroupPtr inner;  // G
  int m = 1;
  GroupPtr W;

  // encode/decode between W elements and (base tuple, slot permutation)
  Perm encode(std::vector<int> const &base, Perm const &sigma) const;
  void decode(Perm const &w, std::vector<int> &base, Perm &sigma) const;
  int encode_index(std::vector<int> const &base, Perm const &sigma) const;
};

WreathGroup wreath_product(GroupPtr const &G, int m, size_t cap = kDefaultGroupCap);

GroupHom wreath_pi(WreathGroup const &wg);                       // W -> Sigma_m
GroupHom wreath_diag(WreathGroup const &wg);                     // G -> W
GroupHom wreath_base_embed(WreathGroup const &wg, PowerGroup const &Gm);  // G^m -> W
// (G wr Sigma_i) x (G wr Sigma_j) -> G wr Sigma_{i+j}, blockwise.
GroupHom wreath_pair_embed(ProductGroup const &pair, WreathGroup const &wi,
                           WreathGroup const &wj, WreathGroup const &wij);
// (G wr Sigma_i) wr Sigma_j -> G wr Sigma_{ij}, the imprimitive identification.
GroupHom wreath_nabla(WreathGroup const &outer, WreathGroup const &inner,
                      WreathGroup const &target);
// (G x K) wr Sigma_m -> (G wr Sigma_m) x (K wr Sigma_m).
GroupHom wreath_delta_product(WreathGroup const &mixed, ProductGroup const &gk,
                              WreathGroup const &wg, WreathGroup const &wk,
                              ProductGroup const &target);

// All n-tuples of pairwise commuting elements of p-power order,
// lexicographic by element index.
std::vector<std::vector<int>> commuting_tuples(FiniteGroup const &G, long long p, int n);

// Canonical key of a tuple: concatenated image tuples of its entries.
std::vector<uint16_t> tuple_key(FiniteGroup const &G, std::vector<int> const &t);

// Class decomposition of commuting p-power tuples; reps sorted by key.
class ClassSet {
 public:
  ClassSet(GroupPtr G, long long p, int n);

  GroupPtr const &group() const { return G_; }
  long long p() const { return p_; }
  int n() const { return n_; }
  size_t count() const { return reps_.size(); }
  std::vector<int> const &rep(int c) const { return reps_[static_cast<size_t>(c)]; }
  size_t class_size(int c) const { return sizes_[static_cast<size_t>(c)]; }
  // class index of an arbitrary commuting p-power tuple (error when invalid)
  int class_of(std::vector<int> const &t) const;
  // largest e with p^e an element order among entries seen in any tuple
  int max_order_exp() const { return max_exp_; }

 private:
  GroupPtr G_;
  long long p_;
  int n_;
  std::vector<std::vector<int>> reps_;
  std::vector<size_t> sizes_;
  std::unordered_map<Perm, int, PermHash> key_class_;  // key -> class
  int max_exp_ = 0;
};

using ClassSetPtr = std::shared_ptr<const ClassSet>;

// Left cosets gK fixed by conjugation-stability: g^{-1} t_i g in K for all i.
// Returns deterministic (least-index) coset representatives.
std::vector<int> fixed_cosets(FiniteGroup const &G, GroupHom const &incl,
                              std::vector<int> const &tuple);

}  // namespace charpow
