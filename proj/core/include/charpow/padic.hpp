#pragma once

#include "charpow/intmat.hpp"

#include <string>
#include <vector>

namespace charpow {

// Ambient data for Lambda = Z_p^n and its dual torus Lambda^* = (Q_p/Z_p)^n.
// All torsion data lives in Lambda^*[p^N]; operations that would need deeper
// torsion raise precision_error instead of truncating.
struct Context {
  long long p = 2;  // prime
  int n = 1;        // height / rank
  int N = 1;        // torsion level

  Context() = default;
  Context(long long p_, int n_, int N_);

  // p^N as exact integer; fits long long for every admissible context.
  long long pN() const { return pN_; }

  bool operator==(Context const &o) const { return p == o.p && n == o.n && N == o.N; }

 private:
  long long pN_ = 2;
};

// Element of Lambda^*[p^N], stored as integer coordinates c with the element
// being c / p^N mod Z^n; coordinates normalized into [0, p^N).
struct TorsionVector {
  std::vector<long long> coords;
};

TorsionVector normalize(Context const &ctx, std::vector<long long> coords);
TorsionVector tv_add(Context const &ctx, TorsionVector const &a, TorsionVector const &b);
TorsionVector tv_scale(Context const &ctx, long long k, TorsionVector const &a);
// Order of v in Lambda^*[p^N]; always a power of p.
Int elem_order(Context const &ctx, TorsionVector const &v);

// Finite subgroup H of Lambda^*[p^N], canonically encoded by the lower
// triangular column-HNF basis of the integer lattice
//   L = {c in Z^n : c / p^N in H},   p^N Z^n <= L <= Z^n,
// so |H| = p^(nN) / det(basis).
struct FiniteSubgroup {
  Context ctx;
  int order_exp = 0;  // |H| = p^order_exp
  Mat basis;          // n x n, lower triangular HNF

  bool operator==(FiniteSubgroup const &o) const {
    return ctx == o.ctx && order_exp == o.order_exp && basis == o.basis;
  }
};

// Total order used wherever deterministic iteration over subgroups matters.
bool subgroup_less(FiniteSubgroup const &a, FiniteSubgroup const &b);

FiniteSubgroup trivial_subgroup(Context const &ctx);
// Lambda^*[p^k], k <= N.
FiniteSubgroup full_torsion_subgroup(Context const &ctx, int k);

// Canonical subgroup generated by the given torsion vectors.
FiniteSubgroup subgroup_from_generators(Context const &ctx, std::vector<TorsionVector> const &gens);
// Subgroup from an alleged HNF lattice basis; validates shape, HNF form and
// the containment p^N Z^n <= L <= Z^n.
FiniteSubgroup subgroup_from_basis(Context const &ctx, Mat const &basis);

bool subgroup_contains(FiniteSubgroup const &big, FiniteSubgroup const &small);
bool subgroup_contains_vector(FiniteSubgroup const &H, TorsionVector const &v);

// All elements of H in deterministic (lexicographic coordinate) order.
std::vector<TorsionVector> subgroup_elements(FiniteSubgroup const &H);

// p-exponent of the exponent of H (largest element order is p^this).
int subgroup_exponent(FiniteSubgroup const &H);

// All subgroups of Lambda^*[p^N] of order exactly p^k, in lexicographic basis
// order.  Deterministic; count is independent of N for N >= k.
std::vector<FiniteSubgroup> enumerate_subgroups(Context const &ctx, int k);

// HNF basis of Lambda_H = {l in Z^n : <l, h> in Z for all h in H};
// det = |H| up to sign (positive here since HNF).
Mat annihilator_basis(FiniteSubgroup const &H);

// Image A(H) in Lambda^*[p^N]; A any integer matrix (acting on the dual side).
FiniteSubgroup subgroup_image(Context const &ctx, Mat const &A, FiniteSubgroup const &H);

// Preimage {v in Lambda^*[p^N] : A v in K}.  Raises precision_error when the
// full preimage in Lambda^* does not fit inside Lambda^*[p^N] (its order must
// be |K| * p^(v_p(det A))).
FiniteSubgroup subgroup_preimage(Context const &ctx, Mat const &A, FiniteSubgroup const &K);

std::string subgroup_to_string(FiniteSubgroup const &H);

}  // namespace charpow
