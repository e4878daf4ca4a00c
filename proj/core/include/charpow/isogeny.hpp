#pragma once

#include "charpow/padic.hpp"

#include <map>
#include <optional>

namespace charpow {

// Isogeny of Lambda^* = (Q_p/Z_p)^n: an exact integer n x n matrix A with
// det != 0, acting on the dual side as v -> A v; A^T acts on Lambda.  The
// kernel on Lambda^* has order p^det_val, det_val = v_p(det A).
struct Isogeny {
  Context ctx;
  Mat mat;
  long long det_val = 0;
};

Isogeny make_isogeny(Context const &ctx, Mat const &mat);
Isogeny compose(Isogeny const &after, Isogeny const &before);  // after . before

// Kernel subgroup on Lambda^*[p^N]; precondition det_val <= N (else
// precision_error: the kernel may not be contained in level-N torsion).
FiniteSubgroup kernel(Isogeny const &A);

// Matrix of psi_H^*: Lambda -> Lambda_H in the canonical annihilator basis B
// of Lambda_H = annihilator_basis(ker A):  B * mat == A^T exactly, stored
// reduced mod p^N; det(mat) is a p-adic unit.
struct PsiDualMatrix {
  FiniteSubgroup H;  // kernel of the isogeny
  Mat mat;           // n x n, entries in [0, p^N), invertible mod p
};

PsiDualMatrix psi_dual(Isogeny const &A);

// Coherent family of isogenies phi_H indexed by all subgroups H of
// Lambda^*[p^level]: phi_T = phi_{phi_H(T)} . phi_H for nested H <= T.
struct Section {
  Context ctx;
  int level = 0;
  // deterministic iteration via the subgroup total order
  std::map<FiniteSubgroup, Isogeny, decltype(&subgroup_less)> table{&subgroup_less};

  Isogeny const &at(FiniteSubgroup const &H) const;
  bool has(FiniteSubgroup const &H) const;
};

// The height-rank constraint: built sections exist for n in {1, 2} only.
// n = 1: phi_{Z/p^k} = [p^k].  n = 2: order-p subgroups get the explicit
// height-2 matrices ([[-i,1],[p-i^2,i]] for <(1/p, i/p)>, [[0,p],[1,0]] for
// <(0,1/p)>), larger subgroups are composed along a composition series
// through the lexicographically least order-p subgroup of the running image.
// Requires N >= n * level so every kernel of a table entry verifies.
Section build_power_section(Context const &ctx, int level);

// Exact check of the section property over all nested pairs within level.
// Returns nullopt on success or a human-readable witness on failure.
std::optional<std::string> section_defect(Section const &s);
bool is_power_section(Section const &s);

// Replace s[H] by u * s[H], u an integer matrix that is a unit mod p
// (det a p-adic unit).  Kernels are unchanged; the section property usually
// breaks, which is the point.
Section mutate_section(Section const &s, FiniteSubgroup const &H, Mat const &u);

// Named mutation configurations shipped for the negative-control suites.
struct MutationConfig {
  std::string name;
  Context ctx;
  int level;
  Mat subgroup_basis;  // H to mutate, as an HNF basis at this ctx
  Mat unit;
};
std::vector<MutationConfig> shipped_mutations();

}  // namespace charpow
