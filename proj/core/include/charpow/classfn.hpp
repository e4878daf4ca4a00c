#pragma once

#include "charpow/classify.hpp"

#include <cstdint>
#include <optional>

namespace charpow {

// Exact coefficient ring: polynomials over Q in commuting indeterminates t_v
// indexed by v in (Z/p^N)^n.  Monomials are sorted (var id, exponent) lists
// with positive exponents; zero coefficients never stored, so the map form is
// canonical and equality is structural.
using Monomial = std::vector<std::pair<long long, long long>>;

struct CoeffValue {
  std::map<Monomial, Rat> terms;

  bool operator==(CoeffValue const &o) const = default;
  bool is_zero() const { return terms.empty(); }
};

// Mixed-radix codec between coordinate vectors v in (Z/p^N)^n and var ids.
struct VarCodec {
  explicit VarCodec(Context const &ctx_);
  long long encode(std::vector<long long> const &v) const;
  std::vector<long long> decode(long long id) const;

  Context ctx;
  long long q;
};

CoeffValue coeff_zero();
CoeffValue coeff_const(Rat const &c);
// The single indeterminate t_v.
CoeffValue coeff_var(Context const &ctx, std::vector<long long> const &v);
CoeffValue coeff_add(CoeffValue const &a, CoeffValue const &b);
CoeffValue coeff_sub(CoeffValue const &a, CoeffValue const &b);
CoeffValue coeff_mul(CoeffValue const &a, CoeffValue const &b);
CoeffValue coeff_scale(CoeffValue const &a, Rat const &c);
// Ring endomorphism substituting t_v -> t_{A^T v mod p^N}; A any integer
// matrix (isogenies and non-units alike).
CoeffValue coeff_act(Context const &ctx, Mat const &A, CoeffValue const &x);
std::string coeff_to_string(Context const &ctx, CoeffValue const &x);

// Class function on the commuting-tuple classes of a group, valued in the
// coefficient ring.  `domain` tags the lattice the classes are read against:
// nullopt for hom(Lambda, G), or H for the twist codomain hom(Lambda_H, G)
// (same underlying class set, bookkeeping only).  `defined` is empty for
// total functions; otherwise it masks the classes the function is defined on
// and reading a masked-out class is a hard error, not zero.
struct ClassFunction {
  Context ctx;
  ClassSetPtr cs;
  std::optional<FiniteSubgroup> domain;
  std::vector<CoeffValue> vals;
  std::vector<char> defined;

  bool total() const { return defined.empty(); }
  bool is_defined(int c) const {
    return defined.empty() || defined[static_cast<size_t>(c)] != 0;
  }
  CoeffValue const &at(int c) const;
};

ClassFunction cf_zero(Context const &ctx, ClassSetPtr cs);
ClassFunction cf_const(Context const &ctx, ClassSetPtr cs, Rat const &c);
ClassFunction cf_one(Context const &ctx, ClassSetPtr cs);
// Indicator of one class with the given value (default 1).
ClassFunction cf_delta(Context const &ctx, ClassSetPtr cs, int cls);
ClassFunction cf_delta(Context const &ctx, ClassSetPtr cs, int cls, CoeffValue const &val);
// Seed-reproducible random function: small polynomials built from mt19937_64
// draws (raw modulo, no distribution objects, for cross-platform stability).
ClassFunction cf_random(Context const &ctx, ClassSetPtr cs, uint64_t seed);

ClassFunction cf_add(ClassFunction const &a, ClassFunction const &b);
ClassFunction cf_sub(ClassFunction const &a, ClassFunction const &b);
ClassFunction cf_mul(ClassFunction const &a, ClassFunction const &b);
ClassFunction cf_scale(ClassFunction const &a, Rat const &c);
// Structural equality of values (and masks); the domain tag is not compared.
bool cf_equal(ClassFunction const &a, ClassFunction const &b);
// Value at an arbitrary commuting tuple (class lookup included).
CoeffValue cf_value(ClassFunction const &f, std::vector<int> const &t);

// (Res f)([a]) = f([j . a]) along j: K -> G; f lives on j.dst.
ClassFunction restrict_along(ClassFunction const &f, GroupHom const &j, ClassSetPtr cs_src);
// Tr(f)([t]) = sum over fixed cosets gK of f([g^-1 t g]); j injective,
// f lives on j.src.
ClassFunction transfer_along(ClassFunction const &f, GroupHom const &j, ClassSetPtr cs_dst);
// (f x g)([t]) = f([pf . t]) * g([pg . t]) on the product group carrying cs_prod.
ClassFunction external_product(ClassFunction const &f, GroupHom const &pf,
                               ClassFunction const &g, GroupHom const &pg, ClassSetPtr cs_prod);

// f^{phi}([a]) = phi^* f([a . psi^*]): tuple side through the psi-dual
// matrix, coefficient side through coeff_act.  Result is tagged with the
// kernel of phi as its domain.
ClassFunction twist(ClassFunction const &f, Isogeny const &phi);

// Total power operation on G wr Sigma_m: value at the class classified as
// sum_i (H_i, [a_i]) is prod_i twist-by-s[H_i] of f at [a_i].
ClassFunction power_op(ClassFunction const &f, WreathGroup const &wg, ClassSetPtr cs_w,
                       Section const &s);
// The quotient by the transfer ideal: same values, but defined only on the
// single-summand classes (the Sub part); everything else masked out.
ClassFunction power_mod_transfer(ClassFunction const &f, WreathGroup const &wg,
                                 ClassSetPtr cs_w, Section const &s);

// psi^{p^k}(f)([a]) = coeff_act(p^k I, f([a^{p^k}])).
ClassFunction adams(ClassFunction const &f, int k);

// Right action of units: aut_act(f, U) = twist by the trivial-kernel isogeny
// U, retagged to the full domain.  aut_act(aut_act(f, U), V) = aut_act(f, UV).
ClassFunction aut_act(ClassFunction const &f, Mat const &U);
// Mean over every unit matrix mod p^N (enumerated; cap guards the box size).
ClassFunction aut_average(ClassFunction const &f, size_t cap = 1000000);
bool is_aut_invariant(ClassFunction const &f);

// Generators of GL_n(Z/p^N): transvections I + E_ij plus a diagonal unit
// generating (Z/p^N)^* (two of them when p = 2, N >= 3).
std::vector<Mat> aut_generators(Context const &ctx);
// All of GL_n(Z/p^N) in deterministic (entry-lexicographic) order; cap_error
// when the enumeration box p^(N n^2) exceeds the cap.
std::vector<Mat> unit_matrices(Context const &ctx, size_t cap = 1000000);

}  // namespace charpow
