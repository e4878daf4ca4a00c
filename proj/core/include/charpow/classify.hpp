#pragma once

#include "charpow/groups.hpp"
#include "charpow/isogeny.hpp"
#include "charpow/padic.hpp"

namespace charpow {

// One summand (H, [alpha_bar]): a finite subgroup H of Lambda^*[p^N] together
// with a G-conjugacy class of homs Lambda_H -> G.  The class is stored as the
// lexicographically least commuting n-tuple of images of the canonical
// annihilator-basis columns of Lambda_H.
struct LevelDatum {
  FiniteSubgroup H;
  std::vector<int> tuple;  // canonical representative, element indices in G

  bool operator==(LevelDatum const &o) const { return H == o.H && tuple == o.tuple; }
};

bool level_datum_less(LevelDatum const &a, LevelDatum const &b);

// Formal sum of summands with total order sum_i |H_i| = m; parts sorted.
struct SumDatum {
  std::vector<LevelDatum> parts;

  bool operator==(SumDatum const &o) const = default;
};

SumDatum make_sum_datum(std::vector<LevelDatum> parts);
bool sum_datum_less(SumDatum const &a, SumDatum const &b);
std::string sum_datum_to_string(SumDatum const &d);

// Canonicalize a commuting tuple in G under simultaneous conjugation
// (lex-least orbit member by element index, which is image-tuple order).
std::vector<int> canonical_tuple(FiniteGroup const &G, std::vector<int> const &t);

// Classify a transitive commuting tuple t in W = G wr Sigma_m (transitive
// means the slot action of the tuple is transitive); m must be a power of
// ctx.p with exponent <= N.  Returns the summand (H, [alpha_bar]).
LevelDatum classify_transitive(WreathGroup const &wg, Context const &ctx,
                               std::vector<int> const &tuple);

// Full classification: orbit decomposition + transitive classification of
// each block, assembled into the canonical SumDatum.
SumDatum classify(WreathGroup const &wg, Context const &ctx, std::vector<int> const &tuple);

// Standard representative: an explicit commuting tuple in G wr Sigma_m whose
// classification is d.  Blocks are laid out in canonical part order; within a
// part the slots are the HNF coset representatives of Lambda / Lambda_H in
// lexicographic order, with the transition cocycle read off alpha_bar.
std::vector<int> standard_representative(WreathGroup const &wg, Context const &ctx,
                                         SumDatum const &d);

// All sum data of total order m over G, deterministic order.
std::vector<SumDatum> enumerate_sum_data(ClassSet const &cs, Context const &ctx, int m);

// The diagonal datum (H, [alpha . q_H^*]) of a full tuple alpha: Lambda -> G:
// restrict along the annihilator basis columns.
LevelDatum diagonal_datum(Context const &ctx, FiniteSubgroup const &H, FiniteGroup const &G,
                          std::vector<int> const &tuple);

// Iterated wreath composition: outer datum over G wr Sigma_{p^j} with each
// part's tuple classifying to an inner sum over G; parts compose to the
// pullback subgroups T = {v : q_H(v) in K} with the inner classes carried
// through the exact change of basis.
SumDatum compose_wreath_data(WreathGroup const &inner_wg, Context const &ctx,
                             SumDatum const &outer);

// Action of a unit sigma (integer matrix, det a p-unit) on a sum datum:
// parts map to (sigma H, [alpha . sigma^*|]).
SumDatum aut_on_sum_datum(Context const &ctx, FiniteGroup const &G, Mat const &sigma,
                          SumDatum const &d);

// Images alpha_bar(columns of C) for a stored tuple: entries product of
// powers along the integer matrix C (exponents taken mod p^N).
std::vector<int> tuple_change_of_basis(FiniteGroup const &G, Context const &ctx,
                                       std::vector<int> const &tuple, Mat const &C);

}  // namespace charpow
