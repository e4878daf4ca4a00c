#pragma once

#include "charpow/classfn.hpp"

namespace charpow {

// Outcome of one independent verification run.  FAIL always carries a
// witness; counts document what was actually enumerated.  wall_ms is for
// console display only and is never serialized, so report files stay
// byte-identical across runs.
struct VerificationReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = false;
  std::string witness;
  std::vector<std::pair<std::string, long long>> counts;
  long long wall_ms = 0;
};

std::string report_to_text(VerificationReport const &r);

// The classification bijection, certified against a from-scratch conjugacy
// census of commuting p-power tuples in G wr Sigma_m (full-orbit scans, no
// shared classification code) plus both round-trips through
// standard_representative.
VerificationReport verify_bijection(GroupPtr const &G, Context const &ctx, int m,
                                    size_t cap = kDefaultGroupCap);

// The four power-operation relations on seeded random class functions:
// (1) restriction to G wr (Sigma_m x Sigma_l), (2) delta-compatibility over
// G x C2, (3) restriction to the base G^m, (4) the additivity transfer sum.
VerificationReport verify_relations(GroupPtr const &G, Context const &ctx, int m, int l,
                                    Section const &s, uint64_t seed, int nfuncs);

// nabla^* . P_{p^(t+l)} = P_{p^t} . P_{p^l} on delta class functions.
// Expected to PASS for power sections and FAIL with a witness for the
// shipped mutations; `section_tag` labels the section in the report.
VerificationReport verify_global_power(GroupPtr const &G, Context const &ctx, int t, int l,
                                       Section const &s, std::string const &section_tag);

// For unit-averaged random f: P^s(f) is Aut-invariant and equals P^s2(f).
VerificationReport verify_descent(GroupPtr const &G, Context const &ctx, int m,
                                  Section const &s, Section const &s2, uint64_t seed,
                                  int nfuncs, size_t unit_cap = 1000000);

// Joint surjectivity of the single-summand classes and the classes meeting
// (G wr Sigma_{p^(k-1)})^p onto all classes of G wr Sigma_{p^k}.
VerificationReport verify_injection(GroupPtr const &G, Context const &ctx, int k);

// Every class of commuting p-power n-tuples of G is hit from some abelian
// subgroup (subgroups enumerated by brute force).
VerificationReport verify_abelian_embedding(GroupPtr const &G, Context const &ctx);

// The assembly map from per-digit p-power sum data onto all sum data of
// total order m is surjective (image computed exhaustively).
VerificationReport verify_assembly(GroupPtr const &G, Context const &ctx, int m);

}  // namespace charpow
