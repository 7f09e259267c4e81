#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "hopfconc/finite_abelian.hpp"
#include "hopfconc/link_diagram.hpp"
#include "hopfconc/matrix.hpp"

namespace hopfconc {

// Cellular chain complex of the cover of the presentation 2-complex induced
// by Z^m -> A. Chains are row vectors; the 1-cell (generator j, deck b) has
// index j*k + b with deck elements in the group's canonical order.
struct CoverComplex {
  GroupMap phi;
  std::size_t k = 0;
  std::size_t relation_count = 0;
  std::size_t generator_count = 0;
  IntMatrix d2;  // (k*r) x (k*n)
  IntMatrix d1;  // (k*n) x k
};

CoverComplex cover_chain_complex(const GroupPresentation& pres, const MeridianMap& ab, const GroupMap& phi,
                                 std::int64_t bound = kDefaultGroupBound);

// H_1 = Z^free_rank + sum Z_{e_i}.
//
// `generators[i]` is a 1-chain representing the i-th torsion summand;
// `coordinates[i]` is the column that reads its coefficient off a chain.
struct CoverHomology {
  std::size_t chain_length = 0;
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;
  std::vector<std::vector<BigInt>> generators;
  std::vector<std::vector<BigInt>> coordinates;
  // Columns whose pairing with a cycle vanishes exactly when the cycle is torsion.
  std::vector<std::vector<BigInt>> free_coordinates;

  BigInt torsion_order() const;
  // Torsion as a FinAbGroup; throws BoundExceeded when an order does not fit.
  FinAbGroup torsion_group() const;
};

// H_1 of the cover: cycles of d1 modulo the row space of `relations`.
CoverHomology quotient_homology(const IntMatrix& relations, const IntMatrix& d1);

CoverHomology homology_of_cover(const CoverComplex& c);
// Free rank and torsion only, with no generators or coordinates. Cheaper
// and far less prone to coefficient growth on large covers.
CoverHomology homology_groups_of_cover(const CoverComplex& c);
CoverHomology homology_of_cover(const GroupPresentation& pres, const MeridianMap& ab, const GroupMap& phi,
                                std::int64_t bound = kDefaultGroupBound);

// Lifts of a closed word: row b is the 1-chain of the lift starting at deck
// element b (the basepoint lift is row 0). Throws NotInKernel unless
// phi(ab(w)) = 0.
IntMatrix lift_chains(const Word& w, const MeridianMap& ab, const GroupMap& phi,
                      std::int64_t bound = kDefaultGroupBound);

struct ChainClass {
  GroupElement torsion;  // coordinates modulo the torsion orders
  bool is_torsion = true;
};

ChainClass classify_chain(const CoverHomology& h, const std::vector<BigInt>& chain);

// Classes of the k lifts of w, in deck order. The chains are checked to be
// cycles.
std::vector<ChainClass> lift_class_of_curve(const Word& w, const MeridianMap& ab, const GroupMap& phi,
                                            const CoverHomology& h, std::int64_t bound = kDefaultGroupBound);

// Words mu^o and mu^a * ell^b generating the kernel of the boundary torus
// of `component` under phi.
std::vector<Word> peripheral_kernel_words(const WirtingerData& w, const GroupMap& phi, int component);

// Torsion of H_1 of the cover relative to the preimage of one boundary
// torus, computed as H_1(cover) modulo the lifted peripheral classes.
struct RelativeCoverHomology {
  CoverHomology absolute;
  CoverHomology relative;
  // The two torsion groups have the same invariant factors.
  bool torsion_agrees = false;
};

RelativeCoverHomology relative_homology_of_cover(const WirtingerData& w, const GroupMap& phi, int component = 0,
                                                 std::int64_t bound = kDefaultGroupBound);

struct CoverFormulaReport {
  std::optional<BigInt> lhs;
  BigInt rhs_exact;
  double rhs_numeric = 0;
  bool consistent = false;
  std::optional<std::size_t> free_rank;
  std::vector<BigInt> torsion;
};

// |TH_1| of the cover against prod_eta Delta(eta(phi(s)), eta(phi(t))).
// Without a diagram only the right-hand side is computed; lhs is 0 when
// the cover has extra free rank. Throws Inconsistent when the exact and
// numeric right-hand sides disagree.
CoverFormulaReport verify_link_cover_formula(const LaurentPoly& delta, const GroupMap& phi,
                                             const PDCode* diagram = nullptr,
                                             std::int64_t bound = kDefaultGroupBound);

// Same for the n-fold cyclic cover of a knot exterior.
CoverFormulaReport verify_knot_cover_formula(const LaurentPoly& delta, std::int64_t n,
                                             const PDCode* diagram = nullptr,
                                             std::int64_t bound = kDefaultGroupBound);

nlohmann::ordered_json to_json(const CoverFormulaReport& r);
nlohmann::ordered_json to_json(const CoverHomology& h);

}  // namespace hopfconc
