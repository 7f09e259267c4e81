#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopfconc/cover.hpp"
#include "hopfconc/linking_form.hpp"
#include "hopfconc/seifert.hpp"

namespace hopfconc {

// Satellite S(L, K, gamma) of a base link L with companion K tied in along
// the curve gamma, given as a word in the Wirtinger generators of L.
struct SatelliteSpec {
  PDCode base;
  // sigma(tau(L, chi)) for the base; 0 when L is declared concordant to H.
  double base_sigma = 0;
  bool declared_concordant_to_hopf = true;
  SeifertMatrix companion;
  Word gamma;
  // Caller assertions, recorded in the report.
  bool gamma_null_homologous = true;
  bool gamma_unknotted = true;
};

// Throws InvalidInput unless the base has two components and gamma is
// null-homologous in Z^2.
void validate(const SatelliteSpec& spec);

// Lift classes of gamma in the torsion of H_1 of the base cover; throws
// InvalidInput when some lift is not a torsion class.
std::vector<GroupElement> gamma_lift_classes(const SatelliteSpec& spec, const WirtingerData& w, const GroupMap& phi,
                                             const CoverHomology& h, std::int64_t bound = kDefaultGroupBound);

struct SatelliteSigma {
  std::vector<Rational> omegas;  // phases of chi on the lift classes
  int companion_sum = 0;
  double value = 0;
};

// base_sigma + sum_i sigma(K, chi([gamma_i])).
SatelliteSigma satellite_sigma(const SeifertMatrix& companion, const std::vector<GroupElement>& lift_classes,
                               const Character& chi, double base_sigma);
SatelliteSigma satellite_sigma(const SatelliteSpec& spec, const GroupMap& phi, const Character& chi,
                               std::int64_t bound = kDefaultGroupBound);

struct AdmissibleMap {
  std::int64_t p = 0;
  int a = 0, b = 0;
  std::int64_t k() const;
  std::int64_t l() const;
  GroupMap map() const;
  std::string name() const;
};

// Z^2 -> Z_{p^a} + Z_{p^b} with a >= b >= 0, a >= 1 and p^(a+b) <= cap,
// ordered by |A| and then by b.
std::vector<AdmissibleMap> admissible_maps(std::int64_t p, std::int64_t cap);

struct CharacterResult {
  PrimePowerCharacter chi;
  SatelliteSigma sigma;
};

struct MetaboliserResult {
  Subgroup p;
  std::vector<CharacterResult> characters;
  bool has_nonvanishing = false;
};

struct MapResult {
  AdmissibleMap phi;
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;
  bool relative_torsion_agrees = false;
  std::string form_source;  // "standard" or "supplied"
  std::vector<GroupElement> lift_classes;
  std::vector<MetaboliserResult> metabolisers;
  bool no_metaboliser = false;
  bool obstructed = false;
};

struct ObstructionReport {
  std::vector<MapResult> maps;
  bool obstructed = false;
  std::string verdict() const { return obstructed ? "OBSTRUCTED" : "NOT-OBSTRUCTED"; }
};

struct ScanOptions {
  std::int64_t p = 2;
  std::int64_t cap = 16;
  std::int64_t q_bound = 9;
  // Forms on the torsion groups that need one, matched by cyclic orders.
  std::vector<LinkingForm> forms;
  int jobs = 1;
  std::int64_t bound = kDefaultGroupBound;
};

// Verdict per map: OBSTRUCTED when every metaboliser carries a vanishing
// prime power character with nonzero satellite sigma. A torsion group with
// no metaboliser at all is flagged and also counts as obstructed. Throws
// FormRequired when metabolisers depend on the form and none is supplied.
ObstructionReport hopf_obstruction_scan(const SatelliteSpec& spec, const ScanOptions& options);

// {"base_pd": text or PD JSON, "base_sigma": 0, "companion_seifert": {"V": ...} or [[...]],
//  "gamma_word": [[gen, exp], ...], "p": 2, "cap": 16, "q_bound": 9, "form": form or [forms]}
struct ScanInput {
  SatelliteSpec spec;
  ScanOptions options;
};
ScanInput parse_scan_input(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ObstructionReport& r, const SatelliteSpec& spec);

}  // namespace hopfconc
