#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "hopfconc/corpus.hpp"
#include "hopfconc/errors.hpp"
#include "hopfconc/obstruction.hpp"

using namespace hopfconc;

namespace {

const char* kStandIn = "X[1,2,3,4];X[2,5,6,3];X[5,7,8,6];X[7,9,10,11];X[11,12,4,8];X[12,10,13,14];X[14,13,9,1]";
const char* kHopf = "X[4,2,3,1];X[2,4,1,3]";
const SeifertMatrix kTrefoil(IntMatrix(2, 2, {1, -1, 0, 1}));
const SeifertMatrix kFigureEight(IntMatrix(2, 2, {1, 1, 0, -1}));
const SeifertMatrix kUnknot(IntMatrix(1, 1, {0}));

SatelliteSpec stand_in(const SeifertMatrix& k) {
  SatelliteSpec s;
  s.base = parse_pd(kStandIn);
  s.companion = k;
  s.gamma = {{0, 1}, {4, -1}};
  return s;
}

ScanOptions options(std::int64_t p, std::int64_t cap) {
  ScanOptions o;
  o.p = p;
  o.cap = cap;
  o.q_bound = 9;
  return o;
}

// Lift classes in a cyclic group depend on the chosen generator; compare
// them up to multiplication by a unit.
bool same_up_to_unit(const std::vector<GroupElement>& got, const std::vector<std::int64_t>& want, std::int64_t n) {
  if (got.size() != want.size()) return false;
  for (std::int64_t c = 1; c < n; ++c) {
    if (std::gcd(c, n) != 1) continue;
    bool all = true;
    for (std::size_t i = 0; i < want.size(); ++i) all = all && got[i] == GroupElement{want[i] * c % n};
    if (all) return true;
  }
  return false;
}

std::vector<std::pair<int, int>> exponents(const std::vector<AdmissibleMap>& maps) {
  std::vector<std::pair<int, int>> out;
  for (const auto& m : maps) out.emplace_back(m.a, m.b);
  return out;
}

// Characters of prime power order dividing q^k (q^k <= q_bound) that vanish
// on P, found by testing every character of T.
std::size_t brute_character_count(const FinAbGroup& t, const Subgroup& p, std::int64_t q_bound) {
  std::size_t n = 0;
  for (const auto& chi : enumerate_characters(t)) {
    bool vanishes = true;
    for (const auto& x : p.elements())
      if (chi.phase(x).numerator() != 0) vanishes = false;
    if (!vanishes) continue;
    std::int64_t o = chi.order(), q = 0;
    for (std::int64_t f = 2; f <= o; ++f)
      if (o % f == 0) {
        q = f;
        break;
      }
    if (o == 1) {
      ++n;
      continue;
    }
    std::int64_t r = o;
    while (r % q == 0) r /= q;
    if (r != 1) continue;
    std::int64_t top = 1;
    while (top * q <= q_bound) top *= q;
    if (top % o == 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("admissible map enumeration") {
  CHECK(exponents(admissible_maps(2, 4)) == std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {1, 1}});
  CHECK(exponents(admissible_maps(3, 3)) == std::vector<std::pair<int, int>>{{1, 0}});
  CHECK(admissible_maps(2, 1).empty());
  CHECK(exponents(admissible_maps(2, 16)) ==
        std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {1, 1}, {3, 0}, {2, 1}, {4, 0}, {3, 1}, {2, 2}});
  CHECK_THROWS_AS(admissible_maps(4, 16), InvalidInput);
  const auto m = admissible_maps(3, 9);
  CHECK(m[2].name() == "Z3+Z3");
  CHECK(m[0].map().target().orders() == std::vector<std::int64_t>{3});
}

TEST_CASE("satellite specs are validated") {
  SatelliteSpec s = stand_in(kTrefoil);
  CHECK_NOTHROW(validate(s));
  s.gamma = {{0, 1}};
  CHECK_THROWS_AS(validate(s), InvalidInput);
  s.gamma = {{0, 1}, {1, -1}};  // meridians of different components
  CHECK_THROWS_AS(validate(s), InvalidInput);
  s.gamma = {{99, 1}};
  CHECK_THROWS_AS(validate(s), InvalidInput);
  s = stand_in(kTrefoil);
  s.base = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]");
  CHECK_THROWS_AS(validate(s), InvalidInput);
}

TEST_CASE("lift classes of the stand-in curve") {
  const SatelliteSpec s = stand_in(kTrefoil);
  const WirtingerData w = wirtinger(s.base);
  const GroupMap phi = admissible_map(2, 2);
  const CoverHomology h = homology_of_cover(w.presentation, w.meridians, phi);
  REQUIRE(h.torsion == std::vector<BigInt>{9});
  const auto lifts = gamma_lift_classes(s, w, phi, h);
  CHECK(same_up_to_unit(lifts, {1, 8, 8, 1}, 9));
}

TEST_CASE("satellite sigma along the stand-in") {
  const SatelliteSpec s = stand_in(kTrefoil);
  const GroupMap phi = admissible_map(2, 2);
  const FinAbGroup z9({9});
  for (std::int64_t n = 0; n < 9; ++n) {
    const SatelliteSigma v = satellite_sigma(s, phi, Character(z9, {n}));
    REQUIRE(v.omegas.size() == 4);
    if (n % 3 == 0 && n != 0) {
      CHECK(v.value == 8);
      CHECK((v.value == 2 || v.value == 4 || v.value == 6 || v.value == 8));
    }
    if (n == 0) CHECK(v.value == 0);
  }
  // Unknotted companion: nothing changes.
  for (std::int64_t n = 0; n < 9; ++n) CHECK(satellite_sigma(stand_in(kUnknot), phi, Character(z9, {n})).value == 0);
  CHECK_THROWS_AS(satellite_sigma(s, phi, Character(FinAbGroup({3}), {1})), InvalidInput);
}

TEST_CASE("trivial character gives the base sigma") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double base = std::uniform_int_distribution<int>(-4, 4)(rng) / 2.0;
    std::vector<GroupElement> lifts;
    const int n = std::uniform_int_distribution<int>(1, 9)(rng);
    for (int i = 0; i < n; ++i) lifts.push_back({std::uniform_int_distribution<int>(0, 8)(rng)});
    for (const auto* k : {&kTrefoil, &kFigureEight, &kUnknot})
      CHECK(satellite_sigma(*k, lifts, Character(FinAbGroup({9}), {0}), base).value == base);
  }
}

TEST_CASE("mirroring the companion negates the increment") {
  std::mt19937_64 rng(17);
  const std::vector<SeifertMatrix> companions{kTrefoil, kFigureEight, kTrefoil.connected_sum(kTrefoil),
                                              kTrefoil.connected_sum(kFigureEight)};
  for (const auto& k : companions) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::int64_t d = std::vector<std::int64_t>{3, 4, 5, 8, 9}[rng() % 5];
      const FinAbGroup g({d});
      std::vector<GroupElement> lifts;
      for (int i = 0; i < 4; ++i) lifts.push_back({static_cast<std::int64_t>(rng() % d)});
      const Character chi(g, {static_cast<std::int64_t>(rng() % d)});
      const auto a = satellite_sigma(k, lifts, chi, 0), b = satellite_sigma(k.mirror(), lifts, chi, 0);
      CHECK(a.companion_sum == -b.companion_sum);
      CHECK((a.value != 0) == (b.value != 0));
    }
  }
}

TEST_CASE("scan over the stand-in base") {
  const ObstructionReport r = hopf_obstruction_scan(stand_in(kTrefoil), options(2, 4));
  REQUIRE(r.maps.size() == 3);
  CHECK(r.maps[0].torsion.empty());
  CHECK_FALSE(r.maps[0].obstructed);
  const MapResult& m = r.maps[2];
  CHECK(m.torsion == std::vector<BigInt>{9});
  CHECK(m.free_rank == 2);
  CHECK(m.relative_torsion_agrees);
  CHECK(m.form_source == "standard");
  REQUIRE(m.metabolisers.size() == 1);
  CHECK(m.metabolisers[0].p.indices() == std::vector<std::size_t>{0, 3, 6});
  CHECK(m.metabolisers[0].characters.front().chi.trivial);
  CHECK(m.obstructed);
  CHECK(r.obstructed);
  CHECK(r.verdict() == "OBSTRUCTED");
  for (const auto& c : m.metabolisers[0].characters)
    if (!c.chi.trivial) CHECK(c.sigma.value == 8);

  const ObstructionReport u = hopf_obstruction_scan(stand_in(kUnknot), options(2, 4));
  CHECK(u.verdict() == "NOT-OBSTRUCTED");
  for (const auto& mr : u.maps)
    for (const auto& p : mr.metabolisers)
      for (const auto& c : p.characters) CHECK(c.sigma.value == 0);
}

TEST_CASE("scan over the Hopf link sees only trivial characters") {
  SatelliteSpec s;
  s.base = parse_pd(kHopf);
  s.companion = kTrefoil;
  s.gamma = {{0, 1}, {0, -1}};
  const ObstructionReport r = hopf_obstruction_scan(s, options(3, 9));
  CHECK(r.verdict() == "NOT-OBSTRUCTED");
  for (const auto& m : r.maps) {
    CHECK(m.torsion.empty());
    REQUIRE(m.metabolisers.size() == 1);
    REQUIRE(m.metabolisers[0].characters.size() == 1);
    CHECK(m.metabolisers[0].characters[0].chi.trivial);
  }
}

TEST_CASE("every (map, metaboliser, character) triple is reported once") {
  ScanOptions o = options(2, 8);
  o.forms.push_back(LinkingForm::standard(FinAbGroup({5, 45})));
  const ObstructionReport r = hopf_obstruction_scan(stand_in(kTrefoil), o);
  REQUIRE(r.maps.size() == 5);
  for (const auto& m : r.maps) {
    std::vector<std::int64_t> orders;
    for (const auto& t : m.torsion) orders.push_back(t.get_si());
    const FinAbGroup t(orders);
    for (const auto& p : m.metabolisers) {
      std::set<std::vector<std::int64_t>> seen;
      for (const auto& c : p.characters) CHECK(seen.insert(c.chi.character.numerators()).second);
      CHECK(p.characters.size() == brute_character_count(t, p.p, o.q_bound));
    }
  }
  CHECK(r.maps[4].form_source == "supplied");
}

TEST_CASE("form-dependent torsion needs a form") {
  CHECK_THROWS_AS(hopf_obstruction_scan(stand_in(kTrefoil), options(2, 8)), FormRequired);
}

TEST_CASE("scan reports do not depend on the thread count") {
  ScanOptions o = options(2, 8);
  o.forms.push_back(LinkingForm::standard(FinAbGroup({5, 45})));
  const SatelliteSpec s = stand_in(kTrefoil);
  const std::string one = to_json(hopf_obstruction_scan(s, o), s).dump();
  o.jobs = 3;
  CHECK(to_json(hopf_obstruction_scan(s, o), s).dump() == one);
}

TEST_CASE("scan input JSON") {
  const auto j = nlohmann::json::parse(std::string(R"({"base_pd":")") + kStandIn +
                                       R"(","companion_seifert":[[1,-1],[0,1]],"gamma_word":[[0,1],[4,-1]],"cap":4})");
  const ScanInput in = parse_scan_input(j);
  CHECK(in.options.cap == 4);
  CHECK(in.options.p == 2);
  CHECK(in.spec.gamma == Word{{0, 1}, {4, -1}});
  CHECK(in.spec.base_sigma == 0);
  CHECK_THROWS_AS(parse_scan_input(nlohmann::json::parse(R"({"base_pd":"X[4,2,3,1];X[2,4,1,3]"})")), ParseError);
  const auto report = to_json(hopf_obstruction_scan(in.spec, in.options), in.spec);
  CHECK(report["verdict"] == "OBSTRUCTED");
  std::vector<GroupElement> lifts;
  for (const auto& x : report["maps"][2]["lift_classes"]) lifts.push_back(x.get<GroupElement>());
  CHECK(same_up_to_unit(lifts, {1, 8, 8, 1}, 9));
}

TEST_CASE("corpus scan inputs") {
  const std::string dir = std::string(HOPFCONC_CORPUS_DIR) + "/scans/";
  for (const auto& [file, verdict] : std::map<std::string, std::string>{{"standin_trefoil.json", "OBSTRUCTED"},
                                                                        {"standin_mirror_trefoil.json", "OBSTRUCTED"},
                                                                        {"standin_unknot.json", "NOT-OBSTRUCTED"},
                                                                        {"hopf_trefoil.json", "NOT-OBSTRUCTED"}}) {
    const ScanInput in = parse_scan_input(nlohmann::json::parse(read_file(dir + file)));
    CHECK_MESSAGE(hopf_obstruction_scan(in.spec, in.options).verdict() == verdict, file);
  }
}

TEST_CASE("tying a trefoil into the stand-in preserves the cover torsion") {
  // Stand-in with an extra unknotted strand gamma clasping it: closure of the
  // 4-braid s3^2 s1 s3^-2 s1 s1 s2^-1 s1 s2^-1 s2^-1. Gamma is component 0.
  const PDCode with_gamma = parse_pd(
      "X[1,2,3,4];X[2,5,6,3];X[7,8,9,10];X[6,5,11,12];X[12,11,1,13];X[8,14,15,9];"
      "X[14,16,17,15];X[16,13,18,19];X[19,20,10,17];X[20,18,21,22];X[22,21,4,7]");
  REQUIRE(with_gamma.component_count() == 3);
  CHECK(linking_number(with_gamma, 0, 1) == 0);
  CHECK(linking_number(with_gamma, 0, 2) == 0);
  CHECK(std::abs(linking_number(with_gamma, 1, 2)) == 1);

  const WirtingerData wl = wirtinger(with_gamma);
  const WirtingerData wk = wirtinger(parse_pd("X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]"));

  // Exterior of S: glue the companion exterior along gamma's boundary torus,
  // meridian of gamma to longitude of K and longitude of gamma to meridian of K.
  GroupPresentation sat = wl.presentation;
  const int off = sat.generator_count;
  sat.generator_count += wk.presentation.generator_count;
  auto shifted = [off](Word w) {
    for (auto& l : w) l.generator += off;
    return w;
  };
  for (const auto& r : wk.presentation.relations) sat.relations.push_back(shifted(r));
  const Word mu_gamma{{wl.peripheral_meridian[0], 1}};
  const Word mu_k{{wk.peripheral_meridian[0] + off, 1}};
  sat.relations.push_back(concat(mu_gamma, inverse(shifted(wk.longitude[0]))));
  sat.relations.push_back(concat(wl.longitude[0], inverse(mu_k)));

  std::vector<int> comp;
  for (int c : wl.presentation.generator_component) comp.push_back(c - 1);
  for (int j = 0; j < wk.presentation.generator_count; ++j) comp.push_back(-1);
  const MeridianMap sat_ab(2, comp);

  const WirtingerData base = wirtinger(parse_pd(kStandIn));
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 2}}) {
    CAPTURE(k);
    CAPTURE(l);
    const GroupMap phi = admissible_map(k, l);
    const CoverHomology hb = homology_of_cover(base.presentation, base.meridians, phi);
    const CoverHomology hs = homology_of_cover(sat, sat_ab, phi);
    CHECK(hs.torsion == hb.torsion);
    CHECK(hs.free_rank == hb.free_rank);
  }
}
