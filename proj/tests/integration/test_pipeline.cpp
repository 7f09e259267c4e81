#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfconc/corpus.hpp"
#include "hopfconc/cover.hpp"
#include "hopfconc/errors.hpp"
#include "hopfconc/fox.hpp"
#include "hopfconc/obstruction.hpp"

using namespace hopfconc;

namespace {

std::vector<CorpusEntry> corpus() { return load_corpus(HOPFCONC_CORPUS_DIR); }

GroupMap map_for(const KnownCover& c, int components) {
  if (components == 1) return cyclic_map(c.orders.at(0));
  if (c.orders.size() == 1) return GroupMap(FinAbGroup({c.orders[0]}), {GroupElement{1}, GroupElement{0}});
  return admissible_map(c.orders[0], c.orders[1]);
}

}  // namespace

TEST_CASE("corpus loads with provenance for every known field") {
  const auto entries = corpus();
  CHECK(entries.size() >= 8);
  for (const auto& e : entries) {
    INFO(e.name);
    CHECK_FALSE(e.name.empty());
    CHECK(!e.provenance.empty());
  }
  CHECK_THROWS_AS(parse_corpus_entry("# alexander: 1\nX[4,2,3,1];X[2,4,1,3]\n"), ParseError);
  CHECK_NOTHROW(parse_corpus_entry("# alexander: 1\n# alexander.provenance: tables\nX[4,2,3,1];X[2,4,1,3]\n"));
}

TEST_CASE("known Alexander polynomials") {
  for (const auto& e : corpus()) {
    if (!e.alexander) continue;
    INFO(e.name);
    const int m = e.diagram.component_count();
    const LaurentPoly known = parse_laurent(*e.alexander, default_variable_names(m));
    const LaurentPoly computed = m == 1 ? knot_alexander(e.diagram) : multivariable_alexander(e.diagram);
    if (known.is_zero()) {
      CHECK(computed.is_zero());
    } else {
      CHECK(associated(known, computed));
    }
    if (e.seifert && m == 1) CHECK(associated(e.seifert->alexander(), computed));
  }
}

TEST_CASE("known cover homology") {
  for (const auto& e : corpus()) {
    const WirtingerData w = wirtinger(e.diagram);
    for (const auto& c : e.covers) {
      INFO(e.name << " " << c.orders.size());
      const CoverHomology h = homology_of_cover(w.presentation, w.meridians, map_for(c, e.diagram.component_count()));
      CHECK(h.free_rank == c.free_rank);
      std::vector<std::int64_t> t;
      for (const auto& x : h.torsion) t.push_back(x.get_si());
      CHECK(t == c.torsion);
    }
  }
}

TEST_CASE("diagram, polynomial and cover agree end to end") {
  for (const auto& e : corpus()) {
    if (e.diagram.component_count() != 2 || std::abs(linking_number(e.diagram, 0, 1)) != 1) continue;
    INFO(e.name);
    const LaurentPoly delta = multivariable_alexander(e.diagram);
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
      const CoverFormulaReport r = verify_link_cover_formula(delta, admissible_map(k, l), &e.diagram);
      CHECK(r.consistent);
      CHECK(r.free_rank == std::size_t{2});
    }
  }
}

TEST_CASE("stand-in corpus entry drives the obstruction") {
  const CorpusEntry e = load_corpus_entry(std::string(HOPFCONC_CORPUS_DIR) + "/standin.pd");
  REQUIRE(e.gamma);
  SatelliteSpec s;
  s.base = e.diagram;
  s.gamma = *e.gamma;
  s.companion = *load_corpus_entry(std::string(HOPFCONC_CORPUS_DIR) + "/trefoil.pd").seifert;
  ScanOptions o;
  o.cap = 4;
  const ObstructionReport r = hopf_obstruction_scan(s, o);
  CHECK(r.verdict() == "OBSTRUCTED");
  s.companion = *load_corpus_entry(std::string(HOPFCONC_CORPUS_DIR) + "/stevedore.pd").seifert;
  CHECK(hopf_obstruction_scan(s, o).verdict() == "NOT-OBSTRUCTED");
}
