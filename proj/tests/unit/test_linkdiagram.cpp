#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "hopfconc/errors.hpp"
#include "hopfconc/link_diagram.hpp"
#include "hopfconc/matrix.hpp"

using namespace hopfconc;

namespace {

const char* kHopf = "X[4,2,3,1];X[2,4,1,3]";
const char* kTrefoil = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]";
const char* kFigureEight = "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]";
const char* kSplitUnlink = "X[3,2,4,1];X[4,2,3,1]";

// Counts label occurrences directly from the crossing tuples.
std::map<int, int> label_counts(const PDCode& d) {
  std::map<int, int> c;
  for (const auto& x : d.crossings())
    for (int a : x.arcs) ++c[a];
  return c;
}

// Abelianization rank and torsion through a plain integer relation matrix.
std::pair<std::size_t, std::size_t> abelianization(const WirtingerData& w) {
  const auto n = static_cast<std::size_t>(w.presentation.generator_count);
  IntMatrix m(w.presentation.relations.size(), n);
  for (std::size_t i = 0; i < w.presentation.relations.size(); ++i)
    for (const auto& l : w.presentation.relations[i]) m(i, static_cast<std::size_t>(l.generator)) += l.exponent;
  return {n - rank(m), n};
}

}  // namespace

TEST_CASE("parse hopf diagram") {
  PDCode d = parse_pd(kHopf);
  CHECK(d.crossings().size() == 2);
  CHECK(d.arc_count() == 4);
  CHECK(d.component_count() == 2);
  for (auto [label, count] : label_counts(d)) CHECK(count == 2);
  CHECK(d.component_arcs()[0].size() == 2);
  CHECK(d.component_arcs()[1].size() == 2);
  CHECK(d.component_arcs()[0].front() == 1);
  for (const auto& x : d.crossings()) CHECK(x.sign == 1);
}

TEST_CASE("components follow successor cycles") {
  PDCode t = parse_pd(kTrefoil);
  CHECK(t.component_count() == 1);
  CHECK(t.component_arcs()[0] == std::vector<int>{1, 2, 3, 4, 5, 6});
  PDCode f = parse_pd(kFigureEight);
  CHECK(f.component_count() == 1);
  PDCode u = parse_pd("");
  CHECK(u.component_count() == 1);
  CHECK(u.arc_count() == 1);
  CHECK(u.crossings().empty());
}

TEST_CASE("malformed diagrams name the crossing") {
  CHECK_THROWS_AS(parse_pd("X[1,3,2,5]"), MalformedDiagram);
  CHECK_THROWS_AS(parse_pd("X[1,2,3];X[1,2,3,4]"), MalformedDiagram);
  CHECK_THROWS_AS(parse_pd("X[1,a,2,2]"), MalformedDiagram);
  try {
    parse_pd("X[4,2,3,1];X[2,4,1,5]");
    FAIL("expected MalformedDiagram");
  } catch (const MalformedDiagram& e) {
    CHECK(std::string(e.what()).find("crossing") != std::string::npos);
  }
  // Supplied sign contradicting the orientation forced by the under-strands.
  CHECK_THROWS_AS(parse_pd("+X[4,2,3,1];-X[2,4,1,3]"), MalformedDiagram);
}

TEST_CASE("text and json formats agree") {
  PDCode a = parse_pd("# comment\n +X[4,2,3,1] ;\n X[2,4,1,3]");
  PDCode b = parse_pd(R"({"crossings":[{"sign":1,"arcs":[4,2,3,1]},{"arcs":[2,4,1,3]}]})");
  CHECK(a.to_string() == b.to_string());
  PDCode c = parse_pd("\xE2\x88\x92X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]");
  CHECK(c.crossings()[0].sign == -1);
  PDCode u = parse_pd(R"({"crossings":[],"arc_count":2})");
  CHECK(u.component_count() == 2);
}

TEST_CASE("linking numbers") {
  PDCode h = parse_pd(kHopf);
  CHECK(linking_number(h, 0, 1) == 1);
  CHECK(linking_number(h, 1, 0) == 1);
  CHECK_THROWS_AS(linking_number(h, 0, 0), SameComponent);
  CHECK(linking_number(parse_pd(kSplitUnlink), 0, 1) == 0);
  PDCode r = h.with_component_reversed(1);
  CHECK(linking_number(r, 0, 1) == -1);
  CHECK(linking_number(parse_pd("X[3,1,4,2];X[2,4,1,3]"), 0, 1) == -1);
  PDCode s = h.with_components_swapped();
  CHECK(linking_number(s, 0, 1) == 1);
}

TEST_CASE("wirtinger presentations") {
  WirtingerData t = wirtinger(parse_pd(kTrefoil));
  CHECK(t.presentation.generator_count == 3);
  CHECK(t.presentation.relations.size() == 3);
  CHECK(abelianization(t).first == 1);
  WirtingerData h = wirtinger(parse_pd(kHopf));
  CHECK(h.presentation.generator_count == 2);
  CHECK(h.presentation.relations.size() == 2);
  CHECK(abelianization(h).first == 2);
  WirtingerData u = wirtinger(parse_pd(""));
  CHECK(u.presentation.generator_count == 1);
  CHECK(u.presentation.relations.empty());
  WirtingerData s = wirtinger(parse_pd(kSplitUnlink));
  CHECK(s.presentation.generator_count == 3);
  CHECK(abelianization(s).first == 2);
}

TEST_CASE("relations abelianize to zero and longitudes match linking numbers") {
  for (const char* text : {kHopf, kTrefoil, kFigureEight, kSplitUnlink, "X[3,1,4,2];X[2,4,1,3]"}) {
    PDCode d = parse_pd(text);
    WirtingerData w = wirtinger(d);
    for (const auto& r : w.presentation.relations) {
      CHECK(r.size() == 4);
      for (int v : w.meridians.image(r)) CHECK(v == 0);
    }
    for (int c = 0; c < d.component_count(); ++c) {
      Exponent e = w.meridians.image(w.longitude[static_cast<std::size_t>(c)]);
      for (int j = 0; j < d.component_count(); ++j)
        CHECK(e[static_cast<std::size_t>(j)] == (j == c ? 0 : linking_number(d, c, j)));
    }
  }
}

TEST_CASE("property: random relabelling preserves components and linking") {
  std::mt19937_64 rng(7);
  const PDCode base = parse_pd(kHopf);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> perm{1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Crossing> xs = base.crossings();
    std::shuffle(xs.begin(), xs.end(), rng);
    for (auto& x : xs)
      for (int& a : x.arcs) a = perm[static_cast<std::size_t>(a - 1)];
    PDCode d(xs, 4, std::vector<bool>(xs.size(), false));
    CHECK(d.component_count() == 2);
    CHECK(linking_number(d, 0, 1) == 1);
    CHECK(linking_number(d, 1, 0) == linking_number(d, 0, 1));
  }
}
