#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hopfconc/laurent.hpp"

namespace hopfconc {

// One crossing of a planar diagram.
//
// arcs = {a, b, c, d} are the four edge labels listed counterclockwise
// starting at the incoming under-edge, so a -> c is the under-strand. The
// crossing is positive exactly when b is the outgoing over-edge.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 0;  // +1 or -1 once the diagram is validated
};

// Oriented link diagram in planar-diagram form.
//
// A diagram with no crossings and arc_count = n is the n-component split
// unlink drawn as disjoint round circles (n = 1 is the 0-crossing unknot).
class PDCode {
 public:
  PDCode() = default;
  // Validates labels, resolves orientation, and fills in missing signs.
  // `sign_given[i]` says whether crossings[i].sign was supplied.
  PDCode(std::vector<Crossing> crossings, int arc_count, const std::vector<bool>& sign_given);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int arc_count() const { return arc_count_; }
  int component_count() const { return component_count_; }
  // Component index of each edge label (index 0 unused).
  const std::vector<int>& component_of_arc() const { return component_of_arc_; }
  int component_of(int arc) const { return component_of_arc_.at(static_cast<std::size_t>(arc)); }
  // Edge that follows `arc` along the orientation.
  int successor(int arc) const { return successor_.at(static_cast<std::size_t>(arc)); }
  // Edges of each component in orientation order, starting at its smallest label.
  const std::vector<std::vector<int>>& component_arcs() const { return component_arcs_; }

  // Same diagram with the orientation of `component` reversed.
  PDCode with_component_reversed(int component) const;
  // Same diagram with components 0 and 1 swapped (relabels arcs so that the
  // smallest-label rule puts the old component 1 first).
  PDCode with_components_swapped() const;

  std::string to_string() const;

 private:
  std::vector<Crossing> crossings_;
  int arc_count_ = 0;
  int component_count_ = 0;
  std::vector<int> component_of_arc_;
  std::vector<int> successor_;
  std::vector<std::vector<int>> component_arcs_;
};

// Diagram text: semicolon separated "X[a,b,c,d]" with an optional "+" or "-"
// sign prefix, or a JSON document {"crossings":[{"sign":1,"arcs":[a,b,c,d]}]}
// (optional "arc_count" for crossing-free diagrams). An empty crossing list
// is the 0-crossing unknot. Lines starting with '#' are comments.
// Throws MalformedDiagram / ParseError.
PDCode parse_pd(std::string_view text);

int linking_number(const PDCode& d, int i, int j);

// Word in a free group: (generator index, exponent +-1).
struct Letter {
  int generator;
  int exponent;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, long n);

struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relations;
  // Component index of every generator.
  std::vector<int> generator_component;
};

// Abelianization onto Z^m: generator g -> e_{component(g)}, or 0 when the
// component index is -1.
class MeridianMap {
 public:
  MeridianMap() = default;
  MeridianMap(int rank, std::vector<int> component_of_generator);

  int rank() const { return rank_; }
  int generator_count() const { return static_cast<int>(component_.size()); }
  int component(int generator) const { return component_.at(static_cast<std::size_t>(generator)); }
  Exponent image(int generator) const;
  Exponent image(const Word& w) const;

 private:
  int rank_ = 0;
  std::vector<int> component_;
};

struct WirtingerData {
  GroupPresentation presentation;
  MeridianMap meridians;
  // Generator of every edge label (index 0 unused).
  std::vector<int> generator_of_arc;
  // Per component: a meridian generator and a zero-framed longitude word
  // commuting with it.
  std::vector<int> peripheral_meridian;
  std::vector<Word> longitude;
};

// One generator per over-arc, one relation x_o^{-e} x_a x_o^{e} x_c^{-1} per
// crossing (under-strand a -> c, over-arc o, sign e). With this convention the
// generators are right-handed meridians: the longitude of a component is
// homologous to the sum of lk(component, j) * e_j.
WirtingerData wirtinger(const PDCode& d);

// Human readable word, generators printed as g0, g1, ...
std::string word_to_string(const Word& w);

}  // namespace hopfconc
