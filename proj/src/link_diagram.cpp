#include "hopfconc/link_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "hopfconc/errors.hpp"

namespace hopfconc {

namespace {

// Orientation role of an edge end at a crossing.
enum Role : signed char { kUnknown = -1, kHead = 0, kTail = 1 };

struct Slot {
  int crossing;
  int position;
};

std::string crossing_name(const std::vector<Crossing>& xs, std::size_t i) {
  std::ostringstream os;
  os << "crossing " << (i + 1) << " X[" << xs[i].arcs[0] << "," << xs[i].arcs[1] << "," << xs[i].arcs[2] << ","
     << xs[i].arcs[3] << "]";
  return os.str();
}

}  // namespace

PDCode::PDCode(std::vector<Crossing> crossings, int arc_count, const std::vector<bool>& sign_given)
    : crossings_(std::move(crossings)), arc_count_(arc_count) {
  const std::size_t n = crossings_.size();
  if (sign_given.size() != n) throw std::invalid_argument("sign_given has wrong length");
  if (n == 0) {
    if (arc_count_ < 1) throw MalformedDiagram("a crossing-free diagram needs at least one arc");
  } else if (arc_count_ != static_cast<int>(2 * n)) {
    throw MalformedDiagram("diagram with " + std::to_string(n) + " crossings must have " + std::to_string(2 * n) +
                           " arcs, got " + std::to_string(arc_count_));
  }

  // Every label appears exactly twice.
  std::vector<std::vector<Slot>> where(static_cast<std::size_t>(arc_count_) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (int p = 0; p < 4; ++p) {
      int label = crossings_[i].arcs[p];
      if (label < 1 || label > arc_count_)
        throw MalformedDiagram(crossing_name(crossings_, i) + ": label " + std::to_string(label) + " outside 1.." +
                               std::to_string(arc_count_));
      where[static_cast<std::size_t>(label)].push_back({static_cast<int>(i), p});
    }
  }
  for (int label = 1; label <= arc_count_ && n > 0; ++label) {
    const auto& w = where[static_cast<std::size_t>(label)];
    if (w.size() != 2) {
      std::size_t culprit = w.empty() ? 0 : static_cast<std::size_t>(w.back().crossing);
      throw MalformedDiagram(crossing_name(crossings_, culprit) + ": label " + std::to_string(label) + " appears " +
                             std::to_string(w.size()) + " times (expected 2)");
    }
  }

  successor_.assign(static_cast<std::size_t>(arc_count_) + 1, 0);
  component_of_arc_.assign(static_cast<std::size_t>(arc_count_) + 1, -1);

  if (n == 0) {
    for (int label = 1; label <= arc_count_; ++label) {
      successor_[static_cast<std::size_t>(label)] = label;
      component_of_arc_[static_cast<std::size_t>(label)] = label - 1;
      component_arcs_.push_back({label});
    }
    component_count_ = arc_count_;
    return;
  }

  // Resolve the orientation role of every edge end by propagating the two
  // constraints "the ends of an edge differ" and "the over-ends of a crossing
  // differ" from the under-strands and any supplied signs.
  std::vector<std::array<signed char, 4>> role(n, {kHead, kUnknown, kTail, kUnknown});
  std::queue<Slot> pending;
  auto assign = [&](Slot s, Role r) {
    auto& cur = role[static_cast<std::size_t>(s.crossing)][static_cast<std::size_t>(s.position)];
    if (cur == kUnknown) {
      cur = r;
      pending.push(s);
    } else if (cur != r) {
      throw MalformedDiagram(crossing_name(crossings_, static_cast<std::size_t>(s.crossing)) +
                             ": orientation is inconsistent with the rest of the diagram");
    }
  };
  auto other_end = [&](Slot s) {
    const auto& w = where[static_cast<std::size_t>(crossings_[static_cast<std::size_t>(s.crossing)].arcs[s.position])];
    return (w[0].crossing == s.crossing && w[0].position == s.position) ? w[1] : w[0];
  };
  auto propagate = [&]() {
    while (!pending.empty()) {
      Slot s = pending.front();
      pending.pop();
      Role r = static_cast<Role>(role[static_cast<std::size_t>(s.crossing)][static_cast<std::size_t>(s.position)]);
      Role flipped = r == kHead ? kTail : kHead;
      assign(other_end(s), flipped);
      if (s.position == 1) assign({s.crossing, 3}, flipped);
      if (s.position == 3) assign({s.crossing, 1}, flipped);
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    pending.push({static_cast<int>(i), 0});
    pending.push({static_cast<int>(i), 2});
    if (sign_given[i]) {
      if (crossings_[i].sign != 1 && crossings_[i].sign != -1)
        throw MalformedDiagram(crossing_name(crossings_, i) + ": sign must be +1 or -1");
      assign({static_cast<int>(i), 1}, crossings_[i].sign > 0 ? kTail : kHead);
    }
  }
  propagate();
  // Components that never pass under anything (split unknotted circles) keep
  // an undetermined orientation; orient them so the first such crossing is positive.
  for (std::size_t i = 0; i < n; ++i) {
    if (role[i][1] == kUnknown) {
      assign({static_cast<int>(i), 1}, kTail);
      propagate();
    }
  }
  for (std::size_t i = 0; i < n; ++i) crossings_[i].sign = role[i][1] == kTail ? 1 : -1;

  // Successor: follow each edge to its head and continue straight through.
  for (int label = 1; label <= arc_count_; ++label) {
    const auto& w = where[static_cast<std::size_t>(label)];
    Slot head = role[static_cast<std::size_t>(w[0].crossing)][static_cast<std::size_t>(w[0].position)] == kHead ? w[0]
                                                                                                               : w[1];
    const auto& x = crossings_[static_cast<std::size_t>(head.crossing)];
    successor_[static_cast<std::size_t>(label)] = x.arcs[static_cast<std::size_t>((head.position + 2) % 4)];
  }

  for (int label = 1; label <= arc_count_; ++label) {
    if (component_of_arc_[static_cast<std::size_t>(label)] >= 0) continue;
    std::vector<int> cycle;
    int e = label;
    do {
      if (component_of_arc_[static_cast<std::size_t>(e)] >= 0)
        throw MalformedDiagram("arc successor relation is not a union of cycles at label " + std::to_string(e));
      component_of_arc_[static_cast<std::size_t>(e)] = component_count_;
      cycle.push_back(e);
      e = successor_[static_cast<std::size_t>(e)];
    } while (e != label);
    component_arcs_.push_back(std::move(cycle));
    ++component_count_;
  }
}

PDCode PDCode::with_component_reversed(int component) const {
  std::vector<Crossing> xs = crossings_;
  for (auto& x : xs) {
    bool under = component_of(x.arcs[0]) == component;
    bool over = component_of(x.arcs[1]) == component;
    if (under) x.arcs = {x.arcs[2], x.arcs[3], x.arcs[0], x.arcs[1]};
    if (under != over) x.sign = -x.sign;
  }
  return PDCode(std::move(xs), arc_count_, std::vector<bool>(crossings_.size(), true));
}

PDCode PDCode::with_components_swapped() const {
  if (component_count_ != 2) throw InvalidInput("component swap needs a 2-component diagram");
  std::vector<int> relabel(static_cast<std::size_t>(arc_count_) + 1);
  int next = 1;
  for (int comp : {1, 0})
    for (int e : component_arcs_[static_cast<std::size_t>(comp)]) relabel[static_cast<std::size_t>(e)] = next++;
  std::vector<Crossing> xs = crossings_;
  for (auto& x : xs)
    for (int& a : x.arcs) a = relabel[static_cast<std::size_t>(a)];
  return PDCode(std::move(xs), arc_count_, std::vector<bool>(crossings_.size(), true));
}

std::string PDCode::to_string() const {
  if (crossings_.empty()) return "";
  std::ostringstream os;
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& x = crossings_[i];
    os << (i ? ";" : "") << (x.sign > 0 ? "+" : "-") << "X[" << x.arcs[0] << "," << x.arcs[1] << "," << x.arcs[2]
       << "," << x.arcs[3] << "]";
  }
  return os.str();
}

namespace {

PDCode parse_pd_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("crossings") || !doc["crossings"].is_array())
    throw ParseError("diagram JSON must be an object with a \"crossings\" array");
  std::vector<Crossing> xs;
  std::vector<bool> given;
  for (std::size_t i = 0; i < doc["crossings"].size(); ++i) {
    const auto& c = doc["crossings"][i];
    const std::string where = "crossing " + std::to_string(i + 1);
    if (!c.is_object() || !c.contains("arcs") || !c["arcs"].is_array())
      throw MalformedDiagram(where + ": missing \"arcs\" array");
    if (c["arcs"].size() != 4)
      throw MalformedDiagram(where + ": expected 4 arc labels, got " + std::to_string(c["arcs"].size()));
    Crossing x;
    for (int p = 0; p < 4; ++p) {
      if (!c["arcs"][p].is_number_integer()) throw MalformedDiagram(where + ": non-integer arc label");
      x.arcs[static_cast<std::size_t>(p)] = c["arcs"][p].get<int>();
    }
    bool has_sign = c.contains("sign");
    if (has_sign) {
      if (!c["sign"].is_number_integer()) throw MalformedDiagram(where + ": sign must be 1 or -1");
      x.sign = c["sign"].get<int>();
    }
    xs.push_back(x);
    given.push_back(has_sign);
  }
  int arcs = static_cast<int>(2 * xs.size());
  if (doc.contains("arc_count")) {
    if (!doc["arc_count"].is_number_integer()) throw MalformedDiagram("arc_count must be an integer");
    arcs = doc["arc_count"].get<int>();
  } else if (xs.empty()) {
    arcs = 1;
  }
  return PDCode(std::move(xs), arcs, given);
}

}  // namespace

PDCode parse_pd(std::string_view raw) {
  // Drop comment lines and whitespace; normalize the unicode minus sign.
  std::string text;
  {
    std::istringstream in{std::string(raw)};
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] == '#') continue;
      text += line;
      text += '\n';
    }
  }
  const std::string minus = "\xE2\x88\x92";
  for (std::size_t pos; (pos = text.find(minus)) != std::string::npos;) text.replace(pos, minus.size(), "-");
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_pd_json(text);

  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;

  std::vector<Crossing> xs;
  std::vector<bool> given;
  std::size_t start = 0;
  int index = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(start, end - start);
    start = end + 1;
    if (tok.empty()) {
      if (end == s.size()) break;
      continue;
    }
    ++index;
    const std::string where = "crossing " + std::to_string(index) + " '" + tok + "'";
    Crossing x;
    bool has_sign = false;
    std::size_t p = 0;
    if (tok[p] == '+' || tok[p] == '-') {
      x.sign = tok[p] == '+' ? 1 : -1;
      has_sign = true;
      ++p;
    }
    if (tok.compare(p, 2, "X[") != 0 || tok.back() != ']') throw MalformedDiagram(where + ": expected X[a,b,c,d]");
    std::string body = tok.substr(p + 2, tok.size() - p - 3);
    std::vector<int> labels;
    std::size_t q = 0;
    while (q <= body.size()) {
      std::size_t comma = body.find(',', q);
      if (comma == std::string::npos) comma = body.size();
      std::string num = body.substr(q, comma - q);
      if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          num.size() > 9)
        throw MalformedDiagram(where + ": non-integer arc label '" + num + "'");
      labels.push_back(std::stoi(num));
      q = comma + 1;
      if (comma == body.size()) break;
    }
    if (labels.size() != 4)
      throw MalformedDiagram(where + ": expected 4 arc labels, got " + std::to_string(labels.size()));
    std::copy(labels.begin(), labels.end(), x.arcs.begin());
    xs.push_back(x);
    given.push_back(has_sign);
  }
  int arcs = xs.empty() ? 1 : static_cast<int>(2 * xs.size());
  return PDCode(std::move(xs), arcs, given);
}

int linking_number(const PDCode& d, int i, int j) {
  if (i == j) throw SameComponent("linking number needs two distinct components");
  if (i < 0 || j < 0 || i >= d.component_count() || j >= d.component_count())
    throw InvalidInput("component index out of range");
  int total = 0;
  for (const auto& x : d.crossings()) {
    int a = d.component_of(x.arcs[0]), b = d.component_of(x.arcs[1]);
    if ((a == i && b == j) || (a == j && b == i)) total += x.sign;
  }
  if (total % 2 != 0) throw MalformedDiagram("odd signed crossing count between two components");
  return total / 2;
}

Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->generator, -it->exponent});
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word power(const Word& w, long n) {
  Word base = n < 0 ? inverse(w) : w;
  Word r;
  for (long i = 0; i < std::abs(n); ++i) r.insert(r.end(), base.begin(), base.end());
  return r;
}

MeridianMap::MeridianMap(int rank, std::vector<int> component_of_generator)
    : rank_(rank), component_(std::move(component_of_generator)) {
  for (int c : component_)
    if (c < -1 || c >= rank_) throw InvalidInput("meridian map: component index out of range");
}

Exponent MeridianMap::image(int generator) const {
  Exponent e(static_cast<std::size_t>(rank_), 0);
  if (component(generator) >= 0) e[static_cast<std::size_t>(component(generator))] = 1;
  return e;
}

Exponent MeridianMap::image(const Word& w) const {
  Exponent e(static_cast<std::size_t>(rank_), 0);
  for (const auto& l : w)
    if (component(l.generator) >= 0) e[static_cast<std::size_t>(component(l.generator))] += l.exponent;
  return e;
}

WirtingerData wirtinger(const PDCode& d) {
  const int arcs = d.arc_count();
  // Over-arcs: merge the two over-edges of every crossing.
  std::vector<int> parent(static_cast<std::size_t>(arcs) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& x : d.crossings()) {
    int a = find(x.arcs[1]), b = find(x.arcs[3]);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

  WirtingerData out;
  out.generator_of_arc.assign(static_cast<std::size_t>(arcs) + 1, -1);
  std::map<int, int> root_to_gen;
  std::vector<int> gen_component;
  for (int label = 1; label <= arcs; ++label) {
    int r = find(label);
    auto [it, inserted] = root_to_gen.try_emplace(r, static_cast<int>(root_to_gen.size()));
    if (inserted) gen_component.push_back(d.component_of(label));
    out.generator_of_arc[static_cast<std::size_t>(label)] = it->second;
  }
  auto gen = [&](int label) { return out.generator_of_arc[static_cast<std::size_t>(label)]; };

  out.presentation.generator_count = static_cast<int>(gen_component.size());
  out.presentation.generator_component = gen_component;
  for (const auto& x : d.crossings()) {
    int o = gen(x.arcs[1]), a = gen(x.arcs[0]), c = gen(x.arcs[2]);
    out.presentation.relations.push_back({{o, -x.sign}, {a, 1}, {o, x.sign}, {c, -1}});
  }
  out.meridians = MeridianMap(d.component_count(), gen_component);

  // Position of every edge end, to find where an edge passes under.
  std::vector<std::pair<int, int>> head_slot(static_cast<std::size_t>(arcs) + 1, {-1, -1});
  for (std::size_t i = 0; i < d.crossings().size(); ++i) {
    const auto& x = d.crossings()[i];
    head_slot[static_cast<std::size_t>(x.arcs[0])] = {static_cast<int>(i), 0};
  }
  for (int comp = 0; comp < d.component_count(); ++comp) {
    const auto& cyc = d.component_arcs()[static_cast<std::size_t>(comp)];
    const int start = cyc.front();
    Word ell;
    for (int e : cyc) {
      auto [ci, pos] = head_slot[static_cast<std::size_t>(e)];
      if (ci < 0) continue;
      const auto& x = d.crossings()[static_cast<std::size_t>(ci)];
      ell.push_back({gen(x.arcs[1]), x.sign});
    }
    int own = 0;
    for (const auto& l : ell)
      if (gen_component[static_cast<std::size_t>(l.generator)] == comp) own += l.exponent;
    for (int k = 0; k < std::abs(own); ++k) ell.push_back({gen(start), own > 0 ? -1 : 1});
    out.peripheral_meridian.push_back(gen(start));
    out.longitude.push_back(std::move(ell));
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    os << (i ? "*" : "") << "g" << w[i].generator;
    if (w[i].exponent != 1) os << "^" << w[i].exponent;
  }
  return os.str();
}

}  // namespace hopfconc
