#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "hopfconc/corpus.hpp"
#include "hopfconc/cover.hpp"
#include "hopfconc/errors.hpp"
#include "hopfconc/fox.hpp"
#include "hopfconc/hermitian.hpp"
#include "hopfconc/json_util.hpp"
#include "hopfconc/linking_form.hpp"
#include "hopfconc/obstruction.hpp"
#include "hopfconc/seifert.hpp"

using namespace hopfconc;
using ojson = nlohmann::ordered_json;

namespace {

struct Common {
  std::string input;
  bool pretty = false;
  int jobs = 1;
  std::int64_t cap = kDefaultGroupBound;
  int grid = 64;
  std::uint64_t seed = 0;
};

nlohmann::json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Common& c, const ojson& j, const std::string& summary) {
  if (c.pretty) {
    std::cout << j.dump(2) << "\n" << summary << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

std::vector<std::int64_t> parse_orders(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      throw ParseError("bad group order '" + item + "'");
    }
  }
  return out;
}

GroupMap map_for(const std::vector<std::int64_t>& orders, int components) {
  if (components == 1) {
    if (orders.size() != 1) throw InvalidInput("a knot needs one cyclic order");
    return cyclic_map(orders[0]);
  }
  if (components != 2) throw InvalidInput("covers are supported for knots and 2-component links");
  if (orders.size() == 1) return GroupMap(FinAbGroup({orders[0]}), {GroupElement{1}, GroupElement{0}});
  if (orders.size() == 2) return admissible_map(orders[0], orders[1]);
  throw InvalidInput("expected one or two cyclic orders");
}

LaurentPoly alexander_of(const PDCode& d) {
  return d.component_count() == 1 ? knot_alexander(d) : multivariable_alexander(d);
}

std::string summary_of(const CoverHomology& h) {
  std::string s = "H_1 = ";
  for (const auto& t : h.torsion) s += "Z" + t.get_str() + " + ";
  return s + "Z^" + std::to_string(h.free_rank);
}

SeifertMatrix load_seifert(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return parse_seifert_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  const CorpusEntry e = parse_corpus_entry(text);
  if (!e.seifert) throw FormRequired(path + " has no Seifert matrix");
  return *e.seifert;
}

int cmd_alex(const Common& c) {
  const CorpusEntry e = parse_corpus_entry(read_file(c.input));
  const LaurentPoly delta = alexander_of(e.diagram);
  if (delta.is_zero()) throw DegenerateDiagram("Alexander polynomial vanishes (split or degenerate diagram)");
  ojson j;
  j["components"] = e.diagram.component_count();
  j["variables"] = default_variable_names(delta.nvars());
  j["alexander"] = delta.to_string();
  emit(c, j, "Delta = " + delta.to_string());
  return 0;
}

int cmd_cover(const Common& c, std::int64_t p, int a, int b) {
  const CorpusEntry e = parse_corpus_entry(read_file(c.input));
  std::vector<std::int64_t> orders;
  for (int n : {a, b}) {
    if (n < 0) throw InvalidInput("exponents must be nonnegative");
    std::int64_t o = 1;
    for (int i = 0; i < n; ++i) {
      if (o > c.cap) break;
      o *= p;
    }
    if (n > 0 || orders.empty()) orders.push_back(o);
  }
  if (e.diagram.component_count() == 1) orders.resize(1);
  const GroupMap phi = map_for(orders, e.diagram.component_count());
  phi.target().check_bound(c.cap);
  const WirtingerData w = wirtinger(e.diagram);
  const CoverHomology h = homology_groups_of_cover(cover_chain_complex(w.presentation, w.meridians, phi, c.cap));
  ojson j;
  j["target"] = phi.target().orders();
  j["free_rank"] = h.free_rank;
  j["torsion"] = ojson::array();
  for (const auto& t : h.torsion) j["torsion"].push_back(bigint_json(t));
  j["torsion_order"] = bigint_json(h.torsion_order());
  emit(c, j, summary_of(h));
  return 0;
}

int cmd_verify(const Common& c, const std::string& poly, const std::string& orders_text) {
  std::optional<CorpusEntry> e;
  if (!c.input.empty()) e = parse_corpus_entry(read_file(c.input));
  if (poly.empty() && !e) throw FormRequired("verify-appendix needs --poly or --input");
  const std::vector<std::int64_t> orders = parse_orders(orders_text);
  std::optional<LaurentPoly> delta;
  if (!poly.empty()) {
    bool two = poly.find('s') != std::string::npos || (e && e->diagram.component_count() == 2) || orders.size() == 2;
    delta = parse_laurent(poly, default_variable_names(two ? 2 : 1));
  }
  if (e) {
    const LaurentPoly d = alexander_of(e->diagram);
    if (delta && !associated(*delta, d))
      throw Inconsistent("inconsistent: supplied polynomial " + delta->to_string() + " differs from the diagram's " +
                         d.to_string());
    delta = d;
  }
  const bool knot = delta->nvars() == 1;
  CoverFormulaReport r;
  const PDCode* diagram = e ? &e->diagram : nullptr;
  if (knot) {
    if (orders.size() != 1) throw InvalidInput("a knot needs one cyclic order");
    r = verify_knot_cover_formula(*delta, orders[0], diagram, c.cap);
  } else {
    r = verify_link_cover_formula(*delta, map_for(orders, 2), diagram, c.cap);
  }
  if (e && !r.consistent) {
    emit(c, to_json(r), "inconsistent");
    throw Inconsistent("inconsistent: torsion order differs from the character product");
  }
  emit(c, to_json(r), "product = " + r.rhs_exact.get_str() + (r.consistent ? ", consistent" : ""));
  return 0;
}

int cmd_ltsig(const Common& c, const std::vector<std::string>& phases, bool integral, int resolution,
              bool allow_singular) {
  const SeifertMatrix v = load_seifert(c.input);
  ojson j;
  j["V"] = to_json(v)["V"];
  std::string summary;
  if (integral) {
    const IntegralSignature s = integral_signature(v, resolution);
    j["integral"] = round12(s.value);
    j["resolution"] = s.resolution;
    j["skipped"] = s.skipped;
    summary = "integral = " + std::to_string(s.value);
  }
  j["values"] = ojson::array();
  for (const auto& ph : phases) {
    const Rational q = mod_one(parse_rational(ph));
    ojson x;
    x["phase"] = rational_to_string(q);
    if (q.numerator() == 0) {
      x["signature"] = 0;
      x["singular"] = false;
    } else {
      const FlaggedSignature s = levine_tristram_flagged(v, unit_complex(q));
      if (s.singular && !allow_singular)
        throw SingularAtOmega("signature form is singular at phase " + rational_to_string(q));
      x["signature"] = s.value;
      x["singular"] = s.singular;
    }
    summary += (summary.empty() ? "" : "; ") + std::string("sigma(") + x["phase"].get<std::string>() +
               ") = " + std::to_string(x["signature"].get<int>());
    j["values"].push_back(x);
  }
  emit(c, j, summary);
  return 0;
}

int cmd_sigma(const Common& c) {
  const HermitianLaurentMatrix p = parse_hermitian_json(read_json(c.input));
  const SigmaResult s = sigma_integral(p, c.grid, c.jobs);
  ojson j;
  j["rank"] = p.rank();
  j["size"] = p.size();
  j["sigma"] = round12(s.value);
  j["grid"] = s.grid;
  j["points"] = s.points;
  j["skipped"] = s.skipped;
  emit(c, j, "sigma = " + std::to_string(s.value));
  return 0;
}

int cmd_metab(const Common& c, std::int64_t q, int k) {
  const LinkingForm f = parse_form_json(read_json(c.input));
  const auto ms = enumerate_metabolisers(f);
  ojson j;
  j["form"] = to_json(f);
  j["form_independent"] = metabolisers_form_independent(f.group());
  j["metabolisers"] = ojson::array();
  for (const auto& p : ms) {
    ojson jp;
    jp["order"] = p.size();
    jp["elements"] = p.elements();
    if (q > 0) {
      jp["characters"] = ojson::array();
      for (const auto& chi : characters_vanishing_on(f.group(), p, q, k)) {
        ojson jc;
        jc["values"] = chi.values;
        jc["order"] = chi.order;
        jc["trivial"] = chi.trivial;
        jp["characters"].push_back(jc);
      }
    }
    j["metabolisers"].push_back(jp);
  }
  emit(c, j, std::to_string(ms.size()) + " metaboliser(s)");
  return 0;
}

int cmd_obstruct(const Common& c, std::int64_t cap_override) {
  ScanInput in = parse_scan_input(read_json(c.input));
  in.options.jobs = c.jobs;
  if (cap_override > 0) in.options.cap = cap_override;
  const ObstructionReport r = hopf_obstruction_scan(in.spec, in.options);
  emit(c, to_json(r, in.spec), r.verdict());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concordance obstructions to the Hopf link: Alexander polynomials, cover homology, signatures"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* opt = sub->add_option("--input,-i", c.input, "Input file");
    if (needs_input) opt->required();
    sub->add_flag("--json", "Compact JSON output (default)");
    sub->add_flag("--pretty", c.pretty, "Indented JSON followed by a short summary");
    sub->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cap", c.cap, "Largest allowed deck group");
    sub->add_option("--grid", c.grid, "Grid points per torus dimension");
    sub->add_option("--seed", c.seed, "Unused; every computation is deterministic");
  };

  auto* alex = app.add_subcommand("alex", "Alexander polynomial of a diagram");
  common(alex, true);

  std::int64_t p = 2;
  int a = 1, b = 0;
  auto* cover = app.add_subcommand("cover", "H_1 of the cover for Z^2 -> Z_{p^a} + Z_{p^b}");
  common(cover, true);
  cover->add_option("--p", p, "Prime")->check(CLI::PositiveNumber);
  cover->add_option("--a", a, "First exponent");
  cover->add_option("--b", b, "Second exponent");

  std::string poly, orders = "2,2";
  auto* verify = app.add_subcommand("verify-appendix", "Torsion order against the character product");
  common(verify, false);
  verify->add_option("--poly", poly, "Alexander polynomial, e.g. (t*s+1-s)*(t*s+1-t)");
  verify->add_option("--orders", orders, "Cyclic orders of the deck group, e.g. 2,2 or 5");

  std::vector<std::string> phases;
  bool integral = false, allow_singular = false;
  int resolution = 4096;
  auto* ltsig = app.add_subcommand("ltsig", "Levine-Tristram signatures of a Seifert matrix");
  common(ltsig, true);
  ltsig->add_option("--phase", phases, "omega = exp(2 pi i phase), e.g. 1/3");
  ltsig->add_flag("--integral", integral, "Average over the circle");
  ltsig->add_option("--resolution", resolution, "Circle sample count for --integral");
  ltsig->add_flag("--allow-singular", allow_singular, "Report singular points instead of failing");

  auto* sigma = app.add_subcommand("sigma", "Torus-averaged signature of a Hermitian Laurent matrix");
  common(sigma, true);

  std::int64_t q = 0;
  int k = 1;
  auto* metab = app.add_subcommand("metab", "Metabolisers of a linking form");
  common(metab, true);
  metab->add_option("--q", q, "List characters into Z_{q^k} vanishing on each metaboliser");
  metab->add_option("--k", k, "Prime power exponent");

  std::int64_t scan_cap = 0;
  auto* obstruct = app.add_subcommand("obstruct", "Satellite obstruction scan");
  common(obstruct, true);
  obstruct->add_option("--scan-cap", scan_cap, "Override the scan's cap on |A|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorClass::Parse);
  }

  try {
    if (*alex) return cmd_alex(c);
    if (*cover) return cmd_cover(c, p, a, b);
    if (*verify) return cmd_verify(c, poly, orders);
    if (*ltsig) return cmd_ltsig(c, phases, integral, resolution, allow_singular);
    if (*sigma) return cmd_sigma(c);
    if (*metab) return cmd_metab(c, q, k);
    if (*obstruct) return cmd_obstruct(c, scan_cap);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return static_cast<int>(ErrorClass::Resource);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorClass::Inconsistent);
  }
  return 0;
}
