#include "hopfconc/obstruction.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "hopfconc/errors.hpp"
#include "hopfconc/json_util.hpp"

namespace hopfconc {

namespace {

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t f = 2; f * f <= q; ++f)
    if (q % f == 0) return false;
  return true;
}

bool nonzero(double x) { return std::abs(x) > 1e-9; }

std::optional<LinkingForm> pick_form(const FinAbGroup& t, const std::vector<LinkingForm>& forms, std::string& source) {
  for (const auto& f : forms)
    if (f.group() == t) {
      source = "supplied";
      return f;
    }
  if (!metabolisers_form_independent(t)) return std::nullopt;
  source = "standard";
  return LinkingForm::standard(t);
}

// Trivial character first, then for every prime q <= q_bound the
// nontrivial characters into Z_{q^k} with q^k the largest power in bound.
std::vector<PrimePowerCharacter> scan_characters(const FinAbGroup& t, const Subgroup& p, std::int64_t q_bound) {
  std::vector<PrimePowerCharacter> out;
  PrimePowerCharacter trivial;
  trivial.q = 1;
  trivial.values.assign(t.rank(), 0);
  trivial.character = Character(t, t.zero());
  out.push_back(trivial);
  for (std::int64_t q = 2; q <= q_bound; ++q) {
    if (!is_prime(q)) continue;
    int k = 0;
    for (std::int64_t m = q; m <= q_bound; m *= q) ++k;
    for (auto& chi : characters_vanishing_on(t, p, q, k, std::max<std::int64_t>(t.size(), kFormBound)))
      if (!chi.trivial) out.push_back(std::move(chi));
  }
  return out;
}

MapResult scan_map(const SatelliteSpec& spec, const WirtingerData& w, const AdmissibleMap& am,
                   const ScanOptions& options) {
  MapResult r;
  r.phi = am;
  const GroupMap phi = am.map();
  const RelativeCoverHomology rel = relative_homology_of_cover(w, phi, 0, options.bound);
  const CoverHomology& h = rel.absolute;
  r.free_rank = h.free_rank;
  r.torsion = h.torsion;
  r.relative_torsion_agrees = rel.torsion_agrees;
  if (!rel.torsion_agrees)
    throw Inconsistent("relative and absolute torsion differ for " + am.name());
  const FinAbGroup t = h.torsion_group();
  const auto form = pick_form(t, options.forms, r.form_source);
  if (!form)
    throw FormRequired("metabolisers on the torsion of the " + am.name() +
                       " cover depend on the linking form; supply one");
  r.lift_classes = gamma_lift_classes(spec, w, phi, h, options.bound);
  const auto metabolisers = enumerate_metabolisers(*form, std::max<std::int64_t>(t.size(), kFormBound));
  r.no_metaboliser = metabolisers.empty();
  r.obstructed = true;
  for (const auto& p : metabolisers) {
    MetaboliserResult m;
    m.p = p;
    for (auto& chi : scan_characters(t, p, options.q_bound)) {
      CharacterResult c;
      c.sigma = satellite_sigma(spec.companion, r.lift_classes, chi.character, spec.base_sigma);
      c.chi = std::move(chi);
      if (nonzero(c.sigma.value)) m.has_nonvanishing = true;
      m.characters.push_back(std::move(c));
    }
    if (!m.has_nonvanishing) r.obstructed = false;
    r.metabolisers.push_back(std::move(m));
  }
  return r;
}

}  // namespace

void validate(const SatelliteSpec& spec) {
  if (spec.base.component_count() != 2) throw InvalidInput("the base link must have two components");
  const WirtingerData w = wirtinger(spec.base);
  for (const auto& l : spec.gamma)
    if (l.generator < 0 || l.generator >= w.presentation.generator_count || (l.exponent != 1 && l.exponent != -1))
      throw InvalidInput("gamma uses an unknown generator or exponent");
  const Exponent e = w.meridians.image(spec.gamma);
  for (auto x : e)
    if (x != 0) throw InvalidInput("gamma " + word_to_string(spec.gamma) + " is not null-homologous");
}

std::vector<GroupElement> gamma_lift_classes(const SatelliteSpec& spec, const WirtingerData& w, const GroupMap& phi,
                                             const CoverHomology& h, std::int64_t bound) {
  std::vector<GroupElement> out;
  for (const auto& c : lift_class_of_curve(spec.gamma, w.meridians, phi, h, bound)) {
    if (!c.is_torsion) throw InvalidInput("a lift of gamma is not a torsion class");
    out.push_back(c.torsion);
  }
  return out;
}

SatelliteSigma satellite_sigma(const SeifertMatrix& companion, const std::vector<GroupElement>& lift_classes,
                               const Character& chi, double base_sigma) {
  SatelliteSigma s;
  for (const auto& x : lift_classes) {
    const Rational phase = chi.phase(x);
    s.omegas.push_back(phase);
    s.companion_sum += levine_tristram(companion, phase);
  }
  s.value = base_sigma + s.companion_sum;
  return s;
}

SatelliteSigma satellite_sigma(const SatelliteSpec& spec, const GroupMap& phi, const Character& chi,
                               std::int64_t bound) {
  validate(spec);
  const WirtingerData w = wirtinger(spec.base);
  const CoverHomology h = homology_of_cover(w.presentation, w.meridians, phi, bound);
  if (!(chi.group() == h.torsion_group())) throw InvalidInput("character is not defined on the cover's torsion");
  return satellite_sigma(spec.companion, gamma_lift_classes(spec, w, phi, h, bound), chi, spec.base_sigma);
}

std::int64_t AdmissibleMap::k() const {
  std::int64_t r = 1;
  for (int i = 0; i < a; ++i) r *= p;
  return r;
}

std::int64_t AdmissibleMap::l() const {
  std::int64_t r = 1;
  for (int i = 0; i < b; ++i) r *= p;
  return r;
}

GroupMap AdmissibleMap::map() const {
  if (b == 0) return GroupMap(FinAbGroup({k()}), {GroupElement{1}, GroupElement{0}});
  return admissible_map(k(), l());
}

std::string AdmissibleMap::name() const {
  return "Z" + std::to_string(k()) + (b == 0 ? "+1" : "+Z" + std::to_string(l()));
}

std::vector<AdmissibleMap> admissible_maps(std::int64_t p, std::int64_t cap) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  std::vector<AdmissibleMap> out;
  // Increasing n = a + b gives increasing |A| = p^n; b ascending within.
  std::int64_t size = p;
  for (int n = 1; size <= cap; ++n) {
    for (int b = 0; 2 * b <= n; ++b) out.push_back({p, n - b, b});
    if (size > cap / p) break;
    size *= p;
  }
  return out;
}

ObstructionReport hopf_obstruction_scan(const SatelliteSpec& spec, const ScanOptions& options) {
  validate(spec);
  const WirtingerData w = wirtinger(spec.base);
  const auto maps = admissible_maps(options.p, options.cap);
  for (const auto& m : maps) m.map().target().check_bound(options.bound);
  ObstructionReport report;
  report.maps.resize(maps.size());
  std::vector<std::exception_ptr> errors(maps.size());
  auto work = [&](std::size_t i) {
    try {
      report.maps[i] = scan_map(spec, w, maps[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto jobs = static_cast<std::size_t>(std::max(1, options.jobs));
  if (jobs == 1 || maps.size() < 2) {
    for (std::size_t i = 0; i < maps.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < std::min(jobs, maps.size()); ++j)
      pool.emplace_back([&, j] {
        for (std::size_t i = j; i < maps.size(); i += jobs) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& m : report.maps)
    if (m.obstructed) report.obstructed = true;
  return report;
}

namespace {

Word parse_word(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("gamma_word must be a list of [generator, exponent] pairs");
  Word w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_number_integer())
      throw ParseError("gamma_word entries must be [generator, exponent]");
    w.push_back({l[0].get<int>(), l[1].get<int>()});
  }
  return w;
}

SeifertMatrix parse_companion(const nlohmann::json& j) {
  if (j.is_array()) return parse_seifert_json(nlohmann::json{{"V", j}});
  return parse_seifert_json(j);
}

}  // namespace

ScanInput parse_scan_input(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("scan input must be a JSON object");
  for (const char* key : {"base_pd", "companion_seifert", "gamma_word"})
    if (!j.contains(key)) throw ParseError(std::string("scan input is missing \"") + key + "\"");
  ScanInput in;
  const auto& pd = j["base_pd"];
  in.spec.base = parse_pd(pd.is_string() ? pd.get<std::string>() : pd.dump());
  in.spec.base_sigma = j.value("base_sigma", 0.0);
  in.spec.declared_concordant_to_hopf = j.value("declared_concordant_to_hopf", true);
  in.spec.companion = parse_companion(j["companion_seifert"]);
  in.spec.gamma = parse_word(j["gamma_word"]);
  in.spec.gamma_null_homologous = j.value("gamma_null_homologous", true);
  in.spec.gamma_unknotted = j.value("gamma_unknotted", true);
  in.options.p = j.value("p", std::int64_t{2});
  in.options.cap = j.value("cap", std::int64_t{16});
  in.options.q_bound = j.value("q_bound", std::int64_t{9});
  if (j.contains("form") && !j["form"].is_null()) {
    if (j["form"].is_array())
      for (const auto& f : j["form"]) in.options.forms.push_back(parse_form_json(f));
    else
      in.options.forms.push_back(parse_form_json(j["form"]));
  }
  return in;
}

nlohmann::ordered_json to_json(const ObstructionReport& r, const SatelliteSpec& spec) {
  using oj = nlohmann::ordered_json;
  oj j;
  j["base"] = {{"pd", spec.base.to_string()},
               {"base_sigma", round12(spec.base_sigma)},
               {"declared_concordant_to_hopf", spec.declared_concordant_to_hopf}};
  j["companion"] = to_json(spec.companion);
  j["gamma"] = {{"word", word_to_string(spec.gamma)},
                {"null_homologous", spec.gamma_null_homologous},
                {"unknotted", spec.gamma_unknotted}};
  j["maps"] = oj::array();
  for (const auto& m : r.maps) {
    oj jm;
    jm["target"] = m.phi.b == 0 ? oj::array({m.phi.k()}) : oj::array({m.phi.k(), m.phi.l()});
    jm["free_rank"] = m.free_rank;
    jm["torsion"] = oj::array();
    for (const auto& t : m.torsion) jm["torsion"].push_back(bigint_json(t));
    jm["relative_torsion_agrees"] = m.relative_torsion_agrees;
    jm["form"] = m.form_source;
    jm["lift_classes"] = m.lift_classes;
    jm["no_metaboliser"] = m.no_metaboliser;
    jm["metabolisers"] = oj::array();
    for (const auto& p : m.metabolisers) {
      oj jp;
      jp["order"] = p.p.size();
      jp["generators"] = p.p.generators();
      jp["characters"] = oj::array();
      for (const auto& c : p.characters) {
        oj jc;
        jc["q"] = c.chi.q;
        jc["k"] = c.chi.k;
        jc["values"] = c.chi.values;
        jc["order"] = c.chi.order;
        jc["trivial"] = c.chi.trivial;
        jc["omegas"] = oj::array();
        for (const auto& w : c.sigma.omegas) jc["omegas"].push_back(rational_to_string(w));
        jc["companion_sum"] = c.sigma.companion_sum;
        jc["sigma"] = round12(c.sigma.value);
        jp["characters"].push_back(jc);
      }
      jp["nonvanishing"] = p.has_nonvanishing;
      jm["metabolisers"].push_back(jp);
    }
    jm["verdict"] = m.obstructed ? "OBSTRUCTED" : "NOT-OBSTRUCTED";
    j["maps"].push_back(jm);
  }
  j["verdict"] = r.verdict();
  return j;
}

}  // namespace hopfconc
