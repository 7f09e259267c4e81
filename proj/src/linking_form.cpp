#include "hopfconc/linking_form.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hopfconc/errors.hpp"

namespace hopfconc {

namespace {

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t f = 2; f * f <= q; ++f)
    if (q % f == 0) return false;
  return true;
}

std::int64_t ipow(std::int64_t b, int e, std::int64_t bound) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > bound / b) throw BoundExceeded("prime power exceeds bound " + std::to_string(bound));
    r *= b;
  }
  return r;
}

}  // namespace

std::string rational_to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t pos = 0;
    std::int64_t n = std::stoll(text, &pos);
    if (pos == text.size()) return Rational(n);
    if (text[pos] != '/') throw ParseError("bad rational '" + text + "'");
    std::size_t pos2 = 0;
    const std::string rest = text.substr(pos + 1);
    std::int64_t d = std::stoll(rest, &pos2);
    if (pos2 != rest.size() || d == 0) throw ParseError("bad rational '" + text + "'");
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw ParseError("bad rational '" + text + "'");
  }
}

LinkingForm::LinkingForm(FinAbGroup group, std::vector<std::vector<Rational>> gram, std::int64_t bound)
    : group_(std::move(group)), gram_(std::move(gram)) {
  const std::size_t r = group_.rank();
  if (gram_.size() != r) throw InvalidInput("Gram matrix has wrong size");
  for (auto& row : gram_) {
    if (row.size() != r) throw InvalidInput("Gram matrix has wrong size");
    for (auto& x : row) x = mod_one(x);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw InvalidInput("linking form is not symmetric");
      if (mod_one(gram_[i][j] * group_.orders()[i]).numerator() != 0)
        throw InvalidInput("linking form is not well defined on the generator orders");
    }
  group_.check_bound(bound);
  // Nonsingular: only 0 pairs trivially with every generator.
  for (const auto& x : group_.elements()) {
    if (x == group_.zero()) continue;
    bool degenerate = true;
    for (std::size_t j = 0; j < r && degenerate; ++j) {
      GroupElement e = group_.zero();
      e[j] = 1;
      if ((*this)(x, e).numerator() != 0) degenerate = false;
    }
    if (degenerate) throw InvalidInput("linking form is singular");
  }
}

LinkingForm LinkingForm::standard(const FinAbGroup& group, std::int64_t bound) {
  const std::size_t r = group.rank();
  std::vector<std::vector<Rational>> g(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) g[i][i] = Rational(1, group.orders()[i]);
  return LinkingForm(group, g, bound);
}

Rational LinkingForm::operator()(const GroupElement& x, const GroupElement& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s = mod_one(s + gram_[i][j] * (x[i] * y[j]));
  }
  return s;
}

Subgroup::Subgroup(FinAbGroup ambient, std::vector<std::size_t> indices)
    : ambient_(std::move(ambient)), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
}

bool Subgroup::contains(const GroupElement& x) const {
  return std::binary_search(indices_.begin(), indices_.end(), ambient_.index_of(x));
}

std::vector<GroupElement> Subgroup::elements() const {
  std::vector<GroupElement> out;
  for (auto i : indices_) out.push_back(ambient_.element(i));
  return out;
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> gens;
  Subgroup cur = subgroup_generated(ambient_, {}, ambient_.size());
  for (auto i : indices_) {
    GroupElement x = ambient_.element(i);
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = subgroup_generated(ambient_, gens, ambient_.size());
    if (cur.size() == size()) break;
  }
  return gens;
}

Subgroup subgroup_generated(const FinAbGroup& group, const std::vector<GroupElement>& generators, std::int64_t bound) {
  group.check_bound(bound);
  std::vector<char> seen(static_cast<std::size_t>(group.size()), 0);
  std::vector<std::size_t> members{group.index_of(group.zero())};
  seen[members[0]] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    const GroupElement x = group.element(members[head]);
    for (const auto& g : generators) {
      const std::size_t y = group.index_of(group.add(x, g));
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
  }
  return Subgroup(group, std::move(members));
}

Subgroup orthogonal_complement(const LinkingForm& form, const Subgroup& p, std::int64_t bound) {
  const FinAbGroup& t = form.group();
  t.check_bound(bound);
  const std::vector<GroupElement> gens = p.generators();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(t.size()); ++i) {
    const GroupElement y = t.element(i);
    bool perp = true;
    for (const auto& x : gens)
      if (form(x, y).numerator() != 0) {
        perp = false;
        break;
      }
    if (perp) out.push_back(i);
  }
  return Subgroup(t, std::move(out));
}

std::vector<Subgroup> enumerate_metabolisers(const LinkingForm& form, std::int64_t bound) {
  const FinAbGroup& t = form.group();
  t.check_bound(bound);
  const auto n = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(t.size()))));
  if (n * n != t.size()) return {};

  // Cyclic isotropic subgroups, then isotropic joins up to order n.
  std::set<std::vector<std::size_t>> cyclic_sets;
  std::vector<std::pair<GroupElement, Subgroup>> cyclic;
  for (const auto& x : t.elements()) {
    if (form(x, x).numerator() != 0) continue;
    Subgroup c = subgroup_generated(t, {x}, bound);
    if (static_cast<std::int64_t>(c.size()) > n) continue;
    if (cyclic_sets.insert(c.indices()).second) cyclic.emplace_back(x, c);
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> frontier{subgroup_generated(t, {}, bound)};
  seen.insert(frontier[0].indices());
  std::vector<Subgroup> result;
  constexpr std::size_t kMaxSubgroups = 200000;
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier) {
      if (static_cast<std::int64_t>(h.size()) == n) {
        result.push_back(h);
        continue;
      }
      const std::vector<GroupElement> hg = h.generators();
      for (const auto& [x, c] : cyclic) {
        if (h.contains(x)) continue;
        bool perp = true;
        for (const auto& g : hg)
          if (form(g, x).numerator() != 0) {
            perp = false;
            break;
          }
        if (!perp) continue;
        std::vector<GroupElement> gens = hg;
        gens.push_back(x);
        Subgroup j = subgroup_generated(t, gens, bound);
        if (static_cast<std::int64_t>(j.size()) > n) continue;
        if (seen.insert(j.indices()).second) {
          if (seen.size() > kMaxSubgroups) throw BoundExceeded("too many isotropic subgroups");
          next.push_back(std::move(j));
        }
      }
    }
    frontier = std::move(next);
  }
  // Isotropic of order sqrt|T| is P = P^perp by nonsingularity; checked anyway.
  std::vector<Subgroup> out;
  for (auto& p : result)
    if (orthogonal_complement(form, p, bound) == p) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

bool metabolisers_form_independent(const FinAbGroup& group) {
  std::size_t nontrivial = 0;
  for (auto d : group.orders())
    if (d > 1) ++nontrivial;
  if (nontrivial <= 1) return true;
  // Cyclic exactly when the factor orders are pairwise coprime.
  bool coprime = true;
  for (std::size_t i = 0; i < group.rank(); ++i)
    for (std::size_t j = i + 1; j < group.rank(); ++j)
      if (std::gcd(group.orders()[i], group.orders()[j]) != 1) coprime = false;
  if (coprime) return true;
  const auto n = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(group.size()))));
  return n * n != group.size();
}

std::vector<PrimePowerCharacter> characters_vanishing_on(const FinAbGroup& group, const Subgroup& p, std::int64_t q,
                                                         int k, std::int64_t bound) {
  if (!is_prime(q)) throw InvalidInput(std::to_string(q) + " is not prime");
  if (k < 0) throw InvalidInput("prime power exponent must be nonnegative");
  const std::int64_t m = ipow(q, k, bound);
  const std::size_t r = group.rank();
  // Allowed values per generator: chi(d_i e_i) = 0.
  std::vector<std::vector<std::int64_t>> allowed(r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t step = m / std::gcd(m, group.orders()[i]);
    for (std::int64_t v = 0; v < m; v += step) allowed[i].push_back(v);
  }
  const std::vector<GroupElement> pg = p.generators();
  std::vector<PrimePowerCharacter> out;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    std::vector<std::int64_t> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = allowed[i][idx[i]];
    bool vanishes = true;
    for (const auto& x : pg) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < r; ++i) s = (s + c[i] * x[i]) % m;
      if (s != 0) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) {
      PrimePowerCharacter chi;
      chi.q = q;
      chi.k = k;
      chi.values = c;
      std::vector<std::int64_t> num(r);
      for (std::size_t i = 0; i < r; ++i) num[i] = c[i] * group.orders()[i] / m;
      chi.character = Character(group, num);
      chi.order = chi.character.order();
      chi.trivial = chi.character.is_trivial();
      out.push_back(std::move(chi));
    }
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == allowed[pos].size()) idx[pos++] = 0;
    if (pos == r) break;
  }
  return out;
}

LinkingForm parse_form_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("orders") || !j["orders"].is_array())
    throw ParseError("form JSON needs an \"orders\" array");
  std::vector<std::int64_t> orders;
  for (const auto& d : j["orders"]) {
    if (!d.is_number_integer()) throw ParseError("form orders must be integers");
    orders.push_back(d.get<std::int64_t>());
  }
  FinAbGroup g(orders);
  if (!j.contains("gram")) return LinkingForm::standard(g);
  const auto& gram = j["gram"];
  if (!gram.is_array()) throw ParseError("form gram must be an array of rows");
  std::vector<std::vector<Rational>> m;
  for (const auto& row : gram) {
    if (!row.is_array()) throw ParseError("form gram must be an array of rows");
    std::vector<Rational> r;
    for (const auto& x : row) {
      if (x.is_string()) r.push_back(parse_rational(x.get<std::string>()));
      else if (x.is_number_integer()) r.push_back(Rational(x.get<std::int64_t>()));
      else throw ParseError("form gram entries must be \"a/b\" strings");
    }
    m.push_back(std::move(r));
  }
  return LinkingForm(g, m);
}

nlohmann::ordered_json to_json(const LinkingForm& f) {
  nlohmann::ordered_json j;
  j["orders"] = f.group().orders();
  j["gram"] = nlohmann::ordered_json::array();
  for (const auto& row : f.gram()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& x : row) r.push_back(rational_to_string(x));
    j["gram"].push_back(r);
  }
  return j;
}

}  // namespace hopfconc
