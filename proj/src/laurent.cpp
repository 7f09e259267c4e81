#include "hopfconc/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hopfconc/errors.hpp"

namespace hopfconc {

std::int64_t to_int64(const BigInt& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
  return x.get_si();
}

LaurentPoly LaurentPoly::constant(int nvars, const BigInt& c) {
  return monomial(nvars, Exponent(static_cast<std::size_t>(nvars), 0), c);
}

LaurentPoly LaurentPoly::monomial(int nvars, Exponent e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nvars) throw VariableMismatch("monomial exponent has wrong length");
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int index, int power) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e.at(static_cast<std::size_t>(index)) = power;
  return monomial(nvars, std::move(e), 1);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

BigInt LaurentPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nvars_) throw VariableMismatch("term exponent has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Exponent LaurentPoly::min_exponents() const {
  Exponent m(static_cast<std::size_t>(nvars_), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponent LaurentPoly::max_exponents() const {
  Exponent m(static_cast<std::size_t>(nvars_), 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

const std::pair<const Exponent, BigInt>& LaurentPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

LaurentPoly LaurentPoly::shifted(const Exponent& by) const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += by.at(i);
    r.terms_.emplace_hint(r.terms_.end(), std::move(f), c);
  }
  return r;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    for (int& x : f) x = -x;
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

BigInt LaurentPoly::augmentation() const {
  BigInt s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

std::complex<double> LaurentPoly::evaluate(const std::vector<std::complex<double>>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw VariableMismatch("evaluation point has wrong length");
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

void LaurentPoly::check_same_vars(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_)
    throw VariableMismatch("Laurent polynomials in " + std::to_string(nvars_) + " and " +
                           std::to_string(o.nvars_) + " variables");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same_vars(b);
  LaurentPoly r(a.nvars_);
  Exponent f(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = ea[i] + eb[i];
      auto [it, inserted] = r.terms_.try_emplace(f, 0);
      mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  std::erase_if(r.terms_, [](const auto& kv) { return kv.second == 0; });
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

std::vector<std::string> default_variable_names(int nvars) {
  if (nvars == 1) return {"t"};
  if (nvars == 2) return {"s", "t"};
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) < nvars_) throw VariableMismatch("not enough variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    bool any_var = false;
    std::ostringstream mon;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (any_var) mon << "*";
      any_var = true;
      mon << names[i];
      if (e[i] != 1) mon << "^" << e[i];
    }
    if (!any_var) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << mon.str();
    }
  }
  return os.str();
}

std::string LaurentPoly::to_string() const { return to_string(default_variable_names(nvars_)); }

LaurentPoly normalize(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Exponent m = p.min_exponents();
  for (int& x : m) x = -x;
  LaurentPoly r = p.shifted(m);
  if (r.leading().second < 0) r = -r;
  return r;
}

bool associated(const LaurentPoly& a, const LaurentPoly& b) { return normalize(a) == normalize(b); }

BigInt content(const LaurentPoly& p) {
  BigInt g = 0;
  for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw VariableMismatch("exact_divide: variable count mismatch");
  if (b.is_zero()) throw NotExactDivision("division by zero polynomial");
  const int m = a.nvars();
  LaurentPoly q(m);
  if (a.is_zero()) return q;
  if (b.is_monomial()) {
    const auto& [eb, cb] = b.leading();
    for (const auto& [e, c] : a.terms()) {
      if (!mpz_divisible_p(c.get_mpz_t(), cb.get_mpz_t())) throw NotExactDivision("coefficient not divisible");
      Exponent f = e;
      for (int i = 0; i < m; ++i) f[i] -= eb[i];
      q.add_term(f, c / cb);
    }
    return q;
  }
  // Every exponent of a true quotient lies in this box.
  const Exponent amin = a.min_exponents(), amax = a.max_exponents();
  const Exponent bmin = b.min_exponents(), bmax = b.max_exponents();
  Exponent lo(m), hi(m);
  for (int i = 0; i < m; ++i) {
    lo[i] = amin[i] - bmin[i];
    hi[i] = amax[i] - bmax[i];
    if (lo[i] > hi[i]) throw NotExactDivision("degree bounds exclude a quotient");
  }
  const auto& [lead_e, lead_c] = b.leading();
  LaurentPoly r = a;
  while (!r.is_zero()) {
    const auto& [re, rc] = r.leading();
    if (!mpz_divisible_p(rc.get_mpz_t(), lead_c.get_mpz_t())) throw NotExactDivision("leading coefficient not divisible");
    Exponent qe(m);
    for (int i = 0; i < m; ++i) {
      qe[i] = re[i] - lead_e[i];
      if (qe[i] < lo[i] || qe[i] > hi[i]) throw NotExactDivision("quotient term outside degree bounds");
    }
    BigInt qc = rc / lead_c;
    LaurentPoly t = LaurentPoly::monomial(m, qe, qc);
    q.add_term(qe, qc);
    r -= t * b;
  }
  return q;
}

namespace {

int degree_in(const LaurentPoly& p, int v) {
  int d = std::numeric_limits<int>::min();
  for (const auto& [e, c] : p.terms()) d = std::max(d, e[v]);
  return d;
}

// Coefficient of v^k, as a polynomial not involving v.
LaurentPoly coefficient_in(const LaurentPoly& p, int v, int k) {
  LaurentPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] != k) continue;
    Exponent f = e;
    f[v] = 0;
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b, int level);

// gcd of the coefficients of p viewed as a polynomial in v = level-1.
LaurentPoly content_in(const LaurentPoly& p, int level) {
  const int v = level - 1;
  std::map<int, LaurentPoly> coeffs;
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[v] = 0;
    auto [it, ins] = coeffs.try_emplace(e[v], LaurentPoly(p.nvars()));
    it->second.add_term(f, c);
  }
  LaurentPoly g(p.nvars());
  for (const auto& [k, cp] : coeffs) {
    g = poly_gcd(g, cp, level - 1);
    if (g.is_constant() && g.size() == 1 && abs(g.leading().second) == 1) break;
  }
  return g;
}

LaurentPoly sign_normalized(LaurentPoly p) {
  if (!p.is_zero() && p.leading().second < 0) p = -p;
  return p;
}

LaurentPoly primitive_part(const LaurentPoly& p, int level) {
  LaurentPoly c = content_in(p, level);
  return exact_divide(p, c);
}

LaurentPoly pseudo_remainder(const LaurentPoly& a, const LaurentPoly& b, int v) {
  const int db = degree_in(b, v);
  const LaurentPoly lcb = coefficient_in(b, v, db);
  LaurentPoly r = a;
  while (!r.is_zero()) {
    const int dr = degree_in(r, v);
    if (dr < db) break;
    LaurentPoly lcr = coefficient_in(r, v, dr);
    Exponent shift(static_cast<std::size_t>(a.nvars()), 0);
    shift[v] = dr - db;
    r = lcb * r - lcr * b.shifted(shift);
  }
  return r;
}

// gcd of honest polynomials (nonnegative exponents) involving only variables
// 0..level-1. Result has positive leading coefficient.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b, int level) {
  if (a.is_zero()) return sign_normalized(b);
  if (b.is_zero()) return sign_normalized(a);
  if (level == 0) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.leading().second.get_mpz_t(), b.leading().second.get_mpz_t());
    return LaurentPoly::constant(a.nvars(), g);
  }
  const int v = level - 1;
  if (degree_in(a, v) == 0 && degree_in(b, v) == 0) return poly_gcd(a, b, level - 1);
  if (degree_in(a, v) == 0) return poly_gcd(a, content_in(b, level), level - 1);
  if (degree_in(b, v) == 0) return poly_gcd(content_in(a, level), b, level - 1);

  const LaurentPoly ca = content_in(a, level);
  const LaurentPoly cb = content_in(b, level);
  const LaurentPoly c = poly_gcd(ca, cb, level - 1);
  LaurentPoly pa = exact_divide(a, ca);
  LaurentPoly pb = exact_divide(b, cb);
  if (degree_in(pa, v) < degree_in(pb, v)) std::swap(pa, pb);
  while (true) {
    LaurentPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (degree_in(r, v) == 0) {
      pb = LaurentPoly::constant(a.nvars(), 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, level);
  }
  return sign_normalized(c * sign_normalized(pb));
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw VariableMismatch("gcd: variable count mismatch");
  if (a.is_zero() && b.is_zero()) return a;
  return normalize(poly_gcd(normalize(a), normalize(b), a.nvars()));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class LaurentParser {
 public:
  LaurentParser(std::string_view text, const std::vector<std::string>& names) : names_(names) {
    // Normalize the unicode minus sign to ASCII.
    std::string s(text);
    const std::string minus = "\xE2\x88\x92";
    for (std::size_t pos; (pos = s.find(minus)) != std::string::npos;) s.replace(pos, minus.size(), "-");
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
  }

  LaurentPoly parse() {
    LaurentPoly p = expr();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  int nvars() const { return static_cast<int>(names_.size()); }

  LaurentPoly expr() {
    LaurentPoly acc(nvars());
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    LaurentPoly t = term();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  bool starts_factor() const {
    char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  LaurentPoly term() {
    LaurentPoly acc = power();
    while (true) {
      if (accept('*'))
        acc *= power();
      else if (starts_factor())
        acc *= power();
      else
        break;
    }
    return acc;
  }

  long integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    const std::string digits = src_.substr(start, pos_ - start);
    if (digits.size() > 9) fail("exponent too large");
    return std::stol(digits);
  }

  long signed_exponent() {
    if (accept('(')) {
      long e = signed_exponent();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (accept('-')) return -integer();
    accept('+');
    return integer();
  }

  LaurentPoly power() {
    if (accept('-')) return -power();
    LaurentPoly base = primary();
    if (!accept('^')) return base;
    long e = signed_exponent();
    if (e < 0) {
      if (!base.is_monomial() || abs(base.leading().second) != 1) fail("negative power of a non-unit");
      const auto& [be, bc] = base.leading();
      Exponent f = be;
      for (int& x : f) x = static_cast<int>(x * e);
      BigInt c = (bc < 0 && (e % 2 != 0)) ? BigInt(-1) : BigInt(1);
      return LaurentPoly::monomial(nvars(), f, c);
    }
    LaurentPoly r = LaurentPoly::constant(nvars(), 1);
    for (long i = 0; i < e; ++i) r *= base;
    return r;
  }

  LaurentPoly primary() {
    if (accept('(')) {
      LaurentPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return LaurentPoly::constant(nvars(), BigInt(src_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      // Longest variable name matching at this position.
      int best = -1;
      std::size_t best_len = 0;
      for (int i = 0; i < nvars(); ++i) {
        const auto& n = names_[static_cast<std::size_t>(i)];
        if (n.size() > best_len && src_.compare(pos_, n.size(), n) == 0) {
          best = i;
          best_len = n.size();
        }
      }
      if (best < 0) fail("unknown variable");
      pos_ += best_len;
      return LaurentPoly::variable(nvars(), best);
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  const std::vector<std::string>& names_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& names) {
  return LaurentParser(text, names).parse();
}

}  // namespace hopfconc
