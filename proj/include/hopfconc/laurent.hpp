#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hopfconc/bigint.hpp"

namespace hopfconc {

using Exponent = std::vector<int>;

// Multivariate Laurent polynomial with integer coefficients.
//
// Terms are kept in a map keyed by exponent tuples, ordered lexicographically
// with variable 0 most significant. Zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, BigInt>;

  explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, const BigInt& c);
  static LaurentPoly monomial(int nvars, Exponent e, const BigInt& c = 1);
  static LaurentPoly variable(int nvars, int index, int power = 1);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }

  // Coefficient of x^e (zero when absent).
  BigInt coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const BigInt& c);

  // Componentwise minimum / maximum exponent over all terms; zeros when empty.
  Exponent min_exponents() const;
  Exponent max_exponents() const;

  // Leading term in lexicographic order (largest exponent tuple).
  const std::pair<const Exponent, BigInt>& leading() const;

  LaurentPoly shifted(const Exponent& by) const;
  // x_i -> x_i^{-1} for every variable.
  LaurentPoly inverted() const;
  // Sum of coefficients, i.e. evaluation at x = (1,...,1).
  BigInt augmentation() const;

  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const BigInt& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const BigInt& c) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Terms in decreasing lexicographic order, e.g. "s^2*t^2+s*t-s+1".
  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const;

 private:
  void check_same_vars(const LaurentPoly& o) const;

  int nvars_;
  TermMap terms_;
};

// Default variable names: "t" for one variable, "s","t" for two, x0.. otherwise.
std::vector<std::string> default_variable_names(int nvars);

// Canonical unit multiple: every variable has minimal exponent 0 and the
// lexicographically leading coefficient is positive. The zero polynomial is
// returned unchanged.
LaurentPoly normalize(const LaurentPoly& p);

// True when a = u * b for a unit u = +-monomial.
bool associated(const LaurentPoly& a, const LaurentPoly& b);

// Exact quotient a / b in the Laurent ring. Throws NotExactDivision.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);

// Greatest common divisor in Z[x_1^{+-1},...,x_m^{+-1}], normalized.
// gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

// Integer content (gcd of coefficients, nonnegative).
BigInt content(const LaurentPoly& p);

// Parses expressions such as "(t*s+1-s)*(t*s+1-t)" or "t^2-t+1" over the
// given variable names. Supports + - * ^ (integer exponents, possibly
// negative), parentheses and juxtaposition as multiplication. Throws ParseError.
LaurentPoly parse_laurent(std::string_view text, const std::vector<std::string>& names);

}  // namespace hopfconc
