#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "../support/generators.hpp"
#include "hopfconc/errors.hpp"
#include "hopfconc/finite_abelian.hpp"
#include "hopfconc/laurent.hpp"
#include "hopfconc/matrix.hpp"

using namespace hopfconc;
using hopfconc::testing::random_bounded_degree;
using hopfconc::testing::random_laurent;

namespace {

const std::vector<std::string> kST{"s", "t"};
LaurentPoly st(const char* text) { return parse_laurent(text, kST); }

// Naive term convolution, independent of operator*.
LaurentPoly convolve(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<Exponent, BigInt> acc;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      acc[e] += ca * cb;
    }
  LaurentPoly r(a.nvars());
  for (const auto& [e, c] : acc) r.add_term(e, c);
  return r;
}

IntMatrix mat4(std::vector<long> v) { return IntMatrix(4, 4, v); }

}  // namespace

TEST_CASE("laurent arithmetic") {
  LaurentPoly p = st("(t*s+1-s)*(t*s+1-t)");
  CHECK(p.size() == 7);
  CHECK(p == convolve(st("t*s+1-s"), st("t*s+1-t")));
  CHECK(p == st("s^2*t^2 - s^2*t + 3*s*t - s*t^2 - s - t + 1"));
  CHECK(p * st("1") == p);
  CHECK(normalize(st("-s^-1*t^-1") * st("t*s+1-s")) == st("s*t-s+1"));
  CHECK(st("s*t-s+1").to_string(kST) == "s*t-s+1");
  CHECK(st("s^-2").min_exponents() == Exponent{-2, 0});
  CHECK_THROWS_AS(st("s") + LaurentPoly::variable(1, 0), VariableMismatch);
  CHECK_THROWS_AS(st("s+"), ParseError);
  CHECK_THROWS_AS(st("u"), ParseError);
}

TEST_CASE("laurent gcd and exact division") {
  LaurentPoly a = st("t*s+1-s"), b = st("t*s+1-t"), c = st("s+t+3");
  CHECK(gcd(a * c, b * c) == normalize(c));
  CHECK(gcd(a * b, a * a) == normalize(a));
  CHECK(gcd(LaurentPoly(2), a) == normalize(a));
  CHECK(exact_divide(a * b, b) == a);
  CHECK_THROWS_AS(exact_divide(a, b), NotExactDivision);
  CHECK(gcd(st("2*s-2"), st("4*s*t-4*t")) == st("2*s-2"));
}

TEST_CASE("property: ring laws and gcd divisibility") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int nv = 1 + trial % 2;
    LaurentPoly a = random_laurent(rng, nv, 4, -2, 3, 6);
    LaurentPoly b = random_laurent(rng, nv, 4, -2, 3, 6);
    LaurentPoly c = random_laurent(rng, nv, 3, -1, 2, 4);
    CHECK(a * b == convolve(a, b));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!b.is_zero()) CHECK(exact_divide(a * b, b) == a);
    if (!a.is_zero() && !c.is_zero()) {
      LaurentPoly g = gcd(a * c, b * c);
      CHECK_NOTHROW(exact_divide(a * c, g));
      CHECK_NOTHROW(exact_divide(g, normalize(c)));
    }
    // normalize absorbs units.
    Exponent shift(static_cast<std::size_t>(nv));
    for (auto& x : shift) x = hopfconc::testing::uniform(rng, -3, 3);
    if (!a.is_zero()) {
      CHECK(normalize(-a.shifted(shift)) == normalize(a));
      CHECK(associated(a.shifted(shift), a));
    }
  }
}

TEST_CASE("integer determinants and rank") {
  IntMatrix m(2, 2, {2, 4, 6, 8});
  CHECK(determinant(m) == -8);
  CHECK(rank(m) == 2);
  CHECK(rank(IntMatrix(2, 2, {1, 2, 2, 4})) == 1);
  CHECK(determinant(IntMatrix(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1})) == -1);
  CHECK(determinant(IntMatrix::identity(5)) == 1);
}

TEST_CASE("characters") {
  FinAbGroup v4({2, 2});
  auto chars = enumerate_characters(v4);
  REQUIRE(chars.size() == 4);
  CHECK(chars[0].numerators() == GroupElement{0, 0});
  CHECK(chars[1].numerators() == GroupElement{1, 0});
  CHECK(chars[2].numerators() == GroupElement{0, 1});
  CHECK(chars[3].numerators() == GroupElement{1, 1});
  CHECK(enumerate_characters(FinAbGroup(std::vector<std::int64_t>{})).size() == 1);
  auto z9 = enumerate_characters(FinAbGroup({9}));
  std::set<std::int64_t> small;
  for (const auto& c : z9)
    if (3 % c.order() == 0) small.insert(c.numerators()[0]);
  CHECK(small == std::set<std::int64_t>{0, 3, 6});
  CHECK_THROWS_AS(enumerate_characters(FinAbGroup({256, 257})), BoundExceeded);
}

TEST_CASE("regular representation reproduces the displayed matrices") {
  FinAbGroup v4({2, 2});
  CHECK(regular_representation(v4, {1, 0}) == mat4({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}));
  CHECK(regular_representation(v4, {0, 1}) == mat4({0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0}));
  CHECK(regular_representation(v4, {0, 0}) == IntMatrix::identity(4));
  LaurentMatrix s(1, 1, 2);
  s(0, 0) = st("s");
  CHECK(apply_rep_to_matrix(s, admissible_map(2, 2)) == regular_representation(v4, {1, 0}));
  LaurentMatrix one(1, 1, 2);
  one(0, 0) = st("1");
  CHECK(apply_rep_to_matrix(one, admissible_map(3, 2)) == IntMatrix::identity(6));
}

TEST_CASE("property: representation is a homomorphism") {
  for (auto orders : std::vector<std::vector<std::int64_t>>{{2, 2}, {3}, {4, 2}, {3, 3}, {2, 2, 2}, {6}}) {
    FinAbGroup g(orders);
    for (const auto& a : g.elements())
      for (const auto& b : g.elements())
        CHECK(regular_representation(g, a) * regular_representation(g, b) == regular_representation(g, g.add(a, b)));
  }
}

TEST_CASE("character evaluation") {
  LaurentPoly d = st("(t*s+1-s)*(t*s+1-t)");
  GroupMap phi = admissible_map(2, 2);
  CHECK(std::abs(eval_at_character(d, phi, Character(phi.target(), {1, 1})) - 9.0) < 1e-12);
  CHECK(std::abs(eval_at_character(d, phi, Character(phi.target(), {0, 0})) - 1.0) < 1e-12);
  CHECK(std::abs(eval_at_character(d, phi, Character(phi.target(), {1, 0})) + 1.0) < 1e-12);
  CHECK(std::abs(character_product(d, phi) - 9.0) < 1e-9);
  CHECK(std::abs(eval_at_character(st("1"), phi, Character(phi.target(), {1, 0})) - 1.0) < 1e-12);
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    GroupMap phi = admissible_map(1 + trial % 5, 1 + (trial / 5) % 4);
    LaurentPoly a = random_laurent(rng, 2, 5, -4, 4, 10);
    LaurentPoly b = random_laurent(rng, 2, 5, -4, 4, 10);
    for (const auto& eta : enumerate_characters(phi.target())) {
      auto lhs = eval_at_character(a * b, phi, eta);
      auto rhs = eval_at_character(a, phi, eta) * eval_at_character(b, phi, eta);
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("property: character determinant identity") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t k = 1 + trial % 4, l = 1 + (trial / 4) % 2;
    GroupMap phi = admissible_map(k, l);
    LaurentMatrix m(2, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = random_bounded_degree(rng, 2, 2, 3);
    BigInt exact = determinant(apply_rep_to_matrix(m, phi));
    std::complex<double> prod = character_product(determinant(m), phi);
    CHECK(std::abs(prod.imag()) < 1e-6 * std::max(1.0, std::abs(prod)));
    const double rounded = std::round(prod.real());
    CHECK(std::abs(prod.real() - rounded) <= 1e-6 * std::max(1.0, std::abs(rounded)));
    CHECK(BigInt(static_cast<long>(rounded)) == exact);
    ++checked;
  }
  CHECK(checked == 100);
}
