#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hopfconc/errors.hpp"
#include "hopfconc/hermitian.hpp"
#include "hopfconc/seifert.hpp"
#include "../support/generators.hpp"
#include "../support/hermitian_generators.hpp"

using namespace hopfconc;
using hopfconc::testing::cl;
using hopfconc::testing::random_hermitian;
using hopfconc::testing::random_unimodular;
using hopfconc::testing::single;

namespace {

const SeifertMatrix kTrefoil(IntMatrix(2, 2, {1, -1, 0, 1}));
const SeifertMatrix kFigureEight(IntMatrix(2, 2, {1, 1, 0, -1}));
// Genus one, zero 1x1 block in the corner; Alexander polynomial 2t^2-5t+2.
const SeifertMatrix kSlice(IntMatrix(2, 2, {0, 2, 1, -2}));
const SeifertMatrix kUnknot(IntMatrix(1, 1, {0}));

std::complex<double> at(double theta) { return std::polar(1.0, theta); }

// Angles in (0, pi) where the flagged signature changes, located by
// bisection between neighbouring sample points.
std::vector<double> jump_angles(const SeifertMatrix& v, int samples) {
  std::vector<double> out;
  auto sig = [&](double th) { return levine_tristram_flagged(v, at(th)).value; };
  for (int j = 0; j + 1 < samples; ++j) {
    double lo = std::numbers::pi * (j + 0.5) / samples, hi = std::numbers::pi * (j + 1.5) / samples;
    if (sig(lo) == sig(hi)) continue;
    const int left = sig(lo);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (sig(mid) == left ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Unit roots of a t^2 + b t + a (symmetric quadratic) in the upper half plane.
std::vector<double> quadratic_unit_root_angles(double a, double b) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4 * a * a));
  std::vector<double> out;
  for (auto r : {(-b + disc) / (2 * a), (-b - disc) / (2 * a)})
    if (std::abs(std::abs(r) - 1) < 1e-12 && r.imag() > 0) out.push_back(std::arg(r));
  return out;
}

}  // namespace

TEST_CASE("Seifert matrices are validated") {
  CHECK_THROWS_AS(SeifertMatrix(IntMatrix(2, 2, {1, 0, 0, 1})), InvalidInput);
  CHECK_THROWS_AS(SeifertMatrix(IntMatrix(1, 2, {0, 1})), InvalidInput);
  CHECK(kUnknot.is_unknot_padding());
  CHECK(kTrefoil.alexander().to_string() == "t^2-t+1");
  CHECK(kFigureEight.alexander().to_string() == "t^2-3*t+1");
  CHECK(kSlice.alexander().to_string() == "2*t^2-5*t+2");
}

TEST_CASE("trefoil signature values") {
  CHECK(levine_tristram(kTrefoil, Rational(1, 3)) == 2);
  CHECK(levine_tristram(kTrefoil, Rational(2, 3)) == 2);
  CHECK(levine_tristram(kTrefoil, Rational(0)) == 0);
  CHECK(levine_tristram(kTrefoil, std::complex<double>(1, 0)) == 0);
  CHECK(levine_tristram(kTrefoil, Rational(1, 2)) == 2);
  CHECK(levine_tristram(kTrefoil, Rational(1, 12)) == 0);
  CHECK(levine_tristram(kTrefoil.mirror(), Rational(1, 3)) == -2);
  CHECK_THROWS_AS(levine_tristram(kTrefoil, at(std::numbers::pi / 3)), SingularAtOmega);
  CHECK(levine_tristram_flagged(kTrefoil, at(std::numbers::pi / 3)).singular);
  CHECK_THROWS_AS(levine_tristram(kTrefoil, std::complex<double>(2, 0)), InvalidInput);
}

TEST_CASE("unknot padding has zero signature") {
  for (int j = 0; j < 12; ++j) CHECK(levine_tristram(kUnknot, Rational(j, 12)) == 0);
  CHECK(integral_signature(kUnknot, 256).value == 0);
}

TEST_CASE("figure-eight is amphichiral, so its signature vanishes") {
  for (int j = 1; j < 16; ++j) CHECK(levine_tristram(kFigureEight, Rational(j, 16)) == 0);
}

TEST_CASE("integral signature of the trefoil") {
  const IntegralSignature s = integral_signature(kTrefoil, 4096);
  CHECK(std::abs(s.value - 4.0 / 3.0) < 0.05);
  const SeifertMatrix cancel = kTrefoil.connected_sum(kTrefoil.mirror());
  CHECK(integral_signature(cancel, 512).value == 0);
}

TEST_CASE("signature is symmetric under conjugation") {
  std::mt19937_64 rng(7);
  for (const auto* v : {&kTrefoil, &kFigureEight, &kSlice}) {
    for (int trial = 0; trial < 50; ++trial) {
      const double th = std::uniform_real_distribution<double>(0.01, 3.13)(rng);
      const auto a = levine_tristram_flagged(*v, at(th)), b = levine_tristram_flagged(*v, at(-th));
      CHECK(a.value == b.value);
      CHECK(a.singular == b.singular);
    }
  }
}

TEST_CASE("jumps sit at unit roots of the Alexander polynomial") {
  const auto t = jump_angles(kTrefoil, 360);
  const auto tr = quadratic_unit_root_angles(1, -1);
  REQUIRE(t.size() == tr.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(t[i] - tr[i]) < 1e-6);
  // Figure-eight: t^2-3t+1 has no unit roots and the signature never jumps.
  CHECK(jump_angles(kFigureEight, 360).empty());
  CHECK(quadratic_unit_root_angles(1, -3).empty());
  // Sum of two trefoils and a figure-eight still jumps only at the trefoil roots.
  const auto s = jump_angles(kTrefoil.connected_sum(kTrefoil).connected_sum(kFigureEight), 360);
  REQUIRE(s.size() == 1);
  CHECK(std::abs(s[0] - std::numbers::pi / 3) < 1e-6);
}

TEST_CASE("slice knot signature vanishes at prime power roots") {
  for (int n : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16})
    for (int j = 1; j < n; ++j) CHECK(levine_tristram(kSlice, Rational(j, n)) == 0);
}

TEST_CASE("signature JSON") {
  const SeifertMatrix v = parse_seifert_json(nlohmann::json::parse(R"({"V":[[1,-1],[0,1]]})"));
  CHECK(v.matrix() == kTrefoil.matrix());
  CHECK(to_json(v).dump() == R"({"V":[[1,-1],[0,1]]})");
  CHECK_THROWS_AS(parse_seifert_json(nlohmann::json::parse(R"({"V":[[1,2]]})")), ParseError);
}

TEST_CASE("Hermitian matrices are validated") {
  CHECK_THROWS_AS(single(1, cl(1, 1.0, {1})), HermitianViolation);
  CHECK_NOTHROW(single(1, cl(1, 1.0, {1}) + cl(1, 1.0, {-1})));
  CHECK_THROWS_AS(single(0, ComplexLaurent::constant(0, {0, 1})), HermitianViolation);
  const auto off = cl(1, {0, 1}, {1});
  CHECK_NOTHROW(HermitianLaurentMatrix(1, {{ComplexLaurent(1), off}, {off.involution(), ComplexLaurent(1)}}));
  CHECK_THROWS_AS(HermitianLaurentMatrix(1, {{ComplexLaurent(1), off}, {off, ComplexLaurent(1)}}), HermitianViolation);
}

TEST_CASE("sigma of simple matrices") {
  CHECK(sigma_integral(HermitianLaurentMatrix::constant(0, {{1}}), 8).value == 1);
  CHECK(sigma_integral(HermitianLaurentMatrix::constant(2, {{1}}), 16).value == 1);
  CHECK(sigma_integral(HermitianLaurentMatrix::hyperbolic(0), 8).value == 0);
  CHECK(sigma_integral(HermitianLaurentMatrix::hyperbolic(2), 16).value == 0);
  const auto cosine = single(1, cl(1, 1.0, {1}) + cl(1, 1.0, {-1}));
  const SigmaResult s = sigma_integral(cosine, 64);
  CHECK(s.value == 0);
  CHECK(s.skipped == 2);
  CHECK(s.points == 64);
  CHECK_THROWS_AS(sigma_integral(cosine, 4), InvalidInput);
}

TEST_CASE("sigma does not depend on the thread count") {
  std::mt19937_64 rng(11);
  const auto p = random_hermitian(rng, 2, 3);
  const double one = sigma_integral(p, 32, 1).value;
  CHECK(sigma_integral(p, 32, 3).value == one);
  CHECK(sigma_integral(p, 32, 8).value == one);
}

TEST_CASE("sigma is additive under direct sum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const int r = testing::uniform(rng, 1, 2);
    const auto p = random_hermitian(rng, r, testing::uniform(rng, 1, 2));
    const auto q = random_hermitian(rng, r, testing::uniform(rng, 1, 2));
    const double sum = sigma_integral(p.direct_sum(q), 32).value;
    CHECK(std::abs(sum - sigma_integral(p, 32).value - sigma_integral(q, 32).value) <= 2 * sigma_tolerance(32));
  }
}

TEST_CASE("sigma is a Witt invariant") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int r = testing::uniform(rng, 1, 3);
    const int n = testing::uniform(rng, 1, 3);
    const int grid = r == 3 ? 32 : 64;
    const auto p = random_hermitian(rng, r, n);
    CHECK(witt_congruent_sigma_check(p, p, 1, 0, grid).agrees);
    const auto u = random_unimodular(rng, r, n);
    CHECK(witt_congruent_sigma_check(p, p.congruence(u), 0, 0, grid).agrees);
  }
  const auto one = HermitianLaurentMatrix::constant(1, {{1}});
  const auto minus = HermitianLaurentMatrix::constant(1, {{-1}});
  const WittCheck w = witt_congruent_sigma_check(one, minus, 0, 0, 16);
  CHECK_FALSE(w.agrees);
  CHECK(w.left.value - w.right.value == 2);
}

TEST_CASE("Hermitian JSON") {
  const auto j = nlohmann::json::parse(
      R"({"rank":1,"entries":[[[{"coeff_re":1,"coeff_im":0,"exponents":[1]},{"coeff_re":1,"exponents":[-1]}]]]})");
  const auto p = parse_hermitian_json(j);
  CHECK(p.size() == 1);
  CHECK(p(0, 0).evaluate({0.0}) == std::complex<double>(2, 0));
  CHECK_THROWS_AS(parse_hermitian_json(nlohmann::json::parse(R"({"rank":1})")), ParseError);
  CHECK_THROWS_AS(
      parse_hermitian_json(nlohmann::json::parse(R"({"rank":1,"entries":[[[{"coeff_re":1,"exponents":[1]}]]]})")),
      HermitianViolation);
}
