#include "hopfconc/fox.hpp"

#include "hopfconc/errors.hpp"

namespace hopfconc {

LaurentPoly fox_derivative(const Word& w, int generator, const MeridianMap& ab) {
  const int m = ab.rank();
  LaurentPoly out(m);
  Exponent prefix(static_cast<std::size_t>(m), 0);
  for (const auto& l : w) {
    const Exponent step = ab.image(l.generator);
    if (l.exponent == 1) {
      if (l.generator == generator) out.add_term(prefix, 1);
      for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] += step[i];
    } else if (l.exponent == -1) {
      for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] -= step[i];
      if (l.generator == generator) out.add_term(prefix, -1);
    } else {
      throw InvalidInput("word letters must have exponent +1 or -1");
    }
  }
  return out;
}

LaurentMatrix alexander_matrix(const GroupPresentation& pres, const MeridianMap& ab) {
  const auto n = static_cast<std::size_t>(pres.generator_count);
  LaurentMatrix m(pres.relations.size(), n, ab.rank());
  for (std::size_t i = 0; i < pres.relations.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = fox_derivative(pres.relations[i], static_cast<int>(j), ab);
  return m;
}

LaurentMatrix generator_column(const MeridianMap& ab) {
  const auto n = static_cast<std::size_t>(ab.generator_count());
  LaurentMatrix c(n, 1, ab.rank());
  for (std::size_t j = 0; j < n; ++j)
    c(j, 0) = LaurentPoly::monomial(ab.rank(), ab.image(static_cast<int>(j))) - LaurentPoly::constant(ab.rank(), 1);
  return c;
}

namespace {

// gcd over all maximal minors of a matrix with rows >= cols.
LaurentPoly gcd_of_maximal_minors(const LaurentMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  if (c > kMaxMinorDimension) throw BoundExceeded("minor dimension " + std::to_string(c) + " exceeds 30");
  if (c == 0) return LaurentPoly::constant(a.nvars(), 1);
  if (r < c) return LaurentPoly(a.nvars());
  std::vector<std::size_t> pick(c);
  for (std::size_t i = 0; i < c; ++i) pick[i] = i;
  LaurentPoly g(a.nvars());
  std::size_t visited = 0;
  while (true) {
    if (++visited > 100000) throw BoundExceeded("too many maximal minors");
    LaurentMatrix sub(c, c, a.nvars());
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) sub(i, j) = a(pick[i], j);
    g = gcd(g, determinant(sub));
    if (g.is_constant() && (g.coeff(Exponent(static_cast<std::size_t>(a.nvars()), 0)) == 1)) return g;
    // Next combination of c rows out of r.
    std::size_t i = c;
    while (i > 0 && pick[i - 1] == r - c + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < c; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g;
}

}  // namespace

LaurentPoly multivariable_alexander(const GroupPresentation& pres, const MeridianMap& ab, int column) {
  if (ab.rank() < 2) throw InvalidInput("multivariable Alexander polynomial needs at least 2 components");
  if (column < 0 || column >= pres.generator_count) throw InvalidInput("deleted column out of range");
  if (ab.component(column) < 0) throw InvalidInput("deleted column must be a meridian");
  const LaurentMatrix a = alexander_matrix(pres, ab).without_column(static_cast<std::size_t>(column));
  LaurentPoly g = gcd_of_maximal_minors(a);
  if (g.is_zero()) return g;
  LaurentPoly x = LaurentPoly::variable(ab.rank(), ab.component(column)) - LaurentPoly::constant(ab.rank(), 1);
  return normalize(exact_divide(g, x));
}

LaurentPoly multivariable_alexander(const PDCode& d) {
  const WirtingerData w = wirtinger(d);
  return multivariable_alexander(w.presentation, w.meridians, 0);
}

LaurentPoly knot_alexander(const PDCode& d) {
  if (d.component_count() != 1) throw InvalidInput("knot Alexander polynomial needs a 1-component diagram");
  const WirtingerData w = wirtinger(d);
  if (w.presentation.generator_count <= 1) return LaurentPoly::constant(1, 1);
  const LaurentMatrix a = alexander_matrix(w.presentation, w.meridians).without_column(0);
  LaurentPoly g = gcd_of_maximal_minors(a);
  if (g.is_zero()) throw DegenerateDiagram("all minors of the Alexander matrix vanish");
  g = normalize(g);
  if (abs(g.augmentation()) != 1)
    throw Inconsistent("knot Alexander polynomial " + g.to_string() + " has |Delta(1)| != 1");
  return g;
}

}  // namespace hopfconc
