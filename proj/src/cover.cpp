#include "hopfconc/cover.hpp"

#include <cmath>

#include "hopfconc/errors.hpp"
#include "hopfconc/fox.hpp"
#include "hopfconc/json_util.hpp"
#include "hopfconc/snf.hpp"

namespace hopfconc {

CoverComplex cover_chain_complex(const GroupPresentation& pres, const MeridianMap& ab, const GroupMap& phi,
                                 std::int64_t bound) {
  if (phi.source_rank() != ab.rank()) throw VariableMismatch("cover: map source rank differs from component count");
  phi.target().check_bound(bound);
  CoverComplex c;
  c.phi = phi;
  c.k = static_cast<std::size_t>(phi.target().size());
  c.relation_count = pres.relations.size();
  c.generator_count = static_cast<std::size_t>(pres.generator_count);
  c.d2 = apply_rep_to_matrix(alexander_matrix(pres, ab), phi, bound);
  c.d1 = apply_rep_to_matrix(generator_column(ab), phi, bound);
  return c;
}

BigInt CoverHomology::torsion_order() const {
  BigInt p = 1;
  for (const auto& e : torsion) p *= e;
  return p;
}

FinAbGroup CoverHomology::torsion_group() const {
  std::vector<std::int64_t> orders;
  for (const auto& e : torsion) {
    if (!e.fits_slong_p() || e > (std::int64_t{1} << 40)) throw BoundExceeded("torsion order too large");
    orders.push_back(e.get_si());
  }
  return FinAbGroup(orders);
}

CoverHomology quotient_homology(const IntMatrix& relations, const IntMatrix& d1) {
  const std::size_t n = relations.cols();
  if (d1.rows() != n) throw std::invalid_argument("quotient_homology: shape mismatch");
  SNFResult s = smith_normal_form(relations, {.track_left = false, .track_right = true});
  CoverHomology h;
  h.chain_length = n;
  h.free_rank = n - rank(d1) - s.rank;
  auto column = [&](std::size_t i) {
    std::vector<BigInt> c(n);
    for (std::size_t r = 0; r < n; ++r) c[r] = s.V(r, i);
    return c;
  };
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.diagonal[i] == 1) continue;
    h.torsion.push_back(s.diagonal[i]);
    std::vector<BigInt> g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = s.V_inv(i, j);
    h.generators.push_back(std::move(g));
    h.coordinates.push_back(column(i));
  }
  for (std::size_t i = s.rank; i < n; ++i) h.free_coordinates.push_back(column(i));
  return h;
}

CoverHomology homology_of_cover(const CoverComplex& c) { return quotient_homology(c.d2, c.d1); }

CoverHomology homology_groups_of_cover(const CoverComplex& c) {
  const SNFResult s = smith_normal_form(c.d2, {.track_left = false, .track_right = false});
  CoverHomology h;
  h.chain_length = c.d2.cols();
  h.free_rank = h.chain_length - rank(c.d1) - s.rank;
  for (const auto& d : s.diagonal)
    if (d != 1) h.torsion.push_back(d);
  return h;
}

CoverHomology homology_of_cover(const GroupPresentation& pres, const MeridianMap& ab, const GroupMap& phi,
                                std::int64_t bound) {
  return homology_of_cover(cover_chain_complex(pres, ab, phi, bound));
}

IntMatrix lift_chains(const Word& w, const MeridianMap& ab, const GroupMap& phi, std::int64_t bound) {
  const GroupElement image = phi.apply(ab.image(w));
  if (image != phi.target().zero()) throw NotInKernel("word " + word_to_string(w) + " is not in the kernel of phi");
  LaurentMatrix row(1, static_cast<std::size_t>(ab.generator_count()), ab.rank());
  for (int j = 0; j < ab.generator_count(); ++j) row(0, static_cast<std::size_t>(j)) = fox_derivative(w, j, ab);
  return apply_rep_to_matrix(row, phi, bound);
}

ChainClass classify_chain(const CoverHomology& h, const std::vector<BigInt>& chain) {
  if (chain.size() != h.chain_length) throw std::invalid_argument("classify_chain: wrong chain length");
  auto pair = [&](const std::vector<BigInt>& col) {
    BigInt s = 0;
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (chain[i] != 0 && col[i] != 0) mpz_addmul(s.get_mpz_t(), chain[i].get_mpz_t(), col[i].get_mpz_t());
    return s;
  };
  ChainClass c;
  for (std::size_t i = 0; i < h.torsion.size(); ++i) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), pair(h.coordinates[i]).get_mpz_t(), h.torsion[i].get_mpz_t());
    c.torsion.push_back(r.get_si());
  }
  for (const auto& col : h.free_coordinates)
    if (pair(col) != 0) c.is_torsion = false;
  return c;
}

std::vector<ChainClass> lift_class_of_curve(const Word& w, const MeridianMap& ab, const GroupMap& phi,
                                            const CoverHomology& h, std::int64_t bound) {
  IntMatrix lifts = lift_chains(w, ab, phi, bound);
  IntMatrix d1 = apply_rep_to_matrix(generator_column(ab), phi, bound);
  if (!(lifts * d1).is_zero()) throw Inconsistent("lift of a kernel word is not a cycle");
  std::vector<ChainClass> out;
  for (std::size_t b = 0; b < lifts.rows(); ++b) {
    std::vector<BigInt> chain(lifts.cols());
    for (std::size_t j = 0; j < lifts.cols(); ++j) chain[j] = lifts(b, j);
    out.push_back(classify_chain(h, chain));
  }
  return out;
}

std::vector<Word> peripheral_kernel_words(const WirtingerData& w, const GroupMap& phi, int component) {
  if (component < 0 || component >= static_cast<int>(w.longitude.size()))
    throw InvalidInput("peripheral component out of range");
  const FinAbGroup& a = phi.target();
  const Word mu{{w.peripheral_meridian[static_cast<std::size_t>(component)], 1}};
  const Word& ell = w.longitude[static_cast<std::size_t>(component)];
  const GroupElement pm = phi.apply(w.meridians.image(mu));
  const GroupElement pl = phi.apply(w.meridians.image(ell));
  // Kernel of (x, y) -> x*pm + y*pl has basis (o, 0), (x0, y0) with y0 minimal.
  const std::int64_t o = a.order_of(pm);
  for (std::int64_t y = 1; y <= a.order_of(pl); ++y) {
    const GroupElement target = a.negate(a.scale(pl, y));
    for (std::int64_t x = 0; x < o; ++x) {
      if (a.scale(pm, x) != target) continue;
      return {power(mu, o), concat(power(mu, x), power(ell, y))};
    }
  }
  throw Inconsistent("no kernel vector for the peripheral torus");
}

namespace {

IntMatrix stack(const IntMatrix& top, const std::vector<IntMatrix>& parts) {
  std::size_t rows = top.rows();
  for (const auto& p : parts) rows += p.rows();
  IntMatrix out(rows, top.cols());
  std::size_t r = 0;
  auto copy = [&](const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i, ++r)
      for (std::size_t j = 0; j < m.cols(); ++j) out(r, j) = m(i, j);
  };
  copy(top);
  for (const auto& p : parts) copy(p);
  return out;
}

}  // namespace

RelativeCoverHomology relative_homology_of_cover(const WirtingerData& w, const GroupMap& phi, int component,
                                                 std::int64_t bound) {
  CoverComplex c = cover_chain_complex(w.presentation, w.meridians, phi, bound);
  std::vector<IntMatrix> extra;
  for (const Word& word : peripheral_kernel_words(w, phi, component))
    extra.push_back(lift_chains(word, w.meridians, phi, bound));
  RelativeCoverHomology r;
  r.absolute = homology_of_cover(c);
  r.relative = quotient_homology(stack(c.d2, extra), c.d1);
  r.torsion_agrees = r.absolute.torsion == r.relative.torsion;
  return r;
}

namespace {

CoverFormulaReport finish_report(const LaurentPoly& delta, const GroupMap& phi, std::int64_t bound) {
  CoverFormulaReport r;
  LaurentMatrix m(1, 1, delta.nvars());
  m(0, 0) = delta;
  r.rhs_exact = abs(determinant(apply_rep_to_matrix(m, phi, bound)));
  r.rhs_numeric = std::abs(character_product(delta, phi, bound));
  const double exact = r.rhs_exact.get_d();
  if (std::abs(r.rhs_numeric - exact) > 1e-6 * std::max(1.0, exact))
    throw Inconsistent("character product " + std::to_string(r.rhs_numeric) + " disagrees with determinant " +
                       r.rhs_exact.get_str());
  r.consistent = true;
  return r;
}

void attach_lhs(CoverFormulaReport& r, const CoverHomology& h, std::size_t expected_free_rank) {
  r.free_rank = h.free_rank;
  r.torsion = h.torsion;
  r.lhs = h.free_rank > expected_free_rank ? BigInt(0) : h.torsion_order();
  r.consistent = *r.lhs == r.rhs_exact;
}

}  // namespace

CoverFormulaReport verify_link_cover_formula(const LaurentPoly& delta, const GroupMap& phi, const PDCode* diagram,
                                             std::int64_t bound) {
  if (delta.nvars() != 2 || phi.source_rank() != 2)
    throw VariableMismatch("link cover formula needs a 2-variable polynomial and a map from Z^2");
  CoverFormulaReport r = finish_report(delta, phi, bound);
  if (diagram) {
    if (diagram->component_count() != 2) throw InvalidInput("link cover formula needs a 2-component diagram");
    WirtingerData w = wirtinger(*diagram);
    attach_lhs(r, homology_groups_of_cover(cover_chain_complex(w.presentation, w.meridians, phi, bound)), 2);
  }
  return r;
}

CoverFormulaReport verify_knot_cover_formula(const LaurentPoly& delta, std::int64_t n, const PDCode* diagram,
                                             std::int64_t bound) {
  if (n < 1) throw InvalidInput("cover degree must be positive");
  if (delta.nvars() != 1) throw VariableMismatch("knot cover formula needs a 1-variable polynomial");
  GroupMap phi = cyclic_map(n);
  CoverFormulaReport r = finish_report(delta, phi, bound);
  if (diagram) {
    if (diagram->component_count() != 1) throw InvalidInput("knot cover formula needs a 1-component diagram");
    WirtingerData w = wirtinger(*diagram);
    attach_lhs(r, homology_groups_of_cover(cover_chain_complex(w.presentation, w.meridians, phi, bound)), 1);
  }
  return r;
}

nlohmann::ordered_json to_json(const CoverHomology& h) {
  nlohmann::ordered_json j;
  j["free_rank"] = h.free_rank;
  j["torsion"] = nlohmann::ordered_json::array();
  for (const auto& e : h.torsion) j["torsion"].push_back(bigint_json(e));
  return j;
}

nlohmann::ordered_json to_json(const CoverFormulaReport& r) {
  nlohmann::ordered_json j;
  j["lhs"] = r.lhs ? bigint_json(*r.lhs) : nullptr;
  j["rhs_exact"] = bigint_json(r.rhs_exact);
  j["rhs_numeric"] = round12(r.rhs_numeric);
  j["consistent"] = r.consistent;
  if (r.free_rank) {
    nlohmann::ordered_json h;
    h["free_rank"] = *r.free_rank;
    h["torsion"] = nlohmann::ordered_json::array();
    for (const auto& e : r.torsion) h["torsion"].push_back(bigint_json(e));
    j["homology"] = h;
  } else {
    j["homology"] = nullptr;
  }
  return j;
}

}  // namespace hopfconc
