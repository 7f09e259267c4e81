#include "hopfconc/finite_abelian.hpp"

#include <numbers>
#include <numeric>
#include <set>

#include "hopfconc/errors.hpp"

namespace hopfconc {

namespace {
std::int64_t pmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

Rational mod_one(Rational q) {
  std::int64_t n = q.numerator(), d = q.denominator();
  return Rational(pmod(n, d), d);
}

FinAbGroup::FinAbGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  size_ = 1;
  for (auto d : orders_) {
    if (d < 1) throw InvalidInput("cyclic factor order must be >= 1");
    if (size_ > (std::int64_t{1} << 40) / d) throw BoundExceeded("finite abelian group too large");
    size_ *= d;
  }
}

GroupElement FinAbGroup::reduce(GroupElement x) const {
  if (x.size() != orders_.size()) throw InvalidInput("group element has wrong length");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = pmod(x[i], orders_[i]);
  return x;
}

GroupElement FinAbGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = pmod(a[i] + b[i], orders_[i]);
  return r;
}

GroupElement FinAbGroup::negate(const GroupElement& a) const {
  GroupElement r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = pmod(-a[i], orders_[i]);
  return r;
}

GroupElement FinAbGroup::scale(const GroupElement& a, std::int64_t n) const {
  GroupElement r(orders_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = pmod(pmod(a[i], orders_[i]) * pmod(n, orders_[i]), orders_[i]);
  return r;
}

std::int64_t FinAbGroup::order_of(const GroupElement& a) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::int64_t d = orders_[i];
    o = std::lcm(o, d / std::gcd(pmod(a[i], d), d));
  }
  return o;
}

std::size_t FinAbGroup::index_of(const GroupElement& a) const {
  std::size_t idx = 0, radix = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    idx += static_cast<std::size_t>(pmod(a[i], orders_[i])) * radix;
    radix *= static_cast<std::size_t>(orders_[i]);
  }
  return idx;
}

GroupElement FinAbGroup::element(std::size_t index) const {
  GroupElement x(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    auto d = static_cast<std::size_t>(orders_[i]);
    x[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return x;
}

std::vector<GroupElement> FinAbGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::size_t i = 0; i < static_cast<std::size_t>(size_); ++i) out.push_back(element(i));
  return out;
}

void FinAbGroup::check_bound(std::int64_t bound) const {
  if (size_ > bound)
    throw BoundExceeded("group of order " + std::to_string(size_) + " exceeds bound " + std::to_string(bound));
}

Character::Character(FinAbGroup group, std::vector<std::int64_t> numerators)
    : group_(std::move(group)), numerators_(std::move(numerators)) {
  numerators_ = group_.reduce(numerators_);
}

Rational Character::phase(const GroupElement& x) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < numerators_.size(); ++i)
    sum += Rational(pmod(numerators_[i] * pmod(x[i], group_.orders()[i]), group_.orders()[i]), group_.orders()[i]);
  return mod_one(sum);
}

std::complex<double> unit_complex(Rational phase) {
  phase = mod_one(phase);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase.numerator()) /
                       static_cast<double>(phase.denominator());
  // Exact values at the quarter turns keep real products real.
  if (phase == Rational(0)) return {1.0, 0.0};
  if (phase == Rational(1, 2)) return {-1.0, 0.0};
  if (phase == Rational(1, 4)) return {0.0, 1.0};
  if (phase == Rational(3, 4)) return {0.0, -1.0};
  return std::polar(1.0, angle);
}

std::complex<double> Character::value(const GroupElement& x) const { return unit_complex(phase(x)); }

std::int64_t Character::order() const { return group_.order_of(numerators_); }

bool Character::is_trivial() const {
  for (auto n : numerators_)
    if (n != 0) return false;
  return true;
}

std::vector<Character> enumerate_characters(const FinAbGroup& group, std::int64_t bound) {
  group.check_bound(bound);
  // Hom(A, S^1) is isomorphic to A; numerator tuples run over A's elements.
  std::vector<Character> out;
  out.reserve(static_cast<std::size_t>(group.size()));
  for (const auto& x : group.elements()) out.emplace_back(group, x);
  return out;
}

GroupMap::GroupMap(FinAbGroup target, std::vector<GroupElement> images) : target_(std::move(target)) {
  for (auto& im : images) images_.push_back(target_.reduce(std::move(im)));
}

GroupElement GroupMap::apply(const Exponent& e) const {
  if (static_cast<int>(e.size()) != source_rank()) throw VariableMismatch("GroupMap: exponent rank mismatch");
  GroupElement r = target_.zero();
  for (std::size_t j = 0; j < e.size(); ++j) r = target_.add(r, target_.scale(images_[j], e[j]));
  return r;
}

bool GroupMap::is_surjective() const {
  // Closure of the images under addition.
  std::set<GroupElement> seen{target_.zero()};
  std::vector<GroupElement> frontier{target_.zero()};
  while (!frontier.empty()) {
    GroupElement x = frontier.back();
    frontier.pop_back();
    for (const auto& g : images_) {
      GroupElement y = target_.add(x, g);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return static_cast<std::int64_t>(seen.size()) == target_.size();
}

GroupMap admissible_map(std::int64_t k, std::int64_t l) {
  FinAbGroup a({k, l});
  return GroupMap(a, {GroupElement{1, 0}, GroupElement{0, 1}});
}

GroupMap cyclic_map(std::int64_t n) { return GroupMap(FinAbGroup({n}), {GroupElement{1}}); }

bool is_admissible(const GroupMap& map) {
  if (map.source_rank() != 2 || map.target().rank() != 2) return false;
  return map.images()[0] == map.target().reduce({1, 0}) && map.images()[1] == map.target().reduce({0, 1});
}

IntMatrix regular_representation(const FinAbGroup& group, const GroupElement& a) {
  const auto k = static_cast<std::size_t>(group.size());
  IntMatrix m(k, k);
  for (std::size_t b = 0; b < k; ++b) m(group.index_of(group.add(a, group.element(b))), b) = 1;
  return m;
}

std::complex<double> eval_at_character(const LaurentPoly& p, const GroupMap& map, const Character& eta) {
  if (p.nvars() != map.source_rank()) throw VariableMismatch("eval_at_character: variable count mismatch");
  std::complex<double> sum = 0;
  for (const auto& [e, c] : p.terms()) sum += c.get_d() * eta.value(map.apply(e));
  return sum;
}

std::complex<double> character_product(const LaurentPoly& p, const GroupMap& map, std::int64_t bound) {
  std::complex<double> prod = 1;
  for (const auto& eta : enumerate_characters(map.target(), bound)) prod *= eval_at_character(p, map, eta);
  return prod;
}

IntMatrix apply_rep_to_matrix(const LaurentMatrix& m, const GroupMap& map, std::int64_t bound) {
  if (m.nvars() != map.source_rank()) throw VariableMismatch("apply_rep_to_matrix: variable count mismatch");
  const FinAbGroup& g = map.target();
  g.check_bound(bound);
  const auto k = static_cast<std::size_t>(g.size());
  IntMatrix out(m.rows() * k, m.cols() * k);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [e, c] : m(i, j).terms()) {
        const GroupElement a = map.apply(e);
        for (std::size_t b = 0; b < k; ++b) {
          const std::size_t row = g.index_of(g.add(a, g.element(b)));
          out(i * k + row, j * k + b) += c;
        }
      }
  return out;
}

}  // namespace hopfconc
