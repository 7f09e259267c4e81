#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <vector>

#include "hopfconc/laurent.hpp"
#include "hopfconc/matrix.hpp"

namespace hopfconc {

using Rational = boost::rational<std::int64_t>;
using GroupElement = std::vector<std::int64_t>;

inline constexpr std::int64_t kDefaultGroupBound = std::int64_t{1} << 16;

// Reduces a rational to the representative in [0, 1).
Rational mod_one(Rational q);

// Finite abelian group Z_{d_1} + ... + Z_{d_r}.
//
// Elements are exponent tuples reduced mod d_i. The canonical element order
// is mixed radix with the FIRST coordinate varying fastest:
// (0,0), (1,0), (0,1), (1,1) for Z_2 + Z_2.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::int64_t size() const { return size_; }

  GroupElement zero() const { return GroupElement(orders_.size(), 0); }
  GroupElement reduce(GroupElement x) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, std::int64_t n) const;
  std::int64_t order_of(const GroupElement& a) const;

  std::size_t index_of(const GroupElement& a) const;
  GroupElement element(std::size_t index) const;
  std::vector<GroupElement> elements() const;

  // Throws BoundExceeded when |A| > bound.
  void check_bound(std::int64_t bound) const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.orders_ == b.orders_; }

 private:
  std::vector<std::int64_t> orders_;
  std::int64_t size_ = 1;
};

// Character eta(e_i) = exp(2 pi i n_i / d_i).
class Character {
 public:
  Character() = default;
  Character(FinAbGroup group, std::vector<std::int64_t> numerators);

  const FinAbGroup& group() const { return group_; }
  const std::vector<std::int64_t>& numerators() const { return numerators_; }

  // eta(x) as an exact phase in [0,1): eta(x) = exp(2 pi i * phase).
  Rational phase(const GroupElement& x) const;
  std::complex<double> value(const GroupElement& x) const;
  std::int64_t order() const;
  bool is_trivial() const;

  friend bool operator==(const Character& a, const Character& b) {
    return a.group_ == b.group_ && a.numerators_ == b.numerators_;
  }
  friend bool operator<(const Character& a, const Character& b) { return a.numerators_ < b.numerators_; }

 private:
  FinAbGroup group_;
  std::vector<std::int64_t> numerators_;
};

std::complex<double> unit_complex(Rational phase);

// All |A| characters, ordered like the elements of A (numerator tuples in
// canonical element order).
std::vector<Character> enumerate_characters(const FinAbGroup& group, std::int64_t bound = kDefaultGroupBound);

// Homomorphism Z^m -> A given by the images of the standard basis.
class GroupMap {
 public:
  GroupMap() = default;
  GroupMap(FinAbGroup target, std::vector<GroupElement> images);

  const FinAbGroup& target() const { return target_; }
  const std::vector<GroupElement>& images() const { return images_; }
  int source_rank() const { return static_cast<int>(images_.size()); }

  GroupElement apply(const Exponent& e) const;
  bool is_surjective() const;

 private:
  FinAbGroup target_;
  std::vector<GroupElement> images_;
};

// The admissible map Z + Z -> Z_k + Z_l, (x, y) -> (x mod k, y mod l).
GroupMap admissible_map(std::int64_t k, std::int64_t l);
// Z -> Z_n, used for cyclic covers of knot exteriors.
GroupMap cyclic_map(std::int64_t n);
// True for maps of the form Z^2 -> Z_k + Z_l given by the two projections.
bool is_admissible(const GroupMap& map);

// Permutation matrix of x -> a + x on Z[A] in canonical element order
// (column convention: column b has its 1 in row a+b).
IntMatrix regular_representation(const FinAbGroup& group, const GroupElement& a);

// p evaluated at (eta(phi(e_1)), ..., eta(phi(e_m))).
std::complex<double> eval_at_character(const LaurentPoly& p, const GroupMap& map, const Character& eta);

// Product of eval_at_character over all characters of the target, in
// character order.
std::complex<double> character_product(const LaurentPoly& p, const GroupMap& map,
                                       std::int64_t bound = kDefaultGroupBound);

// Replaces every entry c*x^e by the k x k block c*rho(phi(e)).
IntMatrix apply_rep_to_matrix(const LaurentMatrix& m, const GroupMap& map, std::int64_t bound = kDefaultGroupBound);

}  // namespace hopfconc
