#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hopfconc/finite_abelian.hpp"

namespace hopfconc {

inline constexpr std::int64_t kFormBound = 10000;

// Symmetric nonsingular pairing T x T -> Q/Z given by its Gram matrix on
// the cyclic generators of T.
class LinkingForm {
 public:
  LinkingForm() = default;
  // Validates symmetry, well-definedness on the generator orders and
  // nonsingularity (the adjoint T -> Hom(T, Q/Z) is injective).
  LinkingForm(FinAbGroup group, std::vector<std::vector<Rational>> gram, std::int64_t bound = kFormBound);

  // lambda(e_i, e_j) = delta_ij / d_i.
  static LinkingForm standard(const FinAbGroup& group, std::int64_t bound = kFormBound);

  const FinAbGroup& group() const { return group_; }
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }

  Rational operator()(const GroupElement& x, const GroupElement& y) const;

 private:
  FinAbGroup group_;
  std::vector<std::vector<Rational>> gram_;
};

// Subgroup of a finite abelian group, stored as its sorted element indices.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FinAbGroup ambient, std::vector<std::size_t> indices);

  const FinAbGroup& ambient() const { return ambient_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(const GroupElement& x) const;
  std::vector<GroupElement> elements() const;
  // A small generating set, chosen greedily in element order.
  std::vector<GroupElement> generators() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.indices_ == b.indices_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    return a.indices_.size() != b.indices_.size() ? a.indices_.size() < b.indices_.size() : a.indices_ < b.indices_;
  }

 private:
  FinAbGroup ambient_;
  std::vector<std::size_t> indices_;
};

Subgroup subgroup_generated(const FinAbGroup& group, const std::vector<GroupElement>& generators,
                            std::int64_t bound = kFormBound);

Subgroup orthogonal_complement(const LinkingForm& form, const Subgroup& p, std::int64_t bound = kFormBound);

// All P with P = P^perp, ordered by element indices. Empty when |T| is not a
// perfect square.
std::vector<Subgroup> enumerate_metabolisers(const LinkingForm& form, std::int64_t bound = kFormBound);

// True when every nonsingular form on `group` has the same metabolisers:
// cyclic groups, and groups whose order is not a square.
bool metabolisers_form_independent(const FinAbGroup& group);

// Character T -> Z_{q^k} c S^1, chi(e_i) = values[i] / q^k.
struct PrimePowerCharacter {
  std::int64_t q = 0;
  int k = 0;
  std::vector<std::int64_t> values;
  Character character;  // the same map written over T's own orders
  std::int64_t order = 1;
  bool trivial = true;
};

// All chi: T -> Z_{q^k} vanishing on p, trivial character first.
std::vector<PrimePowerCharacter> characters_vanishing_on(const FinAbGroup& group, const Subgroup& p, std::int64_t q,
                                                         int k, std::int64_t bound = kFormBound);

// {"orders":[d1,...], "gram":[["a/b",...],...]}; a missing gram means the
// standard form.
LinkingForm parse_form_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const LinkingForm& f);

std::string rational_to_string(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace hopfconc
