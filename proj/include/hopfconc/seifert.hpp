#pragma once

#include <complex>

#include <json.hpp>

#include "hopfconc/finite_abelian.hpp"
#include "hopfconc/matrix.hpp"

namespace hopfconc {

inline constexpr double kSingularTolerance = 1e-9;

// Seifert matrix of a knot. det(V - V^T) = +-1 is checked, except for the
// 1x1 zero matrix (and the empty matrix), both accepted as the unknot.
class SeifertMatrix {
 public:
  SeifertMatrix() = default;
  explicit SeifertMatrix(IntMatrix v);

  const IntMatrix& matrix() const { return v_; }
  std::size_t size() const { return v_.rows(); }
  bool is_unknot_padding() const { return padding_; }

  // Seifert matrix -V^T of the mirror image.
  SeifertMatrix mirror() const;
  // Block sum, a Seifert matrix of the connected sum.
  SeifertMatrix connected_sum(const SeifertMatrix& other) const;

  // Alexander polynomial det(V - t V^T), canonical form.
  LaurentPoly alexander() const;

 private:
  IntMatrix v_;
  bool padding_ = false;
};

SeifertMatrix parse_seifert_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SeifertMatrix& v);

struct FlaggedSignature {
  int value = 0;
  bool singular = false;
  double min_abs_eigenvalue = 0;
};

// Signature of (1 - w) V + (1 - conj w) V^T; 0 at w = 1. With this
// convention V = [[1,-1],[0,1]] has signature 2 at the primitive cube roots
// of unity and its mirror -2. Throws SingularAtOmega when an eigenvalue is
// within 1e-9 of zero.
int levine_tristram(const SeifertMatrix& v, std::complex<double> omega);
int levine_tristram(const SeifertMatrix& v, const Rational& phase);
// Same, reporting singular points instead of throwing.
FlaggedSignature levine_tristram_flagged(const SeifertMatrix& v, std::complex<double> omega);

struct IntegralSignature {
  double value = 0;
  int resolution = 0;
  int skipped = 0;
};

// Mean of sigma(K, e^{i theta}) over theta = 2 pi j / resolution, singular
// points skipped.
IntegralSignature integral_signature(const SeifertMatrix& v, int resolution);

}  // namespace hopfconc
