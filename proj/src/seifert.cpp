#include "hopfconc/seifert.hpp"

#include <Eigen/Dense>

#include "hopfconc/errors.hpp"

namespace hopfconc {

SeifertMatrix::SeifertMatrix(IntMatrix v) : v_(std::move(v)) {
  if (v_.rows() != v_.cols()) throw InvalidInput("Seifert matrix must be square");
  if (v_.rows() == 0 || (v_.rows() == 1 && v_(0, 0) == 0)) {
    padding_ = true;
    return;
  }
  IntMatrix skew = v_;
  for (std::size_t i = 0; i < v_.rows(); ++i)
    for (std::size_t j = 0; j < v_.cols(); ++j) skew(i, j) = v_(i, j) - v_(j, i);
  if (abs(determinant(skew)) != 1) throw InvalidInput("Seifert matrix has det(V - V^T) != +-1");
}

SeifertMatrix SeifertMatrix::mirror() const {
  IntMatrix m = v_.transposed();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return SeifertMatrix(m);
}

SeifertMatrix SeifertMatrix::connected_sum(const SeifertMatrix& other) const {
  if (padding_) return other;
  if (other.padding_) return *this;
  const std::size_t a = size(), b = other.size();
  IntMatrix m(a + b, a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) m(i, j) = v_(i, j);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) m(a + i, a + j) = other.v_(i, j);
  return SeifertMatrix(m);
}

LaurentPoly SeifertMatrix::alexander() const {
  if (padding_) return LaurentPoly::constant(1, 1);
  LaurentMatrix m(size(), size(), 1);
  const LaurentPoly t = LaurentPoly::variable(1, 0);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      m(i, j) = LaurentPoly::constant(1, v_(i, j)) - t * v_(j, i);
  return normalize(determinant(m));
}

SeifertMatrix parse_seifert_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("V") || !j["V"].is_array()) throw ParseError("Seifert JSON needs a \"V\" array");
  const auto& rows = j["V"];
  const std::size_t n = rows.size();
  IntMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("Seifert matrix must be square");
    for (std::size_t k = 0; k < n; ++k) {
      if (!rows[i][k].is_number_integer()) throw ParseError("Seifert entries must be integers");
      v(i, k) = static_cast<long>(rows[i][k].get<std::int64_t>());
    }
  }
  return SeifertMatrix(v);
}

nlohmann::ordered_json to_json(const SeifertMatrix& v) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < v.size(); ++k) r.push_back(v.matrix()(i, k).get_si());
    rows.push_back(r);
  }
  return {{"V", rows}};
}

FlaggedSignature levine_tristram_flagged(const SeifertMatrix& v, std::complex<double> omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-9) throw InvalidInput("omega must lie on the unit circle");
  FlaggedSignature out;
  if (v.is_unknot_padding() || std::abs(omega - 1.0) < 1e-15) return out;
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXcd h(n, n);
  const std::complex<double> a = 1.0 - omega, b = 1.0 - std::conj(omega);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double vij = v.matrix()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
      const double vji = v.matrix()(static_cast<std::size_t>(j), static_cast<std::size_t>(i)).get_d();
      h(i, j) = a * vij + b * vji;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  out.min_abs_eigenvalue = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = es.eigenvalues()(i);
    out.min_abs_eigenvalue = std::min(out.min_abs_eigenvalue, std::abs(e));
    if (std::abs(e) < kSingularTolerance) out.singular = true;
    else out.value += e > 0 ? 1 : -1;
  }
  return out;
}

int levine_tristram(const SeifertMatrix& v, std::complex<double> omega) {
  FlaggedSignature s = levine_tristram_flagged(v, omega);
  if (s.singular) throw SingularAtOmega("Levine-Tristram form is singular at this omega");
  return s.value;
}

int levine_tristram(const SeifertMatrix& v, const Rational& phase) {
  if (mod_one(phase).numerator() == 0) return 0;
  return levine_tristram(v, unit_complex(phase));
}

IntegralSignature integral_signature(const SeifertMatrix& v, int resolution) {
  if (resolution < 64) throw InvalidInput("resolution must be at least 64");
  IntegralSignature out;
  out.resolution = resolution;
  long sum = 0;
  int used = 0;
  for (int j = 0; j < resolution; ++j) {
    FlaggedSignature s = levine_tristram_flagged(v, unit_complex(Rational(j, resolution)));
    if (s.singular) {
      ++out.skipped;
      continue;
    }
    sum += s.value;
    ++used;
  }
  out.value = used ? static_cast<double>(sum) / used : 0.0;
  return out;
}

}  // namespace hopfconc
