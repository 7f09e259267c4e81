#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hopfconc/laurent.hpp"

namespace hopfconc {

// Laurent polynomial with complex coefficients in r variables.
class ComplexLaurent {
 public:
  using TermMap = std::map<Exponent, std::complex<double>>;

  explicit ComplexLaurent(int nvars = 0) : nvars_(nvars) {}
  static ComplexLaurent constant(int nvars, std::complex<double> c);
  static ComplexLaurent monomial(int nvars, Exponent e, std::complex<double> c = 1.0);
  static ComplexLaurent from_integer(const LaurentPoly& p);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  void add_term(const Exponent& e, std::complex<double> c);

  // Coefficients conjugated and every variable inverted.
  ComplexLaurent involution() const;
  // Value at h_j = exp(i * angles[j]).
  std::complex<double> evaluate(const std::vector<double>& angles) const;

  ComplexLaurent& operator+=(const ComplexLaurent& o);
  friend ComplexLaurent operator+(ComplexLaurent a, const ComplexLaurent& b) { return a += b; }
  friend ComplexLaurent operator*(const ComplexLaurent& a, const ComplexLaurent& b);
  friend ComplexLaurent operator*(ComplexLaurent a, std::complex<double> c);

  // Equality up to 1e-12 per coefficient.
  bool approx_equal(const ComplexLaurent& o, double tol = 1e-12) const;

 private:
  int nvars_;
  TermMap terms_;
};

// Square matrix over C[Z^r] with P^dagger = P, where dagger transposes and
// applies the involution entrywise.
class HermitianLaurentMatrix {
 public:
  HermitianLaurentMatrix() = default;
  // Throws HermitianViolation.
  HermitianLaurentMatrix(int rank, std::vector<std::vector<ComplexLaurent>> entries);

  int rank() const { return rank_; }
  std::size_t size() const { return entries_.size(); }
  const ComplexLaurent& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }

  Eigen::MatrixXcd evaluate(const std::vector<double>& angles) const;

  HermitianLaurentMatrix direct_sum(const HermitianLaurentMatrix& o) const;
  // U P U^dagger for a square matrix U over C[Z^r] of matching size.
  HermitianLaurentMatrix congruence(const std::vector<std::vector<ComplexLaurent>>& u) const;

  static HermitianLaurentMatrix constant(int rank, const std::vector<std::vector<double>>& m);
  // B = [[0,1],[1,0]].
  static HermitianLaurentMatrix hyperbolic(int rank);

 private:
  int rank_ = 0;
  std::vector<std::vector<ComplexLaurent>> entries_;
};

struct SigmaResult {
  double value = 0;
  int grid = 0;
  std::int64_t points = 0;
  std::int64_t skipped = 0;
};

// Mean over the uniform grid (2 pi j_1 / grid, ..., 2 pi j_r / grid) of the
// signature of P evaluated there, skipping points with |det| < 1e-9.
// Requires rank <= 4 and grid >= 8 (grid is ignored for rank 0). Grid
// points are split over `jobs` threads; the reduction is over integer
// counts, so the result does not depend on `jobs`.
SigmaResult sigma_integral(const HermitianLaurentMatrix& p, int grid, int jobs = 1);

// Tolerance used when comparing two sigma values at one grid size.
double sigma_tolerance(int grid);

struct WittCheck {
  SigmaResult left, right;
  bool agrees = false;
};

// sigma(P + n B) against sigma(Q + n' B).
WittCheck witt_congruent_sigma_check(const HermitianLaurentMatrix& p, const HermitianLaurentMatrix& q, int n,
                                     int n_prime, int grid, int jobs = 1);

// {"rank": r, "entries": [[[{"coeff_re":..,"coeff_im":..,"exponents":[..]}, ...], ...], ...]}
HermitianLaurentMatrix parse_hermitian_json(const nlohmann::json& j);

}  // namespace hopfconc
