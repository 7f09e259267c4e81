#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hopfconc/bigint.hpp"
#include "hopfconc/laurent.hpp"

namespace hopfconc {

// Dense row-major matrix over the integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& values);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transposed() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

// Fraction-free (Bareiss) determinant of a square integer matrix.
BigInt determinant(const IntMatrix& m);

// Rank by fraction-free elimination.
std::size_t rank(const IntMatrix& m);

// Dense matrix over a Laurent polynomial ring.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(std::size_t rows, std::size_t cols, int nvars)
      : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, LaurentPoly(nvars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int nvars() const { return nvars_; }

  LaurentPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  LaurentMatrix without_row(std::size_t r) const;
  LaurentMatrix without_column(std::size_t c) const;
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  int nvars_ = 0;
  std::vector<LaurentPoly> data_;
};

// Bareiss determinant over the Laurent ring (exact divisions).
LaurentPoly determinant(const LaurentMatrix& m);

}  // namespace hopfconc
