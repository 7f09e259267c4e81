#include "hopfconc/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "hopfconc/errors.hpp"

namespace hopfconc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, const std::vector<long>& values)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (values.size() != rows * cols) throw std::invalid_argument("IntMatrix: wrong number of values");
  for (std::size_t i = 0; i < values.size(); ++i) data_[i] = values[i];
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const BigInt& y = b(k, j);
        if (y != 0) mpz_addmul(r(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix sum: shape mismatch");
  IntMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        BigInt v = a(i, j) * a(r, c) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

LaurentMatrix LaurentMatrix::without_row(std::size_t r) const {
  LaurentMatrix out(rows_ - 1, cols_, nvars_);
  for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0; j < cols_; ++j) out(oi, j) = (*this)(i, j);
    ++oi;
  }
  return out;
}

LaurentMatrix LaurentMatrix::without_column(std::size_t c) const {
  LaurentMatrix out(rows_, cols_ - 1, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
      if (j == c) continue;
      out(i, oj++) = (*this)(i, j);
    }
  return out;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) throw std::invalid_argument("LaurentMatrix product: shape mismatch");
  LaurentMatrix r(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) r(i, j) += a(i, k) * b(k, j);
  return r;
}

LaurentPoly determinant(const LaurentMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square Laurent matrix");
  const std::size_t n = m.rows();
  const int nv = m.nvars();
  if (n == 0) return LaurentPoly::constant(nv, 1);
  LaurentMatrix a = m;
  LaurentPoly prev = LaurentPoly::constant(nv, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      // Prefer the sparsest available pivot to limit expression growth.
      std::size_t p = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (!a(i, k).is_zero() && (p == n || a(i, k).size() < a(p, k).size())) p = i;
      if (p == n) return LaurentPoly(nv);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = exact_divide(v, prev);
      }
      a(i, k) = LaurentPoly(nv);
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

}  // namespace hopfconc
