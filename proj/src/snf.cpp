#include "hopfconc/snf.hpp"

#include <utility>
#include <vector>

namespace hopfconc {

namespace {

class Reducer {
 public:
  Reducer(const IntMatrix& m, SNFOptions opt) : a_(m), opt_(opt) {
    if (opt_.track_left) u_ = u_inv_ = IntMatrix::identity(m.rows());
    if (opt_.track_right) v_ = v_inv_ = IntMatrix::identity(m.cols());
  }

  SNFResult run() {
    if (!opt_.track_left && !opt_.track_right) return invariants_only();
    const std::size_t n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    while (t < n) {
      if (!place_pivot(t)) break;
      clear_cross(t);
      ++t;
    }
    std::size_t rank = t;
    for (std::size_t i = 0; i < rank; ++i)
      if (a_(i, i) < 0) negate_row(i);
    // Divisibility: diag(a, b) -> diag(gcd, lcm) by one unimodular step on
    // each side. After pass i, d_i divides every later entry.
    BigInt g, s, u, a, b;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) {
        if (mpz_divisible_p(a_(j, j).get_mpz_t(), a_(i, i).get_mpz_t())) continue;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a_(i, i).get_mpz_t(), a_(j, j).get_mpz_t());
        a = a_(i, i) / g;
        b = a_(j, j) / g;
        combine_rows(i, j, s, u, b, a);
        combine_cols(i, j, BigInt(1), BigInt(1), u * b, s * a);
      }
    SNFResult r;
    r.rank = rank;
    for (std::size_t i = 0; i < rank; ++i) r.diagonal.push_back(a_(i, i));
    r.D = std::move(a_);
    r.left_tracked = opt_.track_left;
    r.right_tracked = opt_.track_right;
    r.U = std::move(u_);
    r.U_inv = std::move(u_inv_);
    r.V = std::move(v_);
    r.V_inv = std::move(v_inv_);
    return r;
  }

 private:
  // Exact elimination while unit pivots last, then the dense remainder
  // modulo one of its maximal minors.
  SNFResult invariants_only() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    while (t < n && place_pivot(t) && mpz_cmpabs_ui(a_(t, t).get_mpz_t(), 1) == 0) {
      clear_cross(t);
      ++t;
    }
    IntMatrix rest(a_.rows() - t, a_.cols() - t);
    for (std::size_t i = 0; i < rest.rows(); ++i)
      for (std::size_t j = 0; j < rest.cols(); ++j) rest(i, j) = a_(t + i, t + j);
    std::vector<BigInt> diag(t, BigInt(1));
    for (auto& d : dense_invariants(rest)) diag.push_back(std::move(d));

    SNFResult r;
    r.rank = diag.size();
    r.D = IntMatrix(a_.rows(), a_.cols());
    for (std::size_t i = 0; i < diag.size(); ++i) r.D(i, i) = diag[i];
    r.diagonal = std::move(diag);
    return r;
  }

  // Rank of b and the absolute value of a nonzero minor of that size,
  // by fraction-free elimination.
  static std::pair<std::size_t, BigInt> rank_and_minor(IntMatrix b) {
    BigInt prev = 1;
    std::size_t r = 0;
    const std::size_t n = std::min(b.rows(), b.cols());
    for (; r < n; ++r) {
      std::size_t bi = b.rows(), bj = 0;
      for (std::size_t i = r; i < b.rows(); ++i)
        for (std::size_t j = r; j < b.cols(); ++j)
          if (b(i, j) != 0 && (bi == b.rows() || mpz_cmpabs(b(i, j).get_mpz_t(), b(bi, bj).get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == b.rows()) break;
      swap_r(b, bi, r);
      swap_c(b, bj, r);
      for (std::size_t i = r + 1; i < b.rows(); ++i) {
        for (std::size_t j = r + 1; j < b.cols(); ++j) {
          BigInt v = b(i, j) * b(r, r) - b(i, r) * b(r, j);
          mpz_divexact(b(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        }
        b(i, r) = 0;
      }
      prev = b(r, r);
    }
    return {r, abs(prev)};
  }

  // Nonzero invariant factors of b. With D a nonzero maximal minor, every
  // invariant factor divides D, so Z^n / (rows(b) + D Z^n) has invariant
  // factors s_1, ..., s_r, D, ..., D and the reduction can run mod D.
  static std::vector<BigInt> dense_invariants(IntMatrix b) {
    const auto [r, d] = rank_and_minor(b);
    if (r == 0) return {};
    auto mod = [&d](BigInt& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); };
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) mod(b(i, j));

    BigInt g, s, u, p, q, x, y;
    // Replaces (v_t, v_o) by (s v_t + u v_o, -q v_t + p v_o), a unimodular step.
    auto combine = [&](auto get, std::size_t len, std::size_t t, std::size_t o) {
      for (std::size_t k = 0; k < len; ++k) {
        BigInt& vt = get(t, k);
        BigInt& vo = get(o, k);
        x = s * vt + u * vo;
        y = p * vo - q * vt;
        mod(x);
        mod(y);
        vt = x;
        vo = y;
      }
    };
    auto rows = [&b](std::size_t i, std::size_t k) -> BigInt& { return b(i, k); };
    auto cols = [&b](std::size_t j, std::size_t k) -> BigInt& { return b(k, j); };
    auto eliminate = [&](const BigInt& pivot, const BigInt& other) {
      if (mpz_divisible_p(other.get_mpz_t(), pivot.get_mpz_t())) {
        s = 1;
        u = 0;
        p = 1;
        q = other / pivot;
      } else {
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), pivot.get_mpz_t(), other.get_mpz_t());
        p = pivot / g;
        q = other / g;
      }
    };

    const std::size_t n = std::min(b.rows(), b.cols());
    std::vector<BigInt> diag(b.cols(), BigInt(0));
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t bi = b.rows(), bj = 0;
      BigInt best;
      for (std::size_t i = t; i < b.rows(); ++i)
        for (std::size_t j = t; j < b.cols(); ++j) {
          if (b(i, j) == 0) continue;
          mpz_gcd(g.get_mpz_t(), b(i, j).get_mpz_t(), d.get_mpz_t());
          if (bi == b.rows() || g < best) {
            best = g;
            bi = i;
            bj = j;
          }
        }
      if (bi == b.rows()) break;
      swap_r(b, bi, t);
      swap_c(b, bj, t);
      for (bool dirty = true; dirty;) {
        dirty = false;
        for (std::size_t i = t + 1; i < b.rows(); ++i)
          if (b(i, t) != 0) {
            eliminate(b(t, t), b(i, t));
            combine(rows, b.cols(), t, i);
          }
        for (std::size_t j = t + 1; j < b.cols(); ++j)
          if (b(t, j) != 0) {
            eliminate(b(t, t), b(t, j));
            combine(cols, b.rows(), t, j);
            dirty = true;
          }
        if (dirty) {
          dirty = false;
          for (std::size_t i = t + 1; i < b.rows(); ++i) dirty = dirty || b(i, t) != 0;
        }
      }
      diag[t] = b(t, t);
    }
    for (auto& e : diag) mpz_gcd(e.get_mpz_t(), e.get_mpz_t(), d.get_mpz_t());
    // Rearrange into a divisibility chain.
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
        mpz_lcm(diag[j].get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
        diag[i] = g;
      }
    diag.resize(r);
    return diag;
  }

  // Moves a smallest nonzero entry of the trailing block to (t, t). Ties go
  // to the entry with the fewest other nonzeros in its row and column
  // (Markowitz count), which keeps fill-in and coefficient growth down.
  bool place_pivot(std::size_t t) {
    std::vector<std::size_t> row_nz(a_.rows(), 0), col_nz(a_.cols(), 0);
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j)
        if (a_(i, j) != 0) {
          ++row_nz[i];
          ++col_nz[j];
        }
    std::size_t bi = 0, bj = 0, best_cost = 0;
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      if (row_nz[i] == 0) continue;
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const BigInt& x = a_(i, j);
        if (x == 0) continue;
        const std::size_t cost = (row_nz[i] - 1) * (col_nz[j] - 1);
        const int c = found ? mpz_cmpabs(x.get_mpz_t(), a_(bi, bj).get_mpz_t()) : -1;
        if (c < 0 || (c == 0 && cost < best_cost)) {
          bi = i;
          bj = j;
          best_cost = cost;
          found = true;
        }
      }
    }
    if (!found) return false;
    if (bi != t) swap_rows(bi, t);
    if (bj != t) swap_cols(bj, t);
    return true;
  }

  // Clears row t and column t outside the pivot. An entry the pivot does not
  // divide is merged by a 2x2 unimodular step that puts their gcd on the
  // pivot; this avoids the coefficient growth of repeated remainders.
  void clear_cross(std::size_t t) {
    BigInt g, s, u, p, q;
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        if (mpz_divisible_p(a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t())) {
          q = a_(i, t) / a_(t, t);
          add_row(i, t, -q);
          continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a_(t, t).get_mpz_t(), a_(i, t).get_mpz_t());
        p = a_(t, t) / g;
        q = a_(i, t) / g;
        combine_rows(t, i, s, u, q, p);
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        if (mpz_divisible_p(a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
          q = a_(t, j) / a_(t, t);
          add_col(j, t, -q);
          continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a_(t, t).get_mpz_t(), a_(t, j).get_mpz_t());
        p = a_(t, t) / g;
        q = a_(t, j) / g;
        combine_cols(t, j, s, u, q, p);
        dirty = true;
      }
      if (dirty) {
        dirty = false;
        for (std::size_t i = t + 1; i < a_.rows() && !dirty; ++i) dirty = a_(i, t) != 0;
      }
    }
  }

  // (x, y) -> (s x + u y, -q x + p y) on rows x = t, y = o of m, for
  // s p + u q = 1.
  static void mix_rows(IntMatrix& m, std::size_t t, std::size_t o, const BigInt& s, const BigInt& u, const BigInt& q,
                       const BigInt& p) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      BigInt x = s * m(t, k) + u * m(o, k);
      BigInt y = p * m(o, k) - q * m(t, k);
      m(t, k) = std::move(x);
      m(o, k) = std::move(y);
    }
  }
  static void mix_cols(IntMatrix& m, std::size_t t, std::size_t o, const BigInt& s, const BigInt& u, const BigInt& q,
                       const BigInt& p) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
      BigInt x = s * m(k, t) + u * m(k, o);
      BigInt y = p * m(k, o) - q * m(k, t);
      m(k, t) = std::move(x);
      m(k, o) = std::move(y);
    }
  }

  // Left multiplication by E = [[s, u], [-q, p]] on rows t, o. E^-1 is
  // [[p, -u], [q, s]], applied to the columns of U^-1.
  void combine_rows(std::size_t t, std::size_t o, const BigInt& s, const BigInt& u, const BigInt& q, const BigInt& p) {
    mix_rows(a_, t, o, s, u, q, p);
    if (opt_.track_left) {
      mix_rows(u_, t, o, s, u, q, p);
      mix_cols(u_inv_, t, o, p, q, u, s);
    }
  }
  // Columns t, o become (s c_t + u c_o, -q c_t + p c_o); the inverse acts on
  // the rows of V^-1.
  void combine_cols(std::size_t t, std::size_t o, const BigInt& s, const BigInt& u, const BigInt& q, const BigInt& p) {
    mix_cols(a_, t, o, s, u, q, p);
    if (opt_.track_right) {
      mix_cols(v_, t, o, s, u, q, p);
      mix_rows(v_inv_, t, o, p, q, u, s);
    }
  }

  static void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& c) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(src, j) != 0) mpz_addmul(m(dst, j).get_mpz_t(), c.get_mpz_t(), m(src, j).get_mpz_t());
  }
  static void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& c) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, src) != 0) mpz_addmul(m(i, dst).get_mpz_t(), c.get_mpz_t(), m(i, src).get_mpz_t());
  }
  static void swap_r(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
  }
  static void swap_c(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
  }

  // row_dst += c * row_src
  void add_row(std::size_t dst, std::size_t src, const BigInt& c) {
    row_axpy(a_, dst, src, c);
    if (opt_.track_left) {
      row_axpy(u_, dst, src, c);
      col_axpy(u_inv_, src, dst, -c);
    }
  }
  // col_dst += c * col_src
  void add_col(std::size_t dst, std::size_t src, const BigInt& c) {
    col_axpy(a_, dst, src, c);
    if (opt_.track_right) {
      col_axpy(v_, dst, src, c);
      row_axpy(v_inv_, src, dst, -c);
    }
  }
  void swap_rows(std::size_t x, std::size_t y) {
    swap_r(a_, x, y);
    if (opt_.track_left) {
      swap_r(u_, x, y);
      swap_c(u_inv_, x, y);
    }
  }
  void swap_cols(std::size_t x, std::size_t y) {
    swap_c(a_, x, y);
    if (opt_.track_right) {
      swap_c(v_, x, y);
      swap_r(v_inv_, x, y);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = -a_(i, j);
    if (opt_.track_left) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(i, j) = -u_(i, j);
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i) = -u_inv_(r, i);
    }
  }

  IntMatrix a_;
  SNFOptions opt_;
  IntMatrix u_, u_inv_, v_, v_inv_;
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m, SNFOptions options) { return Reducer(m, options).run(); }

}  // namespace hopfconc
