#include "hopfconc/hermitian.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "hopfconc/errors.hpp"

namespace hopfconc {

ComplexLaurent ComplexLaurent::constant(int nvars, std::complex<double> c) {
  return monomial(nvars, Exponent(static_cast<std::size_t>(nvars), 0), c);
}

ComplexLaurent ComplexLaurent::monomial(int nvars, Exponent e, std::complex<double> c) {
  if (static_cast<int>(e.size()) != nvars) throw VariableMismatch("monomial exponent length mismatch");
  ComplexLaurent p(nvars);
  p.add_term(e, c);
  return p;
}

ComplexLaurent ComplexLaurent::from_integer(const LaurentPoly& q) {
  ComplexLaurent p(q.nvars());
  for (const auto& [e, c] : q.terms()) p.add_term(e, c.get_d());
  return p;
}

void ComplexLaurent::add_term(const Exponent& e, std::complex<double> c) {
  if (static_cast<int>(e.size()) != nvars_) throw VariableMismatch("term exponent length mismatch");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

ComplexLaurent ComplexLaurent::involution() const {
  ComplexLaurent r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent n = e;
    for (auto& x : n) x = -x;
    r.add_term(n, std::conj(c));
  }
  return r;
}

std::complex<double> ComplexLaurent::evaluate(const std::vector<double>& angles) const {
  std::complex<double> s = 0;
  for (const auto& [e, c] : terms_) {
    double phase = 0;
    for (std::size_t j = 0; j < e.size(); ++j) phase += e[j] * angles[j];
    s += c * std::polar(1.0, phase);
  }
  return s;
}

ComplexLaurent& ComplexLaurent::operator+=(const ComplexLaurent& o) {
  if (o.nvars_ != nvars_) throw VariableMismatch("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ComplexLaurent operator*(const ComplexLaurent& a, const ComplexLaurent& b) {
  if (a.nvars_ != b.nvars_) throw VariableMismatch("variable count mismatch");
  ComplexLaurent r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
      r.add_term(e, ca * cb);
    }
  return r;
}

ComplexLaurent operator*(ComplexLaurent a, std::complex<double> c) {
  for (auto& [e, x] : a.terms_) x *= c;
  return a;
}

bool ComplexLaurent::approx_equal(const ComplexLaurent& o, double tol) const {
  if (o.nvars_ != nvars_) return false;
  auto check = [&](const ComplexLaurent& x, const ComplexLaurent& y) {
    for (const auto& [e, c] : x.terms_) {
      auto it = y.terms_.find(e);
      const std::complex<double> d = it == y.terms_.end() ? 0.0 : it->second;
      if (std::abs(c - d) > tol) return false;
    }
    return true;
  };
  return check(*this, o) && check(o, *this);
}

HermitianLaurentMatrix::HermitianLaurentMatrix(int rank, std::vector<std::vector<ComplexLaurent>> entries)
    : rank_(rank), entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  for (const auto& row : entries_) {
    if (row.size() != n) throw HermitianViolation("matrix must be square");
    for (const auto& x : row)
      if (x.nvars() != rank_) throw VariableMismatch("entry has the wrong number of variables");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!entries_[i][j].approx_equal(entries_[j][i].involution()))
        throw HermitianViolation("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") is not the involution of its transpose");
}

Eigen::MatrixXcd HermitianLaurentMatrix::evaluate(const std::vector<double>& angles) const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = entries_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].evaluate(angles);
  return m;
}

HermitianLaurentMatrix HermitianLaurentMatrix::direct_sum(const HermitianLaurentMatrix& o) const {
  if (o.rank_ != rank_) throw VariableMismatch("direct sum of matrices over different rings");
  const std::size_t a = size(), b = o.size();
  std::vector<std::vector<ComplexLaurent>> e(a + b, std::vector<ComplexLaurent>(a + b, ComplexLaurent(rank_)));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j) e[i][j] = entries_[i][j];
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) e[a + i][a + j] = o.entries_[i][j];
  return HermitianLaurentMatrix(rank_, std::move(e));
}

HermitianLaurentMatrix HermitianLaurentMatrix::congruence(const std::vector<std::vector<ComplexLaurent>>& u) const {
  const std::size_t n = size();
  if (u.size() != n) throw InvalidInput("congruence matrix has the wrong size");
  std::vector<std::vector<ComplexLaurent>> up(n, std::vector<ComplexLaurent>(n, ComplexLaurent(rank_)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) up[i][j] += u[i][k] * entries_[k][j];
  std::vector<std::vector<ComplexLaurent>> r(n, std::vector<ComplexLaurent>(n, ComplexLaurent(rank_)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r[i][j] += up[i][k] * u[j][k].involution();
  return HermitianLaurentMatrix(rank_, std::move(r));
}

HermitianLaurentMatrix HermitianLaurentMatrix::constant(int rank, const std::vector<std::vector<double>>& m) {
  std::vector<std::vector<ComplexLaurent>> e;
  for (const auto& row : m) {
    std::vector<ComplexLaurent> r;
    for (double x : row) r.push_back(ComplexLaurent::constant(rank, x));
    e.push_back(std::move(r));
  }
  return HermitianLaurentMatrix(rank, std::move(e));
}

HermitianLaurentMatrix HermitianLaurentMatrix::hyperbolic(int rank) { return constant(rank, {{0, 1}, {1, 0}}); }

double sigma_tolerance(int grid) { return 2.0 / grid + 0.02; }

SigmaResult sigma_integral(const HermitianLaurentMatrix& p, int grid, int jobs) {
  const int r = p.rank();
  if (r < 0 || r > 4) throw InvalidInput("sigma integral supports rank 0..4");
  if (r > 0 && grid < 8) throw InvalidInput("grid must be at least 8");
  std::int64_t total = 1;
  for (int i = 0; i < r; ++i) total *= grid;
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<std::int64_t>(total, 64))));

  struct Partial {
    std::int64_t sum = 0, used = 0, skipped = 0;
  };
  std::vector<Partial> parts(static_cast<std::size_t>(jobs));
  auto work = [&](int job) {
    Partial& acc = parts[static_cast<std::size_t>(job)];
    std::vector<double> angles(static_cast<std::size_t>(r));
    for (std::int64_t idx = job; idx < total; idx += jobs) {
      std::int64_t rest = idx;
      for (int d = 0; d < r; ++d) {
        angles[static_cast<std::size_t>(d)] = 2.0 * std::numbers::pi * static_cast<double>(rest % grid) / grid;
        rest /= grid;
      }
      const Eigen::MatrixXcd m = p.evaluate(angles);
      if (m.size() == 0) {
        ++acc.used;
        continue;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
      double det = 1;
      int sig = 0;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double e = es.eigenvalues()(i);
        det *= e;
        sig += e > 0 ? 1 : -1;
      }
      if (std::abs(det) < 1e-9) {
        ++acc.skipped;
        continue;
      }
      acc.sum += sig;
      ++acc.used;
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  Partial all;
  for (const auto& part : parts) {
    all.sum += part.sum;
    all.used += part.used;
    all.skipped += part.skipped;
  }
  SigmaResult out;
  out.grid = grid;
  out.points = total;
  out.skipped = all.skipped;
  out.value = all.used ? static_cast<double>(all.sum) / static_cast<double>(all.used) : 0.0;
  return out;
}

WittCheck witt_congruent_sigma_check(const HermitianLaurentMatrix& p, const HermitianLaurentMatrix& q, int n,
                                     int n_prime, int grid, int jobs) {
  auto stabilize = [](HermitianLaurentMatrix m, int copies) {
    for (int i = 0; i < copies; ++i) m = m.direct_sum(HermitianLaurentMatrix::hyperbolic(m.rank()));
    return m;
  };
  WittCheck w;
  w.left = sigma_integral(stabilize(p, n), grid, jobs);
  w.right = sigma_integral(stabilize(q, n_prime), grid, jobs);
  w.agrees = std::abs(w.left.value - w.right.value) <= sigma_tolerance(grid);
  return w;
}

HermitianLaurentMatrix parse_hermitian_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("entries"))
    throw ParseError("Hermitian matrix JSON needs \"rank\" and \"entries\"");
  if (!j["rank"].is_number_integer()) throw ParseError("rank must be an integer");
  const int r = j["rank"].get<int>();
  if (r < 0) throw ParseError("rank must be nonnegative");
  std::vector<std::vector<ComplexLaurent>> e;
  for (const auto& row : j["entries"]) {
    if (!row.is_array()) throw ParseError("entries must be rows of term lists");
    std::vector<ComplexLaurent> out;
    for (const auto& cell : row) {
      if (!cell.is_array()) throw ParseError("each entry must be a list of terms");
      ComplexLaurent p(r);
      for (const auto& term : cell) {
        const double re = term.value("coeff_re", 0.0), im = term.value("coeff_im", 0.0);
        Exponent ex(static_cast<std::size_t>(r), 0);
        if (term.contains("exponents")) {
          const auto& xs = term["exponents"];
          if (!xs.is_array() || static_cast<int>(xs.size()) != r)
            throw ParseError("term exponents must have one entry per variable");
          for (int i = 0; i < r; ++i) ex[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)].get<int>();
        }
        p.add_term(ex, {re, im});
      }
      out.push_back(std::move(p));
    }
    e.push_back(std::move(out));
  }
  return HermitianLaurentMatrix(r, std::move(e));
}

}  // namespace hopfconc
