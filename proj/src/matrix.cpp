#include "reflekt/matrix.hpp"

#include <algorithm>
#include <utility>

namespace reflekt {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DomainError("rows of unequal length");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const Vector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector IntMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector IntMatrix::col(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<Vector> IntMatrix::row_list() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMatrix operator*(const Integer& k, const IntMatrix& a) {
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= k;
  return c;
}

Vector operator*(const IntMatrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw DomainError("matrix/vector dimension mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

Vector operator*(const Vector& v, const IntMatrix& a) {
  if (a.rows() != v.size()) throw DomainError("vector/matrix dimension mismatch");
  Vector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
  }
  return out;
}

Integer dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DomainError("vector dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Integer determinant(const IntMatrix& a) {
  if (!a.square()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

std::vector<std::vector<Rational>> to_rational(const IntMatrix& a) {
  std::vector<std::vector<Rational>> r(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = a(i, j);
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_of(const IntMatrix& a) {
  auto m = to_rational(a);
  return rref(m, a.cols()).size();
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  IntMatrix vi = IntMatrix::identity(n);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < m; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < n; ++c) std::swap(vi(i, c), vi(j, c));
  };
  // row_i -= q * row_t
  auto sub_row = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c) d(i, c) -= q * d(t, c);
    for (std::size_t c = 0; c < m; ++c) u(i, c) -= q * u(t, c);
  };
  // col_j -= q * col_t
  auto sub_col = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t r = 0; r < m; ++r) d(r, j) -= q * d(r, t);
    for (std::size_t r = 0; r < n; ++r) v(r, j) -= q * v(r, t);
    for (std::size_t c = 0; c < n; ++c) vi(t, c) += q * vi(j, c);
  };

  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    bool found = false;
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pi = 0, pj = 0;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer av = abs_of(d(i, j));
          if (best == 0 || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;
      found = true;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        sub_row(i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        sub_col(j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool chain_ok = true;
      for (std::size_t i = t + 1; i < m && chain_ok; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(d(t, t), d(i, j))) {
            sub_row(t, i, Integer(-1));  // row_t += row_i
            chain_ok = false;
            break;
          }
      if (chain_ok) break;
    }
    if (!found) break;
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < m; ++c) u(t, c) = -u(t, c);
    }
  }

  SmithForm out;
  out.rank = t;
  out.diagonal.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal[i] = d(i, i);
  out.u = std::move(u);
  out.v = std::move(v);
  out.v_inverse = std::move(vi);
  return out;
}

std::optional<std::vector<std::vector<Rational>>> solve_left(const IntMatrix& basis,
                                                             const IntMatrix& target) {
  if (basis.cols() != target.cols()) throw DomainError("solve_left: dimension mismatch");
  const std::size_t k = basis.rows();
  auto echelon = to_rational(basis);
  const auto pivots = rref(echelon, basis.cols());
  if (pivots.size() != k) throw DomainError("solve_left: basis rows are linearly dependent");

  // Invert the k x k submatrix on pivot columns.
  std::vector<std::vector<Rational>> aug(k, std::vector<Rational>(2 * k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis(i, pivots[j]);
    aug[i][k + i] = 1;
  }
  rref(aug, k);
  // inv is the inverse of (basis restricted to pivot columns), k x k.
  std::vector<std::vector<Rational>> x(target.rows(), std::vector<Rational>(k));
  for (std::size_t r = 0; r < target.rows(); ++r) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (std::size_t l = 0; l < k; ++l) s += Rational(target(r, pivots[l])) * aug[l][k + j];
      x[r][j] = s;
    }
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      Rational s = 0;
      for (std::size_t j = 0; j < k; ++j) s += x[r][j] * Rational(basis(j, c));
      if (s != Rational(target(r, c))) return std::nullopt;
    }
  }
  return x;
}

}  // namespace reflekt
