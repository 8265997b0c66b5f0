#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "reflekt/integer.hpp"

namespace reflekt {

/// Dense row-major integer matrix with unbounded entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vector>& rows);
  static IntMatrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  std::vector<Vector> row_list() const;

  IntMatrix transpose() const;
  bool symmetric() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& k, const IntMatrix& a);
Vector operator*(const IntMatrix& a, const Vector& v);
/// Row vector times matrix.
Vector operator*(const Vector& v, const IntMatrix& a);

Integer dot(const Vector& u, const Vector& v);

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Rank over the rationals.
std::size_t rank_of(const IntMatrix& a);

/// Smith normal form U * A * V = D with U, V unimodular. `v_inverse` is V^{-1}.
/// Diagonal entries are non-negative and each divides the next.
struct SmithForm {
  Vector diagonal;  // min(rows, cols) entries
  IntMatrix u;
  IntMatrix v;
  IntMatrix v_inverse;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Solves X * basis = target over the rationals. Returns nullopt when some row
/// of `target` is outside the rational row span of `basis` (full row rank).
std::optional<std::vector<std::vector<Rational>>> solve_left(const IntMatrix& basis,
                                                             const IntMatrix& target);

}  // namespace reflekt
