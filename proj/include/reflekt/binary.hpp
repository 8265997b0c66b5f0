#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reflekt/integer.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt::binary {

/// f(x, y) = a x^2 + b x y + c y^2.
struct BinaryForm {
  Integer a;
  Integer b;
  Integer c;

  /// The diagonal lattice (1, 0, -D).
  static BinaryForm diagonal(const Integer& d) { return {1, 0, -d}; }
  /// Form of a 2x2 symmetric Gram matrix [[A, B], [B, C]] -> (A, 2B, C).
  static BinaryForm from_gram(const IntMatrix& gram);

  Integer disc() const { return b * b - 4 * a * c; }
  Integer operator()(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
  /// [[a, b/2], [b/2, c]]; requires b even.
  IntMatrix gram() const;
  std::string str() const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
  friend auto operator<=>(const BinaryForm& l, const BinaryForm& r) {
    if (auto o = cmp(l.a, r.a); o != 0) return o <=> 0;
    if (auto o = cmp(l.b, r.b); o != 0) return o <=> 0;
    return cmp(l.c, r.c) <=> 0;
  }
};

/// 2x2 integer matrix [[p, q], [r, s]] acting on column vectors.
struct Mat2 {
  Integer p = 1, q = 0, r = 0, s = 1;

  Integer det() const { return p * s - q * r; }
  Integer trace() const { return p + s; }
  Mat2 inverse_unimodular() const;  // requires det = +/-1
  IntMatrix to_matrix() const { IntMatrix m(2, 2); m(0, 0) = p; m(0, 1) = q; m(1, 0) = r; m(1, 1) = s; return m; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
std::pair<Integer, Integer> apply(const Mat2& m, const Integer& x, const Integer& y);
/// (f o M)(x, y) = f(M (x, y)^T).
BinaryForm transform(const BinaryForm& f, const Mat2& m);

struct CFExpansion {
  Integer d;
  Integer a0;
  std::vector<Integer> period;
  std::vector<Integer> q_sequence;  // Q_1, ..., Q_l
};

struct PellSolution {
  Integer x;
  Integer y;
  Integer d;
};

/// Periodic continued fraction of sqrt(d); d must be a positive non-square.
CFExpansion cf_sqrt(const Integer& d);
/// Least positive solution of x^2 - d y^2 = 1, from the convergents of sqrt(d).
PellSolution pell_fundamental(const Integer& d);
/// [[x, d y], [y, x]]: an isometry of diag(1, -d) of infinite order.
IntMatrix infinite_order_isometry(const Integer& d);
/// A nontrivial proper automorph of an indefinite form with non-square
/// discriminant, built from a Pell solution: f o M = f and trace(M) > 2.
Mat2 pell_automorph(const BinaryForm& f);

bool is_reduced(const BinaryForm& f);
/// One reduction step; returns the transformed form and the step matrix.
std::pair<BinaryForm, Mat2> rho(const BinaryForm& f);
/// Reduces f; returns (g, M) with f o M = g and g reduced.
std::pair<BinaryForm, Mat2> reduce(const BinaryForm& f);

/// Proper equivalence class of an indefinite form with non-square discriminant,
/// represented by the cycle of reduced forms. Holds everything needed for
/// repeated representation queries against one form.
class FormClass {
 public:
  explicit FormClass(BinaryForm f);

  const BinaryForm& form() const { return form_; }
  const Integer& disc() const { return disc_; }
  const std::vector<BinaryForm>& cycle() const { return cycle_; }

  /// Position of a reduced form in the cycle.
  std::optional<std::size_t> position(const BinaryForm& reduced) const;
  bool equivalent(const BinaryForm& g) const;
  /// M with f o M = g for a form g properly equivalent to f.
  std::optional<Mat2> transform_to(const BinaryForm& g) const;
  /// Generator-candidate automorph obtained from one traversal of the cycle.
  Mat2 cycle_automorph() const;

  /// Necessary condition at the odd primes dividing the discriminant (found by trial division).
  bool locally_represents(const Integer& n) const;
  bool represents_primitively(const Integer& m) const;
  bool represents(const Integer& n) const;
  /// Largest negative represented integer.
  Integer mu() const;

 private:
  Mat2 walk_to(std::size_t i) const;

  BinaryForm form_;
  Integer disc_;
  BinaryForm reduced_;
  Mat2 to_reduced_;
  std::vector<BinaryForm> cycle_;
  std::map<BinaryForm, std::size_t> index_;
  std::set<Integer> leading_;
  std::vector<Integer> disc_primes_;
};

/// All (x, y) with f(x, y) = n, for a form with positive square discriminant and n != 0.
std::vector<std::pair<Integer, Integer>> split_form_solutions(const BinaryForm& f, const Integer& n);

/// Complete decision: does f(x, y) = n for some (x, y) != (0, 0)? Requires disc > 0.
bool represents(const BinaryForm& f, const Integer& n);
/// Largest negative integer represented by an anisotropic indefinite form.
Integer mu(const BinaryForm& f);
/// True iff disc(f) is not a perfect square. Requires disc > 0.
bool is_anisotropic(const BinaryForm& f);

struct BinaryRoot {
  Integer norm;
  Vector vector;
  friend bool operator==(const BinaryRoot&, const BinaryRoot&) = default;
};

/// One representative root per achievable negative root norm, ordered by |norm|.
/// Candidate norms are the negative divisors of 2 e(L); requires b even.
std::vector<BinaryRoot> binary_roots(const BinaryForm& f);

/// Orders vectors by (max |v_i|, sum |v_i|, number of negative entries, lexicographic).
bool canonical_less(const Vector& u, const Vector& v);

}  // namespace reflekt::binary
