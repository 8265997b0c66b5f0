#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace reflekt {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Integer>;

/// Raised when an input violates a mathematical precondition (degenerate
/// lattice, square discriminant where a non-square is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a bounded search exhausts its configured effort.
class EffortLimitExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline Integer abs_of(const Integer& x) {
  Integer r;
  mpz_abs(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

/// Floor of the square root; requires x >= 0.
inline Integer isqrt(const Integer& x) {
  if (x < 0) throw DomainError("isqrt of negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline bool is_square(const Integer& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd_of(const Vector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd_of(g, x);
  return g;
}

/// Floor division and non-negative remainder for positive or negative moduli.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::optional<std::int64_t> to_int64(const Integer& x) {
  if (!mpz_fits_slong_p(x.get_mpz_t())) return std::nullopt;
  return static_cast<std::int64_t>(x.get_si());
}

inline Integer parse_integer(const std::string& s) {
  Integer r;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || r.set_str(t, 10) != 0) throw DomainError("not an integer: '" + s + "'");
  return r;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Flips the sign so the first nonzero coordinate is positive.
inline Vector sign_normalized(Vector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

}  // namespace reflekt
