#include "reflekt/arith.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace reflekt::arith {

GcdExt gcd_ext(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  if (old_r == 0) return {0, 0, 0};
  return {old_r, old_s, old_t};
}

int jacobi(const Integer& a_in, const Integer& n_in) {
  if (n_in < 1 || mpz_even_p(n_in.get_mpz_t()))
    throw DomainError("jacobi: modulus must be odd and positive, got " + to_string(n_in));
  Integer n = n_in;
  Integer a = mod_pos(a_in, n);
  int result = 1;
  while (a != 0) {
    while (mpz_even_p(a.get_mpz_t())) {
      a /= 2;
      const unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
    a = mod_pos(a, n);
  }
  return n == 1 ? result : 0;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all n < 3.3 * 10^24.
  for (u64 a : kBases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
    throw DomainError("is_prime: input " + to_string(n) + " exceeds the certified range 2^64");
  u64 v = 0;
  mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, n.get_mpz_t());
  return is_prime_u64(v);
}

Congruence::Congruence(Integer residue, Integer modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 1) throw DomainError("congruence modulus must be positive");
  residue_ = mod_pos(residue, modulus_);
}

Congruence crt(const std::vector<Congruence>& congruences) {
  Integer r = 0, m = 1;
  for (const auto& c : congruences) {
    const GcdExt e = gcd_ext(m, c.modulus());
    if (e.g != 1)
      throw DomainError("crt: moduli " + to_string(m) + " and " + to_string(c.modulus()) +
                        " are not coprime");
    // r + m * t = c.residue (mod c.modulus) with t = (c.residue - r) * m^{-1}.
    const Integer t = mod_pos((c.residue() - r) * e.x, c.modulus());
    r += m * t;
    m *= c.modulus();
    r = mod_pos(r, m);
  }
  return {r, m};
}

namespace {

Integer first_member_at_least(const Congruence& c, const Integer& lower) {
  if (lower <= c.residue()) return c.residue();
  const Integer steps = floor_div(lower - c.residue() + c.modulus() - 1, c.modulus());
  return c.residue() + steps * c.modulus();
}

}  // namespace

Integer find_prime(const PrimeSearchSpec& spec, std::uint64_t effort_limit) {
  const Congruence c = crt(spec.congruences);
  if (gcd_of(c.residue(), c.modulus()) != 1)
    throw DomainError("find_prime: progression " + to_string(c.residue()) + " mod " +
                      to_string(c.modulus()) + " has no residue coprime to its modulus");
  Integer p = first_member_at_least(c, std::max(spec.minimum, Integer(2)));
  for (std::uint64_t tried = 0; tried < effort_limit; ++tried, p += c.modulus()) {
    if (spec.exclude.contains(p)) continue;
    if (is_prime(p)) return p;
  }
  throw EffortLimitExceeded("find_prime: no prime among " + std::to_string(effort_limit) +
                            " members of " + to_string(c.residue()) + " mod " +
                            to_string(c.modulus()));
}

bool is_residue_by_enumeration(const Integer& a, const Integer& p) {
  if (p < 1) throw DomainError("modulus must be positive");
  const Integer target = mod_pos(a, p);
  if (target == 0) return false;
  for (Integer x = 1; x < p; ++x)
    if (mod_pos(x * x, p) == target) return true;
  return false;
}

Integer nonresidue_prime(const Integer& k, const std::set<Integer>& exclude, const Integer& minimum,
                         std::uint64_t effort_limit) {
  if (k < 1) throw DomainError("nonresidue_prime: k must be positive");

  // For p = -1 (mod 8): (-1/p) = -1 and (2/p) = 1, so (-k/p) = -prod (q/p)^e over odd q | k.
  // By reciprocity (q/p) = (-1)^((q-1)/2) (p/q); we require (q/p) = 1 for every q.
  struct Restriction {
    Integer q;
    int wanted;  // required value of (p/q)
  };
  std::vector<Restriction> restrictions;
  for (const auto& [q, e] : factor(k)) {
    if (q == 2) continue;
    restrictions.push_back({q, mpz_fdiv_ui(q.get_mpz_t(), 4) == 1 ? 1 : -1});
  }

  const Congruence progression(7, 8);
  Integer p = first_member_at_least(progression, std::max(minimum, Integer(2)));
  for (std::uint64_t tried = 0; tried < effort_limit; ++tried, p += 8) {
    if (exclude.contains(p) || divides(p, k)) continue;
    bool ok = true;
    for (const auto& r : restrictions)
      if (jacobi(p, r.q) != r.wanted) {
        ok = false;
        break;
      }
    if (!ok || !is_prime(p)) continue;
    if (jacobi(-k, p) != -1 || is_residue_by_enumeration(-k, p))
      throw std::logic_error("nonresidue_prime: recipe produced p = " + to_string(p) +
                             " with -k a residue");
    return p;
  }
  throw EffortLimitExceeded("nonresidue_prime: no prime found for k = " + to_string(k) +
                            " within " + std::to_string(effort_limit) + " candidates");
}

std::vector<std::pair<Integer, unsigned>> factor(const Integer& n_in) {
  if (n_in == 0) throw DomainError("factor: zero has no factorization");
  Integer n = abs_of(n_in);
  std::vector<std::pair<Integer, unsigned>> out;
  auto strip = [&](const Integer& p) {
    unsigned e = 0;
    while (divides(p, n)) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(2);
  for (Integer p = 3; p * p <= n; p += 2) strip(p);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Integer> small_odd_prime_factors(const Integer& n_in, std::uint64_t limit) {
  std::vector<Integer> out;
  if (n_in == 0) return out;
  Integer n = abs_of(n_in);
  while (mpz_even_p(n.get_mpz_t())) n /= 2;
  Integer p = 3;
  for (; p <= limit && p * p <= n; p += 2) {
    if (!divides(p, n)) continue;
    out.push_back(p);
    while (divides(p, n)) n /= p;
  }
  if (n > 1 && (p * p > n || (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && is_prime(n))))
    out.push_back(n);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out = {1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reflekt::arith
