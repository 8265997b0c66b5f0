#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "reflekt/integer.hpp"

namespace reflekt::arith {

/// Default cap on the number of progression members inspected by a prime search.
inline constexpr std::uint64_t kDefaultEffortLimit = 1'000'000;

struct GcdExt {
  Integer g;
  Integer x;
  Integer y;
  friend bool operator==(const GcdExt&, const GcdExt&) = default;
};

/// g = gcd(a, b) = a*x + b*y with g >= 0.
GcdExt gcd_ext(const Integer& a, const Integer& b);

/// Jacobi symbol (a/n) for odd n >= 1, by quadratic reciprocity.
int jacobi(const Integer& a, const Integer& n);

/// Deterministic Miller-Rabin. Exact for every n < 2^64; larger inputs throw.
bool is_prime(const Integer& n);
bool is_prime_u64(std::uint64_t n);

/// x = residue (mod modulus), normalized to 0 <= residue < modulus.
class Congruence {
 public:
  Congruence(Integer residue, Integer modulus);
  const Integer& residue() const { return residue_; }
  const Integer& modulus() const { return modulus_; }
  bool satisfied_by(const Integer& x) const { return mod_pos(x, modulus_) == residue_; }
  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  Integer residue_;
  Integer modulus_;
};

/// Chinese remaindering over pairwise coprime moduli. An empty list yields 0 mod 1.
Congruence crt(const std::vector<Congruence>& congruences);

struct PrimeSearchSpec {
  std::vector<Congruence> congruences;
  std::set<Integer> exclude;
  Integer minimum = 2;
};

/// Smallest prime p >= minimum, p not excluded, satisfying every congruence.
/// Throws EffortLimitExceeded after `effort_limit` progression members.
Integer find_prime(const PrimeSearchSpec& spec, std::uint64_t effort_limit = kDefaultEffortLimit);

/// Smallest prime p = 7 (mod 8), p >= minimum, p not excluded, for which -k is a
/// quadratic nonresidue. The residue class of p modulo every odd prime q | k is
/// restricted so that (q/p) = 1, and the result is confirmed by enumerating squares mod p.
Integer nonresidue_prime(const Integer& k, const std::set<Integer>& exclude = {},
                         const Integer& minimum = 2,
                         std::uint64_t effort_limit = kDefaultEffortLimit);

/// True iff some x in [0, p) has x^2 = a (mod p), a != 0 (mod p). Linear in p.
bool is_residue_by_enumeration(const Integer& a, const Integer& p);

/// Prime factorization by trial division: (prime, exponent) pairs in increasing order.
std::vector<std::pair<Integer, unsigned>> factor(const Integer& n);

/// Odd primes dividing n found by trial division up to `limit`, plus the
/// remaining cofactor when it is provably prime.
std::vector<Integer> small_odd_prime_factors(const Integer& n, std::uint64_t limit);

/// All positive divisors of |n|, n != 0, sorted.
std::vector<Integer> divisors(const Integer& n);

}  // namespace reflekt::arith
