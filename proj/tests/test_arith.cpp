#include "doctest.h"

#include "helpers.hpp"
#include "reflekt/arith.hpp"

using namespace reflekt;
using namespace reflekt::arith;

TEST_CASE("gcd_ext") {
  CHECK(gcd_ext(0, 0) == GcdExt{0, 0, 0});
  CHECK(gcd_ext(12, 8) == GcdExt{4, 1, -1});
  CHECK(gcd_ext(7, 0) == GcdExt{7, 1, 0});
  for (long a = -30; a <= 30; ++a)
    for (long b = -30; b <= 30; ++b) {
      const auto r = gcd_ext(a, b);
      CHECK(r.g >= 0);
      CHECK(r.g == gcd_of(Integer(a), Integer(b)));
      CHECK(a * r.x + b * r.y == r.g);
    }
}

TEST_CASE("jacobi examples") {
  CHECK(jacobi(-1, 7) == -1);
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(0, 3) == 0);
  CHECK(jacobi(5, 1) == 1);
  CHECK_THROWS_AS(jacobi(3, 8), DomainError);
  CHECK_THROWS_AS(jacobi(3, -7), DomainError);
  CHECK_THROWS_AS(jacobi(3, 0), DomainError);
}

TEST_CASE("jacobi matches residue enumeration and is multiplicative") {
  for (long p = 3; p <= 200; p += 2) {
    if (!oracle::is_prime(p)) continue;
    for (long a = -p; a <= 2 * p; ++a) {
      const int j = jacobi(a, p);
      REQUIRE(j == oracle::legendre(a, p));
      CHECK((j == 1) == oracle::is_nonzero_square_mod(a, p));
    }
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; b += 3) CHECK(jacobi(a, p) * jacobi(b, p) == jacobi(a * b, p));
  }
  for (long n = 1; n <= 301; n += 2)
    for (long a = -20; a <= 20; ++a) CHECK(jacobi(a, n) == oracle::jacobi(a, n));
}

TEST_CASE("is_prime") {
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(23));
  CHECK_FALSE(is_prime(161));
  for (long n = 1; n < 5000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(Integer("18446744073709551557")));          // largest prime below 2^64
  CHECK_FALSE(is_prime(Integer("3825123056546413051")));     // strong pseudoprime to bases 2..23
  CHECK_FALSE(is_prime(Integer("18446744073709551615")));
  CHECK_THROWS_AS(is_prime(Integer("18446744073709551616")), DomainError);
}

TEST_CASE("crt") {
  CHECK(crt({Congruence(7, 8), Congruence(2, 3)}) == Congruence(23, 24));
  CHECK(crt({Congruence(0, 1)}) == Congruence(0, 1));
  CHECK(crt({Congruence(1, 2), Congruence(1, 3)}) == Congruence(1, 6));
  CHECK(crt({}) == Congruence(0, 1));
  CHECK_THROWS_AS(crt({Congruence(1, 4), Congruence(3, 6)}), DomainError);
  CHECK(Congruence(-1, 8).residue() == 7);
  CHECK_THROWS_AS(Congruence(1, 0), DomainError);

  const std::vector<Congruence> cs{Congruence(3, 7), Congruence(10, 11), Congruence(5, 9), Congruence(1, 4)};
  const auto r = crt(cs);
  CHECK(r.modulus() == 7 * 11 * 9 * 4);
  for (const auto& c : cs) CHECK(c.satisfied_by(r.residue()));
}

TEST_CASE("find_prime") {
  PrimeSearchSpec spec;
  spec.congruences = {Congruence(7, 8)};
  CHECK(find_prime(spec) == 7);
  spec.exclude = {7};
  CHECK(find_prime(spec) == 23);
  CHECK(find_prime(spec) == find_prime(spec));
  spec.exclude = {};
  spec.congruences.emplace_back(2, 3);
  CHECK(find_prime(spec) == 23);
  spec.minimum = 24;
  CHECK(find_prime(spec) == 47);

  PrimeSearchSpec blocked;
  blocked.congruences = {Congruence(2, 4)};
  CHECK_THROWS_AS(find_prime(blocked), DomainError);

  PrimeSearchSpec tight;
  tight.congruences = {Congruence(1, 1000003)};
  CHECK_THROWS_AS(find_prime(tight, 1), EffortLimitExceeded);
}

TEST_CASE("nonresidue_prime") {
  CHECK(nonresidue_prime(1) == 7);
  CHECK(nonresidue_prime(2, {7}) == 23);
  CHECK(nonresidue_prime(3) == 23);
  CHECK_THROWS_AS(nonresidue_prime(0), DomainError);
  for (long k = 1; k <= 60; ++k) {
    const Integer p = nonresidue_prime(k, {}, 2);
    const long pl = p.get_si();
    CHECK(pl % 8 == 7);
    CHECK(k % pl != 0);
    CHECK(oracle::is_prime(pl));
    CHECK_FALSE(oracle::is_nonzero_square_mod(-k, pl));
    CHECK(oracle::mod(-k, pl) != 0);
  }
}

TEST_CASE("factor and divisors") {
  const auto f = factor(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Integer, unsigned>{2, 3});
  CHECK(f[2] == std::pair<Integer, unsigned>{5, 1});
  CHECK(divisors(-12) == testing::vec({1, 2, 3, 4, 6, 12}));
  CHECK(small_odd_prime_factors(2 * 3 * 3 * 49 * 1009, 100) == testing::vec({3, 7, 1009}));
  CHECK(small_odd_prime_factors(3 * 1009 * 1013, 100) == testing::vec({3}));
}
