#include <random>

#include "doctest.h"

#include "helpers.hpp"
#include "reflekt/lattice.hpp"
#include "reflekt/search.hpp"

using namespace reflekt;
using testing::diag;
using testing::hyperbolic;
using testing::vec;

namespace {

IntMatrix rows(std::initializer_list<std::initializer_list<long>> r) { return IntMatrix(r); }

// e_i, f_i coordinates in U^k: e_i = 2i, f_i = 2i + 1 (0-based).
Vector ef(std::size_t rank, std::initializer_list<std::pair<std::size_t, long>> terms) {
  Vector v(rank, 0);
  for (auto [i, c] : terms) v[i] += c;
  return v;
}

}  // namespace

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(Lattice(rows({{1, 2}, {3, 4}})), DomainError);
  CHECK_THROWS_AS(Lattice(rows({{1, 1}, {1, 1}})), DomainError);
  CHECK_THROWS_AS(Lattice(IntMatrix(2, 3)), DomainError);
  CHECK(Lattice(rows({{0, 1}, {1, 0}})).det() == -1);
}

TEST_CASE("evaluate") {
  const auto l = diag({1, -8});
  CHECK(evaluate(l, vec({2, 1}), vec({2, 1})) == -4);
  CHECK(evaluate(l, vec({0, 0}), vec({5, 7})) == 0);
  CHECK(evaluate(Lattice::hyperbolic_plane(), vec({1, 0}), vec({0, 1})) == 1);
  CHECK_THROWS_AS(evaluate(l, vec({1}), vec({1, 0})), DomainError);
}

TEST_CASE("signature") {
  CHECK(signature(diag({1, -8})) == Signature{1, 1});
  CHECK(signature(hyperbolic(3)) == Signature{3, 3});
  CHECK(signature(diag({5})) == Signature{1, 0});
  CHECK(signature(Lattice(rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}))) == Signature{2, 1});
}

TEST_CASE("signature agrees with Descartes count on random symmetric matrices") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> size(1, 6);
  int tested = 0;
  while (tested < 300) {
    const int n = size(rng);
    oracle::Gram g(n, std::vector<oracle::i64>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g[i][j] = g[j][i] = entry(rng);
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = static_cast<long>(g[i][j]);
    if (determinant(m) == 0) continue;
    const auto expect = oracle::signature(g);
    const auto got = signature(Lattice(m));
    CHECK(got.positive == static_cast<std::size_t>(expect.positive));
    CHECK(got.negative == static_cast<std::size_t>(expect.negative));
    ++tested;
  }
}

TEST_CASE("discriminant") {
  auto d = discriminant(Lattice::hyperbolic_plane());
  CHECK(d.invariant_factors.empty());
  CHECK(d.exponent == 1);
  d = discriminant(diag({1, -8}));
  CHECK(d.invariant_factors == vec({8}));
  CHECK(d.exponent == 8);
  d = discriminant(diag({2, -2}));
  CHECK(d.invariant_factors == vec({2, 2}));
  CHECK(d.exponent == 2);
  d = discriminant(diag({4, 6, -10}));
  CHECK(d.invariant_factors == vec({2, 2, 60}));
  CHECK(d.order == 240);
}

TEST_CASE("rescale and is_unscaled") {
  CHECK(rescale(Lattice::hyperbolic_plane(), 2).gram() == rows({{0, 2}, {2, 0}}));
  CHECK(rescale(diag({1, -10}), 3).gram() == rows({{3, 0}, {0, -30}}));
  CHECK(rescale(diag({1, -8}), 1) == diag({1, -8}));
  CHECK_THROWS_AS(rescale(diag({1, -8}), 0), DomainError);
  CHECK(is_unscaled(diag({1, -8})));
  CHECK_FALSE(is_unscaled(diag({2, -4})));
  CHECK_FALSE(is_unscaled(rescale(Lattice::hyperbolic_plane(), 3)));
}

TEST_CASE("gram_of") {
  const auto u3 = hyperbolic(3);
  const Sublattice s(u3, IntMatrix::from_rows({ef(6, {{2, 1}, {3, -4}}), ef(6, {{0, 1}, {1, 1}})}));
  CHECK(gram_of(s) == rows({{-8, 0}, {0, 2}}));
  CHECK(gram_of(Sublattice(u3, IntMatrix::identity(6))) == u3.gram());
  CHECK(gram_of(Sublattice(diag({1, -8}), IntMatrix::from_rows({vec({2, 1})}))) == rows({{-4}}));
  CHECK_THROWS_AS(Sublattice(u3, IntMatrix::from_rows({vec({1, 0, 0, 0, 0, 0}), vec({2, 0, 0, 0, 0, 0})})),
                  DomainError);
}

TEST_CASE("saturate") {
  const auto z2 = diag({1, 1});
  auto s = saturate(Sublattice(z2, IntMatrix::from_rows({vec({2, 0})})));
  CHECK(s.basis == rows({{1, 0}}));
  s = saturate(Sublattice(Lattice::hyperbolic_plane(), IntMatrix::from_rows({vec({2, 2})})));
  CHECK(s.basis == rows({{1, 1}}));
  const Sublattice prim(hyperbolic(2), IntMatrix::from_rows({vec({1, 0, 0, 0}), vec({0, 0, 1, 1})}));
  CHECK(index(prim, saturate(prim)) == 1);
}

TEST_CASE("saturate is idempotent and contains the input") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6);
  const auto l = hyperbolic(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + t % 3;
    IntMatrix b(k, 4);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < 4; ++j) b(i, j) = entry(rng);
    if (rank_of(b) < k) continue;
    const Sublattice sub(l, b);
    const auto sat = saturate(sub);
    CHECK(sat.rank() == k);
    const auto twice = saturate(sat);
    CHECK(index(sat, twice) == 1);
    const Integer idx = index(sub, sat);
    CHECK(idx >= 1);
    // Every invariant factor of a primitive basis is 1.
    for (const auto& x : smith_normal_form(sat.basis).diagonal) CHECK(x == 1);
    // [sat : sub] is the product of the invariant factors of the original basis.
    Integer prod = 1;
    for (const auto& x : smith_normal_form(b).diagonal) prod *= x;
    CHECK(idx == prod);
  }
}

TEST_CASE("index") {
  const auto u3 = hyperbolic(3);
  const Vector h = ef(6, {{0, 1}, {1, 1}});
  const auto comp = orthogonal_complement(Sublattice(u3, IntMatrix::from_rows({h})));
  auto rows_plus = comp.basis.row_list();
  rows_plus.push_back(h);
  CHECK(index(Sublattice(u3, IntMatrix::from_rows(rows_plus)), Sublattice(u3, IntMatrix::identity(6))) == 2);
  const auto z2 = diag({1, 1});
  CHECK(index(Sublattice(z2, rows({{2, 0}, {0, 1}})), Sublattice(z2, IntMatrix::identity(2))) == 2);
  CHECK(index(Sublattice(z2, rows({{1, 1}})), Sublattice(z2, rows({{1, 1}}))) == 1);
  CHECK_THROWS_AS(index(Sublattice(z2, rows({{1, 0}})), Sublattice(z2, rows({{0, 1}}))), DomainError);
  CHECK_THROWS_AS(index(Sublattice(z2, IntMatrix::identity(2)), Sublattice(z2, rows({{2, 0}, {0, 1}}))), DomainError);
}

TEST_CASE("orthogonal_complement") {
  const auto u3 = hyperbolic(3);
  const Sublattice h(u3, IntMatrix::from_rows({ef(6, {{0, 1}, {1, 1}})}));
  const auto c = orthogonal_complement(h);
  CHECK(c.rank() == 5);
  for (const auto& v : {ef(6, {{0, 1}, {1, -1}}), ef(6, {{2, 1}}), ef(6, {{3, 1}}), ef(6, {{4, 1}}), ef(6, {{5, 1}})})
    CHECK(contains(c, v));
  CHECK(orthogonal_complement(Sublattice(diag({1, -8}), rows({{1, 0}}))).basis == rows({{0, 1}}));
  CHECK_THROWS_AS(orthogonal_complement(Sublattice(Lattice::hyperbolic_plane(), rows({{1, 0}}))), DomainError);
}

TEST_CASE("complement pairs to zero and double complement contains the saturation") {
  for (const auto& g : testing::battery()) {
    const auto l = testing::from_gram(g);
    if (l.rank() < 3) continue;
    std::mt19937 rng(l.rank());
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int t = 0; t < 40; ++t) {
      IntMatrix b(1, l.rank());
      for (std::size_t j = 0; j < l.rank(); ++j) b(0, j) = entry(rng);
      if (rank_of(b) == 0) continue;
      const Sublattice s(l, b);
      if (gram_of(s)(0, 0) == 0) continue;
      const auto c = orthogonal_complement(s);
      CHECK(c.rank() == l.rank() - 1);
      for (const auto& x : c.basis.row_list()) CHECK(l.pair(x, b.row(0)) == 0);
      for (const auto& x : smith_normal_form(c.basis).diagonal) CHECK(x == 1);
      const auto cc = orthogonal_complement(c);
      for (const auto& x : saturate(s).basis.row_list()) CHECK(contains(cc, x));
    }
  }
}

TEST_CASE("divisibility") {
  CHECK(divisibility(Lattice::hyperbolic_plane(), vec({1, 0})) == 1);
  CHECK(divisibility(rescale(Lattice::hyperbolic_plane(), 2), vec({1, 0})) == 2);
  CHECK(divisibility(diag({1, -8}), vec({0, 1})) == 8);
  CHECK_THROWS_AS(divisibility(diag({1, -8}), vec({0, 0})), DomainError);
  for (const auto& g : testing::battery()) {
    const auto l = testing::from_gram(g);
    oracle::for_box(l.rank(), 2, [&](const std::vector<oracle::i64>& x) {
      Vector v;
      for (auto c : x) v.emplace_back(static_cast<long>(c));
      if (is_zero(v)) return;
      CHECK(divides(divisibility(l, v), l.norm(v)));
    });
  }
}

TEST_CASE("enumerate_norm_vectors") {
  CHECK(enumerate_norm_vectors(Lattice::hyperbolic_plane(), 0, 2) == std::vector<Vector>{vec({0, 1}), vec({1, 0})});
  CHECK(enumerate_norm_vectors(diag({1, -8}), -4, 3) == std::vector<Vector>{vec({2, -1}), vec({2, 1})});
  CHECK(enumerate_norm_vectors(diag({1, -8}), -3, 10).empty());
}

TEST_CASE("enumerate_norm_vectors agrees with a naive double loop") {
  const std::vector<oracle::Gram> forms{{{1, 0}, {0, -8}}, {{2, 1}, {1, -4}}, {{0, 1}, {1, 0}}, {{3, 1}, {1, -11}}, {{1, 0}, {0, 3}}};
  for (const auto& g : forms) {
    const auto l = testing::from_gram(g);
    for (long n = -20; n <= 20; ++n) {
      std::vector<Vector> expect;
      for (long x = -7; x <= 7; ++x)
        for (long y = -7; y <= 7; ++y) {
          const std::vector<oracle::i64> v{x, y};
          if (oracle::sign_normal(v) && oracle::primitive(v) && oracle::pair(g, v, v) == n) expect.push_back(vec({x, y}));
        }
      CHECK(enumerate_norm_vectors(l, n, 7) == expect);
    }
  }
}

TEST_CASE("box search shell mode and large entries") {
  const auto l = diag({1, -8});
  std::size_t total = 0, shells = 0;
  box_search(l.gram(), 3, NormFilter{}, [&](auto, const Integer&) { return ++total, true; });
  for (std::size_t s = 1; s <= 3; ++s)
    box_search(l.gram(), s, NormFilter{}, [&](auto, const Integer&) { return ++shells, true; }, true);
  CHECK(total == shells);

  // Gram entries beyond 64 bits take the GMP path.
  IntMatrix big(2, 2);
  big(0, 0) = Integer("100000000000000000000");
  big(1, 1) = -1;
  std::vector<Vector> found;
  box_search(big, 2, NormFilter::equal(Integer("99999999999999999999")), [&](auto x, const Integer&) {
    found.push_back(to_vector(x));
    return true;
  });
  CHECK(found == std::vector<Vector>{vec({1, -1}), vec({1, 1})});
}
