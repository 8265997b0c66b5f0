#pragma once

#include <initializer_list>
#include <vector>

#include "oracles.hpp"
#include "reflekt/lattice.hpp"

namespace testing {

inline reflekt::Vector vec(std::initializer_list<long> xs) {
  reflekt::Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline reflekt::Lattice diag(std::initializer_list<long> xs) { return reflekt::Lattice::diagonal(vec(xs)); }

inline reflekt::Lattice hyperbolic(std::size_t copies) {
  std::vector<reflekt::Lattice> parts(copies, reflekt::Lattice::hyperbolic_plane());
  return reflekt::Lattice::direct_sum(parts);
}

inline reflekt::Lattice from_gram(const oracle::Gram& g) {
  reflekt::IntMatrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = static_cast<long>(g[i][j]);
  return reflekt::Lattice(m);
}

inline oracle::Gram to_gram(const reflekt::Lattice& l) {
  oracle::Gram g(l.rank(), std::vector<oracle::i64>(l.rank()));
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) g[i][j] = l.gram()(i, j).get_si();
  return g;
}

inline std::vector<oracle::i64> to_i64(const reflekt::Vector& v) {
  std::vector<oracle::i64> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

// Test lattices of rank 2 to 4 used by the reflection and discriminant suites.
inline std::vector<oracle::Gram> battery() {
  return {
      {{1, 0}, {0, -8}},
      {{1, 0}, {0, -7}},
      {{0, 1}, {1, 0}},
      {{2, 0}, {0, -2}},
      {{3, 1}, {1, -11}},
      {{2, 1}, {1, -4}},
      {{1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
      {{2, 1, 0}, {1, -2, 1}, {0, 1, -4}},
      {{0, 1, 0}, {1, 0, 0}, {0, 0, -6}},
      {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -2, 1}, {0, 0, 1, -2}},
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}},
      {{2, 0, 0, 0}, {0, -2, 1, 0}, {0, 1, -2, 1}, {0, 0, 1, -4}},
  };
}

}  // namespace testing
