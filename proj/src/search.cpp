#include "reflekt/search.hpp"

#include <numeric>
#include <type_traits>
#include <vector>

namespace reflekt {

Vector to_vector(std::span<const std::int64_t> x) {
  Vector v;
  v.reserve(x.size());
  for (auto c : x) v.emplace_back(static_cast<long>(c));
  return v;
}

namespace {

using i128 = __int128;

Integer from_i128(i128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

bool first_nonzero_positive(std::span<const std::int64_t> x) {
  for (auto c : x)
    if (c != 0) return c > 0;
  return false;
}

bool primitive(std::span<const std::int64_t> x) {
  std::int64_t g = 0;
  for (auto c : x) {
    g = std::gcd(g, c);
    if (g == 1) return true;
  }
  return g == 1;
}

bool on_shell(std::span<const std::int64_t> x, std::int64_t box) {
  for (auto c : x)
    if (c == box || c == -box) return true;
  return false;
}

// Norm representation: either a 128-bit fast path or GMP integers.
template <class Acc>
struct Kernel {
  std::size_t r;
  std::vector<Acc> g;  // row-major Gram

  Acc norm(const std::vector<Acc>& y, std::span<const std::int64_t> x) const {
    Acc s = 0;
    for (std::size_t i = 0; i < r; ++i) s += Acc(x[i]) * y[i];
    return s;
  }
  // y += delta * column i of G
  void shift(std::vector<Acc>& y, std::size_t i, std::int64_t delta) const {
    for (std::size_t j = 0; j < r; ++j) y[j] += g[j * r + i] * Acc(delta);
  }
};

Integer as_integer(const i128& x) { return from_i128(x); }
const Integer& as_integer(const Integer& x) { return x; }

template <class Acc>
bool run(const Kernel<Acc>& k, std::int64_t box, const NormFilter& filter, const BoxVisitor& visit,
         bool shell_only) {
  const std::size_t r = k.r;
  if (r == 0) return true;
  std::vector<std::int64_t> x(r, -box);
  std::vector<Acc> y(r, Acc(0));
  for (std::size_t i = 0; i < r; ++i) k.shift(y, i, -box);

  Acc target = 0;
  if constexpr (std::is_same_v<Acc, i128>) {
    if (filter.kind == NormFilter::Kind::Equal) {
      // Values outside 127-bit range cannot be attained under the fast-path bounds.
      if (mpz_sizeinbase(filter.value.get_mpz_t(), 2) > 120) return true;
      const auto mag = abs_of(filter.value);
      i128 t = 0;
      mpz_class hi = mag >> 64;
      mpz_class lo = mag - (hi << 64);
      t = (static_cast<i128>(hi.get_ui()) << 64) + static_cast<i128>(lo.get_ui());
      target = filter.value < 0 ? -t : t;
    }
  } else {
    target = filter.value;
  }

  for (;;) {
    if (first_nonzero_positive(x) && (!shell_only || on_shell(x, box))) {
      const Acc q = k.norm(y, x);
      bool pass = true;
      switch (filter.kind) {
        case NormFilter::Kind::Equal: pass = (q == target); break;
        case NormFilter::Kind::Negative: pass = (q < 0); break;
        case NormFilter::Kind::Any: break;
      }
      if (pass && primitive(x) && !visit(std::span<const std::int64_t>(x), as_integer(q)))
        return false;
    }
    // Odometer step on the last coordinate.
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (x[i] < box) {
        ++x[i];
        k.shift(y, i, 1);
        break;
      }
      k.shift(y, i, -2 * box);
      x[i] = -box;
      if (i == 0) return true;
    }
  }
}

}  // namespace

bool box_search(const IntMatrix& gram, std::size_t box, const NormFilter& filter,
                const BoxVisitor& visit, bool shell_only) {
  if (!gram.square()) throw DomainError("box_search: Gram matrix must be square");
  if (box == 0) return true;
  const std::size_t r = gram.rows();
  bool fits = box <= (std::size_t{1} << 20) && r <= 64;
  for (std::size_t i = 0; fits && i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!mpz_fits_slong_p(gram(i, j).get_mpz_t())) {
        fits = false;
        break;
      }
  const auto b = static_cast<std::int64_t>(box);
  if (fits) {
    Kernel<i128> k{r, std::vector<i128>(r * r)};
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) k.g[i * r + j] = gram(i, j).get_si();
    return run(k, b, filter, visit, shell_only);
  }
  Kernel<Integer> k{r, std::vector<Integer>(r * r)};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) k.g[i * r + j] = gram(i, j);
  return run(k, b, filter, visit, shell_only);
}

}  // namespace reflekt
