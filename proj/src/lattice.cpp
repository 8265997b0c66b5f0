#include "reflekt/lattice.hpp"

#include <string>

#include "reflekt/search.hpp"

namespace reflekt {

Lattice::Lattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.square() || gram_.rows() == 0) throw DomainError("Gram matrix must be square and nonempty");
  if (!gram_.symmetric()) throw DomainError("Gram matrix is not symmetric");
  det_ = determinant(gram_);
  if (det_ == 0) throw DomainError("Gram matrix is degenerate (determinant 0)");
}

Lattice Lattice::diagonal(const Vector& entries) { return Lattice(IntMatrix::diagonal(entries)); }

Lattice Lattice::hyperbolic_plane() { return Lattice(IntMatrix{{0, 1}, {1, 0}}); }

Lattice Lattice::direct_sum(const std::vector<Lattice>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  IntMatrix g(n, n);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
    off += p.rank();
  }
  return Lattice(std::move(g));
}

Integer Lattice::pair(const Vector& u, const Vector& v) const {
  if (u.size() != rank() || v.size() != rank())
    throw DomainError("vector length does not match lattice rank " + std::to_string(rank()));
  return dot(u, gram_ * v);
}

Sublattice::Sublattice(Lattice ambient_lattice, IntMatrix rows)
    : ambient(std::move(ambient_lattice)), basis(std::move(rows)) {
  if (basis.rows() == 0) throw DomainError("sublattice needs at least one generator");
  if (basis.cols() != ambient.rank()) throw DomainError("sublattice generators have wrong length");
  if (rank_of(basis) != basis.rows()) throw DomainError("sublattice generators are linearly dependent");
}

Integer evaluate(const Lattice& lattice, const Vector& u, const Vector& v) { return lattice.pair(u, v); }

Inertia inertia(const IntMatrix& sym) {
  if (!sym.symmetric()) throw DomainError("inertia requires a symmetric matrix");
  const std::size_t n = sym.rows();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = sym(i, j);

  auto swap_index = [&](std::size_t a, std::size_t b) {
    std::swap(m[a], m[b]);
    for (auto& row : m) std::swap(row[a], row[b]);
  };
  // e_a <- e_a + e_b (congruence transform)
  auto add_index = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) m[a][j] += m[b][j];
    for (std::size_t i = 0; i < n; ++i) m[i][a] += m[i][b];
  };

  Inertia out;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && m[j][j] == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && m[k][j] == 0) ++j;
        if (j == n) {
          ++out.zero;
          continue;
        }
        add_index(k, j);  // new diagonal 2 m[k][j]
      }
    }
    const Rational p = m[k][k];
    (p > 0 ? out.positive : out.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / p;
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i) m[i][k] = m[k][i] = 0;
  }
  return out;
}

Signature signature(const Lattice& lattice) {
  const Inertia in = inertia(lattice.gram());
  return {in.positive, in.negative};
}

DiscriminantData discriminant(const Lattice& lattice) {
  const SmithForm snf = smith_normal_form(lattice.gram());
  DiscriminantData out;
  for (const auto& d : snf.diagonal) {
    out.order *= d;
    if (d > 1) out.invariant_factors.push_back(d);
  }
  if (!out.invariant_factors.empty()) out.exponent = out.invariant_factors.back();
  return out;
}

Lattice rescale(const Lattice& lattice, const Integer& k) {
  if (k == 0) throw DomainError("rescale: factor must be nonzero");
  return Lattice(k * lattice.gram());
}

bool is_unscaled(const Lattice& lattice) {
  Integer g = 0;
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    for (std::size_t j = 0; j < lattice.rank(); ++j) g = gcd_of(g, lattice.gram()(i, j));
  return g == 1;
}

IntMatrix gram_of(const Sublattice& sub) {
  return sub.basis * sub.ambient.gram() * sub.basis.transpose();
}

Lattice restrict_to(const Sublattice& sub) {
  IntMatrix g = gram_of(sub);
  if (determinant(g) == 0) throw DomainError("restricted form is degenerate");
  return Lattice(std::move(g));
}

Sublattice saturate(const Sublattice& sub) {
  const SmithForm snf = smith_normal_form(sub.basis);
  const std::size_t k = sub.basis.rows();
  if (snf.rank != k) throw DomainError("saturate: generators are linearly dependent");
  IntMatrix rows(k, sub.basis.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) rows(i, j) = snf.v_inverse(i, j);
  return {sub.ambient, std::move(rows)};
}

std::optional<std::vector<std::vector<Rational>>> coordinates_in(const Sublattice& sub,
                                                                 const IntMatrix& vectors) {
  return solve_left(sub.basis, vectors);
}

bool contains(const Sublattice& sub, const Vector& v) {
  const auto x = coordinates_in(sub, IntMatrix::from_rows({v}));
  if (!x) return false;
  for (const auto& c : x->front())
    if (c.get_den() != 1) return false;
  return true;
}

Integer index(const Sublattice& inner, const Sublattice& outer) {
  if (inner.rank() != outer.rank() || inner.basis.cols() != outer.basis.cols())
    throw DomainError("index: sublattices have different ranks");
  const auto x = coordinates_in(outer, inner.basis);
  if (!x) throw DomainError("index: rational spans differ");
  IntMatrix xi(inner.rank(), outer.rank());
  for (std::size_t i = 0; i < xi.rows(); ++i)
    for (std::size_t j = 0; j < xi.cols(); ++j) {
      const Rational& c = (*x)[i][j];
      if (c.get_den() != 1) throw DomainError("index: inner sublattice is not contained in outer");
      xi(i, j) = c.get_num();
    }
  Integer d = abs_of(determinant(xi));
  if (d == 0) throw DomainError("index: inner generators are dependent");
  return d;
}

Sublattice orthogonal_complement(const Sublattice& sub) {
  if (determinant(gram_of(sub)) == 0)
    throw DomainError("orthogonal_complement: restricted form is degenerate");
  const IntMatrix pairing = sub.basis * sub.ambient.gram();
  const SmithForm snf = smith_normal_form(pairing);
  const std::size_t r = sub.ambient.rank();
  if (snf.rank == r) throw DomainError("orthogonal_complement: complement is zero");
  IntMatrix rows(r - snf.rank, r);
  for (std::size_t i = snf.rank; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rows(i - snf.rank, j) = snf.v(j, i);
  return {sub.ambient, std::move(rows)};
}

Integer divisibility(const Lattice& lattice, const Vector& v) {
  if (v.size() != lattice.rank()) throw DomainError("divisibility: vector has wrong length");
  if (is_zero(v)) throw DomainError("divisibility: zero vector");
  return gcd_of(lattice.gram() * v);
}

bool is_primitive(const Vector& v) { return gcd_of(v) == 1; }

std::vector<Vector> enumerate_norm_vectors(const Lattice& lattice, const Integer& n, std::size_t box) {
  if (box == 0) throw DomainError("enumerate_norm_vectors: box must be positive");
  std::vector<Vector> out;
  box_search(lattice.gram(), box, NormFilter::equal(n), [&](std::span<const std::int64_t> x, const Integer&) {
    out.push_back(to_vector(x));
    return true;
  });
  return out;
}

}  // namespace reflekt
