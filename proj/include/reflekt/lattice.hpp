#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "reflekt/integer.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt {

/// An integral lattice Z^r with a nondegenerate symmetric bilinear form,
/// stored as its Gram matrix. Immutable once constructed.
class Lattice {
 public:
  /// Throws DomainError unless `gram` is square, symmetric and nondegenerate.
  explicit Lattice(IntMatrix gram);

  static Lattice diagonal(const Vector& entries);
  static Lattice hyperbolic_plane();
  /// Orthogonal direct sum.
  static Lattice direct_sum(const std::vector<Lattice>& parts);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const Integer& det() const { return det_; }

  Integer pair(const Vector& u, const Vector& v) const;
  Integer norm(const Vector& v) const { return pair(v, v); }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  Integer det_;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// d(L) = L*/L as invariant factors > 1, each dividing the next.
struct DiscriminantData {
  Vector invariant_factors;
  Integer exponent = 1;
  Integer order = 1;
};

/// Sublattice spanned by the rows of `basis`, given in ambient coordinates.
struct Sublattice {
  Lattice ambient;
  IntMatrix basis;

  Sublattice(Lattice ambient_lattice, IntMatrix rows);
  std::size_t rank() const { return basis.rows(); }
};

/// u^T G v.
Integer evaluate(const Lattice& lattice, const Vector& u, const Vector& v);

/// Counts of positive and negative squares, by exact congruence diagonalization
/// over the rationals. Works on any symmetric matrix; `zero` counts the kernel.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};
Inertia inertia(const IntMatrix& symmetric);
Signature signature(const Lattice& lattice);

DiscriminantData discriminant(const Lattice& lattice);

/// Same module with every pairing multiplied by k (k != 0).
Lattice rescale(const Lattice& lattice, const Integer& k);

/// True iff the Gram entries have gcd 1.
bool is_unscaled(const Lattice& lattice);

/// B G B^T; may be degenerate.
IntMatrix gram_of(const Sublattice& sub);
/// gram_of as a Lattice; throws when the restriction is degenerate.
Lattice restrict_to(const Sublattice& sub);

/// Primitive closure: the rational span of `sub` intersected with the ambient lattice.
Sublattice saturate(const Sublattice& sub);

/// Coordinates of each row of `vectors` in the basis of `sub`, if all are in the
/// rational span. Integral coordinates mean membership.
std::optional<std::vector<std::vector<Rational>>> coordinates_in(const Sublattice& sub,
                                                                 const IntMatrix& vectors);
bool contains(const Sublattice& sub, const Vector& v);

/// Group index [outer : inner]; both must have the same rational span and
/// inner must be contained in outer.
Integer index(const Sublattice& inner, const Sublattice& outer);

/// {v : (v, s) = 0 for all s in sub}, as a primitive sublattice.
Sublattice orthogonal_complement(const Sublattice& sub);

/// Positive generator of the ideal {(v, u) : u in L}.
Integer divisibility(const Lattice& lattice, const Vector& v);

/// Primitive v with q(v) = n and |v_i| <= box, one per +/- pair (first nonzero
/// coordinate positive), in lexicographic order. Complete inside the box only.
std::vector<Vector> enumerate_norm_vectors(const Lattice& lattice, const Integer& n,
                                           std::size_t box);

bool is_primitive(const Vector& v);

}  // namespace reflekt
