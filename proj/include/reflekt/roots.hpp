#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/binary.hpp"
#include "reflekt/integer.hpp"
#include "reflekt/lattice.hpp"

namespace reflekt::roots {

/// q(v) divides 2 (u, v) for every u. Throws for isotropic or imprimitive v.
bool is_root(const Lattice& lattice, const Vector& v);

/// s_v(u) = u - 2 (u, v) / (v, v) v. Throws unless v is a root.
Vector reflect(const Lattice& lattice, const Vector& v, const Vector& u);

/// Negative divisors of 2 e(L), ordered -1, -2, ...
std::vector<Integer> root_norm_candidates(const Lattice& lattice);

/// Negative-norm roots with |v_i| <= box, one per +/- pair, ordered by norm
/// (closest to zero first) then by the canonical vector order.
std::vector<Vector> find_roots_in_box(const Lattice& lattice, std::size_t box);

enum class Reflectivity { Reflective, NonReflective, Unknown };
std::string to_string(Reflectivity r);

struct ReflectivityVerdict {
  Reflectivity status = Reflectivity::Unknown;
  std::string reason;
  /// Roots known to exist (complete list for rank 2, box-bounded otherwise).
  std::vector<Vector> roots;
  /// Candidate norms that were decided (rank 2).
  std::vector<Integer> exhausted_candidates;
  /// Isometry of infinite order (NonReflective rank 2 only).
  std::optional<IntMatrix> pell_unit;
  std::size_t search_box = 0;
};

/// Rank 1 and definite lattices: Reflective (finite orthogonal group).
/// Indefinite rank 2: decided exactly. Isotropic is Reflective; anisotropic is
/// NonReflective iff it has no roots, certified by a Pell unit.
/// Indefinite rank >= 3: Unknown, with the roots found within `budget` as evidence.
ReflectivityVerdict reflectivity_indicator(const Lattice& lattice, std::size_t budget);

}  // namespace reflekt::roots
