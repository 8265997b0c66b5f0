#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reflekt/arith.hpp"
#include "reflekt/binary.hpp"
#include "reflekt/integer.hpp"
#include "reflekt/lattice.hpp"

namespace reflekt::construct {

/// numerator / denominator, denominator > 0 and gcd(content(numerator), denominator) = 1.
struct ScaledVector {
  Vector numerator;
  Integer denominator = 1;

  static ScaledVector make(Vector num, Integer den);
  bool integral() const { return denominator == 1; }
  friend bool operator==(const ScaledVector&, const ScaledVector&) = default;
};

/// One named verification step; `detail` explains a failure.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};
using Report = std::vector<Check>;
bool all_passed(const Report& report);

// ---------------------------------------------------------------------------
// Binary lattices x^2 - a b y^2 avoiding 0, -1, ..., -n.

struct AvoidRootsCertificate {
  Integer n;
  Integer b;
  std::vector<std::pair<Integer, Integer>> primes;  // (k, p_k), k = 1..n
  Integer a;                                        // product of the p_k
  binary::BinaryForm form;                          // (1, 0, -a b)
};

/// For each k = 1..n the smallest prime p_k = 7 (mod 8) above b, distinct from
/// the earlier ones, with -k a nonresidue mod p_k; a is their product.
AvoidRootsCertificate avoid_roots(const Integer& n, const Integer& b,
                                  std::uint64_t effort_limit = arith::kDefaultEffortLimit);
/// Same, with every prime additionally above `prime_floor`.
AvoidRootsCertificate avoid_roots_above(const Integer& n, const Integer& b, const Integer& prime_floor,
                                        std::uint64_t effort_limit = arith::kDefaultEffortLimit);
Report validate(const AvoidRootsCertificate& cert);

// ---------------------------------------------------------------------------
// The family x^2 - (a^2 - 1) y^2 with largest negative value 2 - 2a.

struct PellFamilyCertificate {
  Integer a;
  Integer d;    // a^2 - 1
  Integer mu;   // computed, equals 2 - 2a
  Vector witness;  // (a - 1, 1)
};

/// Throws std::logic_error if the computed mu disagrees with 2 - 2a.
PellFamilyCertificate pell_family(const Integer& a);
/// Smallest integer a >= 2 with a > 1 + n/2.
Integer select_pell_a(const Integer& n);
Report validate(const PellFamilyCertificate& cert);

// ---------------------------------------------------------------------------
// Primitive binary sublattices M_j containing h with mu(M_j) < -d N.

enum class Strategy { Pell, AvoidRoots };
std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

struct MjEntry {
  Integer a;
  ScaledVector u;          // u_a = e~ - d a f~, ambient coordinates
  Integer multiplier;      // m_j, smallest with m_j u_a in h^perp
  Vector v;                // m_j u_a
  Integer v_norm;
  IntMatrix basis;         // primitive closure of span(v, h)
  IntMatrix gram;
  Integer mu;
  Integer saturation_index;  // [M_j : Z v + Z h]
};

struct MjCertificate {
  Lattice ambient;
  Vector h;
  Integer d;
  Integer mbm_bound;  // N
  Strategy strategy = Strategy::Pell;
  Vector e{};           // primitive isotropic vector of h^perp
  Integer m{};          // (e, h^perp) = m Z
  ScaledVector e_tilde{}; // e / m
  ScaledVector f_tilde{}; // isotropic, (e~, f~) = 1, in h^perp + Z e~
  Integer t_index{};    // [ambient : h^perp + Z h]
  Integer threshold{};  // N T^2
  std::size_t search_box = 10;
  std::vector<MjEntry> entries{};
};

struct MjOptions {
  Strategy strategy = Strategy::Pell;
  std::size_t search_box = 10;
  std::uint64_t effort_limit = arith::kDefaultEffortLimit;
};

MjCertificate mj_family(const Lattice& ambient, const Vector& h, const Integer& mbm_bound, std::size_t count,
                        const MjOptions& options = {});
Report validate(const MjCertificate& cert);

// ---------------------------------------------------------------------------
// Orthogonal complements of norm-d vectors and rescaled families.

struct Fingerprint {
  std::size_t rank = 0;
  Integer det;
  Vector invariant_factors;
  Signature signature;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const Lattice& lattice);

struct NvEntry {
  Vector h;
  IntMatrix complement_basis;
  IntMatrix gram;
  Fingerprint fingerprint;
  std::size_t group = 0;  // index of the first entry with the same fingerprint
};

std::vector<NvEntry> nv_complements(const Lattice& lattice, const Integer& d, std::size_t box);

/// [L(1), ..., L(N)].
std::vector<Lattice> rescaling_family(const Lattice& lattice, std::size_t n);

}  // namespace reflekt::construct
