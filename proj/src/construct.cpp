#include "reflekt/construct.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "reflekt/search.hpp"

namespace reflekt::construct {

using reflekt::to_string;

ScaledVector ScaledVector::make(Vector num, Integer den) {
  if (den == 0) throw DomainError("ScaledVector: zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& x : num) x = -x;
  }
  const Integer g = gcd_of(gcd_of(num), den);
  if (g > 1) {
    for (auto& x : num) x /= g;
    den /= g;
  }
  return {std::move(num), std::move(den)};
}

bool all_passed(const Report& report) {
  return std::all_of(report.begin(), report.end(), [](const Check& c) { return c.passed; });
}

namespace {

void add(Report& r, std::string name, bool ok, std::string detail = {}) {
  r.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
}

Integer rational_pair(const Lattice& l, const ScaledVector& x, const ScaledVector& y, bool& exact) {
  const Integer num = l.pair(x.numerator, y.numerator);
  const Integer den = x.denominator * y.denominator;
  exact = divides(den, num);
  return exact ? Integer(num / den) : Integer(0);
}

}  // namespace

// ---------------------------------------------------------------------------

AvoidRootsCertificate avoid_roots_above(const Integer& n, const Integer& b, const Integer& prime_floor,
                                        std::uint64_t effort_limit) {
  if (n < 1) throw DomainError("avoid_roots: n must be positive");
  if (b < 1) throw DomainError("avoid_roots: b must be positive");
  AvoidRootsCertificate cert;
  cert.n = n;
  cert.b = b;
  cert.a = 1;
  std::set<Integer> used;
  const Integer minimum = std::max(b, prime_floor) + 1;
  for (Integer k = 1; k <= n; ++k) {
    const Integer p = arith::nonresidue_prime(k, used, minimum, effort_limit);
    used.insert(p);
    cert.primes.emplace_back(k, p);
    cert.a *= p;
  }
  cert.form = binary::BinaryForm::diagonal(cert.a * b);
  const Report report = validate(cert);
  if (!all_passed(report))
    throw std::logic_error("avoid_roots: constructed certificate fails its own validation");
  return cert;
}

AvoidRootsCertificate avoid_roots(const Integer& n, const Integer& b, std::uint64_t effort_limit) {
  return avoid_roots_above(n, b, 0, effort_limit);
}

Report validate(const AvoidRootsCertificate& cert) {
  Report r;
  add(r, "n positive", cert.n >= 1);
  add(r, "b positive", cert.b >= 1);
  add(r, "one prime per k", Integer(static_cast<unsigned long>(cert.primes.size())) == cert.n,
      "expected " + to_string(cert.n) + " primes");
  std::set<Integer> seen;
  Integer product = 1;
  bool primes_ok = true, distinct = true, above_b = true, nonres = true, ks_ok = true;
  std::string bad;
  for (std::size_t i = 0; i < cert.primes.size(); ++i) {
    const auto& [k, p] = cert.primes[i];
    if (k != Integer(static_cast<unsigned long>(i + 1))) ks_ok = false;
    bool prime = false;
    try {
      prime = arith::is_prime(p);
    } catch (const DomainError&) {
    }
    if (!prime) {
      primes_ok = false;
      bad = to_string(p);
      continue;
    }
    if (!seen.insert(p).second) distinct = false;
    if (p <= cert.b) above_b = false;
    if (p == 2 || arith::jacobi(-k, p) != -1 || arith::is_residue_by_enumeration(-k, p)) nonres = false;
    product *= p;
  }
  add(r, "k runs over 1..n", ks_ok);
  add(r, "each p_k prime", primes_ok, "not prime: " + bad);
  add(r, "primes distinct", distinct);
  add(r, "primes exceed b", above_b);
  add(r, "-k nonresidue mod p_k", nonres);
  add(r, "a is the product of the primes", product == cert.a);
  add(r, "form is (1,0,-ab)", cert.form == binary::BinaryForm::diagonal(cert.a * cert.b));
  const bool aniso = cert.a * cert.b > 0 && !is_square(cert.a * cert.b);
  add(r, "ab non-square", aniso);
  if (aniso && cert.n >= 1) {
    bool avoids = true;
    std::string hit;
    const binary::FormClass cls(cert.form);
    for (Integer k = 1; k <= cert.n; ++k)
      if (cls.represents(-k)) {
        avoids = false;
        hit = to_string(-k);
        break;
      }
    add(r, "mu < -n (no value in -n..-1 represented)", avoids, "represents " + hit);
  }
  return r;
}

// ---------------------------------------------------------------------------

Integer select_pell_a(const Integer& n) {
  if (n < 1) throw DomainError("select_pell_a: n must be positive");
  // smallest integer strictly above 1 + n/2
  return 2 + n / 2;
}

PellFamilyCertificate pell_family(const Integer& a) {
  if (a <= 1) throw DomainError("pell_family: a must be at least 2");
  PellFamilyCertificate cert;
  cert.a = a;
  cert.d = a * a - 1;
  cert.mu = binary::mu(binary::BinaryForm::diagonal(cert.d));
  cert.witness = {a - 1, 1};
  if (cert.mu != 2 - 2 * a)
    throw std::logic_error("pell_family: computed mu " + to_string(cert.mu) + " differs from 2 - 2a = " +
                           to_string(2 - 2 * a));
  return cert;
}

Report validate(const PellFamilyCertificate& cert) {
  Report r;
  add(r, "a >= 2", cert.a >= 2);
  if (cert.a < 2) return r;
  add(r, "d = a^2 - 1", cert.d == cert.a * cert.a - 1);
  const auto f = binary::BinaryForm::diagonal(cert.d);
  const bool wit_ok = cert.witness.size() == 2 && f(cert.witness[0], cert.witness[1]) == cert.mu;
  add(r, "witness attains mu", wit_ok);
  const Integer mu = binary::mu(f);
  add(r, "mu recomputed", mu == cert.mu, "recomputed " + to_string(mu));
  add(r, "mu = 2 - 2a", cert.mu == 2 - 2 * cert.a);
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(Strategy s) { return s == Strategy::Pell ? "pell" : "primes"; }

Strategy parse_strategy(const std::string& s) {
  if (s == "pell") return Strategy::Pell;
  if (s == "primes" || s == "avoid-roots") return Strategy::AvoidRoots;
  throw DomainError("unknown strategy '" + s + "' (expected pell or primes)");
}

namespace {

// Basis data for h^perp and the overlattice obtained by adjoining e / m.
struct Ambient {
  IntMatrix perp_basis;  // rows: e, b_2, ..., b_k in ambient coordinates
  Integer m;
  IntMatrix tilde_gram;  // Gram in the basis (e/m, b_2, ..., b_k)
};

ScaledVector to_ambient(const Ambient& amb, const Vector& w) {
  // w in the basis (e/m, b_2, ...).
  const std::size_t r = amb.perp_basis.cols();
  Vector num(r);
  for (std::size_t j = 0; j < r; ++j) {
    num[j] = w[0] * amb.perp_basis(0, j);
    for (std::size_t i = 1; i < w.size(); ++i) num[j] += amb.m * w[i] * amb.perp_basis(i, j);
  }
  return ScaledVector::make(std::move(num), amb.m);
}

Integer tilde_norm(const Ambient& amb, const Vector& w) { return dot(w, amb.tilde_gram * w); }

struct EntryBuilder {
  const Lattice& ambient;
  const Vector& h;
  const Integer& d;
  const Ambient& amb;
  const Vector& f_tilde_w;

  MjEntry build(const Integer& a) const {
    MjEntry entry;
    entry.a = a;
    Vector u = f_tilde_w;
    for (auto& x : u) x *= -d * a;
    u[0] += 1;
    entry.u = to_ambient(amb, u);
    entry.multiplier = amb.m / gcd_of(amb.m, u[0]);
    entry.v = entry.u.numerator;
    const Integer scale = entry.multiplier / entry.u.denominator;
    for (auto& x : entry.v) x *= scale;
    entry.v_norm = ambient.norm(entry.v);
    const Sublattice span(ambient, IntMatrix::from_rows({entry.v, h}));
    const Sublattice closure = saturate(span);
    entry.basis = closure.basis;
    entry.gram = gram_of(closure);
    entry.saturation_index = index(span, closure);
    const auto form = binary::BinaryForm::from_gram(entry.gram);
    if (!binary::is_anisotropic(form))
      throw std::logic_error("mj_family: M_j is isotropic for a = " + to_string(a));
    entry.mu = binary::mu(form);
    return entry;
  }
};

}  // namespace

MjCertificate mj_family(const Lattice& ambient, const Vector& h, const Integer& mbm_bound, std::size_t count,
                        const MjOptions& options) {
  if (mbm_bound < 1) throw DomainError("mj_family: N must be positive");
  if (count < 1) throw DomainError("mj_family: count must be positive");
  if (options.search_box < 1) throw DomainError("mj_family: search box must be positive");
  const std::size_t r = ambient.rank();
  const Signature sig = signature(ambient);
  if (r < 6 || sig.positive != 3)
    throw DomainError("mj_family: wrong signature (" + std::to_string(sig.positive) + "," +
                      std::to_string(sig.negative) + "); need (3, r-3) with r >= 6");
  if (h.size() != r) throw DomainError("mj_family: h has wrong length");
  if (!is_primitive(h)) throw DomainError("mj_family: h is not primitive");
  const Integer d = ambient.norm(h);
  if (d <= 0) throw DomainError("mj_family: q(h) must be positive");

  MjCertificate cert{.ambient = ambient, .h = h, .d = d, .mbm_bound = mbm_bound};
  cert.strategy = options.strategy;
  cert.search_box = options.search_box;

  const Sublattice hsub(ambient, IntMatrix::from_rows({h}));
  const Sublattice perp = orthogonal_complement(hsub);
  const std::size_t k = perp.rank();
  {
    IntMatrix rows(r, r);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < r; ++j) rows(i, j) = perp.basis(i, j);
    for (std::size_t j = 0; j < r; ++j) rows(k, j) = h[j];
    cert.t_index = abs_of(determinant(rows));
  }
  cert.threshold = mbm_bound * cert.t_index * cert.t_index;

  // Primitive isotropic vector of h^perp: smallest sup-norm shell, then lexicographic.
  const IntMatrix perp_gram = gram_of(perp);
  std::optional<Vector> e_coords;
  for (std::size_t s = 1; s <= options.search_box && !e_coords; ++s)
    box_search(perp_gram, s, NormFilter::equal(0), [&](std::span<const std::int64_t> x, const Integer&) {
      e_coords = to_vector(x);
      return false;
    }, /*shell_only=*/true);
  if (!e_coords)
    throw EffortLimitExceeded("mj_family: no isotropic vector in h^perp within search box " +
                              std::to_string(options.search_box));

  // Basis of h^perp whose first vector is e.
  const SmithForm snf = smith_normal_form(IntMatrix::from_rows({*e_coords}));
  IntMatrix change = snf.v_inverse;
  if (snf.u(0, 0) == -1)
    for (std::size_t j = 0; j < k; ++j) change(0, j) = -change(0, j);
  Ambient amb;
  amb.perp_basis = change * perp.basis;
  cert.e = amb.perp_basis.row(0);
  cert.m = divisibility(restrict_to(perp), *e_coords);
  amb.m = cert.m;
  amb.tilde_gram = gram_of(Sublattice(ambient, amb.perp_basis));
  for (std::size_t j = 0; j < k; ++j) {
    amb.tilde_gram(0, j) /= cert.m;
    amb.tilde_gram(j, 0) = amb.tilde_gram(0, j);
  }
  amb.tilde_gram(0, 0) = 0;
  cert.e_tilde = ScaledVector::make(cert.e, cert.m);

  // f~ with (e~, f~) = 1: extended gcd along the pairing row of e~.
  Vector f(k);
  {
    Integer g = 0;
    for (std::size_t j = 1; j < k; ++j) {
      const auto ext = arith::gcd_ext(g, amb.tilde_gram(0, j));
      for (std::size_t i = 1; i < j; ++i) f[i] *= ext.x;
      f[j] = ext.y;
      g = ext.g;
    }
    if (g != 1) throw std::logic_error("mj_family: pairing row of e/m is not unimodular");
  }
  if (mpz_odd_p(Integer(tilde_norm(amb, f)).get_mpz_t())) {
    // Parity fix: add an odd-norm vector orthogonal to e~.
    const SmithForm ker = smith_normal_form(IntMatrix::from_rows({amb.tilde_gram.row(0)}));
    bool fixed = false;
    for (std::size_t i = ker.rank; i < k && !fixed; ++i) {
      const Vector w = ker.v.col(i);
      if (mpz_odd_p(Integer(tilde_norm(amb, w)).get_mpz_t())) {
        for (std::size_t j = 0; j < k; ++j) f[j] += w[j];
        fixed = true;
      }
    }
    if (!fixed)
      throw DomainError("mj_family: no isotropic f~ with (e~, f~) = 1 exists (all of e~^perp is even)");
  }
  f[0] -= tilde_norm(amb, f) / 2;
  cert.f_tilde = to_ambient(amb, f);

  const EntryBuilder builder{ambient, h, d, amb, f};
  const Integer bound = -d * mbm_bound;
  auto accept = [&](MjEntry entry) {
    if (!cert.entries.empty() && entry.v_norm >= cert.entries.back().v_norm) return false;
    if (entry.mu >= bound)
      throw std::logic_error("mj_family: mu(M_j) = " + to_string(entry.mu) + " is not below -dN for a = " +
                             to_string(entry.a));
    cert.entries.push_back(std::move(entry));
    return true;
  };

  if (options.strategy == Strategy::Pell) {
    // Z u_a + Z h = diag(d, -2da); with 2a = A^2 - 1 the largest negative value is d (2 - 2A).
    Integer big_a = select_pell_a(cert.threshold);
    if (mpz_even_p(big_a.get_mpz_t())) ++big_a;
    while (cert.entries.size() < count) {
      accept(builder.build((big_a * big_a - 1) / 2));
      big_a += 2;
    }
  } else {
    Integer floor = 0;
    while (cert.entries.size() < count) {
      const auto ar = avoid_roots_above(cert.threshold, 2, floor, options.effort_limit);
      floor = ar.primes.back().second;
      for (const auto& kp : ar.primes) floor = std::max(floor, kp.second);
      accept(builder.build(ar.a));
    }
  }
  return cert;
}

Report validate(const MjCertificate& cert) {
  Report r;
  const Lattice& l = cert.ambient;
  const std::size_t rank = l.rank();
  const Signature sig = signature(l);
  add(r, "ambient signature (3, r-3), r >= 6", rank >= 6 && sig.positive == 3);
  const bool h_ok = cert.h.size() == rank && is_primitive(cert.h);
  add(r, "h primitive", h_ok);
  if (!h_ok) return r;
  add(r, "q(h) = d > 0", l.norm(cert.h) == cert.d && cert.d > 0);
  add(r, "N positive", cert.mbm_bound >= 1);

  const Sublattice perp = orthogonal_complement(Sublattice(l, IntMatrix::from_rows({cert.h})));
  IntMatrix rows(rank, rank);
  for (std::size_t i = 0; i + 1 < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) rows(i, j) = perp.basis(i, j);
  for (std::size_t j = 0; j < rank; ++j) rows(rank - 1, j) = cert.h[j];
  add(r, "T = [L : h^perp + Zh]", abs_of(determinant(rows)) == cert.t_index);
  add(r, "threshold = N T^2", cert.threshold == cert.mbm_bound * cert.t_index * cert.t_index);

  const bool e_ok = cert.e.size() == rank && !is_zero(cert.e) && is_primitive(cert.e) && l.norm(cert.e) == 0 &&
                    l.pair(cert.e, cert.h) == 0;
  add(r, "e primitive isotropic in h^perp", e_ok);
  if (!e_ok) return r;
  // (e, h^perp) = m Z, computed from perp coordinates.
  Integer m = 0;
  for (std::size_t i = 0; i < perp.rank(); ++i) m = gcd_of(m, l.pair(cert.e, perp.basis.row(i)));
  add(r, "m = divisibility of e in h^perp", m == cert.m);
  add(r, "e~ = e / m", cert.e_tilde == ScaledVector::make(cert.e, cert.m));

  bool exact = false;
  const Integer ef = rational_pair(l, cert.e_tilde, cert.f_tilde, exact);
  add(r, "(e~, f~) = 1", exact && ef == 1);
  const Integer ff = rational_pair(l, cert.f_tilde, cert.f_tilde, exact);
  add(r, "q(f~) = 0", exact && ff == 0);
  add(r, "(f~, h) = 0", l.pair(cert.f_tilde.numerator, cert.h) == 0);
  // f~ lies in h^perp + Z e~: some f~ - t e~ is integral.
  bool in_tilde = false;
  if (divides(cert.f_tilde.denominator, cert.m)) {
    const Integer scale = cert.m / cert.f_tilde.denominator;
    for (Integer t = 0; t < cert.m && !in_tilde; ++t) {
      bool integral = true;
      for (std::size_t j = 0; j < rank; ++j)
        if (!divides(cert.m, cert.f_tilde.numerator[j] * scale - t * cert.e[j])) integral = false;
      in_tilde = integral;
    }
  }
  add(r, "f~ in h^perp + Z e~", in_tilde);

  const Integer bound = -cert.d * cert.mbm_bound;
  std::optional<Integer> prev_norm;
  for (std::size_t j = 0; j < cert.entries.size(); ++j) {
    const MjEntry& en = cert.entries[j];
    const std::string tag = "entry " + std::to_string(j + 1) + ": ";
    // u = e~ - d a f~
    Vector num(rank);
    const Integer den = cert.m * cert.f_tilde.denominator;
    for (std::size_t i = 0; i < rank; ++i)
      num[i] = cert.e[i] * cert.f_tilde.denominator - cert.d * en.a * cert.m * cert.f_tilde.numerator[i];
    const ScaledVector u = ScaledVector::make(num, den);
    add(r, tag + "u = e~ - d a f~", u == en.u);
    const Integer uu = rational_pair(l, u, u, exact);
    add(r, tag + "q(u) = -2da", exact && uu == -2 * cert.d * en.a);
    bool minimal = divides(u.denominator, en.multiplier) && en.multiplier >= 1;
    for (Integer t = 1; minimal && t < en.multiplier; ++t)
      if (divides(u.denominator, t)) minimal = false;
    add(r, tag + "m_j minimal with m_j u integral", minimal);
    Vector v(rank);
    if (minimal)
      for (std::size_t i = 0; i < rank; ++i) v[i] = u.numerator[i] * (en.multiplier / u.denominator);
    add(r, tag + "v = m_j u", minimal && v == en.v);
    add(r, tag + "(v, h) = 0", l.pair(en.v, cert.h) == 0);
    add(r, tag + "m_j divides m", divides(en.multiplier, cert.m));
    add(r, tag + "q(v) recorded", l.norm(en.v) == en.v_norm);

    if (en.basis.rows() != 2 || en.basis.cols() != rank) {
      add(r, tag + "M_j has rank 2", false);
      continue;
    }
    const Sublattice mj(l, en.basis);
    const Sublattice span(l, IntMatrix::from_rows({en.v, cert.h}));
    bool closure_ok = false;
    Integer sat_index = 0;
    try {
      sat_index = index(span, mj);
      closure_ok = index(mj, saturate(mj)) == 1;
    } catch (const DomainError&) {
    }
    add(r, tag + "M_j primitive and contains span(v, h)", closure_ok);
    add(r, tag + "h in M_j", contains(mj, cert.h));
    add(r, tag + "saturation index recorded", sat_index == en.saturation_index);
    add(r, tag + "saturation index divides T", sat_index != 0 && divides(sat_index, cert.t_index));
    add(r, tag + "Gram of M_j", gram_of(mj) == en.gram);
    const auto form = binary::BinaryForm::from_gram(en.gram);
    const bool aniso = form.disc() > 0 && binary::is_anisotropic(form);
    add(r, tag + "M_j indefinite and anisotropic", aniso);
    if (aniso) {
      const Integer mu = binary::mu(form);
      add(r, tag + "mu(M_j) recomputed", mu == en.mu, "recomputed " + to_string(mu));
      add(r, tag + "mu(M_j) < -dN", en.mu < bound);
    }
    add(r, tag + "q(v_j) strictly decreasing", !prev_norm || en.v_norm < *prev_norm);
    prev_norm = en.v_norm;
  }
  return r;
}

// ---------------------------------------------------------------------------

Fingerprint fingerprint(const Lattice& lattice) {
  return {lattice.rank(), lattice.det(), discriminant(lattice).invariant_factors, signature(lattice)};
}

std::vector<NvEntry> nv_complements(const Lattice& lattice, const Integer& d, std::size_t box) {
  if (d < 1) throw DomainError("nv_complements: d must be positive");
  if (lattice.rank() < 2) throw DomainError("nv_complements: lattice rank must be at least 2");
  std::vector<NvEntry> out;
  for (auto& h : enumerate_norm_vectors(lattice, d, box)) {
    NvEntry entry;
    const Sublattice comp = orthogonal_complement(Sublattice(lattice, IntMatrix::from_rows({h})));
    entry.h = std::move(h);
    entry.complement_basis = comp.basis;
    entry.gram = gram_of(comp);
    entry.fingerprint = fingerprint(Lattice(entry.gram));
    entry.group = out.size();
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i].fingerprint == entry.fingerprint) {
        entry.group = out[i].group;
        break;
      }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<Lattice> rescaling_family(const Lattice& lattice, std::size_t n) {
  if (n < 1) throw DomainError("rescaling_family: N must be positive");
  std::vector<Lattice> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(rescale(lattice, Integer(static_cast<unsigned long>(k))));
  return out;
}

}  // namespace reflekt::construct
