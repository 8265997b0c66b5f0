#include "reflekt/roots.hpp"

#include <algorithm>

#include "reflekt/arith.hpp"
#include "reflekt/search.hpp"

namespace reflekt::roots {

bool is_root(const Lattice& lattice, const Vector& v) {
  const Integer q = lattice.norm(v);
  if (q == 0) throw DomainError("is_root: vector is isotropic");
  if (!is_primitive(v)) throw DomainError("is_root: vector is not primitive");
  for (const auto& p : lattice.gram() * v)
    if (!divides(q, 2 * p)) return false;
  return true;
}

Vector reflect(const Lattice& lattice, const Vector& v, const Vector& u) {
  if (!is_root(lattice, v)) throw DomainError("reflect: vector is not a root");
  const Integer q = lattice.norm(v);
  const Integer coeff = 2 * lattice.pair(u, v) / q;  // exact by the root condition
  Vector out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coeff * v[i];
  return out;
}

std::vector<Integer> root_norm_candidates(const Lattice& lattice) {
  std::vector<Integer> out;
  for (const auto& d : arith::divisors(2 * discriminant(lattice).exponent)) out.push_back(-d);
  return out;
}

std::vector<Vector> find_roots_in_box(const Lattice& lattice, std::size_t box) {
  if (box == 0) throw DomainError("find_roots_in_box: box must be positive");
  const IntMatrix& g = lattice.gram();
  std::vector<std::pair<Integer, Vector>> found;
  box_search(g, box, NormFilter::negative(), [&](std::span<const std::int64_t> x, const Integer& q) {
    Vector v = to_vector(x);
    for (const auto& p : g * v)
      if (!divides(q, 2 * p)) return true;
    found.emplace_back(q, std::move(v));
    return true;
  });
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first > r.first;
    return binary::canonical_less(l.second, r.second);
  });
  std::vector<Vector> out;
  out.reserve(found.size());
  for (auto& [q, v] : found) out.push_back(std::move(v));
  return out;
}

std::string to_string(Reflectivity r) {
  switch (r) {
    case Reflectivity::Reflective: return "reflective";
    case Reflectivity::NonReflective: return "non-reflective";
    case Reflectivity::Unknown: return "unknown";
  }
  return "unknown";
}

ReflectivityVerdict reflectivity_indicator(const Lattice& lattice, std::size_t budget) {
  if (budget == 0) throw DomainError("reflectivity_indicator: budget must be positive");
  ReflectivityVerdict out;
  const Signature sig = signature(lattice);
  if (lattice.rank() == 1 || sig.positive == 0 || sig.negative == 0) {
    out.status = Reflectivity::Reflective;
    out.reason = lattice.rank() == 1 ? "rank one: orthogonal group is {+1, -1}"
                                     : "definite: finite orthogonal group";
    return out;
  }

  if (lattice.rank() == 2) {
    const binary::BinaryForm f = binary::BinaryForm::from_gram(lattice.gram());
    for (const auto& c : root_norm_candidates(lattice)) out.exhausted_candidates.push_back(c);
    for (auto& r : binary::binary_roots(f)) out.roots.push_back(std::move(r.vector));
    if (!binary::is_anisotropic(f)) {
      out.status = Reflectivity::Reflective;
      out.reason = "isotropic binary lattice: finite orthogonal group";
    } else if (!out.roots.empty()) {
      out.status = Reflectivity::Reflective;
      out.reason = "anisotropic binary lattice with roots: Pell conjugates of a reflection give finite index";
    } else {
      out.status = Reflectivity::NonReflective;
      out.reason = "anisotropic binary lattice without roots: trivial Weyl group, infinite orthogonal group";
      out.pell_unit = binary::pell_automorph(f).to_matrix();
    }
    return out;
  }

  out.status = Reflectivity::Unknown;
  out.reason = "rank >= 3 indefinite: only a bounded root search is performed";
  out.search_box = budget;
  out.roots = find_roots_in_box(lattice, budget);
  return out;
}

}  // namespace reflekt::roots
