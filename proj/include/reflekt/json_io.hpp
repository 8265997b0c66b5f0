#pragma once

#include <string>

#include "json.hpp"

#include "reflekt/construct.hpp"
#include "reflekt/integer.hpp"
#include "reflekt/lattice.hpp"
#include "reflekt/matrix.hpp"

namespace reflekt::io {

using nlohmann::json;

/// Value of the top-level "format" key in every document.
inline constexpr const char* kFormat = "reflekt/1";

// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
json to_json(const Integer& x);
json to_json(const Vector& v);
json to_json(const IntMatrix& m);
json to_json(const construct::ScaledVector& v);

Integer integer_from_json(const json& j);
Vector vector_from_json(const json& j);
IntMatrix matrix_from_json(const json& j);
construct::ScaledVector scaled_from_json(const json& j);

/// { "gram": [[...]] }; validates symmetry and nondegeneracy.
Lattice lattice_from_json(const json& j);
json lattice_to_json(const Lattice& l);
Lattice load_lattice(const std::string& path);
json load_json(const std::string& path);

/// Comma-separated integers, e.g. "1,0,-3".
Vector parse_vector(const std::string& text);
/// Vectors separated by ';', each comma-separated.
std::vector<Vector> parse_vectors(const std::string& text);

json certificate_to_json(const construct::AvoidRootsCertificate& c);
json certificate_to_json(const construct::PellFamilyCertificate& c);
json certificate_to_json(const construct::MjCertificate& c);

construct::AvoidRootsCertificate avoid_roots_from_json(const json& j);
construct::PellFamilyCertificate pell_family_from_json(const json& j);
construct::MjCertificate mj_from_json(const json& j);

/// Dispatches on "kind" and re-runs every invariant check.
construct::Report verify_certificate(const json& j);
json report_to_json(const construct::Report& r);

}  // namespace reflekt::io
