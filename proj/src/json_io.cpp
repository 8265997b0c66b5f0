#include "reflekt/json_io.hpp"

#include <fstream>
#include <sstream>

namespace reflekt::io {

json to_json(const Integer& x) {
  if (auto v = to_int64(x)) return *v;
  return x.get_str();
}

json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json to_json(const construct::ScaledVector& v) {
  return {{"numerator", to_json(v.numerator)}, {"denominator", to_json(v.denominator)}};
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw DomainError("expected an integer, got " + j.dump());
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected an integer array, got " + j.dump());
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("expected a nonempty array of integer rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  return IntMatrix::from_rows(rows);
}

construct::ScaledVector scaled_from_json(const json& j) {
  return construct::ScaledVector::make(vector_from_json(j.at("numerator")), integer_from_json(j.at("denominator")));
}

Lattice lattice_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gram")) throw DomainError("lattice document needs a \"gram\" key");
  const IntMatrix g = matrix_from_json(j.at("gram"));
  if (!g.square()) throw DomainError("Gram matrix must be square");
  return Lattice(g);
}

json lattice_to_json(const Lattice& l) { return {{"gram", to_json(l.gram())}}; }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("invalid JSON in '" + path + "': " + e.what());
  }
}

Lattice load_lattice(const std::string& path) { return lattice_from_json(load_json(path)); }

Vector parse_vector(const std::string& text) {
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw DomainError("empty coordinate in vector '" + text + "'");
    v.push_back(parse_integer(item.substr(b, e - b + 1)));
  }
  if (v.empty()) throw DomainError("empty vector");
  return v;
}

std::vector<Vector> parse_vectors(const std::string& text) {
  std::vector<Vector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_vector(item));
  if (out.empty()) throw DomainError("no vectors given");
  return out;
}

json certificate_to_json(const construct::AvoidRootsCertificate& c) {
  json primes = json::array();
  for (const auto& [k, p] : c.primes) primes.push_back({{"k", to_json(k)}, {"p", to_json(p)}});
  return {{"format", kFormat},
          {"kind", "avoid-roots"},
          {"n", to_json(c.n)},
          {"b", to_json(c.b)},
          {"primes", primes},
          {"a", to_json(c.a)},
          {"form", to_json(Vector{c.form.a, c.form.b, c.form.c})}};
}

json certificate_to_json(const construct::PellFamilyCertificate& c) {
  return {{"format", kFormat},       {"kind", "pell-family"}, {"a", to_json(c.a)},
          {"d", to_json(c.d)},       {"mu", to_json(c.mu)},   {"witness", to_json(c.witness)}};
}

json certificate_to_json(const construct::MjCertificate& c) {
  json entries = json::array();
  for (const auto& e : c.entries)
    entries.push_back({{"a", to_json(e.a)},
                       {"u", to_json(e.u)},
                       {"multiplier", to_json(e.multiplier)},
                       {"v", to_json(e.v)},
                       {"v_norm", to_json(e.v_norm)},
                       {"basis", to_json(e.basis)},
                       {"gram", to_json(e.gram)},
                       {"mu", to_json(e.mu)},
                       {"saturation_index", to_json(e.saturation_index)}});
  return {{"format", kFormat},
          {"kind", "mj"},
          {"ambient", lattice_to_json(c.ambient)},
          {"h", to_json(c.h)},
          {"d", to_json(c.d)},
          {"N", to_json(c.mbm_bound)},
          {"strategy", construct::to_string(c.strategy)},
          {"e", to_json(c.e)},
          {"m", to_json(c.m)},
          {"e_tilde", to_json(c.e_tilde)},
          {"f_tilde", to_json(c.f_tilde)},
          {"T", to_json(c.t_index)},
          {"threshold", to_json(c.threshold)},
          {"search_box", c.search_box},
          {"entries", entries}};
}

namespace {

void expect_kind(const json& j, const std::string& kind) {
  if (!j.is_object()) throw DomainError("certificate must be a JSON object");
  if (j.value("format", std::string()) != kFormat)
    throw DomainError(std::string("unsupported or missing format (expected ") + kFormat + ")");
  if (j.value("kind", std::string()) != kind) throw DomainError("certificate kind is not '" + kind + "'");
}

template <class F>
auto field(const json& j, const char* key, F&& f) {
  if (!j.contains(key)) throw DomainError(std::string("certificate is missing \"") + key + "\"");
  return f(j.at(key));
}

}  // namespace

construct::AvoidRootsCertificate avoid_roots_from_json(const json& j) {
  expect_kind(j, "avoid-roots");
  construct::AvoidRootsCertificate c;
  c.n = field(j, "n", integer_from_json);
  c.b = field(j, "b", integer_from_json);
  c.a = field(j, "a", integer_from_json);
  for (const auto& p : j.at("primes")) c.primes.emplace_back(integer_from_json(p.at("k")), integer_from_json(p.at("p")));
  const Vector f = field(j, "form", vector_from_json);
  if (f.size() != 3) throw DomainError("form must have three coefficients");
  c.form = {f[0], f[1], f[2]};
  return c;
}

construct::PellFamilyCertificate pell_family_from_json(const json& j) {
  expect_kind(j, "pell-family");
  return {field(j, "a", integer_from_json), field(j, "d", integer_from_json), field(j, "mu", integer_from_json),
          field(j, "witness", vector_from_json)};
}

construct::MjCertificate mj_from_json(const json& j) {
  expect_kind(j, "mj");
  construct::MjCertificate c{.ambient = field(j, "ambient", lattice_from_json),
                             .h = field(j, "h", vector_from_json),
                             .d = field(j, "d", integer_from_json),
                             .mbm_bound = field(j, "N", integer_from_json)};
  c.strategy = construct::parse_strategy(j.at("strategy").get<std::string>());
  c.e = field(j, "e", vector_from_json);
  c.m = field(j, "m", integer_from_json);
  c.e_tilde = field(j, "e_tilde", scaled_from_json);
  c.f_tilde = field(j, "f_tilde", scaled_from_json);
  c.t_index = field(j, "T", integer_from_json);
  c.threshold = field(j, "threshold", integer_from_json);
  c.search_box = j.at("search_box").get<std::size_t>();
  for (const auto& e : j.at("entries")) {
    construct::MjEntry en;
    en.a = field(e, "a", integer_from_json);
    en.u = field(e, "u", scaled_from_json);
    en.multiplier = field(e, "multiplier", integer_from_json);
    en.v = field(e, "v", vector_from_json);
    en.v_norm = field(e, "v_norm", integer_from_json);
    en.basis = field(e, "basis", matrix_from_json);
    en.gram = field(e, "gram", matrix_from_json);
    en.mu = field(e, "mu", integer_from_json);
    en.saturation_index = field(e, "saturation_index", integer_from_json);
    c.entries.push_back(std::move(en));
  }
  return c;
}

construct::Report verify_certificate(const json& j) {
  const std::string kind = j.is_object() ? j.value("kind", std::string()) : std::string();
  if (kind == "avoid-roots") return construct::validate(avoid_roots_from_json(j));
  if (kind == "pell-family") return construct::validate(pell_family_from_json(j));
  if (kind == "mj") return construct::validate(mj_from_json(j));
  throw DomainError("unknown certificate kind '" + kind + "'");
}

json report_to_json(const construct::Report& r) {
  json checks = json::array();
  for (const auto& c : r) {
    json item = {{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  return {{"format", kFormat}, {"valid", construct::all_passed(r)}, {"checks", checks}};
}

}  // namespace reflekt::io
