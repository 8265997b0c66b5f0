#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reflekt/arith.hpp"
#include "reflekt/binary.hpp"
#include "reflekt/construct.hpp"
#include "reflekt/json_io.hpp"
#include "reflekt/lattice.hpp"
#include "reflekt/roots.hpp"

namespace py = pybind11;
using namespace reflekt;

// Python int <-> mpz_class through the decimal representation, so values of any
// size cross the boundary exactly.
namespace pybind11::detail {

template <>
struct type_caster<Integer> {
  PYBIND11_TYPE_CASTER(Integer, const_name("int"));

  bool load(handle src, bool convert) {
    if (!src) return false;
    if (!PyLong_Check(src.ptr())) {
      if (!convert || !PyIndex_Check(src.ptr())) return false;
    }
    object as_int = reinterpret_steal<object>(PyNumber_Index(src.ptr()));
    if (!as_int) {
      PyErr_Clear();
      return false;
    }
    const std::string text = str(as_int);
    return value.set_str(text, 10) == 0;
  }

  static handle cast(const Integer& x, return_value_policy, handle) {
    if (const auto small = to_int64(x)) return PyLong_FromLongLong(*small);
    return PyLong_FromString(x.get_str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<IntMatrix> {
  PYBIND11_TYPE_CASTER(IntMatrix, const_name("list[list[int]]"));

  bool load(handle src, bool convert) {
    make_caster<std::vector<Vector>> rows;
    if (!rows.load(src, convert)) return false;
    const auto& list = cast_op<const std::vector<Vector>&>(rows);
    if (list.empty()) {
      value = IntMatrix();
      return true;
    }
    for (const auto& r : list)
      if (r.size() != list[0].size()) return false;
    value = IntMatrix::from_rows(list);
    return true;
  }

  static handle cast(const IntMatrix& m, return_value_policy policy, handle parent) {
    return make_caster<std::vector<Vector>>::cast(m.row_list(), policy, parent);
  }
};

}  // namespace pybind11::detail

namespace {

py::object to_python(const io::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

io::json from_python(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::list report_list(const construct::Report& r) {
  py::list out;
  for (const auto& c : r) out.append(py::make_tuple(c.name, c.passed, c.detail));
  return out;
}

binary::BinaryForm form_of(const Integer& a, const Integer& b, const Integer& c) { return {a, b, c}; }

}  // namespace

PYBIND11_MODULE(_reflekt, m) {
  m.doc() = "Exact integer lattice and binary quadratic form routines";

  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
  static py::exception<EffortLimitExceeded> effort_error(m, "EffortLimitExceeded", domain_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const EffortLimitExceeded& e) {
      py::set_error(effort_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    }
  });

  // arith
  m.def("jacobi", &arith::jacobi, py::arg("a"), py::arg("n"));
  m.def("is_prime", py::overload_cast<const Integer&>(&arith::is_prime), py::arg("n"));
  m.def(
      "nonresidue_prime",
      [](const Integer& k, const std::vector<Integer>& exclude, const Integer& minimum) {
        return arith::nonresidue_prime(k, std::set<Integer>(exclude.begin(), exclude.end()), minimum);
      },
      py::arg("k"), py::arg("exclude") = std::vector<Integer>{}, py::arg("minimum") = Integer(2),
      "Smallest prime p = 7 mod 8, p >= minimum, not excluded, with -k a non-residue mod p.");
  m.def(
      "find_prime",
      [](const std::vector<std::pair<Integer, Integer>>& congruences, const std::vector<Integer>& exclude,
         const Integer& minimum) {
        arith::PrimeSearchSpec spec;
        for (const auto& [r, mod] : congruences) spec.congruences.emplace_back(r, mod);
        spec.exclude = std::set<Integer>(exclude.begin(), exclude.end());
        spec.minimum = minimum;
        return arith::find_prime(spec);
      },
      py::arg("congruences"), py::arg("exclude") = std::vector<Integer>{}, py::arg("minimum") = Integer(2),
      "Smallest prime satisfying every (residue, modulus) pair.");

  // lattice
  py::class_<Lattice>(m, "Lattice")
      .def(py::init<IntMatrix>(), py::arg("gram"))
      .def_static("diagonal", &Lattice::diagonal)
      .def_static("hyperbolic_plane", &Lattice::hyperbolic_plane)
      .def_static("direct_sum", &Lattice::direct_sum)
      .def_property_readonly("gram", &Lattice::gram)
      .def_property_readonly("rank", &Lattice::rank)
      .def_property_readonly("det", &Lattice::det)
      .def("pair", &Lattice::pair)
      .def("norm", &Lattice::norm)
      .def("signature",
           [](const Lattice& l) {
             const auto s = signature(l);
             return py::make_tuple(s.positive, s.negative);
           })
      .def("discriminant",
           [](const Lattice& l) {
             const auto d = discriminant(l);
             py::dict out;
             out["invariant_factors"] = d.invariant_factors;
             out["exponent"] = d.exponent;
             out["order"] = d.order;
             return out;
           })
      .def("is_unscaled", [](const Lattice& l) { return is_unscaled(l); })
      .def("rescale", [](const Lattice& l, const Integer& k) { return rescale(l, k); })
      .def("divisibility", [](const Lattice& l, const Vector& v) { return divisibility(l, v); })
      .def("__eq__", [](const Lattice& a, const Lattice& b) { return a == b; })
      .def("__repr__", [](const Lattice& l) { return "Lattice(" + io::lattice_to_json(l)["gram"].dump() + ")"; });

  m.def(
      "orthogonal_complement",
      [](const Lattice& l, const IntMatrix& rows) { return orthogonal_complement(Sublattice(l, rows)).basis; },
      py::arg("lattice"), py::arg("rows"));
  m.def(
      "saturate", [](const Lattice& l, const IntMatrix& rows) { return saturate(Sublattice(l, rows)).basis; },
      py::arg("lattice"), py::arg("rows"));
  m.def(
      "index",
      [](const Lattice& l, const IntMatrix& inner, const IntMatrix& outer) {
        return index(Sublattice(l, inner), Sublattice(l, outer));
      },
      py::arg("lattice"), py::arg("inner"), py::arg("outer"));
  m.def("enumerate_norm_vectors", &enumerate_norm_vectors, py::arg("lattice"), py::arg("n"), py::arg("box"));

  // binary forms, given by coefficients (a, b, c) of a x^2 + b xy + c y^2
  m.def(
      "represents",
      [](const Integer& a, const Integer& b, const Integer& c, const Integer& n) {
        return binary::represents(form_of(a, b, c), n);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"));
  m.def(
      "mu", [](const Integer& a, const Integer& b, const Integer& c) { return binary::mu(form_of(a, b, c)); },
      py::arg("a"), py::arg("b"), py::arg("c"), "Largest negative value the anisotropic form represents.");
  m.def(
      "is_anisotropic",
      [](const Integer& a, const Integer& b, const Integer& c) { return binary::is_anisotropic(form_of(a, b, c)); },
      py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "binary_roots",
      [](const Integer& a, const Integer& b, const Integer& c) {
        std::vector<std::pair<Integer, Vector>> out;
        for (const auto& r : binary::binary_roots(form_of(a, b, c))) out.emplace_back(r.norm, r.vector);
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "cf_sqrt",
      [](const Integer& d) {
        const auto cf = binary::cf_sqrt(d);
        return py::make_tuple(cf.a0, cf.period);
      },
      py::arg("d"));
  m.def(
      "pell_fundamental",
      [](const Integer& d) {
        const auto p = binary::pell_fundamental(d);
        return py::make_tuple(p.x, p.y);
      },
      py::arg("d"));
  m.def("infinite_order_isometry", &binary::infinite_order_isometry, py::arg("d"));

  // roots
  m.def("is_root", &roots::is_root, py::arg("lattice"), py::arg("v"));
  m.def("reflect", &roots::reflect, py::arg("lattice"), py::arg("v"), py::arg("u"));
  m.def("root_norm_candidates", &roots::root_norm_candidates, py::arg("lattice"));
  m.def("find_roots_in_box", &roots::find_roots_in_box, py::arg("lattice"), py::arg("box"));
  m.def(
      "reflectivity",
      [](const Lattice& l, std::size_t budget) {
        const auto v = roots::reflectivity_indicator(l, budget);
        py::dict out;
        out["status"] = roots::to_string(v.status);
        out["reason"] = v.reason;
        out["roots"] = v.roots;
        out["pell_unit"] = v.pell_unit ? py::cast(*v.pell_unit) : py::none();
        return out;
      },
      py::arg("lattice"), py::arg("budget") = 10);

  // constructions; certificates are plain dicts in the CLI's JSON layout
  m.def(
      "avoid_roots",
      [](const Integer& n, const Integer& b) { return to_python(io::certificate_to_json(construct::avoid_roots(n, b))); },
      py::arg("n"), py::arg("b"));
  m.def(
      "pell_family", [](const Integer& a) { return to_python(io::certificate_to_json(construct::pell_family(a))); },
      py::arg("a"));
  m.def("select_pell_a", &construct::select_pell_a, py::arg("n"));
  m.def(
      "mj_family",
      [](const Lattice& l, const Vector& h, const Integer& n, std::size_t count, const std::string& strategy) {
        construct::MjOptions options;
        options.strategy = construct::parse_strategy(strategy);
        return to_python(io::certificate_to_json(construct::mj_family(l, h, n, count, options)));
      },
      py::arg("lattice"), py::arg("h"), py::arg("N"), py::arg("count") = 1, py::arg("strategy") = "pell");
  m.def(
      "rescaling_family", &construct::rescaling_family, py::arg("lattice"), py::arg("n"));
  m.def(
      "verify_certificate", [](const py::object& cert) { return report_list(io::verify_certificate(from_python(cert))); },
      py::arg("certificate"), "List of (check, passed, detail) tuples.");
}
