#include "torvec/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace torvec;
using namespace pybind11::literals;

namespace {

auto subspace_rows(const Subspace &s) -> std::vector<std::vector<std::string>> {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::vector<std::string> row;
    for (auto x : s.basis().row(i)) row.push_back(s.field().format(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

auto make_subspace(const Field &f, std::size_t ambient, const std::vector<std::vector<std::string>> &rows) -> Subspace {
  Mat m(f, 0, ambient);
  for (const auto &row : rows) {
    std::vector<Scalar> vals;
    for (const auto &s : row) vals.push_back(f.parse(s));
    m.append_row(vals);
  }
  return Subspace::span(m);
}

auto pattern(std::size_t d, std::size_t dprime, const std::vector<std::pair<std::size_t, std::size_t>> &inc)
    -> IncidencePattern {
  return {d, dprime, {inc.begin(), inc.end()}};
}

auto report_dict(const Report &r) -> py::dict { return py::dict("ok"_a = r.ok, "message"_a = r.message); }

} // namespace

PYBIND11_MODULE(_torvec, m) {
  m.doc() = "Klyachko filtrations, equivariant Chern classes and framed moduli of toric vector bundles";

  static py::exception<MathError> math_error(m, "MathError", PyExc_ArithmeticError);
  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MathError &e) {
      math_error(e.what());
    } catch (const InputError &e) {
      input_error(e.what());
    } catch (const BudgetExceeded &e) {
      budget_error(e.what());
    }
  });

  py::class_<Field>(m, "Field")
      .def_static("rationals", &Field::rationals)
      .def_static("prime", &Field::prime, "p"_a)
      .def_property_readonly("name", &Field::name)
      .def_property_readonly("modulus", &Field::modulus)
      .def("__eq__", [](const Field &a, const Field &b) { return a == b; })
      .def("__repr__", [](const Field &f) { return "Field(" + f.name() + ")"; });

  py::class_<Subspace>(m, "Subspace")
      .def(py::init(&make_subspace), "field"_a, "ambient"_a, "rows"_a)
      .def_property_readonly("dim", &Subspace::dim)
      .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
      .def_property_readonly("basis", &subspace_rows)
      .def("contains", py::overload_cast<const Subspace &>(&Subspace::contains, py::const_))
      .def("__eq__", [](const Subspace &a, const Subspace &b) { return a == b; });
  m.def("intersect", &intersect);
  m.def("sum", &sum);
  m.def("complement_within", &complement_within, "w"_a, "u"_a);

  py::class_<Fan>(m, "Fan")
      .def(py::init([](std::size_t n, std::vector<IntVec> rays, std::vector<std::vector<std::size_t>> cones) {
             return Fan{n, std::move(rays), std::move(cones)};
           }),
           "lattice_rank"_a, "rays"_a, "max_cones"_a)
      .def_readonly("lattice_rank", &Fan::lattice_rank)
      .def_readonly("rays", &Fan::rays)
      .def_readonly("max_cones", &Fan::max_cones);
  m.def("validate_fan", [](const Fan &f) { return report_dict(validate_fan(f)); });
  m.def("integer_kernel", [](const std::vector<IntVec> &rows, std::size_t cols) {
    return integer_kernel(IntMat::from_rows(cols, rows)).row_vectors();
  });

  py::class_<MultisetPsi>(m, "MultisetPsi")
      .def_readonly("fan", &MultisetPsi::fan)
      .def_readonly("rank", &MultisetPsi::rank)
      .def_property_readonly("classes",
                             [](const MultisetPsi &psi) {
                               std::vector<std::vector<IntVec>> out;
                               for (const auto &ms : psi.cones) {
                                 out.emplace_back();
                                 for (const auto &x : ms) out.back().push_back(x.canonical);
                               }
                               return out;
                             })
      .def("to_json", [](const MultisetPsi &psi) { return io::psi_to_json(psi).dump(); })
      .def_static("from_json", [](const std::string &s) { return io::psi_from_json(io::Json::parse(s)); });
  m.def("make_psi", &make_psi, "fan"_a, "lifts"_a);
  m.def("validate_psi", [](const MultisetPsi &psi) { return report_dict(validate_psi(psi)); });

  py::class_<KlyachkoData>(m, "KlyachkoData")
      .def_readonly("rank", &KlyachkoData::rank)
      .def_readonly("fan", &KlyachkoData::fan)
      .def("to_json", [](const KlyachkoData &d) { return io::klyachko_to_json(d).dump(); })
      .def_static("from_json", [](const std::string &s) { return io::klyachko_from_json(io::Json::parse(s)); });
  m.def("validate_filtrations", [](const KlyachkoData &d) { return report_dict(validate_filtrations(d)); });
  m.def("psi_of", &psi_of);
  m.def("check_compatibility", [](const KlyachkoData &d, const MultisetPsi &psi) {
    auto r = check_compatibility(d, psi);
    return py::dict("ok"_a = r.ok, "cone"_a = r.cone, "tuple"_a = r.tuple, "intersection_dim"_a = r.intersection_dim,
                    "count"_a = r.count, "message"_a = r.message);
  });
  m.def("split_cone", [](const KlyachkoData &d, const MultisetPsi &psi, std::size_t cone) {
    auto s = split_cone(d, max_cone(d.fan, cone), psi.cones.at(cone));
    py::list out;
    for (const auto &p : s.pieces)
      out.append(py::dict("class"_a = p.cls.canonical, "multiplicity"_a = p.multiplicity, "basis"_a = subspace_rows(p.space)));
    return out;
  });

  m.def("chern_of_psi", [](const MultisetPsi &psi) {
    std::vector<std::vector<std::string>> out; // [class index][cone]
    for (const auto &c : chern_of_psi(psi)) {
      out.emplace_back();
      for (const auto &p : c.pieces) out.back().push_back(p.to_string());
    }
    return out;
  });
  m.def("chern_continuity", [](const MultisetPsi &psi) {
    std::vector<bool> out;
    for (const auto &c : chern_of_psi(psi)) out.push_back(validate_continuity(c).ok);
    return out;
  });

  m.def("generate_conditions", [](const MultisetPsi &psi) {
    py::list out;
    for (const auto &rc : generate_conditions(psi))
      out.append(py::dict("terms"_a = rc.terms, "required_dim"_a = rc.required_dim, "trivial"_a = rc.trivial,
                          "source_cone"_a = rc.source_cone));
    return out;
  });

  py::class_<PointSet>(m, "PointSet")
      .def_property_readonly("count", &PointSet::count)
      .def("points_json", [](const PointSet &pts) {
        std::vector<std::string> out;
        for (const auto &fc : pts.points) out.push_back(io::flags_to_json(fc).dump());
        return out;
      });
  m.def("enumerate_points", &enumerate_points, "psi"_a, "p"_a);
  m.def("orbit_analysis", [](const PointSet &pts) {
    auto o = orbit_analysis(pts);
    return py::dict("orbit_count"_a = o.orbit_count, "free"_a = o.free, "orbit_sizes"_a = o.orbit_sizes,
                    "group_order"_a = o.group_order);
  });
  m.def("check_membership", [](const std::string &flags_json, const MultisetPsi &psi) {
    auto mem = check_membership(io::flags_from_json(io::Json::parse(flags_json)), psi);
    return py::make_tuple(mem.member, mem.violations.size());
  });

  m.def("build_universality_instance",
        [](std::size_t d, std::size_t dprime, const std::vector<std::pair<std::size_t, std::size_t>> &inc) {
          return build_universality_instance(pattern(d, dprime, inc));
        },
        "d"_a, "dprime"_a, "incidences"_a);
  m.def("verify_equivalence",
        [](std::size_t d, std::size_t dprime, const std::vector<std::pair<std::size_t, std::size_t>> &inc,
           std::int64_t p) {
          auto r = verify_equivalence(pattern(d, dprime, inc), p);
          return py::dict("ok"_a = r.ok, "configurations"_a = r.configurations, "oracle_count"_a = r.oracle_count,
                          "moduli_count"_a = r.moduli_count, "message"_a = r.message);
        },
        "d"_a, "dprime"_a, "incidences"_a, "p"_a);
}
