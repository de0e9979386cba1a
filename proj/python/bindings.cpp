#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gralg/classify.hpp"
#include "gralg/cli.hpp"
#include "gralg/error.hpp"
#include "gralg/frame.hpp"
#include "gralg/gra.hpp"
#include "gralg/laws.hpp"
#include "gralg/measurability.hpp"
#include "gralg/scaffold.hpp"
#include "gralg/text_format.hpp"

namespace py = pybind11;
using namespace gralg;

namespace {

AtomSet to_set(const AtomStructure& a, const std::vector<int>& atoms) {
  AtomSet out(a.size());
  for (int i : atoms) {
    if (i < 0 || i >= a.size()) throw DomainError("atom index out of range");
    out.set(i);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_gralg, m) {
  m.doc() = "Group relation algebras over finite cyclic groups";

  py::register_exception<Error>(m, "Error");

  py::class_<Violation>(m, "Violation")
      .def_readonly("clause", &Violation::clause)
      .def_readonly("witness", &Violation::witness)
      .def("__repr__", [](const Violation& v) {
        return "Violation(" + v.clause + ": " + v.witness + ")";
      });

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_property_readonly("ok", &ConditionReport::pass)
      .def_readonly("violations", &ConditionReport::violations)
      .def("has", [](const ConditionReport& r, const std::string& clause) {
        return r.has(clause);
      })
      .def("__str__", &ConditionReport::to_string)
      .def("__bool__", &ConditionReport::pass);

  py::class_<IndexSystem>(m, "IndexSystem")
      .def_readonly("atoms", &IndexSystem::atoms)
      .def_readonly("orders", &IndexSystem::order)
      .def_readonly("blocks", &IndexSystem::blocks)
      .def("m", &IndexSystem::m, py::arg("x"), py::arg("y"))
      .def("same_block", &IndexSystem::same_block)
      .def_property_readonly("size", &IndexSystem::size)
      .def("diagram", &render_diagram)
      .def("__eq__",
           [](const IndexSystem& a, const IndexSystem& b) { return a == b; })
      .def("__str__", &dump_index_system);

  py::class_<GroupFrame>(m, "GroupFrame")
      .def_readonly("system", &GroupFrame::system);

  py::class_<AtomStructure>(m, "AtomStructure")
      .def(py::init<std::vector<std::string>, std::vector<int>,
                    std::vector<int>, std::vector<std::array<int, 3>>>(),
           py::arg("names"), py::arg("identity"), py::arg("converse"),
           py::arg("triples"))
      .def_property_readonly("size", &AtomStructure::size)
      .def_property_readonly("names", &AtomStructure::names)
      .def("name", &AtomStructure::name)
      .def("atom", &AtomStructure::atom_by_name)
      .def_property_readonly(
          "identity_atoms",
          [](const AtomStructure& a) {
            return a.identity_element().to_vector();
          })
      .def("converse", &AtomStructure::converse)
      .def("comp",
           [](const AtomStructure& a, int x, int y) {
             return a.comp(x, y).to_vector();
           })
      .def("compose",
           [](const AtomStructure& a, const std::vector<int>& e1,
              const std::vector<int>& e2) {
             return a.compose(to_set(a, e1), to_set(a, e2)).to_vector();
           })
      .def("converse_of",
           [](const AtomStructure& a, const std::vector<int>& e) {
             return a.converse_of(to_set(a, e)).to_vector();
           })
      .def_property_readonly("triples", &AtomStructure::triples)
      .def("__str__", &dump_atom_structure);

  py::class_<Carrier>(m, "Carrier")
      .def_readonly("labels", &Carrier::labels)
      .def_readonly("group_orders", &Carrier::group_order)
      .def_readonly("points", &Carrier::points)
      .def("render", &Carrier::render);

  py::class_<ConcreteRelation>(m, "ConcreteRelation")
      .def_readonly("pairs", &ConcreteRelation::pairs)
      .def_property_readonly("size", &ConcreteRelation::size);

  py::class_<AtomRelation>(m, "AtomRelation")
      .def_readonly("x", &AtomRelation::x)
      .def_readonly("y", &AtomRelation::y)
      .def_readonly("alpha", &AtomRelation::alpha)
      .def_readonly("rel", &AtomRelation::rel);

  py::class_<ConcreteRepresentation>(m, "ConcreteRepresentation")
      .def_readonly("carrier", &ConcreteRepresentation::carrier)
      .def_readonly("atom_map", &ConcreteRepresentation::atom_map);

  py::class_<GraResult>(m, "GraResult")
      .def_readonly("structure", &GraResult::structure)
      .def_readonly("representation", &GraResult::representation);

  py::class_<GroupInfo>(m, "GroupInfo")
      .def_readonly("atom", &GroupInfo::atom)
      .def_readonly("measurable", &GroupInfo::measurable)
      .def_readonly("reason", &GroupInfo::reason)
      .def_readonly("members", &GroupInfo::members)
      .def_property_readonly("order", &GroupInfo::order)
      .def_property_readonly("cyclic", &GroupInfo::cyclic)
      .def_readonly("powers", &GroupInfo::powers);

  py::class_<MeasurabilityAnalysis>(m, "MeasurabilityAnalysis")
      .def_readonly("identity_atoms", &MeasurabilityAnalysis::identity_atoms)
      .def_readonly("blocks", &MeasurabilityAnalysis::blocks)
      .def_readonly("e_equivalence", &MeasurabilityAnalysis::e_equivalence)
      .def_readonly("groups", &MeasurabilityAnalysis::groups)
      .def_readonly("measurable", &MeasurabilityAnalysis::measurable)
      .def_readonly("all_cyclic", &MeasurabilityAnalysis::all_cyclic)
      .def("rectangle", [](const MeasurabilityAnalysis& m, int i, int j) {
        return m.rectangle(i, j).to_vector();
      });

  py::class_<RegularElementInfo>(m, "RegularElementInfo")
      .def_property_readonly(
          "element",
          [](const RegularElementInfo& r) { return r.element.to_vector(); })
      .def_readonly("left_stabilizer", &RegularElementInfo::left_stabilizer)
      .def_readonly("right_stabilizer", &RegularElementInfo::right_stabilizer)
      .def_readonly("index", &RegularElementInfo::index)
      .def_readonly("regular", &RegularElementInfo::regular);

  py::class_<Scaffold>(m, "Scaffold").def_readonly("atoms", &Scaffold::atoms);

  py::class_<RepresentationResult>(m, "RepresentationResult")
      .def_readonly("analysis", &RepresentationResult::analysis)
      .def_readonly("scaffold", &RepresentationResult::scaffold)
      .def_readonly("indices", &RepresentationResult::indices)
      .def_readonly("system", &RepresentationResult::system)
      .def_readonly("gra", &RepresentationResult::gra)
      .def_readonly("atom_map", &RepresentationResult::atom_map)
      .def_readonly("verification", &RepresentationResult::verification);

  py::class_<ClassificationReport>(m, "ClassificationReport")
      .def_readonly("pair_dense", &ClassificationReport::pair_dense)
      .def_readonly("jt_case", &ClassificationReport::jt_case)
      .def_readonly("n_density", &ClassificationReport::n_density)
      .def_readonly("representable", &ClassificationReport::representable)
      .def("line", &ClassificationReport::line);

  m.def("parse_index_system", &parse_index_system);
  m.def("dump_index_system", &dump_index_system);
  m.def("render_diagram", &render_diagram);
  m.def("check_index_conditions", &check_index_conditions);
  m.def("build_frame", &build_frame);
  m.def("check_frame_conditions", &check_frame_conditions);
  m.def("indices_of_frame", &indices_of_frame);
  m.def("build_gra", &build_gra);
  m.def("verify_complete_representation", &verify_complete_representation);
  m.def("check_laws", &check_laws);
  m.def("analyze_measurability", &analyze_measurability);
  m.def("stabilizers",
        [](const AtomStructure& a, const MeasurabilityAnalysis& ma,
           const std::vector<int>& element) {
          return stabilizers(a, ma, to_set(a, element));
        });
  m.def("index_matrix", &index_matrix);
  m.def("index_arithmetic_check", &index_arithmetic_check);
  m.def("build_scaffold", &build_scaffold);
  m.def("check_scaffold", &check_scaffold);
  m.def("represent", &represent);
  m.def("iso_search", &iso_search);
  m.def("is_pair", &is_pair);
  m.def("classify", &classify);
  m.def("parse_atom_structure", &parse_atom_structure);
  m.def("dump_atom_structure", &dump_atom_structure);
  m.def("dump_relations", &dump_relations);
  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  });
}
