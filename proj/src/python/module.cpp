#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "regconst/cli.hpp"
#include "regconst/error.hpp"
#include "regconst/io.hpp"

namespace py = pybind11;
using namespace regconst;

namespace {

using LabelMap = std::map<std::string, std::int64_t>;

StructurePtr structure_of(const std::string& spec) { return analyse(parse_group_spec(spec, element_budget_from_env())); }

GRelation relation_of(const StructurePtr& s, const LabelMap& terms) {
  GRelation rel = GRelation::zero(s);
  for (const auto& [label, n] : terms) rel.add(resolve_label(*s, label), n);
  return rel;
}

LabelMap labelled(const GRelation& rel) {
  LabelMap out;
  for (const auto& [c, n] : rel.support()) out[rel.structure().subgroup_class(c).label] = n;
  return out;
}

SubgroupFunction function_of(const StructurePtr& s, const std::map<std::string, std::string>& values) {
  std::vector<std::optional<Rational>> slots(s->classes().size());
  for (const auto& [label, text] : values) slots[resolve_label(*s, label)] = parse_rational(text);
  std::vector<Rational> out;
  for (std::size_t c = 0; c < slots.size(); ++c) {
    if (!slots[c]) fail(ErrorCategory::validation, "no value for subgroup " + s->subgroup_class(c).label);
    out.push_back(*slots[c]);
  }
  return SubgroupFunction(s, std::move(out));
}

std::map<std::string, std::string> labelled(const SubgroupFunction& f) {
  std::map<std::string, std::string> out;
  for (std::size_t c = 0; c < f.structure().classes().size(); ++c)
    out[f.structure().subgroup_class(c).label] = to_string(f[c]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regulator constants of G-lattices and Brauer relations";

  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(category_name(e.category())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "subgroup_classes",
      [](const std::string& spec) {
        const auto s = structure_of(spec);
        py::list out;
        for (const auto& c : s->classes()) {
          py::dict d;
          d["label"] = c.label;
          d["order"] = c.order;
          d["size"] = c.class_size;
          d["cyclic"] = c.is_cyclic;
          d["normal"] = c.is_normal();
          out.append(d);
        }
        return out;
      },
      py::arg("spec"));

  m.def(
      "relation_basis",
      [](const std::string& spec) {
        std::vector<LabelMap> out;
        for (const auto& r : relation_basis(structure_of(spec))) out.push_back(labelled(r));
        return out;
      },
      py::arg("spec"));

  m.def(
      "is_relation",
      [](const std::string& spec, const LabelMap& terms) { return is_relation(relation_of(structure_of(spec), terms)); },
      py::arg("spec"), py::arg("relation"));

  m.def(
      "regulator_constant",
      [](const std::string& spec, const std::string& lattice, const LabelMap& terms) {
        const auto s = structure_of(spec);
        return to_string(regulator_constant(parse_lattice_expr(lattice, s), relation_of(s, terms)).value);
      },
      py::arg("spec"), py::arg("lattice"), py::arg("relation"));

  m.def(
      "bouc_spans_basis",
      [](const std::string& spec, std::uint64_t p) {
        const auto s = structure_of(spec);
        std::vector<GRelation> spanned;
        for (const auto& g : bouc_generators(s, p)) spanned.push_back(g.relation);
        return same_lattice(spanned, relation_basis(s));
      },
      py::arg("spec"), py::arg("p"));

  m.def(
      "factorisable_quotient",
      [](const std::string& spec, const std::map<std::string, std::string>& values) {
        return labelled(factorisable_quotient(function_of(structure_of(spec), values)));
      },
      py::arg("spec"), py::arg("values"));

  m.def(
      "is_factorisable",
      [](const std::string& spec, const std::map<std::string, std::string>& values) {
        return is_factorisable_abelian(function_of(structure_of(spec), values));
      },
      py::arg("spec"), py::arg("values"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command line; returns (exit code, stdout, stderr).");
}
