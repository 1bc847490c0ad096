// Python bindings. Documents, strategies, certificates and reports cross the
// boundary as JSON text in the same formats the command-line tool uses.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robsynth/certificates.hpp"
#include "robsynth/dispatch.hpp"
#include "robsynth/examples.hpp"
#include "robsynth/fault.hpp"
#include "robsynth/io.hpp"
#include "robsynth/model.hpp"

namespace py = pybind11;
using namespace robsynth;

namespace {

std::optional<Strategy> maybe_strategy(const MetricAutomaton& a, const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return parse_strategy(a, *text);
}

}  // namespace

PYBIND11_MODULE(_robsynth, m) {
  m.doc() = "Robust strategy synthesis and verification for metric automata";

  py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NotWinningError>(m, "NotWinningError", precondition.ptr());

  py::class_<MetricAutomaton>(m, "Automaton")
      .def_static(
          "from_json", [](const std::string& text, bool validate) { return parse_document(text, validate); },
          py::arg("text"), py::arg("validate") = true)
      .def("to_json", [](const MetricAutomaton& a) { return serialize_document(a); })
      .def_property_readonly("states",
                             [](const MetricAutomaton& a) {
                               std::vector<std::string> out;
                               for (StateId q = 0; q < a.num_states(); ++q) out.push_back(a.state_name(q));
                               return out;
                             })
      .def_property_readonly("inputs",
                             [](const MetricAutomaton& a) {
                               std::vector<std::string> out;
                               for (InputId i = 0; i < a.num_inputs(); ++i) out.push_back(a.input_name(i));
                               return out;
                             })
      .def_property_readonly("initial", [](const MetricAutomaton& a) { return a.state_name(a.initial()); })
      .def("validate", [](const MetricAutomaton& a) {
        return validation_to_json(a, validate_automaton(a), check_coreachability(a));
      });

  m.def("running_example", &running_example, py::arg("buchi") = false);
  m.def("gray_code", &gray_code, py::arg("bits"));
  m.def(
      "leader_election", [](const std::string& rule) { return leader_election(parse_consensus_rule(rule)); },
      py::arg("rule"));

  m.def(
      "synthesize", [](const MetricAutomaton& a) { return report_to_json(a, synthesize(a)); }, py::arg("automaton"));
  m.def(
      "verify",
      [](const MetricAutomaton& a, const std::string& strategy) {
        return report_to_json(a, verify(a, parse_strategy(a, strategy)));
      },
      py::arg("automaton"), py::arg("strategy"));
  m.def(
      "check_certificate",
      [](const MetricAutomaton& a, const std::string& certificate) {
        const RankCertificate cert = parse_certificate(a, certificate);
        const CertificateCheck chk = check_clf(a, cert);
        std::optional<SigmaBound> bound;
        if (chk.ok() && a.constant_gamma()) bound = sigma_bound_from_certificate(a, cert);
        return certificate_check_to_json(a, chk, bound);
      },
      py::arg("automaton"), py::arg("certificate"));
  m.def(
      "construct_certificate",
      [](const MetricAutomaton& a, const std::string& strategy, const std::string& eta) {
        return serialize_certificate(a, construct_clf_from_strategy(a, parse_strategy(a, strategy), parse_rational(eta)));
      },
      py::arg("automaton"), py::arg("strategy"), py::arg("eta") = "1");
  m.def(
      "induce_strategy",
      [](const MetricAutomaton& a, const std::string& certificate) {
        return serialize_strategy(a, induce_strategy_from_clf(a, parse_certificate(a, certificate)));
      },
      py::arg("automaton"), py::arg("certificate"));
  m.def(
      "fault_bound",
      [](const MetricAutomaton& a, const std::string& strategy, const std::optional<std::string>& certificate,
         bool search) {
        const Strategy s = parse_strategy(a, strategy);
        std::optional<RankCertificate> cert;
        if (certificate) cert = parse_certificate(a, *certificate);
        const FaultBound fb = compute_fault_bound(a, s, cert);
        std::optional<SimOutcome> out;
        if (search && fb.n) out = exhaustive_adversary_search(a, s, *fb.n);
        return fault_bound_to_json(a, fb, out, std::nullopt);
      },
      py::arg("automaton"), py::arg("strategy"), py::arg("certificate") = std::nullopt, py::arg("search") = false);
  m.def(
      "export_dot",
      [](const MetricAutomaton& a, const std::optional<std::string>& strategy) {
        return export_dot(a, maybe_strategy(a, strategy));
      },
      py::arg("automaton"), py::arg("strategy") = std::nullopt);
}
