#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/certificates.hpp"
#include "robsynth/fault.hpp"
#include "robsynth/model.hpp"
#include "robsynth/report.hpp"

namespace robsynth {

struct DocumentIssue {
  /// "line L, column C" for syntax errors, a JSON pointer otherwise.
  std::string location;
  std::string message;
};

/// Parse failure with every issue found. kind is "syntax", "schema" or "validation".
class DocumentError : public std::runtime_error {
public:
  DocumentError(std::string kind, std::vector<DocumentIssue> issues);
  const std::string& kind() const { return kind_; }
  const std::vector<DocumentIssue>& issues() const { return issues_; }

private:
  std::string kind_;
  std::vector<DocumentIssue> issues_;
};

/// Reads an automaton document. With validate set, validate_automaton
/// violations are raised as a "validation" DocumentError.
MetricAutomaton parse_document(const std::string& text, bool validate = true);

/// Canonical text form: fixed key order, two-space indent, decimal strings
/// for every rational, trailing newline.
std::string serialize_document(const MetricAutomaton& a);

/// {"kind": "memoryless", "choices": {state: [inputs]}} or
/// {"kind": "indexed", "choices": [{state: [inputs]}, ...]}.
Strategy parse_strategy(const MetricAutomaton& a, const std::string& text);
std::string serialize_strategy(const MetricAutomaton& a, const Strategy& s);

/// {"objective", "f", "eta", "ranks": {state: [values]}}; a scalar rank may
/// be written as a single value.
RankCertificate parse_certificate(const MetricAutomaton& a, const std::string& text);
std::string serialize_certificate(const MetricAutomaton& a, const RankCertificate& cert);

/// {"events": [{"step", "target"}], "loop_start", "loop_length"}.
FaultScript parse_script(const MetricAutomaton& a, const std::string& text);
std::string serialize_script(const MetricAutomaton& a, const FaultScript& script);

std::string report_to_json(const MetricAutomaton& a, const RobustnessReport& rep);
std::string validation_to_json(const MetricAutomaton& a, const ValidationReport& structural,
                               const ValidationReport& coreach);
std::string certificate_check_to_json(const MetricAutomaton& a, const CertificateCheck& chk,
                                      const std::optional<SigmaBound>& bound);
std::string fault_bound_to_json(const MetricAutomaton& a, const FaultBound& fb,
                                const std::optional<SimOutcome>& search,
                                const std::optional<ThresholdResult>& threshold);
std::string run_to_json(const MetricAutomaton& a, const RunResult& run);
std::string lasso_to_json(const MetricAutomaton& a, const Lasso& lasso);

/// Graphviz text. Nominal edges solid (grouped per state pair, labelled with
/// their inputs), disturbance-only successors dashed, strategy edges bold,
/// targets double circles, optional per-state value annotations.
std::string export_dot(const MetricAutomaton& a, const std::optional<Strategy>& strategy = std::nullopt,
                       const std::optional<std::map<StateId, std::vector<ExtNonNeg>>>& values = std::nullopt);

}  // namespace robsynth
