#include "robsynth/dispatch.hpp"

#include "robsynth/genbuchi.hpp"
#include "robsynth/model.hpp"
#include "robsynth/parity.hpp"
#include "robsynth/reach.hpp"

namespace robsynth {

RobustnessReport synthesize(const MetricAutomaton& a) {
  switch (a.acceptance().kind) {
    case AcceptanceKind::Reachability:
    case AcceptanceKind::Buchi:
      return synthesize_optimal(a, objective_of(a));
    case AcceptanceKind::GeneralizedBuchi:
      return synthesize_genbuchi(a);
    case AcceptanceKind::Parity:
      return synthesize_parity(a);
  }
  throw PreconditionError("unknown objective");
}

RobustnessReport verify(const MetricAutomaton& a, const Strategy& s) {
  switch (a.acceptance().kind) {
    case AcceptanceKind::Reachability:
    case AcceptanceKind::Buchi:
      return verify_strategy_sigma(a, s, objective_of(a));
    case AcceptanceKind::GeneralizedBuchi:
      return verify_genbuchi_sigma(a, s);
    case AcceptanceKind::Parity:
      return verify_parity_sigma(a, s);
  }
  throw PreconditionError("unknown objective");
}

std::map<StateId, std::vector<ExtNonNeg>> fixpoint_values(const MetricAutomaton& a) {
  std::map<StateId, std::vector<ExtNonNeg>> out;
  switch (a.acceptance().kind) {
    case AcceptanceKind::Reachability:
    case AcceptanceKind::Buchi: {
      const OptVector v = fixpoint_opt(a, a.acceptance().target());
      for (StateId q = 0; q < a.num_states(); ++q) out[q] = {v.values[q]};
      break;
    }
    case AcceptanceKind::GeneralizedBuchi: {
      const OptMatrix m = genbuchi_fixpoint(a, a.acceptance().sets);
      for (StateId q = 0; q < a.num_states(); ++q) {
        for (std::size_t k = 0; k < m.columns.size(); ++k) out[q].push_back(m.at(q, k));
      }
      break;
    }
    case AcceptanceKind::Parity: {
      const ParityOpt p = parity_fixpoint(a);
      for (StateId q = 0; q < a.num_states(); ++q) out[q] = p.values[q];
      break;
    }
  }
  return out;
}

}  // namespace robsynth
