#pragma once

#include <map>
#include <vector>

#include "robsynth/report.hpp"

namespace robsynth {

/// Optimal synthesis for the automaton's own acceptance condition.
RobustnessReport synthesize(const MetricAutomaton& a);

/// Exact sigma of a strategy for the automaton's own acceptance condition.
RobustnessReport verify(const MetricAutomaton& a, const Strategy& s);

/// Fixpoint values per state: one entry for reachability and Buchi, one per
/// set for generalized Buchi, one per even set for parity.
std::map<StateId, std::vector<ExtNonNeg>> fixpoint_values(const MetricAutomaton& a);

}  // namespace robsynth
