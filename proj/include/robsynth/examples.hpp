#pragma once

#include <string>

#include "robsynth/automaton.hpp"

namespace robsynth {

/// Seven-state running example with gamma = 1 and ball semantics. The Buchi
/// variant adds q6 -a-> q0 and q6 -b-> q2.
MetricAutomaton running_example(bool buchi = false);

/// Cyclic reflected Gray-code counter over `bits` bits (1..12), Hamming metric,
/// gamma = 1, single input "next", Buchi target {0...0}.
MetricAutomaton gray_code(int bits);

enum class ConsensusRule { Min, Max, FloorAverage };

ConsensusRule parse_consensus_rule(const std::string& text);
const char* to_string(ConsensusRule rule);

/// Four nodes on the diamond 1-2, 1-3, 2-4, 3-4 starting from ids (1,2,3,4).
/// Each step every node applies the rule to its own value and its two
/// neighbours' values. A disturbance corrupts at most one message in the whole
/// network by +-1, clamped to 1..4. Manhattan metric, gamma = 1, reachability
/// target {iiii}. Only states reachable from 1234 are generated.
MetricAutomaton leader_election(ConsensusRule rule);

}  // namespace robsynth
