#pragma once

#include <optional>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/report.hpp"

namespace robsynth {

struct OptVector {
  std::vector<ExtNonNeg> values;
  /// Operator applications that changed at least one value.
  std::size_t iterations = 0;
  /// Iteration at which each value reached its final level (0 = never moved).
  std::vector<std::size_t> level;
  /// Inputs that realised the last decrease of each value.
  std::vector<InputSet> improving;
};

/// d(q, F) for every state.
std::vector<ExtNonNeg> distances_to(const MetricAutomaton& a, const StateSet& f);

/// One application of the min-max operator, restricted to allowed inputs.
std::vector<ExtNonNeg> apply_opt_operator(const MetricAutomaton& a, const std::vector<ExtNonNeg>& opt,
                                          const std::vector<InputSet>& allowed);

/// Iterates the operator from `start` until nothing changes.
OptVector fixpoint_opt(const MetricAutomaton& a, std::vector<ExtNonNeg> start,
                       const std::vector<InputSet>& allowed);

/// Fixpoint from opt0 = d(., F) over all enabled inputs.
OptVector fixpoint_opt(const MetricAutomaton& a, const StateSet& f);

/// min over input words w of length < |Q| of max over Post_w(q) of d(., F).
/// Words that hit a state lacking the next symbol are skipped.
/// Throws PreconditionError when |Q| exceeds cap.
ExtNonNeg brute_force_opt_oracle(const MetricAutomaton& a, const StateSet& f, StateId q,
                                 std::size_t cap = 8);

enum class Objective { Reachability, Buchi };

/// A nominal outcome of s from the initial state that loses, if any.
std::optional<Lasso> nominal_losing_outcome(const MetricAutomaton& a, const Strategy& s,
                                            const StateSet& f, Objective objective);

/// Deterministic strategy read off a fixpoint for target f. Outside f it keeps
/// inputs that realised each state's final decrease and makes nominal progress
/// towards f; inside f it is undefined for reachability and, for Buchi, moves
/// to the successor with the smallest value.
std::vector<InputSet> recover_strategy(const MetricAutomaton& a, const StateSet& f, const OptVector& opt,
                                       Objective objective);

/// Sigma of a memoryless strategy on A|_S. Throws NotWinningError.
RobustnessReport verify_strategy_sigma(const MetricAutomaton& a, const Strategy& s, Objective objective);

/// sigma_min together with a deterministic memoryless strategy. Throws
/// PreconditionError when some state cannot nominally reach F.
RobustnessReport synthesize_optimal(const MetricAutomaton& a, Objective objective);

/// Reachability or Buchi, read off the automaton's acceptance kind.
Objective objective_of(const MetricAutomaton& a);

}  // namespace robsynth
