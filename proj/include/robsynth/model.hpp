#pragma once

#include <string>
#include <vector>

#include "robsynth/automaton.hpp"

namespace robsynth {

struct Violation {
  /// Stable machine tag: identity, symmetry, triangle, gamma-bound,
  /// missing-nominal, unreachable, duplicate-name, empty-name, empty-target,
  /// parity-overlap, not-coreachable.
  std::string kind;
  std::string message;
  std::vector<StateId> witness;
  /// Reported but not disqualifying (triangle inequality, see README).
  bool warning = false;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// No violation other than warnings.
  bool ok() const;
  std::size_t count(const std::string& kind) const;
  std::size_t warnings() const;
};

/// Metric axioms, gamma bound of explicit disturbed sets, reachability from
/// the initial state, naming and acceptance-shape checks.
ValidationReport validate_automaton(const MetricAutomaton& a);

/// Nominal coreachability of the acceptance sets (see README for the parity rule).
ValidationReport check_coreachability(const MetricAutomaton& a);
/// Every state has a nominal path into each of the given sets.
ValidationReport check_coreachability(const MetricAutomaton& a, const std::vector<StateSet>& sets);

/// One-symbol successor of a set; states without an `a` transition contribute nothing.
StateSet post(const MetricAutomaton& a, const StateSet& from, InputId input);
/// Post_w(q), with Post of the empty word being {q}.
StateSet post(const MetricAutomaton& a, StateId q, const std::vector<InputId>& word);

/// States reachable from `from` when state q may use the inputs allowed[q],
/// following every disturbed successor.
StateSet reachable_under(const MetricAutomaton& a, const std::vector<InputSet>& allowed,
                         StateId from);

struct Restriction {
  MetricAutomaton automaton;
  /// origin[new id] = id in the source automaton.
  std::vector<StateId> origin;
};

/// A|_S: states reachable from the initial state under the memoryless strategy,
/// transitions limited to chosen inputs. Disturbed sets are written out
/// explicitly. Throws PreconditionError when the strategy is indexed, chooses
/// a disabled input, or is undefined at a reachable state that has inputs
/// (reachability targets excepted).
Restriction restrict_by_strategy(const MetricAutomaton& a, const Strategy& s);

/// Re-indexes a memoryless strategy onto a restriction's state ids.
Strategy restrict_strategy(const Strategy& s, const std::vector<StateId>& origin);

/// Strategy choosing every enabled input everywhere.
Strategy all_inputs_strategy(const MetricAutomaton& a);

}  // namespace robsynth
