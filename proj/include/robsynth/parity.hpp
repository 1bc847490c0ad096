#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/report.hpp"

namespace robsynth {

/// One component per even colour 0, 2, 4, ...
using ParityVector = std::vector<ExtNonNeg>;

/// Lexicographic comparison of the first `prefix` components.
std::strong_ordering lex_compare(const ParityVector& a, const ParityVector& b, std::size_t prefix);
inline std::strong_ordering lex_compare(const ParityVector& a, const ParityVector& b) {
  return lex_compare(a, b, std::min(a.size(), b.size()));
}
const ParityVector& lex_min(const ParityVector& a, const ParityVector& b);
const ParityVector& lex_max(const ParityVector& a, const ParityVector& b);

/// Number of rank components constrained at a state of the given colour:
/// the even colours strictly below it. Uncoloured states constrain all.
std::size_t constrained_prefix(std::optional<std::size_t> colour, std::size_t components);

/// a |>^q b: strict on the prefix for odd colours, non-strict for even
/// colours, strict on every component for uncoloured states.
bool progress(std::optional<std::size_t> colour, const ParityVector& a, const ParityVector& b);

/// Even states from which no even state of lower or equal colour is reachable
/// in one or more steps, over every input and disturbance.
StateSet compute_qbar(const MetricAutomaton& a);

/// Whether |> holds on every edge of the loop, closing edge included. Stem
/// edges are the finite exception set and are not checked. Throws
/// PreconditionError on an empty loop.
bool progress_measure_holds(const MetricAutomaton& a, const std::vector<ParityVector>& ranks, const Lasso& lasso);

/// (d(q, F_0), d(q, F_2), ...) for every state.
std::vector<ParityVector> parity_distances(const MetricAutomaton& a);

struct ParityOpt {
  std::vector<ParityVector> values;
  std::size_t iterations = 0;
};

/// Lexicographic min-max fixpoint from `start`, restricted to allowed inputs.
ParityOpt parity_fixpoint(const MetricAutomaton& a, std::vector<ParityVector> start,
                          const std::vector<InputSet>& allowed);
/// From parity_distances over every enabled input. Throws PreconditionError
/// when the coreachability assumption fails.
ParityOpt parity_fixpoint(const MetricAutomaton& a);

struct ProgressRestriction {
  /// Same states as the source; inputs outside Lambda(q) removed.
  MetricAutomaton automaton;
  std::vector<InputSet> allowed;
  /// States left without inputs (kept as dead ends).
  StateSet pruned;
  std::vector<std::string> warnings;
};

/// A|_|>: input a stays at q iff d(q, F) |>^q d(nominal(q, a), F).
ProgressRestriction restrict_by_progress(const MetricAutomaton& a);

/// The nominal outcome of a deterministic strategy from the initial state.
/// A deadlock gives an empty loop.
Lasso nominal_outcome(const MetricAutomaton& a, const Strategy& s);

/// Every q outside F_2i with d(q, F_2i) <= radius is uncoloured.
bool separation_holds(const MetricAutomaton& a, const ExtNonNeg& radius, std::vector<std::string>* failures = nullptr);

/// Throws NotWinningError or PreconditionError (non-deterministic strategy).
RobustnessReport verify_parity_sigma(const MetricAutomaton& a, const Strategy& s);

/// Throws PreconditionError on failed coreachability or an empty Lambda(q) outside Q-bar.
RobustnessReport synthesize_parity(const MetricAutomaton& a);

}  // namespace robsynth
