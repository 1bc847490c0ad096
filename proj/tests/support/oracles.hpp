#pragma once

#include <optional>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/certificates.hpp"

namespace robsynth::testing {

/// Closed-loop robust value by thresholds: the least t among the distances
/// to F such that the controller can force the play into {d <= t} against
/// every disturbance. Computed with set attractors, independent of the
/// min-max iteration.
std::vector<ExtNonNeg> attractor_opt_oracle(const MetricAutomaton& a, const StateSet& f,
                                            const std::optional<Strategy>& s = std::nullopt);

/// Raw robust distance of a memoryless strategy at the initial state
/// (sigma * gamma_bar), from the strategy-restricted attractor.
ExtNonNeg strategy_sigma_oracle(const MetricAutomaton& a, const Strategy& s, const StateSet& f);

/// Least colour seen on the loop, read straight off the colour table.
std::optional<std::size_t> least_loop_colour(const MetricAutomaton& a, const Lasso& lasso);

/// Largest |R(p) - R(q)| / d(p, q) by direct enumeration over ordered pairs.
ExtNonNeg lipschitz_oracle(const MetricAutomaton& a, const RankCertificate& cert);

/// Whether every nominal outcome of a deterministic memoryless strategy from
/// the initial state is winning, by explicit unrolling of the unique trace.
bool nominal_win_oracle(const MetricAutomaton& a, const Strategy& s);
/// Same, for the run starting at `start`.
bool nominal_win_from(const MetricAutomaton& a, const Strategy& s, StateId start);

/// Every pair (p, q) with |R(p) - R(q)| <= K d(p, q).
bool lipschitz_inequality_holds(const MetricAutomaton& a, const RankCertificate& cert, const ExtNonNeg& k);

/// Longest nominal walk under s from q before hitting f, counted in states
/// including both ends; nullopt if the walk loops or stops outside f.
std::optional<std::size_t> nominal_trace_length(const MetricAutomaton& a, const Strategy& s, StateId q,
                                                const StateSet& f);

}  // namespace robsynth::testing
