#pragma once

#include <optional>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/reach.hpp"
#include "robsynth/report.hpp"

namespace robsynth {

using RankVector = std::vector<ExtNonNeg>;

/// One reachability fixpoint per target set, column k for F_k.
struct OptMatrix {
  std::vector<OptVector> columns;
  const ExtNonNeg& at(StateId q, std::size_t k) const { return columns.at(k).values.at(q); }
  std::size_t iterations() const;
};

/// Throws PreconditionError when some state cannot nominally reach every F_k.
OptMatrix genbuchi_fixpoint(const MetricAutomaton& a, const std::vector<StateSet>& sets);

/// a >^i b.
bool rank_greater(const RankVector& a, const RankVector& b, std::size_t i);
/// a >^i b, or component (i - 1) mod n of a is zero.
bool rank_rhd(const RankVector& a, const RankVector& b, std::size_t i);

/// Counter after arriving in `target` while aiming for F_counter.
std::size_t advance_counter(const std::vector<StateSet>& sets, std::size_t counter, StateId target);

/// Whether the lasso has the chain shape of the relation display, with the
/// phase moving to i+1 at each state of F_i. The phase must also advance
/// inside the repeating part. Sound, not complete. Throws
/// PreconditionError on an empty loop or rank/set size mismatch.
bool rhd_chain_check(const std::vector<RankVector>& ranks, const Lasso& lasso, const std::vector<StateSet>& sets);

/// A losing nominal outcome of an indexed strategy, in (state, counter) pairs
/// flattened to states, if one exists.
std::optional<Lasso> genbuchi_losing_outcome(const MetricAutomaton& a, const Strategy& s);

/// Column-wise sigma of an indexed strategy. Throws NotWinningError.
RobustnessReport verify_genbuchi_sigma(const MetricAutomaton& a, const Strategy& s);

/// Indexed strategy whose column k is a reachability strategy for F_k.
RobustnessReport synthesize_genbuchi(const MetricAutomaton& a);

}  // namespace robsynth
