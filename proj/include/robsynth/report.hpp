#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robsynth/automaton.hpp"

namespace robsynth {

/// Raised when a strategy is not nominally winning; carries a losing outcome.
/// A witness with an empty loop is a finite outcome ending in a deadlock.
class NotWinningError : public PreconditionError {
public:
  NotWinningError(const std::string& what, Lasso witness)
      : PreconditionError(what), witness_(std::move(witness)) {}
  const Lasso& witness() const { return witness_; }

private:
  Lasso witness_;
};

struct RobustnessReport {
  AcceptanceKind objective = AcceptanceKind::Reachability;
  /// sigma_times_gamma / gamma_bar, or 0 when gamma_bar is 0.
  ExtNonNeg sigma;
  /// Raw fixpoint distance at the initial state (sigma * gamma_bar).
  ExtNonNeg sigma_times_gamma;
  Rational gamma_bar{0};
  /// gamma_bar = 0: the strategy wins exactly, no inflation needed.
  bool exact_win = false;
  /// F' for each acceptance set (each even set for parity).
  std::vector<StateSet> inflated;
  std::optional<Strategy> strategy;
  /// Fixpoint values keyed by state id of the analysed automaton, one entry
  /// per component (one for reach/buchi, n for gen-buchi, even sets for parity).
  std::map<StateId, std::vector<ExtNonNeg>> values;
  /// Largest number of value-changing iterations of any fixpoint run.
  std::size_t iterations = 0;
  /// State count of the automaton the fixpoint ran on.
  std::size_t analysed_states = 0;
  /// Largest fixpoint value over every state the strategy can reach, scaled
  /// by gamma_bar (Buchi, generalized Buchi; parity uses the largest finite
  /// component). After a fault the play is only guaranteed this close.
  std::optional<ExtNonNeg> sigma_recurrent;
  /// Parity: separation condition holds. Always true for other objectives.
  bool certified = true;
  /// Synthesis: verified sigma of the returned strategy equals sigma_min.
  std::optional<bool> attains_optimum;
  /// Parity synthesis: the min-over-components figure, reported alongside the max.
  std::optional<ExtNonNeg> sigma_min_formula;
  /// Per-component scaled values at the initial state (gen-buchi columns, parity components).
  std::vector<ExtNonNeg> component_sigma;
  std::vector<std::string> notes;
};

/// value / gamma; infinity stays infinity; gamma = 0 maps to 0.
ExtNonNeg scale_by_gamma(const ExtNonNeg& value, const Rational& gamma);

/// {q : d(q, F) <= radius}.
StateSet inflate(const MetricAutomaton& a, const StateSet& f, const ExtNonNeg& radius);

}  // namespace robsynth
