#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/certificates.hpp"

namespace robsynth {

/// Length of a nominal strategy trace counts states, so a trace of n
/// transitions has length n + 1.
struct FaultBound {
  /// nullopt when some contributing trace never reaches its target, when a
  /// fault can reach a state the strategy loses from, or (parity) when the
  /// separation condition fails.
  std::optional<std::size_t> n;
  /// Radius gamma_bar * sigma_recurrent used for the inflated sets.
  ExtNonNeg radius;
  /// F' per target (one for Buchi, one per even colour for parity),
  /// limited to states the strategy can reach under disturbance.
  std::vector<StateSet> inflated;
  /// trace_lengths[k][q] for q in inflated[k]; nullopt = target not reached.
  std::vector<std::map<StateId, std::optional<std::size_t>>> trace_lengths;
  /// The strategy was checked to be induced from a valid CLF.
  bool pedigree = false;
  /// Finite N and pedigree both hold.
  bool certified = false;
  std::vector<std::string> notes;
};

/// N-bound for a deterministic Buchi or parity strategy. With a certificate,
/// the strategy must lie inside the permissive strategy induced from it for
/// the bound to count as certified. Throws PreconditionError (wrong objective,
/// non-deterministic strategy) or NotWinningError.
FaultBound compute_fault_bound(const MetricAutomaton& a, const Strategy& s,
                               const std::optional<RankCertificate>& certificate = std::nullopt);

struct FaultEvent {
  /// Transition index: the step from trace[step] to trace[step + 1].
  std::size_t step = 0;
  StateId target = 0;
  friend bool operator==(const FaultEvent&, const FaultEvent&) = default;
};

/// Faults at fixed positions. When loop_length > 0, the events with step in
/// [loop_start, loop_start + loop_length) repeat with that period forever.
struct FaultScript {
  std::vector<FaultEvent> events;
  std::size_t loop_start = 0;
  std::size_t loop_length = 0;
};

struct SimOutcome {
  bool violation = false;
  /// Losing lasso; an empty loop is a deadlock at the last stem state.
  Lasso witness;
  /// The witness's faults as a script that replays it.
  FaultScript script;
  std::size_t explored = 0;
};

/// Exact model check of the strategy against every N-bounded adversary, on
/// the product of states and a steps-since-fault counter saturated at N.
/// Throws PreconditionError when |Q| exceeds state_cap or the strategy is
/// not deterministic.
SimOutcome exhaustive_adversary_search(const MetricAutomaton& a, const Strategy& s, std::size_t n_bound,
                                       std::size_t state_cap = 10);

struct ThresholdResult {
  /// Smallest N at which the search found no violation.
  std::size_t threshold = 0;
  /// Violation at threshold - 1, if threshold > 0.
  std::optional<SimOutcome> below;
};

/// Searches downward from `start` until a violation appears. Monotone in N,
/// so the first violating value bounds the threshold.
ThresholdResult empirical_threshold(const MetricAutomaton& a, const Strategy& s, std::size_t start,
                                    std::size_t state_cap = 10);

enum class AdversaryKind { Nominal, Random, Scripted };

struct Adversary {
  AdversaryKind kind = AdversaryKind::Nominal;
  std::uint64_t seed = 0;
  /// Random mode: minimum spacing between faults.
  std::size_t n_bound = 1;
  /// Random mode: probability of a fault when one is allowed.
  double fault_rate = 0.5;
  FaultScript script;
  /// Scripted mode: spacing the script must respect.
  std::size_t script_spacing = 0;
};

struct RunResult {
  /// steps + 1 states, fewer on a deadlock.
  std::vector<StateId> trace;
  std::vector<FaultEvent> faults;
  bool deadlock = false;
  /// Closed lasso: exact for nominal and scripted runs once the adversary is
  /// periodic, otherwise the last state repeat of the trace.
  std::optional<Lasso> lasso;
  bool exact = false;
  /// Acceptance of the lasso (Buchi or parity).
  std::optional<bool> accepted;
};

/// Deterministic given the adversary. Throws PreconditionError when a script
/// breaks its spacing or names a target outside the disturbed successors.
RunResult simulate_run(const MetricAutomaton& a, const Strategy& s, const Adversary& adversary, std::size_t steps);

/// Checks the spacing of a script, the periodic part unrolled twice.
bool script_respects_spacing(const FaultScript& script, std::size_t n_bound, std::string* why = nullptr);

}  // namespace robsynth
