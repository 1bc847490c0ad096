#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "robsynth/rational.hpp"

namespace robsynth {

using StateId = std::size_t;
using InputId = std::size_t;
using StateSet = std::set<StateId>;
using InputSet = std::set<InputId>;

/// Raised for structurally malformed models (dangling references, shape
/// mismatches). Semantic problems are reported by validate_automaton instead.
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's precondition does not hold for its inputs.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct State {
  std::string name;
  /// Bit vector (Hamming) or integer tuple (Manhattan); empty for explicit metrics.
  std::vector<long long> coords;
};

enum class MetricKind { Explicit, Hamming, Manhattan };

struct Transition {
  StateId from = 0;
  InputId input = 0;
  StateId nominal = 0;
  /// Absent: closed ball of radius gamma(nominal) around the nominal target.
  std::optional<std::vector<StateId>> disturbed;
};

struct DisturbanceBound {
  std::optional<Rational> constant;
  std::vector<Rational> per_state;

  static DisturbanceBound uniform(Rational g) { return {std::move(g), {}}; }
  static DisturbanceBound by_state(std::vector<Rational> g) { return {std::nullopt, std::move(g)}; }
};

enum class AcceptanceKind { Reachability, Buchi, GeneralizedBuchi, Parity };

const char* to_string(AcceptanceKind kind);

/// Reachability and Buchi carry exactly one set. Parity sets are indexed from
/// zero: sets[i] holds the states of colour i.
struct Acceptance {
  AcceptanceKind kind = AcceptanceKind::Reachability;
  std::vector<StateSet> sets;

  static Acceptance reachability(StateSet f) { return {AcceptanceKind::Reachability, {std::move(f)}}; }
  static Acceptance buchi(StateSet f) { return {AcceptanceKind::Buchi, {std::move(f)}}; }
  static Acceptance generalized_buchi(std::vector<StateSet> fs) {
    return {AcceptanceKind::GeneralizedBuchi, std::move(fs)};
  }
  static Acceptance parity(std::vector<StateSet> colours) {
    return {AcceptanceKind::Parity, std::move(colours)};
  }

  /// The single target set of a reachability/Buchi condition.
  const StateSet& target() const;
  /// Number of even colours (components of a parity rank vector).
  std::size_t even_count() const { return (sets.size() + 1) / 2; }
  /// Even colour 2k as a state set; empty if the list is shorter.
  const StateSet& even_set(std::size_t k) const;
};

/// Everything needed to build an automaton. Kept verbatim by MetricAutomaton
/// so documents serialize back exactly as written.
struct AutomatonDef {
  std::vector<State> states;
  MetricKind metric = MetricKind::Explicit;
  std::vector<std::vector<ExtNonNeg>> matrix;
  StateId initial = 0;
  std::vector<std::string> inputs;
  std::vector<Transition> transitions;
  DisturbanceBound gamma = DisturbanceBound::uniform(0);
  Acceptance acceptance;
};

/// Finite metric automaton. Immutable after construction; disturbed successor
/// sets are expanded once (ball semantics where no explicit set is given).
class MetricAutomaton {
public:
  /// Throws ModelError on dangling ids, duplicate (state, input) transitions
  /// or metric shape mismatches.
  explicit MetricAutomaton(AutomatonDef def);

  const AutomatonDef& definition() const { return def_; }

  std::size_t num_states() const { return def_.states.size(); }
  std::size_t num_inputs() const { return def_.inputs.size(); }
  StateId initial() const { return def_.initial; }
  const std::string& state_name(StateId q) const { return def_.states.at(q).name; }
  const std::string& input_name(InputId a) const { return def_.inputs.at(a); }
  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<InputId> find_input(const std::string& name) const;
  /// Like find_state but throws ModelError for unknown names.
  StateId state(const std::string& name) const;
  InputId input(const std::string& name) const;

  MetricKind metric_kind() const { return def_.metric; }
  ExtNonNeg distance(StateId p, StateId q) const;
  /// inf over the set; infinity for the empty set.
  ExtNonNeg distance_to_set(StateId q, const StateSet& set) const;
  /// Whether d(p, q) <= radius.
  bool within(StateId p, StateId q, const Rational& radius) const;

  const Rational& gamma(StateId q) const;
  const Rational& gamma_bar() const { return gamma_bar_; }
  bool constant_gamma() const;

  bool has_transition(StateId q, InputId a) const { return nominal_[q][a].has_value(); }
  std::optional<StateId> nominal(StateId q, InputId a) const { return nominal_[q][a]; }
  /// Post_a(q); empty when (q, a) has no transition.
  const StateSet& successors(StateId q, InputId a) const { return post_[q][a]; }
  bool explicit_disturbance(StateId q, InputId a) const { return explicit_[q][a]; }
  /// Inputs with a nominal transition at q, in declaration order.
  InputSet enabled_inputs(StateId q) const;

  const Acceptance& acceptance() const { return def_.acceptance; }
  /// Parity colour of q (index of the set containing it), if any.
  std::optional<std::size_t> colour(StateId q) const { return colour_[q]; }

  StateSet all_states() const;

private:
  AutomatonDef def_;
  std::vector<std::vector<std::optional<StateId>>> nominal_;
  std::vector<std::vector<StateSet>> post_;
  std::vector<std::vector<bool>> explicit_;
  std::vector<std::optional<std::size_t>> colour_;
  Rational gamma_bar_{0};
};

/// Memoryless (one counter) or indexed (one memoryless map per counter value)
/// set-valued strategy. An empty choice means "undefined at this state".
class Strategy {
public:
  Strategy() = default;
  static Strategy memoryless(std::vector<InputSet> choices);
  static Strategy indexed(std::vector<std::vector<InputSet>> choices);

  bool is_indexed() const { return indexed_; }
  std::size_t counters() const { return table_.size(); }
  std::size_t num_states() const { return table_.empty() ? 0 : table_.front().size(); }
  const InputSet& at(StateId q, std::size_t counter = 0) const { return table_.at(counter).at(q); }
  bool deterministic() const;
  /// Memoryless strategy S(., counter).
  Strategy column(std::size_t counter) const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

private:
  std::vector<std::vector<InputSet>> table_;
  bool indexed_ = false;
};

/// Ultimately periodic trace: stem followed by loop repeated forever.
struct Lasso {
  std::vector<StateId> stem;
  std::vector<StateId> loop;
};

/// States visited infinitely often are exactly the loop states.
bool lasso_buchi_accepts(const Lasso& lasso, const StateSet& f);
bool lasso_parity_accepts(const MetricAutomaton& a, const Lasso& lasso);

}  // namespace robsynth
