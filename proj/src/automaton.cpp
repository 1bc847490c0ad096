#include "robsynth/automaton.hpp"

#include <algorithm>
#include <cstdlib>

namespace robsynth {

const char* to_string(AcceptanceKind kind) {
  switch (kind) {
    case AcceptanceKind::Reachability: return "reachability";
    case AcceptanceKind::Buchi: return "buchi";
    case AcceptanceKind::GeneralizedBuchi: return "generalized-buchi";
    case AcceptanceKind::Parity: return "parity";
  }
  return "unknown";
}

const StateSet& Acceptance::target() const {
  if (sets.empty()) throw ModelError("acceptance condition has no sets");
  return sets.front();
}

const StateSet& Acceptance::even_set(std::size_t k) const {
  static const StateSet empty;
  return 2 * k < sets.size() ? sets[2 * k] : empty;
}

MetricAutomaton::MetricAutomaton(AutomatonDef def) : def_(std::move(def)) {
  const std::size_t n = def_.states.size();
  const std::size_t m = def_.inputs.size();
  if (n == 0) throw ModelError("automaton has no states");
  if (def_.initial >= n) throw ModelError("initial state out of range");

  switch (def_.metric) {
    case MetricKind::Explicit:
      if (def_.matrix.size() != n) throw ModelError("metric matrix must have one row per state");
      for (const auto& row : def_.matrix) {
        if (row.size() != n) throw ModelError("metric matrix must be square");
      }
      break;
    case MetricKind::Hamming:
    case MetricKind::Manhattan: {
      const std::size_t len = def_.states.front().coords.size();
      for (const auto& s : def_.states) {
        if (s.coords.size() != len) {
          throw ModelError("state '" + s.name + "' has coordinates of the wrong length");
        }
        if (def_.metric == MetricKind::Hamming) {
          for (long long c : s.coords) {
            if (c != 0 && c != 1) throw ModelError("hamming coordinates must be bits");
          }
        }
      }
      break;
    }
  }

  if (def_.gamma.constant) {
    if (*def_.gamma.constant < 0) throw ModelError("gamma must be non-negative");
    gamma_bar_ = *def_.gamma.constant;
  } else {
    if (def_.gamma.per_state.size() != n) throw ModelError("per-state gamma needs one entry per state");
    for (const auto& g : def_.gamma.per_state) {
      if (g < 0) throw ModelError("gamma must be non-negative");
      gamma_bar_ = std::max(gamma_bar_, g);
    }
  }

  nominal_.assign(n, std::vector<std::optional<StateId>>(m));
  post_.assign(n, std::vector<StateSet>(m));
  explicit_.assign(n, std::vector<bool>(m, false));
  for (const auto& t : def_.transitions) {
    if (t.from >= n || t.nominal >= n) throw ModelError("transition references an unknown state");
    if (t.input >= m) throw ModelError("transition references an unknown input");
    if (nominal_[t.from][t.input]) {
      throw ModelError("duplicate transition for (" + def_.states[t.from].name + ", " +
                       def_.inputs[t.input] + ")");
    }
    nominal_[t.from][t.input] = t.nominal;
    StateSet& post = post_[t.from][t.input];
    if (t.disturbed) {
      explicit_[t.from][t.input] = true;
      for (StateId q : *t.disturbed) {
        if (q >= n) throw ModelError("disturbed set references an unknown state");
        post.insert(q);
      }
      // The nominal outcome is always possible; validation flags its absence.
      post.insert(t.nominal);
    } else {
      const Rational& radius = gamma(t.nominal);
      for (StateId q = 0; q < n; ++q) {
        if (within(q, t.nominal, radius)) post.insert(q);
      }
    }
  }

  colour_.assign(n, std::nullopt);
  for (std::size_t i = 0; i < def_.acceptance.sets.size(); ++i) {
    for (StateId q : def_.acceptance.sets[i]) {
      if (q >= n) throw ModelError("acceptance set references an unknown state");
      if (def_.acceptance.kind == AcceptanceKind::Parity && !colour_[q]) colour_[q] = i;
    }
  }
}

std::optional<StateId> MetricAutomaton::find_state(const std::string& name) const {
  for (StateId q = 0; q < def_.states.size(); ++q) {
    if (def_.states[q].name == name) return q;
  }
  return std::nullopt;
}

std::optional<InputId> MetricAutomaton::find_input(const std::string& name) const {
  for (InputId a = 0; a < def_.inputs.size(); ++a) {
    if (def_.inputs[a] == name) return a;
  }
  return std::nullopt;
}

StateId MetricAutomaton::state(const std::string& name) const {
  if (auto q = find_state(name)) return *q;
  throw ModelError("unknown state '" + name + "'");
}

InputId MetricAutomaton::input(const std::string& name) const {
  if (auto a = find_input(name)) return *a;
  throw ModelError("unknown input '" + name + "'");
}

namespace {

long long coord_distance(MetricKind kind, const std::vector<long long>& x,
                         const std::vector<long long>& y) {
  long long d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (kind == MetricKind::Hamming) {
      d += x[i] != y[i] ? 1 : 0;
    } else {
      d += std::llabs(x[i] - y[i]);
    }
  }
  return d;
}

}  // namespace

ExtNonNeg MetricAutomaton::distance(StateId p, StateId q) const {
  if (def_.metric == MetricKind::Explicit) return def_.matrix.at(p).at(q);
  return ExtNonNeg(coord_distance(def_.metric, def_.states.at(p).coords, def_.states.at(q).coords));
}

ExtNonNeg MetricAutomaton::distance_to_set(StateId q, const StateSet& set) const {
  ExtNonNeg best = ExtNonNeg::infinity();
  for (StateId f : set) {
    ExtNonNeg d = distance(q, f);
    if (d < best) best = d;
  }
  return best;
}

bool MetricAutomaton::within(StateId p, StateId q, const Rational& radius) const {
  if (def_.metric == MetricKind::Explicit) {
    const ExtNonNeg& d = def_.matrix[p][q];
    return d.is_finite() && d.value() <= radius;
  }
  // Integer metrics: compare against the integer part of the radius.
  return Rational(coord_distance(def_.metric, def_.states[p].coords, def_.states[q].coords)) <= radius;
}

const Rational& MetricAutomaton::gamma(StateId q) const {
  if (def_.gamma.constant) return *def_.gamma.constant;
  return def_.gamma.per_state.at(q);
}

bool MetricAutomaton::constant_gamma() const {
  if (def_.gamma.constant) return true;
  const auto& g = def_.gamma.per_state;
  return std::all_of(g.begin(), g.end(), [&](const Rational& x) { return x == g.front(); });
}

InputSet MetricAutomaton::enabled_inputs(StateId q) const {
  InputSet out;
  for (InputId a = 0; a < num_inputs(); ++a) {
    if (nominal_[q][a]) out.insert(a);
  }
  return out;
}

StateSet MetricAutomaton::all_states() const {
  StateSet out;
  for (StateId q = 0; q < num_states(); ++q) out.insert(q);
  return out;
}

Strategy Strategy::memoryless(std::vector<InputSet> choices) {
  Strategy s;
  s.table_.push_back(std::move(choices));
  return s;
}

Strategy Strategy::indexed(std::vector<std::vector<InputSet>> choices) {
  if (choices.empty()) throw std::invalid_argument("indexed strategy needs at least one counter value");
  for (const auto& col : choices) {
    if (col.size() != choices.front().size()) {
      throw std::invalid_argument("indexed strategy columns must cover the same states");
    }
  }
  Strategy s;
  s.table_ = std::move(choices);
  s.indexed_ = true;
  return s;
}

bool Strategy::deterministic() const {
  for (const auto& col : table_) {
    for (const auto& c : col) {
      if (c.size() > 1) return false;
    }
  }
  return true;
}

Strategy Strategy::column(std::size_t counter) const { return memoryless(table_.at(counter)); }

bool lasso_buchi_accepts(const Lasso& lasso, const StateSet& f) {
  return std::any_of(lasso.loop.begin(), lasso.loop.end(), [&](StateId q) { return f.count(q) > 0; });
}

bool lasso_parity_accepts(const MetricAutomaton& a, const Lasso& lasso) {
  std::optional<std::size_t> least;
  for (StateId q : lasso.loop) {
    if (auto c = a.colour(q)) {
      if (!least || *c < *least) least = c;
    }
  }
  return least && *least % 2 == 0;
}

}  // namespace robsynth
