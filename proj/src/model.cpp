#include "robsynth/model.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace robsynth {

bool ValidationReport::ok() const {
  return std::none_of(violations.begin(), violations.end(), [](const Violation& v) { return !v.warning; });
}

std::size_t ValidationReport::warnings() const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [](const Violation& v) { return v.warning; }));
}

std::size_t ValidationReport::count(const std::string& kind) const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [&](const Violation& v) { return v.kind == kind; }));
}

namespace {

void check_metric(const MetricAutomaton& a, ValidationReport& report) {
  const std::size_t n = a.num_states();
  auto name = [&](StateId q) { return a.state_name(q); };
  if (a.metric_kind() != MetricKind::Explicit) {
    // Hamming and L1 distances are metrics by construction; only distinct
    // coordinates need checking.
    std::map<std::vector<long long>, StateId> seen;
    for (StateId q = 0; q < n; ++q) {
      auto [it, fresh] = seen.emplace(a.definition().states[q].coords, q);
      if (!fresh) {
        report.violations.push_back({"identity",
                                     "states " + name(it->second) + " and " + name(q) +
                                         " share coordinates (distance 0)",
                                     {it->second, q}});
      }
    }
    return;
  }
  for (StateId p = 0; p < n; ++p) {
    for (StateId q = 0; q < n; ++q) {
      const ExtNonNeg d = a.distance(p, q);
      if ((p == q) != d.is_zero()) {
        if (p <= q) {
          report.violations.push_back(
              {"identity",
               "d(" + name(p) + "," + name(q) + ") = " + to_string(d) + " breaks identity of indiscernibles",
               {p, q}});
        }
      }
      if (p < q && d != a.distance(q, p)) {
        report.violations.push_back({"symmetry",
                                     "d(" + name(p) + "," + name(q) + ") = " + to_string(d) + " but d(" +
                                         name(q) + "," + name(p) + ") = " + to_string(a.distance(q, p)),
                                     {p, q}});
      }
    }
  }
  for (StateId p = 0; p < n; ++p) {
    for (StateId q = 0; q < n; ++q) {
      for (StateId r = 0; r < n; ++r) {
        if (a.distance(p, r) > a.distance(p, q) + a.distance(q, r)) {
          report.violations.push_back({"triangle",
                                       "d(" + name(p) + "," + name(r) + ") > d(" + name(p) + "," + name(q) +
                                           ") + d(" + name(q) + "," + name(r) + ")",
                                       {p, q, r},
                                       true});
        }
      }
    }
  }
}

void check_transitions(const MetricAutomaton& a, ValidationReport& report) {
  for (const auto& t : a.definition().transitions) {
    if (!t.disturbed) continue;
    const std::string where = "(" + a.state_name(t.from) + ", " + a.input_name(t.input) + ")";
    if (std::find(t.disturbed->begin(), t.disturbed->end(), t.nominal) == t.disturbed->end()) {
      report.violations.push_back(
          {"missing-nominal", "disturbed set of " + where + " omits its nominal target", {t.from, t.nominal}});
    }
    const Rational& g = a.gamma(t.nominal);
    for (StateId q : *t.disturbed) {
      if (!a.within(q, t.nominal, g)) {
        report.violations.push_back({"gamma-bound",
                                     "disturbed successor " + a.state_name(q) + " of " + where + " lies at " +
                                         to_string(a.distance(q, t.nominal)) + " from nominal " +
                                         a.state_name(t.nominal) + ", above gamma " + format_rational(g),
                                     {t.from, t.nominal, q}});
      }
    }
  }
}

void check_acceptance(const MetricAutomaton& a, ValidationReport& report) {
  const Acceptance& acc = a.acceptance();
  if (acc.sets.empty()) {
    report.violations.push_back({"empty-target", "acceptance condition lists no sets", {}});
    return;
  }
  switch (acc.kind) {
    case AcceptanceKind::Reachability:
    case AcceptanceKind::Buchi:
      if (acc.sets.size() != 1) {
        report.violations.push_back({"empty-target", "reachability/buchi take exactly one set", {}});
      }
      if (acc.sets.front().empty()) {
        report.violations.push_back({"empty-target", "target set is empty", {}});
      }
      break;
    case AcceptanceKind::GeneralizedBuchi:
      for (std::size_t i = 0; i < acc.sets.size(); ++i) {
        if (acc.sets[i].empty()) {
          report.violations.push_back({"empty-target", "set F_" + std::to_string(i) + " is empty", {}});
        }
      }
      break;
    case AcceptanceKind::Parity: {
      std::vector<int> owner(a.num_states(), -1);
      for (std::size_t i = 0; i < acc.sets.size(); ++i) {
        for (StateId q : acc.sets[i]) {
          if (owner[q] >= 0) {
            report.violations.push_back({"parity-overlap",
                                         "state " + a.state_name(q) + " is in F_" + std::to_string(owner[q]) +
                                             " and F_" + std::to_string(i),
                                         {q}});
          } else {
            owner[q] = static_cast<int>(i);
          }
        }
      }
      bool any_even = false;
      for (std::size_t k = 0; k < acc.even_count(); ++k) any_even = any_even || !acc.even_set(k).empty();
      if (!any_even) report.violations.push_back({"empty-target", "no state has even colour", {}});
      break;
    }
  }
}

/// Backward nominal reachability: states with a nominal path (length >= 0) into target.
std::vector<bool> nominally_coreachable(const MetricAutomaton& a, const StateSet& target) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<StateId>> pred(n);
  for (StateId q = 0; q < n; ++q) {
    for (InputId in : a.enabled_inputs(q)) pred[*a.nominal(q, in)].push_back(q);
  }
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue;
  for (StateId f : target) {
    seen[f] = true;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    StateId v = queue.front();
    queue.pop_front();
    for (StateId p : pred[v]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

}  // namespace

ValidationReport validate_automaton(const MetricAutomaton& a) {
  ValidationReport report;
  std::map<std::string, StateId> names;
  for (StateId q = 0; q < a.num_states(); ++q) {
    const std::string& nm = a.state_name(q);
    if (nm.empty()) report.violations.push_back({"empty-name", "state " + std::to_string(q) + " has no name", {q}});
    auto [it, fresh] = names.emplace(nm, q);
    if (!fresh) {
      report.violations.push_back({"duplicate-name", "state name '" + nm + "' is used twice", {it->second, q}});
    }
  }
  check_metric(a, report);
  check_transitions(a, report);
  check_acceptance(a, report);

  std::vector<InputSet> all(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) all[q] = a.enabled_inputs(q);
  StateSet reach = reachable_under(a, all, a.initial());
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!reach.count(q)) {
      report.violations.push_back(
          {"unreachable", "state " + a.state_name(q) + " is not reachable from the initial state", {q}});
    }
  }
  return report;
}

ValidationReport check_coreachability(const MetricAutomaton& a) {
  ValidationReport report;
  const Acceptance& acc = a.acceptance();
  const std::size_t n = a.num_states();
  if (acc.kind != AcceptanceKind::Parity) return check_coreachability(a, acc.sets);
  // Parity: reach_below[k][q] says q nominally reaches an even set of index <= 2k.
  const std::size_t evens = acc.even_count();
  std::vector<std::vector<bool>> reach_upto(evens);
  StateSet cumulative;
  for (std::size_t k = 0; k < evens; ++k) {
    cumulative.insert(acc.even_set(k).begin(), acc.even_set(k).end());
    reach_upto[k] = nominally_coreachable(a, cumulative);
  }
  for (StateId q = 0; q < n; ++q) {
    if (evens == 0 || !reach_upto[evens - 1][q]) {
      report.violations.push_back(
          {"not-coreachable", "state " + a.state_name(q) + " has no nominal path to an even set", {q}});
      continue;
    }
    if (auto c = a.colour(q); c && *c % 2 == 1) {
      std::size_t k = (*c - 1) / 2;  // even colours 0..2k lie below colour 2k+1
      if (!reach_upto[k][q]) {
        report.violations.push_back({"not-coreachable",
                                     "odd state " + a.state_name(q) + " (colour " + std::to_string(*c) +
                                         ") reaches no smaller even colour",
                                     {q}});
      }
    }
  }
  return report;
}

ValidationReport check_coreachability(const MetricAutomaton& a, const std::vector<StateSet>& sets) {
  ValidationReport report;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto co = nominally_coreachable(a, sets[i]);
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (!co[q]) {
        report.violations.push_back(
            {"not-coreachable", "state " + a.state_name(q) + " has no nominal path to F_" + std::to_string(i), {q}});
      }
    }
  }
  return report;
}

StateSet post(const MetricAutomaton& a, const StateSet& from, InputId input) {
  StateSet out;
  for (StateId q : from) {
    const StateSet& s = a.successors(q, input);
    out.insert(s.begin(), s.end());
  }
  return out;
}

StateSet post(const MetricAutomaton& a, StateId q, const std::vector<InputId>& word) {
  StateSet cur{q};
  for (InputId in : word) {
    if (in >= a.num_inputs()) throw PreconditionError("word uses an unknown input");
    cur = post(a, cur, in);
  }
  return cur;
}

StateSet reachable_under(const MetricAutomaton& a, const std::vector<InputSet>& allowed, StateId from) {
  StateSet seen{from};
  std::vector<StateId> work{from};
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    if (q >= allowed.size()) continue;
    for (InputId in : allowed[q]) {
      for (StateId r : a.successors(q, in)) {
        if (seen.insert(r).second) work.push_back(r);
      }
    }
  }
  return seen;
}

Restriction restrict_by_strategy(const MetricAutomaton& a, const Strategy& s) {
  if (s.is_indexed()) throw PreconditionError("restriction needs a memoryless strategy");
  if (s.num_states() != a.num_states()) throw PreconditionError("strategy does not match the automaton's states");
  std::vector<InputSet> allowed(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (InputId in : s.at(q)) {
      if (!a.has_transition(q, in)) {
        throw PreconditionError("strategy chooses disabled input " + a.input_name(in) + " at " + a.state_name(q));
      }
    }
    allowed[q] = s.at(q);
  }
  StateSet reach = reachable_under(a, allowed, a.initial());
  const bool reach_goal = a.acceptance().kind == AcceptanceKind::Reachability;
  for (StateId q : reach) {
    if (s.at(q).empty() && !a.enabled_inputs(q).empty() &&
        !(reach_goal && a.acceptance().target().count(q))) {
      throw PreconditionError("strategy undefined at reachable state " + a.state_name(q));
    }
  }

  std::vector<StateId> origin(reach.begin(), reach.end());
  std::map<StateId, StateId> to_new;
  for (StateId i = 0; i < origin.size(); ++i) to_new[origin[i]] = i;

  const AutomatonDef& src = a.definition();
  AutomatonDef def;
  def.metric = src.metric;
  def.inputs = src.inputs;
  def.initial = to_new.at(a.initial());
  for (StateId old : origin) def.states.push_back(src.states[old]);
  if (src.metric == MetricKind::Explicit) {
    for (StateId p : origin) {
      std::vector<ExtNonNeg> row;
      for (StateId q : origin) row.push_back(src.matrix[p][q]);
      def.matrix.push_back(std::move(row));
    }
  }
  if (src.gamma.constant) {
    def.gamma = src.gamma;
  } else {
    std::vector<Rational> g;
    for (StateId old : origin) g.push_back(src.gamma.per_state[old]);
    def.gamma = DisturbanceBound::by_state(std::move(g));
  }
  for (StateId old : origin) {
    for (InputId in : allowed[old]) {
      Transition t;
      t.from = to_new.at(old);
      t.input = in;
      t.nominal = to_new.at(*a.nominal(old, in));
      std::vector<StateId> dist;
      for (StateId r : a.successors(old, in)) dist.push_back(to_new.at(r));
      t.disturbed = std::move(dist);
      def.transitions.push_back(std::move(t));
    }
  }
  def.acceptance.kind = src.acceptance.kind;
  for (const auto& set : src.acceptance.sets) {
    StateSet mapped;
    for (StateId q : set) {
      if (auto it = to_new.find(q); it != to_new.end()) mapped.insert(it->second);
    }
    def.acceptance.sets.push_back(std::move(mapped));
  }
  return {MetricAutomaton(std::move(def)), std::move(origin)};
}

Strategy restrict_strategy(const Strategy& s, const std::vector<StateId>& origin) {
  std::vector<InputSet> choices;
  for (StateId old : origin) choices.push_back(s.at(old));
  return Strategy::memoryless(std::move(choices));
}

Strategy all_inputs_strategy(const MetricAutomaton& a) {
  std::vector<InputSet> choices(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) choices[q] = a.enabled_inputs(q);
  return Strategy::memoryless(std::move(choices));
}

}  // namespace robsynth
