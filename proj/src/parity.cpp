#include "robsynth/parity.hpp"

#include <algorithm>
#include <deque>

#include "robsynth/model.hpp"
#include "robsynth/reach.hpp"

namespace robsynth {

std::strong_ordering lex_compare(const ParityVector& a, const ParityVector& b, std::size_t prefix) {
  for (std::size_t k = 0; k < prefix; ++k) {
    if (auto c = a.at(k) <=> b.at(k); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

const ParityVector& lex_min(const ParityVector& a, const ParityVector& b) { return lex_compare(a, b) <= 0 ? a : b; }
const ParityVector& lex_max(const ParityVector& a, const ParityVector& b) { return lex_compare(a, b) >= 0 ? a : b; }

std::size_t constrained_prefix(std::optional<std::size_t> colour, std::size_t components) {
  if (!colour) return components;
  return std::min(components, (*colour + 1) / 2);
}

bool progress(std::optional<std::size_t> colour, const ParityVector& a, const ParityVector& b) {
  const std::size_t prefix = constrained_prefix(colour, a.size());
  const auto c = lex_compare(a, b, prefix);
  if (colour && *colour % 2 == 0) return c >= 0;
  return c > 0;
}

namespace {

// Backward closure over every input and disturbance; length >= 0.
std::vector<bool> coreach_any(const MetricAutomaton& a, const StateSet& target) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<StateId>> pred(n);
  for (StateId q = 0; q < n; ++q) {
    for (InputId in : a.enabled_inputs(q)) {
      for (StateId r : a.successors(q, in)) pred[r].push_back(q);
    }
  }
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue;
  for (StateId t : target) {
    seen[t] = true;
    queue.push_back(t);
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

void require_parity(const MetricAutomaton& a) {
  if (a.acceptance().kind != AcceptanceKind::Parity) throw PreconditionError("automaton acceptance is not parity");
}

ExtNonNeg max_finite(const ParityVector& v) {
  std::optional<ExtNonNeg> best;
  for (const auto& x : v) {
    if (x.is_finite() && (!best || x > *best)) best = x;
  }
  return best ? *best : ExtNonNeg::infinity();
}

}  // namespace

StateSet compute_qbar(const MetricAutomaton& a) {
  require_parity(a);
  const Acceptance& acc = a.acceptance();
  StateSet out;
  StateSet below;
  for (std::size_t i = 0; i < acc.even_count(); ++i) {
    below.insert(acc.even_set(i).begin(), acc.even_set(i).end());
    const auto co = coreach_any(a, below);
    for (StateId q : acc.even_set(i)) {
      bool returns = false;
      for (InputId in : a.enabled_inputs(q)) {
        for (StateId r : a.successors(q, in)) returns = returns || co[r];
      }
      if (!returns) out.insert(q);
    }
  }
  return out;
}

bool progress_measure_holds(const MetricAutomaton& a, const std::vector<ParityVector>& ranks, const Lasso& lasso) {
  if (lasso.loop.empty()) throw PreconditionError("lasso has an empty loop");
  const std::size_t len = lasso.loop.size();
  for (std::size_t k = 0; k < len; ++k) {
    StateId q = lasso.loop[k];
    StateId next = lasso.loop[(k + 1) % len];
    if (!progress(a.colour(q), ranks.at(q), ranks.at(next))) return false;
  }
  return true;
}

std::vector<ParityVector> parity_distances(const MetricAutomaton& a) {
  require_parity(a);
  const Acceptance& acc = a.acceptance();
  std::vector<ParityVector> out(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (std::size_t k = 0; k < acc.even_count(); ++k) out[q].push_back(a.distance_to_set(q, acc.even_set(k)));
  }
  return out;
}

ParityOpt parity_fixpoint(const MetricAutomaton& a, std::vector<ParityVector> start,
                          const std::vector<InputSet>& allowed) {
  ParityOpt out;
  out.values = std::move(start);
  for (;;) {
    std::vector<ParityVector> next = out.values;
    bool changed = false;
    for (StateId q = 0; q < a.num_states(); ++q) {
      for (InputId in : allowed[q]) {
        const StateSet& succ = a.successors(q, in);
        if (succ.empty()) continue;
        const ParityVector* worst = &out.values[*succ.begin()];
        for (StateId r : succ) worst = &lex_max(*worst, out.values[r]);
        if (lex_compare(*worst, next[q]) < 0) {
          next[q] = *worst;
          changed = true;
        }
      }
    }
    if (!changed) break;
    out.values = std::move(next);
    ++out.iterations;
  }
  return out;
}

ParityOpt parity_fixpoint(const MetricAutomaton& a) {
  require_parity(a);
  auto co = check_coreachability(a);
  if (!co.ok()) throw PreconditionError("coreachability fails: " + co.violations.front().message);
  std::vector<InputSet> allowed(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) allowed[q] = a.enabled_inputs(q);
  return parity_fixpoint(a, parity_distances(a), allowed);
}

ProgressRestriction restrict_by_progress(const MetricAutomaton& a) {
  require_parity(a);
  const auto d = parity_distances(a);
  std::vector<InputSet> allowed(a.num_states());
  AutomatonDef def = a.definition();
  def.transitions.clear();
  for (const auto& t : a.definition().transitions) {
    if (progress(a.colour(t.from), d[t.from], d[t.nominal])) {
      allowed[t.from].insert(t.input);
      def.transitions.push_back(t);
    }
  }
  StateSet pruned;
  std::vector<std::string> warnings;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (allowed[q].empty() && !a.enabled_inputs(q).empty()) {
      pruned.insert(q);
      warnings.push_back("state " + a.state_name(q) + " keeps no input under the progress measure");
    }
  }
  return {MetricAutomaton(std::move(def)), std::move(allowed), std::move(pruned), std::move(warnings)};
}

Lasso nominal_outcome(const MetricAutomaton& a, const Strategy& s) {
  std::vector<StateId> path;
  std::vector<std::size_t> position(a.num_states(), a.num_states() + 1);
  StateId q = a.initial();
  for (;;) {
    if (position[q] <= a.num_states()) {
      Lasso l;
      l.stem.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(position[q]));
      l.loop.assign(path.begin() + static_cast<std::ptrdiff_t>(position[q]), path.end());
      return l;
    }
    position[q] = path.size();
    path.push_back(q);
    const InputSet& choice = s.at(q);
    if (choice.empty()) return Lasso{path, {}};
    q = *a.nominal(q, *choice.begin());
  }
}

bool separation_holds(const MetricAutomaton& a, const ExtNonNeg& radius, std::vector<std::string>* failures) {
  const Acceptance& acc = a.acceptance();
  bool ok = true;
  for (std::size_t i = 0; i < acc.even_count(); ++i) {
    const StateSet& f = acc.even_set(i);
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (f.count(q) || !a.colour(q)) continue;
      if (a.distance_to_set(q, f) <= radius) {
        ok = false;
        if (failures) {
          failures->push_back("state " + a.state_name(q) + " (colour " + std::to_string(*a.colour(q)) +
                              ") lies within " + to_string(radius) + " of F_" + std::to_string(2 * i));
        }
      }
    }
  }
  return ok;
}

RobustnessReport verify_parity_sigma(const MetricAutomaton& a, const Strategy& s) {
  require_parity(a);
  if (s.is_indexed() || !s.deterministic()) throw PreconditionError("parity verification needs a deterministic memoryless strategy");
  if (s.num_states() != a.num_states()) throw PreconditionError("strategy does not match the automaton's states");
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (InputId in : s.at(q)) {
      if (!a.has_transition(q, in)) throw PreconditionError("strategy chooses a disabled input at " + a.state_name(q));
    }
  }
  Lasso outcome = nominal_outcome(a, s);
  if (outcome.loop.empty()) throw NotWinningError("nominal outcome deadlocks", outcome);
  if (!lasso_parity_accepts(a, outcome)) throw NotWinningError("least colour on the nominal loop is odd", outcome);

  Restriction r = restrict_by_strategy(a, s);
  const MetricAutomaton& sub = r.automaton;
  const auto d = parity_distances(a);
  std::vector<ParityVector> start;
  std::vector<InputSet> allowed(sub.num_states());
  for (StateId i = 0; i < sub.num_states(); ++i) {
    start.push_back(d[r.origin[i]]);
    allowed[i] = sub.enabled_inputs(i);
  }
  ParityOpt opt = parity_fixpoint(sub, std::move(start), allowed);
  const ParityVector& v = opt.values[sub.initial()];

  RobustnessReport rep;
  rep.objective = AcceptanceKind::Parity;
  rep.gamma_bar = a.gamma_bar();
  rep.exact_win = a.gamma_bar() == 0;
  rep.strategy = s;
  rep.iterations = opt.iterations;
  rep.analysed_states = sub.num_states();
  for (const auto& x : v) rep.component_sigma.push_back(scale_by_gamma(x, rep.gamma_bar));
  rep.sigma_times_gamma = max_finite(v);
  rep.sigma = scale_by_gamma(rep.sigma_times_gamma, rep.gamma_bar);
  const ExtNonNeg radius = rep.exact_win ? ExtNonNeg(0) : rep.sigma_times_gamma;
  for (std::size_t k = 0; k < a.acceptance().even_count(); ++k) {
    rep.inflated.push_back(inflate(a, a.acceptance().even_set(k), radius));
  }
  rep.certified = separation_holds(a, radius, &rep.notes);
  if (!rep.certified) rep.notes.insert(rep.notes.begin(), "separation condition fails; sigma is an uncertified bound");
  ExtNonNeg recurrent(0);
  for (StateId i = 0; i < sub.num_states(); ++i) {
    rep.values[r.origin[i]] = opt.values[i];
    const ExtNonNeg m = max_finite(opt.values[i]);
    if (m.is_finite()) recurrent = std::max(recurrent, m);
  }
  rep.sigma_recurrent = scale_by_gamma(recurrent, rep.gamma_bar);
  return rep;
}

RobustnessReport synthesize_parity(const MetricAutomaton& a) {
  require_parity(a);
  auto co = check_coreachability(a);
  if (!co.ok()) throw PreconditionError("coreachability fails: " + co.violations.front().message);
  const StateSet qbar = compute_qbar(a);
  ProgressRestriction pr = restrict_by_progress(a);
  for (StateId q : pr.pruned) {
    if (!qbar.count(q)) throw PreconditionError("no input satisfies the progress measure at " + a.state_name(q));
  }
  ParityOpt opt = parity_fixpoint(pr.automaton, parity_distances(a), pr.allowed);

  std::vector<InputSet> choice(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (qbar.count(q)) {
      auto en = a.enabled_inputs(q);
      if (!en.empty()) choice[q] = {*en.begin()};
      continue;
    }
    std::optional<InputId> pick;
    for (InputId in : pr.allowed[q]) {
      if (!pick || lex_compare(opt.values[*a.nominal(q, in)], opt.values[*a.nominal(q, *pick)]) < 0) pick = in;
    }
    if (pick) choice[q] = {*pick};
  }
  Strategy s = Strategy::memoryless(std::move(choice));
  RobustnessReport achieved = verify_parity_sigma(a, s);

  RobustnessReport rep = achieved;
  const ParityVector& v = opt.values[a.initial()];
  rep.component_sigma.clear();
  ExtNonNeg smallest = ExtNonNeg::infinity();
  for (const auto& x : v) {
    rep.component_sigma.push_back(scale_by_gamma(x, a.gamma_bar()));
    smallest = std::min(smallest, x);
  }
  rep.sigma_times_gamma = max_finite(v);
  rep.sigma = scale_by_gamma(rep.sigma_times_gamma, a.gamma_bar());
  rep.sigma_min_formula = scale_by_gamma(smallest, a.gamma_bar());
  const ExtNonNeg radius = rep.exact_win ? ExtNonNeg(0) : rep.sigma_times_gamma;
  rep.inflated.clear();
  for (std::size_t k = 0; k < a.acceptance().even_count(); ++k) {
    rep.inflated.push_back(inflate(a, a.acceptance().even_set(k), radius));
  }
  rep.notes.clear();
  rep.certified = separation_holds(a, radius, &rep.notes);
  if (!rep.certified) rep.notes.insert(rep.notes.begin(), "separation condition fails; sigma is an uncertified bound");
  rep.notes.insert(rep.notes.end(), pr.warnings.begin(), pr.warnings.end());
  rep.values.clear();
  for (StateId q = 0; q < a.num_states(); ++q) rep.values[q] = opt.values[q];
  rep.iterations = std::max(opt.iterations, achieved.iterations);
  rep.analysed_states = a.num_states();
  rep.attains_optimum = achieved.sigma_times_gamma == rep.sigma_times_gamma;
  return rep;
}

}  // namespace robsynth
