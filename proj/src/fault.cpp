#include "robsynth/fault.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "robsynth/graph.hpp"
#include "robsynth/model.hpp"
#include "robsynth/parity.hpp"
#include "robsynth/reach.hpp"

namespace robsynth {

namespace {

void require_deterministic(const Strategy& s) {
  if (s.is_indexed() || !s.deterministic()) {
    throw PreconditionError("fault analysis needs a deterministic memoryless strategy");
  }
}

std::optional<InputId> choice_at(const Strategy& s, StateId q) {
  if (q >= s.num_states() || s.at(q).empty()) return std::nullopt;
  return *s.at(q).begin();
}

std::vector<InputSet> choice_table(const MetricAutomaton& a, const Strategy& s) {
  std::vector<InputSet> t(a.num_states());
  for (StateId q = 0; q < a.num_states() && q < s.num_states(); ++q) t[q] = s.at(q);
  return t;
}

/// |tau^S(q, f)| counting states, or nullopt when the nominal trace never gets there.
std::optional<std::size_t> trace_length(const MetricAutomaton& a, const Strategy& s, StateId q, const StateSet& f) {
  std::vector<bool> seen(a.num_states(), false);
  std::size_t len = 1;
  while (!f.count(q)) {
    if (seen[q]) return std::nullopt;
    seen[q] = true;
    const auto in = choice_at(s, q);
    if (!in || !a.nominal(q, *in)) return std::nullopt;
    q = *a.nominal(q, *in);
    ++len;
  }
  return len;
}

bool strategy_within(const Strategy& s, const Strategy& outer, const StateSet& states) {
  for (StateId q : states) {
    if (q >= s.num_states()) continue;
    for (InputId in : s.at(q)) {
      if (!outer.at(q).count(in)) return false;
    }
  }
  return true;
}

bool run_accepts(const MetricAutomaton& a, const Lasso& lasso) {
  const Acceptance& acc = a.acceptance();
  if (acc.kind == AcceptanceKind::Parity) return lasso_parity_accepts(a, lasso);
  return lasso_buchi_accepts(lasso, acc.target());
}

/// Nominal lasso from q, or nullopt when it hits a state without a move.
std::optional<Lasso> nominal_run(const MetricAutomaton& a, const Strategy& s, StateId q) {
  std::vector<StateId> trace{q};
  for (;;) {
    const auto in = choice_at(s, trace.back());
    if (!in || !a.nominal(trace.back(), *in)) return std::nullopt;
    const StateId r = *a.nominal(trace.back(), *in);
    const auto it = std::find(trace.begin(), trace.end(), r);
    if (it != trace.end()) return Lasso{{trace.begin(), it}, {it, trace.end()}};
    trace.push_back(r);
  }
}

}  // namespace

FaultBound compute_fault_bound(const MetricAutomaton& a, const Strategy& s,
                               const std::optional<RankCertificate>& certificate) {
  require_deterministic(s);
  const AcceptanceKind kind = a.acceptance().kind;
  FaultBound out;
  bool separated = true;
  std::vector<StateSet> targets;
  if (kind == AcceptanceKind::Buchi) {
    const RobustnessReport rep = verify_strategy_sigma(a, s, Objective::Buchi);
    const ExtNonNeg rec = rep.sigma_recurrent.value_or(rep.sigma);
    out.radius = rep.exact_win ? ExtNonNeg(0) : rep.gamma_bar * rec;
    targets.push_back(a.acceptance().target());
  } else if (kind == AcceptanceKind::Parity) {
    const RobustnessReport rep = verify_parity_sigma(a, s);
    const ExtNonNeg rec = rep.sigma_recurrent.value_or(rep.sigma);
    out.radius = rep.exact_win ? ExtNonNeg(0) : rep.gamma_bar * rec;
    for (std::size_t k = 0; k < a.acceptance().even_count(); ++k) targets.push_back(a.acceptance().even_set(k));
    // Without separation a fault can land on an odd colour once per period.
    if (!rep.certified) {
      separated = false;
      out.notes.push_back("separation condition fails; no spacing is derived");
    }
  } else {
    throw PreconditionError("fault bounds apply to Buchi and parity objectives");
  }

  const StateSet reach = reachable_under(a, choice_table(a, s), a.initial());
  bool infinite = !separated;
  std::size_t n = 0;
  // Parity: an entry may be infinite, but every F' state needs some finite one.
  std::map<StateId, bool> reaches_some;
  for (const StateSet& f : targets) {
    StateSet inflated;
    std::map<StateId, std::optional<std::size_t>> lengths;
    for (StateId q : inflate(a, f, out.radius)) {
      if (!reach.count(q)) continue;
      inflated.insert(q);
      const auto len = trace_length(a, s, q, f);
      lengths[q] = len;
      reaches_some[q] = reaches_some[q] || len.has_value();
      if (len) {
        n = std::max(n, *len);
      } else if (kind == AcceptanceKind::Buchi) {
        infinite = true;
      }
    }
    out.inflated.push_back(std::move(inflated));
    out.trace_lengths.push_back(std::move(lengths));
  }
  for (const auto& [q, ok] : reaches_some) {
    if (!ok) {
      infinite = true;
      out.notes.push_back("state " + a.state_name(q) + " never reaches an even set under the strategy");
    }
  }
  // A single fault into a state the strategy loses from, or cannot leave,
  // defeats every spacing.
  for (StateId q : reach) {
    const auto run = nominal_run(a, s, q);
    if (!run) {
      infinite = true;
      out.notes.push_back("disturbance reaches " + a.state_name(q) + ", where the strategy has no move");
    } else if (!run_accepts(a, *run)) {
      infinite = true;
      out.notes.push_back("disturbance reaches " + a.state_name(q) + ", where the nominal run loses");
    }
  }
  if (!infinite) out.n = n;

  if (certificate) {
    const CertificateCheck chk = check_clf(a, *certificate);
    if (!chk.ok()) {
      out.notes.push_back("certificate fails the CLF check: " + chk.violations.front().message);
    } else if (!strategy_within(s, induce_strategy_from_clf(a, *certificate, InduceMode::Permissive), reach)) {
      out.notes.push_back("strategy is not induced from the certificate");
    } else {
      out.pedigree = true;
    }
  } else {
    out.notes.push_back("no certificate given; the bound is computed but not certified");
  }
  out.certified = out.pedigree && out.n.has_value();
  return out;
}

SimOutcome exhaustive_adversary_search(const MetricAutomaton& a, const Strategy& s, std::size_t n_bound,
                                       std::size_t state_cap) {
  require_deterministic(s);
  const AcceptanceKind kind = a.acceptance().kind;
  if (kind != AcceptanceKind::Buchi && kind != AcceptanceKind::Parity) {
    throw PreconditionError("adversary search applies to Buchi and parity objectives");
  }
  if (a.num_states() > state_cap) {
    throw PreconditionError("adversary search limited to " + std::to_string(state_cap) + " states");
  }
  // Node (q, c): c transitions since the last fault, saturated at n_bound.
  const std::size_t width = n_bound + 1;
  const std::size_t total = a.num_states() * width;
  auto node = [&](StateId q, std::size_t c) { return q * width + c; };
  auto state_of = [&](graph::Node v) { return v / width; };

  graph::Adjacency adj(total);
  std::vector<bool> seen(total, false);
  std::vector<bool> dead(total, false);
  const graph::Node start = node(a.initial(), n_bound);
  std::deque<graph::Node> work{start};
  seen[start] = true;
  SimOutcome out;
  while (!work.empty()) {
    const graph::Node v = work.front();
    work.pop_front();
    ++out.explored;
    const StateId q = state_of(v);
    const std::size_t c = v % width;
    const auto in = choice_at(s, q);
    if (!in || !a.nominal(q, *in)) {
      dead[v] = true;
      continue;
    }
    const StateId nom = *a.nominal(q, *in);
    std::vector<graph::Node> succ{node(nom, std::min(c + 1, n_bound))};
    if (c >= n_bound) {
      for (StateId r : a.successors(q, *in)) {
        if (r != nom) succ.push_back(node(r, std::min<std::size_t>(1, n_bound)));
      }
    }
    for (graph::Node w : succ) {
      adj[v].push_back(w);
      if (!seen[w]) {
        seen[w] = true;
        work.push_back(w);
      }
    }
  }

  std::optional<graph::NodeLasso> found;
  for (graph::Node v = 0; v < total && !found; ++v) {
    if (seen[v] && dead[v]) found = graph::NodeLasso{graph::shortest_path(adj, {start}, v), {}};
  }
  auto colour_of = [&](graph::Node v) { return a.colour(state_of(v)); };
  if (!found && kind == AcceptanceKind::Buchi) {
    std::vector<bool> allowed(total);
    for (graph::Node v = 0; v < total; ++v) allowed[v] = !a.acceptance().target().count(state_of(v));
    found = graph::find_lasso(adj, {start}, allowed);
  }
  if (!found && kind == AcceptanceKind::Parity) {
    const std::size_t colours = a.acceptance().sets.size();
    for (std::size_t j = 1; j < colours && !found; j += 2) {
      std::vector<bool> allowed(total), required(total);
      for (graph::Node v = 0; v < total; ++v) {
        const auto c = colour_of(v);
        allowed[v] = !c || *c >= j;
        required[v] = c == std::optional<std::size_t>(j);
      }
      found = graph::find_lasso(adj, {start}, allowed, required);
    }
    if (!found) {
      std::vector<bool> allowed(total);
      for (graph::Node v = 0; v < total; ++v) allowed[v] = !colour_of(v).has_value();
      found = graph::find_lasso(adj, {start}, allowed);
    }
  }
  if (!found) return out;

  out.violation = true;
  std::vector<graph::Node> seq = found->stem;
  seq.insert(seq.end(), found->loop.begin(), found->loop.end());
  for (graph::Node v : found->stem) out.witness.stem.push_back(state_of(v));
  for (graph::Node v : found->loop) out.witness.loop.push_back(state_of(v));
  const std::size_t edges = found->loop.empty() ? seq.size() - 1 : seq.size();
  for (std::size_t t = 0; t < edges; ++t) {
    const StateId q = state_of(seq[t]);
    const StateId r = state_of(t + 1 < seq.size() ? seq[t + 1] : found->loop.front());
    if (r != *a.nominal(q, *choice_at(s, q))) out.script.events.push_back({t, r});
  }
  if (!found->loop.empty()) {
    out.script.loop_start = found->stem.size();
    out.script.loop_length = found->loop.size();
  }
  return out;
}

ThresholdResult empirical_threshold(const MetricAutomaton& a, const Strategy& s, std::size_t start,
                                    std::size_t state_cap) {
  ThresholdResult out;
  out.threshold = start;
  for (std::size_t n = start; n > 0; --n) {
    SimOutcome r = exhaustive_adversary_search(a, s, n - 1, state_cap);
    if (r.violation) {
      out.below = std::move(r);
      return out;
    }
    out.threshold = n - 1;
  }
  return out;
}

bool script_respects_spacing(const FaultScript& script, std::size_t n_bound, std::string* why) {
  std::vector<std::size_t> steps;
  for (const auto& e : script.events) {
    if (script.loop_length > 0 && e.step >= script.loop_start + script.loop_length) {
      if (why) *why = "event at step " + std::to_string(e.step) + " lies after the repeating window";
      return false;
    }
    steps.push_back(e.step);
    if (script.loop_length > 0 && e.step >= script.loop_start) {
      for (std::size_t k = 1; k <= 2; ++k) steps.push_back(e.step + k * script.loop_length);
    }
  }
  std::sort(steps.begin(), steps.end());
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] - steps[i - 1] < n_bound) {
      if (why) {
        *why = "faults at steps " + std::to_string(steps[i - 1]) + " and " + std::to_string(steps[i]) +
               " are closer than " + std::to_string(n_bound);
      }
      return false;
    }
  }
  return true;
}

RunResult simulate_run(const MetricAutomaton& a, const Strategy& s, const Adversary& adversary, std::size_t steps) {
  require_deterministic(s);
  const AcceptanceKind kind = a.acceptance().kind;
  if (kind == AcceptanceKind::GeneralizedBuchi) throw PreconditionError("simulation needs a memoryless objective");
  const FaultScript& script = adversary.script;
  if (adversary.kind == AdversaryKind::Scripted) {
    std::string why;
    if (!script_respects_spacing(script, adversary.script_spacing, &why)) throw PreconditionError(why);
  }
  const bool periodic = adversary.kind == AdversaryKind::Scripted && script.loop_length > 0;
  std::size_t last_event = 0;
  for (const auto& e : script.events) last_event = std::max(last_event, e.step + 1);

  auto scripted_at = [&](std::size_t t) -> std::optional<StateId> {
    for (const auto& e : script.events) {
      if (e.step == t) return e.target;
      if (periodic && e.step >= script.loop_start && t > e.step && (t - e.step) % script.loop_length == 0) {
        return e.target;
      }
    }
    return std::nullopt;
  };
  // Phase of the adversary at time t, or nullopt while it is not yet periodic.
  auto phase = [&](std::size_t t) -> std::optional<std::size_t> {
    switch (adversary.kind) {
      case AdversaryKind::Nominal:
        return 0;
      case AdversaryKind::Scripted:
        if (periodic) {
          if (t < script.loop_start) return std::nullopt;
          return (t - script.loop_start) % script.loop_length;
        }
        if (t < last_event) return std::nullopt;
        return 0;
      case AdversaryKind::Random:
        return std::nullopt;
    }
    return std::nullopt;
  };

  std::mt19937_64 rng(adversary.seed);
  std::bernoulli_distribution fire(adversary.fault_rate);
  RunResult out;
  out.trace.push_back(a.initial());
  std::map<std::pair<StateId, std::size_t>, std::size_t> first_seen;
  std::size_t since_fault = adversary.n_bound;
  auto note_state = [&](std::size_t t) {
    if (out.lasso) return;
    const auto ph = phase(t);
    if (!ph) return;
    const auto key = std::make_pair(out.trace[t], *ph);
    const auto it = first_seen.find(key);
    if (it == first_seen.end()) {
      first_seen.emplace(key, t);
      return;
    }
    Lasso l;
    l.stem.assign(out.trace.begin(), out.trace.begin() + static_cast<std::ptrdiff_t>(it->second));
    l.loop.assign(out.trace.begin() + static_cast<std::ptrdiff_t>(it->second), out.trace.begin() + static_cast<std::ptrdiff_t>(t));
    out.lasso = std::move(l);
    out.exact = true;
  };
  note_state(0);

  for (std::size_t t = 0; t < steps; ++t) {
    const StateId q = out.trace.back();
    if (kind == AcceptanceKind::Reachability && a.acceptance().target().count(q)) break;
    const auto in = choice_at(s, q);
    if (!in || !a.nominal(q, *in)) {
      out.deadlock = true;
      break;
    }
    const StateId nom = *a.nominal(q, *in);
    StateId next = nom;
    if (adversary.kind == AdversaryKind::Scripted) {
      if (const auto target = scripted_at(t)) {
        if (!a.successors(q, *in).count(*target)) {
          throw PreconditionError("scripted fault at step " + std::to_string(t) + " targets " +
                                  a.state_name(*target) + ", not a disturbed successor of " + a.state_name(q));
        }
        next = *target;
      }
    } else if (adversary.kind == AdversaryKind::Random) {
      std::vector<StateId> options;
      for (StateId r : a.successors(q, *in)) {
        if (r != nom) options.push_back(r);
      }
      if (since_fault >= adversary.n_bound && !options.empty() && fire(rng)) {
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        next = options[pick(rng)];
      }
    }
    if (next != nom) {
      out.faults.push_back({t, next});
      since_fault = 1;
    } else {
      ++since_fault;
    }
    out.trace.push_back(next);
    note_state(t + 1);
  }

  if (kind == AcceptanceKind::Reachability) {
    const auto& f = a.acceptance().target();
    out.accepted = std::any_of(out.trace.begin(), out.trace.end(), [&](StateId q) { return f.count(q) > 0; });
    return out;
  }
  if (out.deadlock) {
    out.accepted = false;
    return out;
  }
  if (!out.lasso && out.trace.size() > 1) {
    // Last repeat of the final state approximates the recurring part.
    const std::size_t end = out.trace.size() - 1;
    for (std::size_t i = end; i-- > 0;) {
      if (out.trace[i] == out.trace[end]) {
        Lasso l;
        l.stem.assign(out.trace.begin(), out.trace.begin() + static_cast<std::ptrdiff_t>(i));
        l.loop.assign(out.trace.begin() + static_cast<std::ptrdiff_t>(i), out.trace.begin() + static_cast<std::ptrdiff_t>(end));
        out.lasso = std::move(l);
        break;
      }
    }
  }
  if (out.lasso) out.accepted = run_accepts(a, *out.lasso);
  return out;
}

}  // namespace robsynth
