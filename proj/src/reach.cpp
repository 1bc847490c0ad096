#include "robsynth/reach.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "robsynth/graph.hpp"
#include "robsynth/model.hpp"

namespace robsynth {

ExtNonNeg scale_by_gamma(const ExtNonNeg& value, const Rational& gamma) {
  if (gamma == 0) return ExtNonNeg(0);
  if (value.is_infinite()) return value;
  return ExtNonNeg(value.value() / gamma);
}

StateSet inflate(const MetricAutomaton& a, const StateSet& f, const ExtNonNeg& radius) {
  StateSet out;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.distance_to_set(q, f) <= radius) out.insert(q);
  }
  return out;
}

std::vector<ExtNonNeg> distances_to(const MetricAutomaton& a, const StateSet& f) {
  std::vector<ExtNonNeg> out(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) out[q] = a.distance_to_set(q, f);
  return out;
}

namespace {

ExtNonNeg worst_case(const MetricAutomaton& a, const std::vector<ExtNonNeg>& opt, StateId q, InputId in) {
  ExtNonNeg m(0);
  for (StateId r : a.successors(q, in)) m = std::max(m, opt[r]);
  return m;
}

std::vector<InputSet> enabled_everywhere(const MetricAutomaton& a) {
  std::vector<InputSet> allowed(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) allowed[q] = a.enabled_inputs(q);
  return allowed;
}

}  // namespace

std::vector<ExtNonNeg> apply_opt_operator(const MetricAutomaton& a, const std::vector<ExtNonNeg>& opt,
                                          const std::vector<InputSet>& allowed) {
  std::vector<ExtNonNeg> next = opt;
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (InputId in : allowed[q]) {
      if (a.successors(q, in).empty()) continue;
      next[q] = std::min(next[q], worst_case(a, opt, q, in));
    }
  }
  return next;
}

OptVector fixpoint_opt(const MetricAutomaton& a, std::vector<ExtNonNeg> start,
                       const std::vector<InputSet>& allowed) {
  const std::size_t n = a.num_states();
  OptVector out;
  out.values = std::move(start);
  out.level.assign(n, 0);
  out.improving.assign(n, {});
  for (;;) {
    std::vector<ExtNonNeg> next = out.values;
    bool changed = false;
    for (StateId q = 0; q < n; ++q) {
      ExtNonNeg best = out.values[q];
      InputSet realised;
      for (InputId in : allowed[q]) {
        if (a.successors(q, in).empty()) continue;
        ExtNonNeg m = worst_case(a, out.values, q, in);
        if (m < best) {
          best = m;
          realised = {in};
        } else if (m == best && best < out.values[q]) {
          realised.insert(in);
        }
      }
      if (best < out.values[q]) {
        next[q] = best;
        out.improving[q] = std::move(realised);
        out.level[q] = out.iterations + 1;
        changed = true;
      }
    }
    if (!changed) break;
    out.values = std::move(next);
    ++out.iterations;
  }
  return out;
}

OptVector fixpoint_opt(const MetricAutomaton& a, const StateSet& f) {
  return fixpoint_opt(a, distances_to(a, f), enabled_everywhere(a));
}

ExtNonNeg brute_force_opt_oracle(const MetricAutomaton& a, const StateSet& f, StateId q, std::size_t cap) {
  const std::size_t n = a.num_states();
  if (n > cap) {
    throw PreconditionError("brute-force oracle limited to " + std::to_string(cap) + " states");
  }
  const std::vector<ExtNonNeg> d = distances_to(a, f);
  ExtNonNeg best = d[q];
  const std::size_t max_len = n - 1;

  // Depth-first over words; every prefix is itself a candidate word.
  struct Frame {
    StateSet set;
    std::size_t depth;
  };
  std::vector<Frame> work{{StateSet{q}, 0}};
  while (!work.empty()) {
    Frame fr = std::move(work.back());
    work.pop_back();
    if (fr.depth == max_len) continue;
    for (InputId in = 0; in < a.num_inputs(); ++in) {
      bool applicable = std::all_of(fr.set.begin(), fr.set.end(),
                                    [&](StateId s) { return a.has_transition(s, in); });
      if (!applicable) continue;
      StateSet next = post(a, fr.set, in);
      ExtNonNeg worst(0);
      for (StateId s : next) worst = std::max(worst, d[s]);
      best = std::min(best, worst);
      work.push_back({std::move(next), fr.depth + 1});
    }
  }
  return best;
}

Objective objective_of(const MetricAutomaton& a) {
  switch (a.acceptance().kind) {
    case AcceptanceKind::Reachability: return Objective::Reachability;
    case AcceptanceKind::Buchi: return Objective::Buchi;
    default: throw PreconditionError("automaton acceptance is neither reachability nor buchi");
  }
}

std::optional<Lasso> nominal_losing_outcome(const MetricAutomaton& a, const Strategy& s, const StateSet& f,
                                            Objective objective) {
  const std::size_t n = a.num_states();
  graph::Adjacency adj(n);
  for (StateId q = 0; q < n; ++q) {
    if (objective == Objective::Reachability && f.count(q)) continue;
    for (InputId in : s.at(q)) {
      if (auto t = a.nominal(q, in)) adj[q].push_back(*t);
    }
  }
  std::vector<bool> reach = graph::reachable(adj, {a.initial()});
  for (StateId q = 0; q < n; ++q) {
    bool stop_ok = objective == Objective::Reachability && f.count(q);
    if (reach[q] && adj[q].empty() && !stop_ok) {
      Lasso dead;
      dead.stem = graph::shortest_path(adj, {a.initial()}, q);
      return dead;
    }
  }
  std::vector<bool> avoid(n);
  for (StateId q = 0; q < n; ++q) avoid[q] = !f.count(q);
  if (auto l = graph::find_lasso(adj, {a.initial()}, avoid)) return Lasso{l->stem, l->loop};
  return std::nullopt;
}

namespace {

std::string describe(const MetricAutomaton& a, const Lasso& l) {
  auto names = [&](const std::vector<StateId>& v) {
    std::string s;
    for (StateId q : v) s += (s.empty() ? "" : " ") + a.state_name(q);
    return s;
  };
  if (l.loop.empty()) return "nominal outcome deadlocks: " + names(l.stem);
  return "nominal outcome loops without acceptance: " + names(l.stem) + " (" + names(l.loop) + ")^w";
}

}  // namespace

RobustnessReport verify_strategy_sigma(const MetricAutomaton& a, const Strategy& s, Objective objective) {
  if (s.is_indexed()) throw PreconditionError("verification needs a memoryless strategy");
  if (s.num_states() != a.num_states()) throw PreconditionError("strategy does not match the automaton's states");
  const StateSet& f = a.acceptance().target();
  if (auto lose = nominal_losing_outcome(a, s, f, objective)) {
    throw NotWinningError("strategy is not nominally winning; " + describe(a, *lose), *lose);
  }

  Restriction r = restrict_by_strategy(a, s);
  const MetricAutomaton& sub = r.automaton;
  // Distances are measured to F in the full automaton, which may contain
  // target states the strategy never visits.
  std::vector<ExtNonNeg> start(sub.num_states());
  for (StateId i = 0; i < sub.num_states(); ++i) start[i] = a.distance_to_set(r.origin[i], f);
  OptVector opt = fixpoint_opt(sub, std::move(start), enabled_everywhere(sub));

  RobustnessReport rep;
  rep.objective = objective == Objective::Buchi ? AcceptanceKind::Buchi : AcceptanceKind::Reachability;
  rep.gamma_bar = a.gamma_bar();
  rep.exact_win = a.gamma_bar() == 0;
  rep.sigma_times_gamma = opt.values[sub.initial()];
  rep.sigma = scale_by_gamma(rep.sigma_times_gamma, rep.gamma_bar);
  rep.inflated = {rep.exact_win ? f : inflate(a, f, rep.sigma_times_gamma)};
  rep.strategy = s;
  for (StateId i = 0; i < sub.num_states(); ++i) rep.values[r.origin[i]] = {opt.values[i]};
  rep.iterations = opt.iterations;
  rep.analysed_states = sub.num_states();
  rep.component_sigma = {rep.sigma};
  if (objective == Objective::Buchi) {
    ExtNonNeg worst(0);
    for (const auto& v : opt.values) worst = std::max(worst, v);
    rep.sigma_recurrent = scale_by_gamma(worst, rep.gamma_bar);
  }
  return rep;
}

std::vector<InputSet> recover_strategy(const MetricAutomaton& a, const StateSet& f, const OptVector& opt,
                                       Objective objective) {
  const std::size_t n = a.num_states();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  auto candidates = [&](StateId q) {
    InputSet c;
    if (opt.level[q] > 0) {
      c = opt.improving[q];
    } else {
      for (InputId in : a.enabled_inputs(q)) {
        if (!a.successors(q, in).empty()) c.insert(in);
      }
    }
    return c;
  };

  // Nominal backward BFS from f over the given edges.
  auto bfs = [&](auto&& inputs_of) {
    std::vector<std::vector<StateId>> pred(n);
    for (StateId q = 0; q < n; ++q) {
      if (f.count(q)) continue;
      for (InputId in : inputs_of(q)) pred[*a.nominal(q, in)].push_back(q);
    }
    std::vector<std::size_t> dist(n, inf);
    std::deque<StateId> queue;
    for (StateId q : f) {
      dist[q] = 0;
      queue.push_back(q);
    }
    while (!queue.empty()) {
      StateId v = queue.front();
      queue.pop_front();
      for (StateId p : pred[v]) {
        if (dist[p] == inf) {
          dist[p] = dist[v] + 1;
          queue.push_back(p);
        }
      }
    }
    return dist;
  };
  const auto dist_c = bfs(candidates);
  const auto dist_all = bfs([&](StateId q) { return a.enabled_inputs(q); });

  std::vector<InputSet> choice(n);
  for (StateId q = 0; q < n; ++q) {
    if (f.count(q)) {
      if (objective == Objective::Reachability) continue;
      std::optional<InputId> pick;
      for (InputId in : a.enabled_inputs(q)) {
        if (!pick || opt.values[*a.nominal(q, in)] < opt.values[*a.nominal(q, *pick)]) pick = in;
      }
      if (pick) choice[q] = {*pick};
      continue;
    }
    const bool via_c = dist_c[q] != inf;
    const InputSet pool = via_c ? candidates(q) : a.enabled_inputs(q);
    const auto& dist = via_c ? dist_c : dist_all;
    std::optional<InputId> pick;
    bool pick_loops = false;
    ExtNonNeg pick_worst;
    for (InputId in : pool) {
      StateId t = *a.nominal(q, in);
      if (dist[q] == inf || dist[t] == inf || dist[t] >= dist[q]) continue;
      bool loops = a.successors(q, in).count(q) > 0;
      ExtNonNeg worst = worst_case(a, opt.values, q, in);
      bool better = !pick || (pick_loops && !loops) || (pick_loops == loops && worst < pick_worst);
      if (better) {
        pick = in;
        pick_loops = loops;
        pick_worst = worst;
      }
    }
    if (pick) choice[q] = {*pick};
  }
  return choice;
}

RobustnessReport synthesize_optimal(const MetricAutomaton& a, Objective objective) {
  const StateSet& f = a.acceptance().target();
  if (f.empty()) throw PreconditionError("target set is empty");
  auto co = check_coreachability(a);
  if (!co.ok()) throw PreconditionError("nominal coreachability fails: " + co.violations.front().message);

  OptVector opt = fixpoint_opt(a, f);
  Strategy s = Strategy::memoryless(recover_strategy(a, f, opt, objective));
  RobustnessReport achieved = verify_strategy_sigma(a, s, objective);

  RobustnessReport rep = achieved;
  rep.sigma_times_gamma = opt.values[a.initial()];
  rep.sigma = scale_by_gamma(rep.sigma_times_gamma, a.gamma_bar());
  rep.inflated = {rep.exact_win ? f : inflate(a, f, rep.sigma_times_gamma)};
  rep.values.clear();
  for (StateId q = 0; q < a.num_states(); ++q) rep.values[q] = {opt.values[q]};
  rep.iterations = std::max(opt.iterations, achieved.iterations);
  rep.analysed_states = a.num_states();
  rep.component_sigma = {rep.sigma};
  rep.attains_optimum = achieved.sigma_times_gamma == rep.sigma_times_gamma;
  if (!*rep.attains_optimum) {
    rep.notes.push_back("recovered strategy reaches sigma " + to_string(achieved.sigma) +
                        ", above the optimum " + to_string(rep.sigma));
  }
  return rep;
}

}  // namespace robsynth
