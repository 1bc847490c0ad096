#include "robsynth/genbuchi.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "robsynth/graph.hpp"
#include "robsynth/model.hpp"

namespace robsynth {

std::size_t OptMatrix::iterations() const {
  std::size_t it = 0;
  for (const auto& c : columns) it = std::max(it, c.iterations);
  return it;
}

OptMatrix genbuchi_fixpoint(const MetricAutomaton& a, const std::vector<StateSet>& sets) {
  if (sets.empty()) throw PreconditionError("generalized buchi needs at least one set");
  auto co = check_coreachability(a, sets);
  if (!co.ok()) throw PreconditionError("nominal coreachability fails: " + co.violations.front().message);
  OptMatrix m;
  for (const auto& f : sets) m.columns.push_back(fixpoint_opt(a, f));
  return m;
}

bool rank_greater(const RankVector& a, const RankVector& b, std::size_t i) { return a.at(i) > b.at(i); }

bool rank_rhd(const RankVector& a, const RankVector& b, std::size_t i) {
  const std::size_t n = a.size();
  return rank_greater(a, b, i) || a.at((i + n - 1) % n).is_zero();
}

std::size_t advance_counter(const std::vector<StateSet>& sets, std::size_t counter, StateId target) {
  return sets[counter].count(target) ? (counter + 1) % sets.size() : counter;
}

bool rhd_chain_check(const std::vector<RankVector>& ranks, const Lasso& lasso, const std::vector<StateSet>& sets) {
  if (lasso.loop.empty()) throw PreconditionError("lasso has an empty loop");
  const std::size_t n = sets.size();
  if (n == 0) throw PreconditionError("no acceptance sets");
  for (const auto& r : ranks) {
    if (r.size() != n) throw PreconditionError("rank vectors must have one component per set");
  }
  auto rank = [&](StateId q) -> const RankVector& {
    if (q >= ranks.size()) throw PreconditionError("lasso visits a state without a rank");
    return ranks[q];
  };

  // Greedy phase: switch to i+1 at the first state of F_i. Switching early
  // never hurts, since staying would need R_i to drop below zero.
  std::size_t phase = 0;
  bool switched = false;
  auto step = [&](StateId from, StateId to) {
    switched = sets[phase].count(from) > 0;
    if (switched) phase = (phase + 1) % n;
    return rank_rhd(rank(from), rank(to), phase);
  };
  std::vector<StateId> seq = lasso.stem;
  seq.push_back(lasso.loop.front());
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    if (!step(seq[t], seq[t + 1])) return false;
  }
  // Walk the loop until (position, phase) repeats; count switches per period.
  const std::size_t len = lasso.loop.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  std::size_t pos = 0;
  std::size_t switches = 0;
  for (;;) {
    auto key = std::make_pair(pos, phase);
    if (auto it = seen.find(key); it != seen.end()) return switches > it->second;
    seen.emplace(key, switches);
    if (!step(lasso.loop[pos], lasso.loop[(pos + 1) % len])) return false;
    if (switched) ++switches;
    pos = (pos + 1) % len;
  }
}

namespace {

struct Product {
  std::size_t n_sets;
  std::size_t node(StateId q, std::size_t c) const { return q * n_sets + c; }
};

void check_indexed(const MetricAutomaton& a, const Strategy& s) {
  const std::size_t n = a.acceptance().sets.size();
  if (a.acceptance().kind != AcceptanceKind::GeneralizedBuchi) {
    throw PreconditionError("automaton acceptance is not generalized buchi");
  }
  if (s.counters() != n) throw PreconditionError("indexed strategy needs one column per acceptance set");
  if (s.num_states() != a.num_states()) throw PreconditionError("strategy does not match the automaton's states");
  for (std::size_t c = 0; c < n; ++c) {
    for (StateId q = 0; q < a.num_states(); ++q) {
      for (InputId in : s.at(q, c)) {
        if (!a.has_transition(q, in)) {
          throw PreconditionError("strategy chooses disabled input " + a.input_name(in) + " at " + a.state_name(q));
        }
      }
    }
  }
}

}  // namespace

std::optional<Lasso> genbuchi_losing_outcome(const MetricAutomaton& a, const Strategy& s) {
  check_indexed(a, s);
  const auto& sets = a.acceptance().sets;
  const std::size_t n = sets.size();
  Product p{n};
  const std::size_t nodes = a.num_states() * n;
  graph::Adjacency all(nodes);
  graph::Adjacency stay(nodes);
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (std::size_t c = 0; c < n; ++c) {
      for (InputId in : s.at(q, c)) {
        StateId t = *a.nominal(q, in);
        std::size_t c2 = advance_counter(sets, c, t);
        all[p.node(q, c)].push_back(p.node(t, c2));
        if (!sets[c].count(t)) stay[p.node(q, c)].push_back(p.node(t, c2));
      }
    }
  }
  const std::size_t root = p.node(a.initial(), 0);
  auto flatten = [&](const std::vector<std::size_t>& v) {
    std::vector<StateId> out;
    for (std::size_t x : v) out.push_back(x / n);
    return out;
  };
  std::vector<bool> reach = graph::reachable(all, {root});
  for (std::size_t v = 0; v < nodes; ++v) {
    if (reach[v] && all[v].empty()) return Lasso{flatten(graph::shortest_path(all, {root}, v)), {}};
  }
  std::vector<bool> any(nodes, true);
  if (auto l = graph::find_lasso(all, {root}, any, {}, &stay)) return Lasso{flatten(l->stem), flatten(l->loop)};
  return std::nullopt;
}

RobustnessReport verify_genbuchi_sigma(const MetricAutomaton& a, const Strategy& s) {
  check_indexed(a, s);
  if (auto lose = genbuchi_losing_outcome(a, s)) {
    throw NotWinningError("indexed strategy is not nominally winning", *lose);
  }
  const auto& sets = a.acceptance().sets;
  const std::size_t n = sets.size();

  RobustnessReport rep;
  rep.objective = AcceptanceKind::GeneralizedBuchi;
  rep.gamma_bar = a.gamma_bar();
  rep.exact_win = a.gamma_bar() == 0;
  rep.strategy = s;
  rep.analysed_states = a.num_states();

  // Column k: fixpoint towards F_k with only S(., k) available. Values of
  // states reachable under that column equal those on A|_S(.,k).
  std::vector<OptVector> cols;
  ExtNonNeg worst_initial(0);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<InputSet> allowed(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) allowed[q] = s.at(q, k);
    cols.push_back(fixpoint_opt(a, distances_to(a, sets[k]), allowed));
    rep.iterations = std::max(rep.iterations, cols.back().iterations);
    const ExtNonNeg& v = cols.back().values[a.initial()];
    worst_initial = std::max(worst_initial, v);
    rep.component_sigma.push_back(scale_by_gamma(v, rep.gamma_bar));
  }
  rep.sigma_times_gamma = worst_initial;
  rep.sigma = scale_by_gamma(worst_initial, rep.gamma_bar);
  for (const auto& f : sets) rep.inflated.push_back(rep.exact_win ? f : inflate(a, f, worst_initial));

  // Disturbed product reachability for the recurrent figure.
  std::set<std::pair<StateId, std::size_t>> seen{{a.initial(), 0}};
  std::vector<std::pair<StateId, std::size_t>> work{{a.initial(), 0}};
  ExtNonNeg recurrent(0);
  while (!work.empty()) {
    auto [q, c] = work.back();
    work.pop_back();
    recurrent = std::max(recurrent, cols[c].values[q]);
    for (InputId in : s.at(q, c)) {
      for (StateId t : a.successors(q, in)) {
        std::pair<StateId, std::size_t> nxt{t, advance_counter(sets, c, t)};
        if (seen.insert(nxt).second) work.push_back(nxt);
      }
    }
  }
  rep.sigma_recurrent = scale_by_gamma(recurrent, rep.gamma_bar);
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::vector<ExtNonNeg> row;
    for (const auto& c : cols) row.push_back(c.values[q]);
    rep.values[q] = std::move(row);
  }
  return rep;
}

RobustnessReport synthesize_genbuchi(const MetricAutomaton& a) {
  if (a.acceptance().kind != AcceptanceKind::GeneralizedBuchi) {
    throw PreconditionError("automaton acceptance is not generalized buchi");
  }
  const auto& sets = a.acceptance().sets;
  OptMatrix m = genbuchi_fixpoint(a, sets);
  std::vector<std::vector<InputSet>> table;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    table.push_back(recover_strategy(a, sets[k], m.columns[k], Objective::Buchi));
  }
  Strategy s = Strategy::indexed(std::move(table));
  RobustnessReport achieved = verify_genbuchi_sigma(a, s);

  RobustnessReport rep = achieved;
  ExtNonNeg worst(0);
  rep.component_sigma.clear();
  for (std::size_t k = 0; k < sets.size(); ++k) {
    worst = std::max(worst, m.at(a.initial(), k));
    rep.component_sigma.push_back(scale_by_gamma(m.at(a.initial(), k), a.gamma_bar()));
  }
  rep.sigma_times_gamma = worst;
  rep.sigma = scale_by_gamma(worst, a.gamma_bar());
  rep.inflated.clear();
  for (const auto& f : sets) rep.inflated.push_back(rep.exact_win ? f : inflate(a, f, worst));
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::vector<ExtNonNeg> row;
    for (std::size_t k = 0; k < sets.size(); ++k) row.push_back(m.at(q, k));
    rep.values[q] = std::move(row);
  }
  rep.iterations = std::max(m.iterations(), achieved.iterations);
  rep.attains_optimum = achieved.sigma_times_gamma == worst;
  if (!*rep.attains_optimum) {
    rep.notes.push_back("recovered strategy reaches sigma " + to_string(achieved.sigma) + ", above the optimum " +
                        to_string(rep.sigma));
  }
  return rep;
}

}  // namespace robsynth
