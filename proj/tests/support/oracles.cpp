#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace robsynth::testing {

std::vector<ExtNonNeg> attractor_opt_oracle(const MetricAutomaton& a, const StateSet& f,
                                            const std::optional<Strategy>& s) {
  const std::size_t n = a.num_states();
  std::vector<ExtNonNeg> d(n);
  for (StateId q = 0; q < n; ++q) d[q] = a.distance_to_set(q, f);
  std::set<ExtNonNeg> thresholds(d.begin(), d.end());
  auto allowed = [&](StateId q) {
    if (!s) return a.enabled_inputs(q);
    return q < s->num_states() ? s->at(q) : InputSet{};
  };
  std::vector<ExtNonNeg> out(n, ExtNonNeg::infinity());
  for (const ExtNonNeg& t : thresholds) {
    std::vector<bool> in(n);
    for (StateId q = 0; q < n; ++q) in[q] = d[q] <= t;
    for (bool grew = true; grew;) {
      grew = false;
      for (StateId q = 0; q < n; ++q) {
        if (in[q]) continue;
        for (InputId i : allowed(q)) {
          const StateSet& post = a.successors(q, i);
          if (!post.empty() && std::all_of(post.begin(), post.end(), [&](StateId r) { return in[r]; })) {
            in[q] = true;
            grew = true;
            break;
          }
        }
      }
    }
    for (StateId q = 0; q < n; ++q) {
      if (in[q] && t < out[q]) out[q] = t;
    }
  }
  return out;
}

ExtNonNeg strategy_sigma_oracle(const MetricAutomaton& a, const Strategy& s, const StateSet& f) {
  return attractor_opt_oracle(a, f, s)[a.initial()];
}

std::optional<std::size_t> least_loop_colour(const MetricAutomaton& a, const Lasso& lasso) {
  std::optional<std::size_t> best;
  const auto& sets = a.acceptance().sets;
  for (StateId q : lasso.loop) {
    for (std::size_t c = 0; c < sets.size(); ++c) {
      if (sets[c].count(q) && (!best || c < *best)) best = c;
    }
  }
  return best;
}

ExtNonNeg lipschitz_oracle(const MetricAutomaton& a, const RankCertificate& cert) {
  ExtNonNeg k(0);
  for (StateId p = 0; p < a.num_states(); ++p) {
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (p == q || a.distance(p, q).is_infinite()) continue;
      for (std::size_t c = 0; c < cert.ranks[p].size(); ++c) {
        const ExtNonNeg& x = cert.ranks[p][c];
        const ExtNonNeg& y = cert.ranks[q][c];
        if (x.is_infinite() && y.is_infinite()) continue;
        if (x.is_infinite() || y.is_infinite()) return ExtNonNeg::infinity();
        const Rational diff = x.value() > y.value() ? x.value() - y.value() : y.value() - x.value();
        k = std::max(k, ExtNonNeg(diff / a.distance(p, q).value()));
      }
    }
  }
  return k;
}

bool nominal_win_oracle(const MetricAutomaton& a, const Strategy& s) { return nominal_win_from(a, s, a.initial()); }

bool nominal_win_from(const MetricAutomaton& a, const Strategy& s, StateId start) {
  const Acceptance& acc = a.acceptance();
  std::vector<StateId> trace{start};
  // A deterministic nominal run is a lasso once a state repeats.
  for (;;) {
    const StateId q = trace.back();
    if (acc.kind == AcceptanceKind::Reachability && acc.target().count(q)) return true;
    if (q >= s.num_states() || s.at(q).empty() || !a.nominal(q, *s.at(q).begin())) return false;
    const StateId r = *a.nominal(q, *s.at(q).begin());
    auto it = std::find(trace.begin(), trace.end(), r);
    if (it != trace.end()) {
      Lasso l{{trace.begin(), it}, {it, trace.end()}};
      if (acc.kind == AcceptanceKind::Reachability) return false;
      if (acc.kind == AcceptanceKind::Buchi) {
        return std::any_of(l.loop.begin(), l.loop.end(), [&](StateId x) { return acc.target().count(x) > 0; });
      }
      const auto c = least_loop_colour(a, l);
      return c && *c % 2 == 0;
    }
    trace.push_back(r);
  }
}

bool lipschitz_inequality_holds(const MetricAutomaton& a, const RankCertificate& cert, const ExtNonNeg& k) {
  for (StateId p = 0; p < a.num_states(); ++p) {
    for (StateId q = 0; q < a.num_states(); ++q) {
      const ExtNonNeg d = a.distance(p, q);
      for (std::size_t c = 0; c < cert.ranks[p].size(); ++c) {
        const ExtNonNeg& x = cert.ranks[p][c];
        const ExtNonNeg& y = cert.ranks[q][c];
        if (x.is_infinite() && y.is_infinite()) continue;
        if (x.is_infinite() || y.is_infinite()) {
          if (!k.is_infinite() && !d.is_infinite()) return false;
          continue;
        }
        const Rational diff = x.value() > y.value() ? x.value() - y.value() : y.value() - x.value();
        if (p != q && k.is_infinite()) continue;
        if (!(ExtNonNeg(diff) <= (k.is_infinite() ? ExtNonNeg(0) : k.value() * d))) return false;
      }
    }
  }
  return true;
}

std::optional<std::size_t> nominal_trace_length(const MetricAutomaton& a, const Strategy& s, StateId q,
                                                const StateSet& f) {
  std::vector<StateId> walk{q};
  while (!f.count(walk.back())) {
    const StateId p = walk.back();
    if (p >= s.num_states() || s.at(p).empty()) return std::nullopt;
    const auto r = a.nominal(p, *s.at(p).begin());
    if (!r || std::find(walk.begin(), walk.end(), *r) != walk.end()) return std::nullopt;
    walk.push_back(*r);
  }
  return walk.size();
}

}  // namespace robsynth::testing
