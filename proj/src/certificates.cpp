#include "robsynth/certificates.hpp"

#include <algorithm>
#include <deque>

#include "robsynth/genbuchi.hpp"
#include "robsynth/parity.hpp"
#include "robsynth/reach.hpp"
#include "robsynth/report.hpp"

namespace robsynth {

RankCertificate RankCertificate::scalar(AcceptanceKind objective, const std::vector<ExtNonNeg>& values, Rational f) {
  RankCertificate c;
  c.objective = objective;
  c.f_coeff = f;
  c.eta_coeff = f;
  c.ranks.reserve(values.size());
  for (const auto& v : values) c.ranks.push_back({v});
  return c;
}

namespace {

/// Target set of each rank component.
std::vector<StateSet> component_targets(const MetricAutomaton& a, AcceptanceKind kind) {
  const Acceptance& acc = a.acceptance();
  switch (kind) {
    case AcceptanceKind::Reachability:
    case AcceptanceKind::Buchi:
      return {acc.target()};
    case AcceptanceKind::GeneralizedBuchi:
      return acc.sets;
    case AcceptanceKind::Parity: {
      std::vector<StateSet> out;
      for (std::size_t k = 0; k < acc.even_count(); ++k) out.push_back(acc.even_set(k));
      return out;
    }
  }
  return {};
}

void require_shape(const MetricAutomaton& a, const RankCertificate& cert) {
  if (cert.objective != a.acceptance().kind) {
    throw PreconditionError(std::string("certificate objective ") + to_string(cert.objective) +
                            " does not match automaton acceptance " + to_string(a.acceptance().kind));
  }
  const std::size_t comps = component_targets(a, cert.objective).size();
  if (cert.ranks.size() != a.num_states()) {
    throw PreconditionError("certificate has " + std::to_string(cert.ranks.size()) + " ranks for " +
                            std::to_string(a.num_states()) + " states");
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (cert.ranks[q].size() != comps) {
      throw PreconditionError("rank of state " + a.state_name(q) + " has " + std::to_string(cert.ranks[q].size()) +
                              " components, expected " + std::to_string(comps));
    }
  }
  if (cert.f_coeff <= 0 || cert.eta_coeff <= 0) throw PreconditionError("f and eta coefficients must be positive");
}

bool scalar_objective(AcceptanceKind k) { return k != AcceptanceKind::Parity; }

bool parity_exempt(const MetricAutomaton& a, const StateSet& qbar, StateId q) {
  return qbar.count(q) > 0 || a.colour(q) == std::optional<std::size_t>(0);
}

std::string margin_text(const ExtNonNeg& lhs, const ExtNonNeg& rhs) {
  if (lhs.is_infinite()) return "successor rank infinite";
  if (rhs.is_infinite()) return "ok";
  return "short by " + format_rational(lhs.value() - rhs.value());
}

}  // namespace

CertificateCheck check_rank(const MetricAutomaton& a, const RankCertificate& cert) {
  require_shape(a, cert);
  CertificateCheck out;
  const auto targets = component_targets(a, cert.objective);
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const ExtNonNeg& r = cert.ranks[q][k];
      const bool in = targets[k].count(q) > 0;
      const std::string where = a.state_name(q) + (targets.size() > 1 ? " component " + std::to_string(k) : "");
      if (in && !r.is_zero()) {
        out.violations.push_back({"rank-nonzero-on-target", where + " is a target state with rank " + to_string(r), {q}});
      } else if (!in && r.is_zero()) {
        out.violations.push_back({"rank-zero-off-target", where + " has rank 0 outside the target", {q}});
      } else if (scalar_objective(cert.objective) && r.is_infinite()) {
        out.violations.push_back({"rank-infinite", where + " has an infinite rank", {q}});
      }
    }
  }
  return out;
}

bool decreases(const MetricAutomaton& a, const RankCertificate& cert, StateId q, InputId in, std::size_t component) {
  const auto s = a.nominal(q, in);
  if (!s) return false;
  const auto targets = component_targets(a, cert.objective);
  if (scalar_objective(cert.objective)) {
    const ExtNonNeg need = cert.ranks[*s][component] + cert.f_coeff * a.distance_to_set(q, targets[component]);
    return need <= cert.ranks[q][component];
  }
  const ParityVector& rq = cert.ranks[q];
  const ParityVector& rs = cert.ranks[*s];
  if (!progress(a.colour(q), rq, rs)) return false;
  // Lexicographic decrease on some constrained prefix; the shortest prefix is the weakest.
  const std::size_t prefix = std::max<std::size_t>(1, constrained_prefix(a.colour(q), targets.size()));
  for (std::size_t len = 1; len <= std::min(prefix, targets.size()); ++len) {
    ParityVector shifted(len);
    for (std::size_t k = 0; k < len; ++k) shifted[k] = rs[k] + cert.f_coeff * a.distance_to_set(q, targets[k]);
    if (lex_compare(shifted, rq, len) <= 0) return true;
  }
  return false;
}

CertificateCheck check_clf(const MetricAutomaton& a, const RankCertificate& cert) {
  CertificateCheck out = check_rank(a, cert);
  const auto targets = component_targets(a, cert.objective);
  const bool parity = cert.objective == AcceptanceKind::Parity;
  const StateSet qbar = parity ? compute_qbar(a) : StateSet{};
  const std::size_t rounds = parity ? 1 : targets.size();
  for (std::size_t k = 0; k < rounds; ++k) {
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (parity ? parity_exempt(a, qbar, q) : targets[k].count(q) > 0) continue;
      bool ok = false;
      for (InputId in : a.enabled_inputs(q)) {
        if (decreases(a, cert, q, in, k)) {
          ok = true;
          break;
        }
      }
      if (ok) continue;
      std::string msg = a.state_name(q) + (rounds > 1 ? " component " + std::to_string(k) : "") + ": ";
      if (a.enabled_inputs(q).empty()) {
        msg += "no enabled input";
      } else if (parity) {
        msg += "no input satisfies the progress and decrease conditions";
      } else {
        // Margin of the best input.
        ExtNonNeg best = ExtNonNeg::infinity();
        for (InputId in : a.enabled_inputs(q)) best = std::min(best, cert.ranks[*a.nominal(q, in)][k]);
        const ExtNonNeg lhs = best + cert.f_coeff * a.distance_to_set(q, targets[k]);
        msg += "needs rank >= " + to_string(lhs) + ", has " + to_string(cert.ranks[q][k]) + " (" +
               margin_text(lhs, cert.ranks[q][k]) + ")";
      }
      out.violations.push_back({"clf-decrease", msg, {q}});
    }
  }
  return out;
}

LipschitzResult lipschitz_constant(const MetricAutomaton& a, const RankCertificate& cert) {
  require_shape(a, cert);
  LipschitzResult out;
  const std::size_t comps = cert.components();
  for (StateId p = 0; p < a.num_states(); ++p) {
    for (StateId q = p + 1; q < a.num_states(); ++q) {
      const ExtNonNeg d = a.distance(p, q);
      if (d.is_infinite()) continue;
      for (std::size_t k = 0; k < comps; ++k) {
        const ExtNonNeg& rp = cert.ranks[p][k];
        const ExtNonNeg& rq = cert.ranks[q][k];
        if (rp.is_infinite() && rq.is_infinite()) continue;
        ExtNonNeg ratio;
        if (rp.is_infinite() || rq.is_infinite()) {
          ratio = ExtNonNeg::infinity();
        } else {
          const Rational diff = abs(rp.value() - rq.value());
          if (diff == 0) continue;
          ratio = d.is_zero() ? ExtNonNeg::infinity() : ExtNonNeg(diff / d.value());
        }
        if (!out.witness || ratio > out.k) {
          out.k = ratio;
          out.witness = std::make_pair(p, q);
          out.component = k;
        }
      }
    }
  }
  return out;
}

SigmaBound sigma_bound_from_certificate(const MetricAutomaton& a, const RankCertificate& cert) {
  if (!a.constant_gamma()) {
    throw PreconditionError("certificate bounds need a constant disturbance bound; use the fixpoint verifier instead");
  }
  const CertificateCheck chk = check_clf(a, cert);
  if (!chk.ok()) throw PreconditionError("certificate fails the CLF check: " + chk.violations.front().message);
  SigmaBound out;
  out.lipschitz = lipschitz_constant(a, cert);
  if (out.lipschitz.k.is_infinite()) {
    out.sigma = ExtNonNeg::infinity();
    out.notes.push_back("Lipschitz constant is infinite (finite rank next to an infinite one); no finite bound");
  } else {
    out.sigma = ExtNonNeg(out.lipschitz.k.value() / cert.f_coeff);
  }
  if (cert.objective == AcceptanceKind::Parity) {
    const ExtNonNeg radius = a.gamma_bar() * out.sigma;
    std::vector<std::string> failures;
    out.certified = !out.sigma.is_infinite() && separation_holds(a, radius, &failures);
    for (auto& f : failures) out.notes.push_back("separation fails: " + f);
  }
  return out;
}

namespace {

/// Ranks for one target under a memoryless strategy: longest eta-weighted
/// path where every strategy path reaches f, shortest over all inputs elsewhere.
std::vector<ExtNonNeg> path_ranks(const MetricAutomaton& a, const std::vector<InputSet>& choice, const StateSet& f,
                                  const Rational& eta) {
  const std::size_t n = a.num_states();
  std::vector<ExtNonNeg> r(n, ExtNonNeg::infinity());
  std::vector<bool> fixed(n, false);
  for (StateId q : f) {
    r[q] = 0;
    fixed[q] = true;
  }
  // Attractor of f under the strategy's nominal edges; values are final when added.
  for (bool grew = true; grew;) {
    grew = false;
    for (StateId q = 0; q < n; ++q) {
      if (fixed[q] || choice[q].empty()) continue;
      ExtNonNeg worst(0);
      bool all = true;
      for (InputId in : choice[q]) {
        const auto s = a.nominal(q, in);
        if (!s || !fixed[*s]) {
          all = false;
          break;
        }
        worst = std::max(worst, r[*s]);
      }
      if (!all) continue;
      r[q] = eta * a.distance_to_set(q, f) + worst;
      fixed[q] = true;
      grew = true;
    }
  }
  // Remaining states: cheapest route over any input, Bellman-Ford style.
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId q = 0; q < n; ++q) {
      if (fixed[q]) continue;
      for (InputId in : a.enabled_inputs(q)) {
        const ExtNonNeg cand = eta * a.distance_to_set(q, f) + r[*a.nominal(q, in)];
        if (cand < r[q]) {
          r[q] = cand;
          changed = true;
        }
      }
    }
  }
  return r;
}

void require_coreachable(const MetricAutomaton& a, const std::vector<StateSet>& sets) {
  const ValidationReport rep = check_coreachability(a, sets);
  if (!rep.ok()) throw PreconditionError("coreachability fails: " + rep.violations.front().message);
}

/// First input on a shortest nominal path to any even set, used where the given
/// strategy does not lead to one. BFS distance drops along it, so no cycles.
std::vector<std::optional<InputId>> even_fallback(const MetricAutomaton& a) {
  const std::size_t n = a.num_states();
  StateSet even;
  for (std::size_t k = 0; k < a.acceptance().even_count(); ++k) {
    const auto& s = a.acceptance().even_set(k);
    even.insert(s.begin(), s.end());
  }
  std::vector<std::size_t> dist(n, n + 1);
  std::vector<std::optional<InputId>> move(n);
  for (StateId q : even) dist[q] = 0;
  for (std::size_t level = 0; level < n; ++level) {
    for (StateId q = 0; q < n; ++q) {
      if (dist[q] <= level) continue;
      for (InputId in : a.enabled_inputs(q)) {
        if (dist[*a.nominal(q, in)] == level) {
          dist[q] = level + 1;
          move[q] = in;
          break;
        }
      }
    }
  }
  return move;
}

RankCertificate construct_parity(const MetricAutomaton& a, const Strategy& s, const Rational& eta) {
  if (s.is_indexed() || !s.deterministic()) throw PreconditionError("parity construction needs a deterministic memoryless strategy");
  {
    const ValidationReport rep = check_coreachability(a);
    if (!rep.ok()) throw PreconditionError("coreachability fails: " + rep.violations.front().message);
  }
  const Lasso outcome = nominal_outcome(a, s);
  if (outcome.loop.empty() || !lasso_parity_accepts(a, outcome)) {
    throw NotWinningError("strategy is not nominally winning", outcome);
  }
  const std::size_t n = a.num_states();
  const std::size_t m = a.acceptance().even_count();
  const auto fallback = even_fallback(a);

  // Deterministic successor; the strategy where it reaches an even set, the
  // fallback elsewhere.
  std::vector<std::optional<StateId>> next(n);
  for (StateId q = 0; q < n; ++q) {
    if (q < s.num_states() && !s.at(q).empty()) next[q] = a.nominal(q, *s.at(q).begin());
  }
  auto trace_of = [&](StateId q) {
    std::vector<StateId> tr{q};
    std::vector<bool> seen(n, false);
    seen[q] = true;
    while (next[tr.back()] && !seen[*next[tr.back()]]) {
      tr.push_back(*next[tr.back()]);
      seen[tr.back()] = true;
    }
    return tr;
  };
  auto least_even = [&](const std::vector<StateId>& tr) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (StateId p : tr) {
      const auto c = a.colour(p);
      if (c && *c % 2 == 0 && (!best || *c / 2 < *best)) best = *c / 2;
    }
    return best;
  };
  for (StateId q = 0; q < n; ++q) {
    if (!least_even(trace_of(q))) next[q] = fallback[q] ? a.nominal(q, *fallback[q]) : std::nullopt;
  }

  RankCertificate cert;
  cert.objective = AcceptanceKind::Parity;
  cert.f_coeff = eta;
  cert.eta_coeff = eta;
  cert.ranks.assign(n, ParityVector(m, ExtNonNeg::infinity()));
  for (StateId q = 0; q < n; ++q) {
    const auto tr = trace_of(q);
    const auto cls = least_even(tr);
    if (!cls) throw PreconditionError("state " + a.state_name(q) + " cannot reach an even set");
    const std::size_t i = *cls;
    const StateSet& fi = a.acceptance().even_set(i);
    ExtNonNeg sum(0);
    for (StateId p : tr) {
      if (fi.count(p)) break;
      sum = sum + eta * a.distance_to_set(p, fi);
    }
    cert.ranks[q][i] = sum;
    for (std::size_t j = i + 1; j < m; ++j) cert.ranks[q][j] = eta * a.distance_to_set(q, a.acceptance().even_set(j));
  }
  return cert;
}

}  // namespace

RankCertificate construct_clf_from_strategy(const MetricAutomaton& a, const Strategy& s, const Rational& eta_coeff) {
  if (eta_coeff <= 0) throw PreconditionError("eta coefficient must be positive");
  const AcceptanceKind kind = a.acceptance().kind;
  if (kind == AcceptanceKind::Parity) return construct_parity(a, s, eta_coeff);

  const auto targets = component_targets(a, kind);
  require_coreachable(a, targets);
  if (kind == AcceptanceKind::GeneralizedBuchi) {
    if (!s.is_indexed() || s.counters() != targets.size()) {
      throw PreconditionError("generalized Buchi construction needs an indexed strategy with one column per set");
    }
    if (auto w = genbuchi_losing_outcome(a, s)) throw NotWinningError("strategy is not nominally winning", *w);
  } else {
    if (s.is_indexed()) throw PreconditionError("construction needs a memoryless strategy");
    const Objective obj = kind == AcceptanceKind::Buchi ? Objective::Buchi : Objective::Reachability;
    if (auto w = nominal_losing_outcome(a, s, targets[0], obj)) throw NotWinningError("strategy is not nominally winning", *w);
  }

  RankCertificate cert;
  cert.objective = kind;
  cert.f_coeff = eta_coeff;
  cert.eta_coeff = eta_coeff;
  cert.ranks.assign(a.num_states(), std::vector<ExtNonNeg>(targets.size()));
  for (std::size_t k = 0; k < targets.size(); ++k) {
    std::vector<InputSet> choice(a.num_states());
    for (StateId q = 0; q < a.num_states() && q < s.num_states(); ++q) choice[q] = s.at(q, s.is_indexed() ? k : 0);
    const auto r = path_ranks(a, choice, targets[k], eta_coeff);
    for (StateId q = 0; q < a.num_states(); ++q) cert.ranks[q][k] = r[q];
  }
  return cert;
}

Strategy induce_strategy_from_clf(const MetricAutomaton& a, const RankCertificate& cert, InduceMode mode) {
  const CertificateCheck chk = check_clf(a, cert);
  if (!chk.ok()) throw PreconditionError("certificate fails the CLF check: " + chk.violations.front().message);
  const std::size_t n = a.num_states();
  const AcceptanceKind kind = cert.objective;
  const auto targets = component_targets(a, kind);
  const bool permissive = mode == InduceMode::Permissive;

  if (kind == AcceptanceKind::Parity) {
    const StateSet qbar = compute_qbar(a);
    std::vector<InputSet> out(n);
    for (StateId q = 0; q < n; ++q) {
      const InputSet en = a.enabled_inputs(q);
      if (en.empty()) continue;
      const bool exempt = parity_exempt(a, qbar, q);
      if (qbar.count(q)) {
        out[q] = permissive ? en : InputSet{*en.begin()};
        continue;
      }
      std::optional<InputId> best;
      for (InputId in : en) {
        if (!exempt && !decreases(a, cert, q, in)) continue;
        if (permissive) {
          out[q].insert(in);
        } else if (!best || lex_compare(cert.ranks[*a.nominal(q, in)], cert.ranks[*a.nominal(q, *best)]) < 0) {
          best = in;
        }
      }
      if (best) out[q] = {*best};
    }
    return Strategy::memoryless(std::move(out));
  }

  std::vector<std::vector<InputSet>> cols(targets.size(), std::vector<InputSet>(n));
  for (std::size_t k = 0; k < targets.size(); ++k) {
    for (StateId q = 0; q < n; ++q) {
      const InputSet en = a.enabled_inputs(q);
      if (en.empty()) continue;
      if (targets[k].count(q)) {
        if (kind == AcceptanceKind::Reachability) continue;
        cols[k][q] = permissive ? en : InputSet{*en.begin()};
        continue;
      }
      std::optional<InputId> best;
      for (InputId in : en) {
        if (!decreases(a, cert, q, in, k)) continue;
        if (permissive) {
          cols[k][q].insert(in);
        } else if (!best || cert.ranks[*a.nominal(q, in)][k] < cert.ranks[*a.nominal(q, *best)][k]) {
          best = in;
        }
      }
      if (best) cols[k][q] = {*best};
    }
  }
  if (kind == AcceptanceKind::GeneralizedBuchi) return Strategy::indexed(std::move(cols));
  return Strategy::memoryless(std::move(cols.front()));
}

}  // namespace robsynth
