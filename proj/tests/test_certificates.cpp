#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "robsynth/certificates.hpp"
#include "robsynth/examples.hpp"
#include "robsynth/genbuchi.hpp"
#include "robsynth/parity.hpp"
#include "robsynth/reach.hpp"

using namespace robsynth;
using namespace robsynth::testing;

namespace {

RankCertificate reach_cert(const std::vector<ExtNonNeg>& r, Rational f) {
  return RankCertificate::scalar(AcceptanceKind::Reachability, r, std::move(f));
}

/// Strategy s restricted to the given states; elsewhere undefined.
bool agrees_on(const Strategy& s, const Strategy& t, const StateSet& states) {
  for (StateId q : states) {
    if (s.at(q) != t.at(q)) return false;
  }
  return true;
}

bool contained_in(const Strategy& inner, const Strategy& outer, const StateSet& states, std::size_t counter = 0) {
  for (StateId q : states) {
    for (InputId x : inner.at(q, counter)) {
      if (!outer.at(q, counter).count(x)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rank functions of the running example") {
  const MetricAutomaton a = running_example();
  CHECK(check_rank(a, reach_cert(ranks_a(), 1)).ok());
  CHECK(check_rank(a, reach_cert(ranks_b(), 1)).ok());
  auto bad = ranks_a();
  bad[5] = ExtNonNeg(0);
  const CertificateCheck chk = check_rank(a, reach_cert(bad, 1));
  REQUIRE(chk.violations.size() == 1);
  CHECK(chk.violations.front().kind == "rank-zero-off-target");
  CHECK(chk.violations.front().witness == std::vector<StateId>{5});
  CHECK_THROWS_AS(check_rank(a, reach_cert(ext({1, 2}), 1)), PreconditionError);
}

TEST_CASE("decrease inequality") {
  const MetricAutomaton a = running_example();
  CHECK(check_clf(a, reach_cert(ranks_a(), 1)).ok());
  const CertificateCheck twice = check_clf(a, reach_cert(ranks_a(), 2));
  REQUIRE(twice.violations.size() == 1);
  CHECK(twice.violations.front().kind == "clf-decrease");
  CHECK(twice.violations.front().witness == std::vector<StateId>{5});
  // R_b needs the slope 1/8 at q2: 1 + 8c <= 2.
  CHECK(check_clf(a, reach_cert(ranks_b(), Rational(1, 8))).ok());
  CHECK_FALSE(check_clf(a, reach_cert(ranks_b(), Rational(1, 7))).ok());
  CHECK(decreases(a, reach_cert(ranks_a(), 1), 3, a.input("a")));

  AutomatonDef def = running_example().definition();
  def.acceptance = Acceptance::reachability(a.all_states());
  const MetricAutomaton all(std::move(def));
  CHECK(check_clf(all, reach_cert(std::vector<ExtNonNeg>(7, ExtNonNeg(0)), 1)).ok());
}

TEST_CASE("Lipschitz constants") {
  const MetricAutomaton a = running_example();
  const LipschitzResult la = lipschitz_constant(a, reach_cert(ranks_a(), 1));
  CHECK(la.k == ExtNonNeg(12));
  REQUIRE(la.witness);
  CHECK(*la.witness == std::make_pair(StateId{1}, StateId{2}));
  CHECK(la.k == lipschitz_oracle(a, reach_cert(ranks_a(), 1)));
  // Oracle value for R_b, frozen.
  const RankCertificate cb = reach_cert(ranks_b(), Rational(1, 8));
  CHECK(lipschitz_oracle(a, cb) == ExtNonNeg(1));
  CHECK(lipschitz_constant(a, cb).k == ExtNonNeg(1));
  CHECK(lipschitz_constant(a, reach_cert(std::vector<ExtNonNeg>(7, ExtNonNeg(3)), 1)).k == ExtNonNeg(0));
  auto mixed = ranks_a();
  mixed[2] = ExtNonNeg::infinity();
  CHECK(lipschitz_constant(a, reach_cert(mixed, 1)).k.is_infinite());
}

TEST_CASE("sigma bounds") {
  const MetricAutomaton a = running_example();
  const SigmaBound ba = sigma_bound_from_certificate(a, reach_cert(ranks_a(), 1));
  CHECK(ba.sigma == ExtNonNeg(12));
  CHECK(ba.certified);
  CHECK(sigma_bound_from_certificate(a, reach_cert(ranks_b(), Rational(1, 8))).sigma == ExtNonNeg(8));
  CHECK_THROWS_AS(sigma_bound_from_certificate(a, reach_cert(ranks_a(), 2)), PreconditionError);

  AutomatonDef def = running_example().definition();
  def.gamma = DisturbanceBound::by_state({1, 1, 1, 1, 1, 1, 2});
  const MetricAutomaton per_state(std::move(def));
  CHECK_THROWS_AS(sigma_bound_from_certificate(per_state, reach_cert(ranks_a(), 1)), PreconditionError);
}

TEST_CASE("generalized Buchi bound takes the largest component constant") {
  // Cycle s0 -> s1 -> s2 -> s0 on the line metric, F_0 = {s1}, F_1 = {s2}.
  const MetricAutomaton a = build(line_metric(3), 1, {{0, 0, 1}, {1, 0, 2}, {2, 0, 0}}, 1,
                                  Acceptance::generalized_buchi({{1}, {2}}));
  RankCertificate c;
  c.objective = AcceptanceKind::GeneralizedBuchi;
  c.ranks = {ext({1, 6}), ext({0, 3}), ext({2, 0})};
  REQUIRE(check_clf(a, c).ok());
  RankCertificate c0 = c;
  RankCertificate c1 = c;
  for (auto& r : c0.ranks) r = {r[0]};
  for (auto& r : c1.ranks) r = {r[1]};
  c0.objective = c1.objective = AcceptanceKind::Reachability;
  const ExtNonNeg k0 = lipschitz_oracle(build(line_metric(3), 1, {}, 1, Acceptance::reachability({1})), c0);
  const ExtNonNeg k1 = lipschitz_oracle(build(line_metric(3), 1, {}, 1, Acceptance::reachability({2})), c1);
  CHECK(k0 == ExtNonNeg(2));
  CHECK(k1 == ExtNonNeg(3));
  const SigmaBound b = sigma_bound_from_certificate(a, c);
  CHECK(b.sigma == std::max(k0, k1));
  CHECK(b.sigma == ExtNonNeg(3));
  CHECK(b.lipschitz.component == 1);
}

TEST_CASE("constructed certificates") {
  const MetricAutomaton a = running_example();
  const RankCertificate ca = construct_clf_from_strategy(a, strategy_a(a), 1);
  const RankCertificate cb = construct_clf_from_strategy(a, strategy_b(a), 1);
  CHECK(check_clf(a, ca).ok());
  CHECK(check_clf(a, cb).ok());
  CHECK(ca.ranks[6] == ext({0}));
  const StateSet ra{0, 3, 4, 5};
  const StateSet rb{0, 1, 5};
  CHECK(contained_in(strategy_a(a), induce_strategy_from_clf(a, ca), ra));
  CHECK(contained_in(strategy_b(a), induce_strategy_from_clf(a, cb), rb));
  // Frozen from the pairwise oracle.
  CHECK(lipschitz_oracle(a, ca) == ExtNonNeg(6));
  CHECK(lipschitz_oracle(a, cb) == ExtNonNeg(8));
  CHECK(sigma_bound_from_certificate(a, cb).sigma > sigma_bound_from_certificate(a, ca).sigma);

  const Strategy loop = by_name(build(line_metric(2), 1, {{0, 0, 0}, {1, 0, 1}}, 0, Acceptance::reachability({1})),
                                {"a", ""});
  CHECK_THROWS_AS(construct_clf_from_strategy(build(line_metric(2), 1, {{0, 0, 0}, {1, 0, 1}}, 0,
                                                    Acceptance::reachability({1})),
                                              loop, 1),
                  PreconditionError);
}

TEST_CASE("induced strategies") {
  const MetricAutomaton a = running_example();
  const Strategy da = induce_strategy_from_clf(a, reach_cert(ranks_a(), 1), InduceMode::Deterministic);
  CHECK(agrees_on(da, strategy_a(a), {0, 3, 4, 5, 6}));
  const Strategy db = induce_strategy_from_clf(a, reach_cert(ranks_b(), Rational(1, 8)), InduceMode::Deterministic);
  CHECK(agrees_on(db, strategy_b(a), {0, 1, 5, 6}));
  CHECK(induce_strategy_from_clf(a, reach_cert(ranks_b(), Rational(1, 8))).at(0) == InputSet{a.input("b")});
  CHECK(da.at(6).empty());
  CHECK_THROWS_AS(induce_strategy_from_clf(a, reach_cert(ranks_a(), 2)), PreconditionError);

  const MetricAutomaton b = running_example(true);
  RankCertificate cbuchi = RankCertificate::scalar(AcceptanceKind::Buchi, ranks_a(), 1);
  const Strategy pb = induce_strategy_from_clf(b, cbuchi);
  CHECK(pb.at(6) == InputSet{0, 1});
  CHECK(induce_strategy_from_clf(b, cbuchi, InduceMode::Deterministic).at(6) == InputSet{0});
}

TEST_CASE("parity certificate with one even set round-trips") {
  AutomatonDef def = running_example(true).definition();
  def.acceptance = Acceptance::parity({{6}});
  const MetricAutomaton a(std::move(def));
  const Strategy sa = strategy_a(a, true);
  const RankCertificate c = construct_clf_from_strategy(a, sa, 1);
  CHECK(c.objective == AcceptanceKind::Parity);
  REQUIRE(check_clf(a, c).ok());
  const Strategy back = induce_strategy_from_clf(a, c, InduceMode::Deterministic);
  CHECK(agrees_on(back, sa, {0, 3, 4, 5, 6}));
  CHECK(progress_measure_holds(a, c.ranks, nominal_outcome(a, back)));
}

TEST_CASE("certified strategies reach the target within |Q| steps") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 40; ++round) {
    const MetricAutomaton a = random_automaton(rng, AcceptanceKind::Reachability);
    const StateSet& f = a.acceptance().target();
    const RobustnessReport r = synthesize_optimal(a, Objective::Reachability);
    const RankCertificate c = construct_clf_from_strategy(a, *r.strategy, 1);
    REQUIRE(check_clf(a, c).ok());
    const Strategy s = induce_strategy_from_clf(a, c, InduceMode::Deterministic);
    for (StateId q = 0; q < a.num_states(); ++q) {
      const auto len = nominal_trace_length(a, s, q, f);
      REQUIRE(len);
      CHECK(*len <= a.num_states());
    }
  }
}

TEST_CASE("parity certificates induce progress on nominal outcomes") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int round = 0; round < 80; ++round) {
    const MetricAutomaton a = random_automaton(rng, AcceptanceKind::Parity);
    for (const Strategy& s : all_deterministic_strategies(a, 100)) {
      if (!lasso_parity_accepts(a, nominal_outcome(a, s))) continue;
      RankCertificate c;
      try {
        c = construct_clf_from_strategy(a, s, 1);
      } catch (const PreconditionError&) {
        continue;
      }
      if (!check_clf(a, c).ok()) continue;
      const Strategy ind = induce_strategy_from_clf(a, c, InduceMode::Deterministic);
      bool defined = true;
      for (StateId q = 0; q < a.num_states(); ++q) defined = defined && (!ind.at(q).empty() || a.enabled_inputs(q).empty());
      if (!defined) continue;
      const Lasso l = nominal_outcome(a, ind);
      if (l.loop.empty()) continue;
      CHECK(progress_measure_holds(a, c.ranks, l));
      ++checked;
      break;
    }
  }
  CHECK(checked > 10);
}
