#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "robsynth/examples.hpp"
#include "robsynth/fault.hpp"
#include "robsynth/parity.hpp"
#include "robsynth/reach.hpp"

using namespace robsynth;
using namespace robsynth::testing;

TEST_CASE("Buchi running example bound") {
  const MetricAutomaton a = running_example(true);
  const Strategy sa = strategy_a(a, true);
  const RankCertificate cert = RankCertificate::scalar(AcceptanceKind::Buchi, ranks_a(), 1);
  const FaultBound fb = compute_fault_bound(a, sa, cert);
  REQUIRE(fb.n);
  CHECK(*fb.n == 2);
  CHECK(fb.radius == ExtNonNeg(1));
  CHECK(fb.inflated == std::vector<StateSet>{{5, 6}});
  CHECK(fb.trace_lengths[0].at(5) == std::optional<std::size_t>(2));
  CHECK(fb.trace_lengths[0].at(6) == std::optional<std::size_t>(1));
  CHECK(fb.pedigree);
  CHECK(fb.certified);
  CHECK_FALSE(exhaustive_adversary_search(a, sa, 2).violation);

  // Without a certificate the bound stands but is not certified.
  const FaultBound plain = compute_fault_bound(a, sa);
  CHECK(plain.n == fb.n);
  CHECK_FALSE(plain.certified);
}

TEST_CASE("initial state in F with nothing to inflate") {
  // s0 in F loops to itself; gamma 0 keeps F' = F.
  const MetricAutomaton a = build(line_metric(2), 1, {{0, 0, 0}, {1, 0, 0}}, 0, Acceptance::buchi({0}));
  const FaultBound fb = compute_fault_bound(a, by_name(a, {"a", "a"}));
  REQUIRE(fb.n);
  CHECK(*fb.n == 1);
}

TEST_CASE("parity entries that never reach their set are excluded") {
  // F_0 = {s0}, F_2 = {s2}, d(s0, s2) infinite. A fault moves s0 to s1, whose
  // trace settles in F_2 and never returns to F_0.
  const MetricAutomaton a = build({{0, 1, -1}, {1, 0, 1}, {-1, 1, 0}}, 1, {{0, 0, 0}, {1, 0, 2}, {2, 0, 2}}, 1,
                                  Acceptance::parity({{0}, {}, {2}}));
  const FaultBound fb = compute_fault_bound(a, by_name(a, {"a", "a", "a"}));
  REQUIRE(fb.n);
  CHECK(*fb.n == 2);
  REQUIRE(fb.trace_lengths.size() == 2);
  CHECK_FALSE(fb.trace_lengths[0].at(1));
  CHECK(fb.trace_lengths[1].at(1) == std::optional<std::size_t>(2));
  CHECK_FALSE(exhaustive_adversary_search(a, by_name(a, {"a", "a", "a"}), 2).violation);
}

TEST_CASE("parity without separation derives no spacing") {
  const MetricAutomaton a = build(line_metric(3), 1, {{0, 0, 1}, {1, 0, 2}, {2, 0, 2}}, 1,
                                  Acceptance::parity({{0}, {}, {2}}));
  CHECK_FALSE(compute_fault_bound(a, by_name(a, {"a", "a", "a"})).n);
}

TEST_CASE("a reachable dead end makes N infinite") {
  // s2 has no transitions; one fault from s0 lands there.
  const MetricAutomaton a = build(line_metric(3), 1, {{0, 0, 1}, {1, 0, 0}}, 1, Acceptance::parity({{0, 1, 2}}));
  const Strategy s = by_name(a, {"a", "a", ""});
  const FaultBound fb = compute_fault_bound(a, s);
  CHECK_FALSE(fb.n);
  for (std::size_t n = 1; n < 4; ++n) CHECK(exhaustive_adversary_search(a, s, n).violation);
}

TEST_CASE("no disturbance means no violation") {
  AutomatonDef def = running_example(true).definition();
  def.gamma = DisturbanceBound::uniform(0);
  const MetricAutomaton a(std::move(def));
  for (std::size_t n = 0; n < 4; ++n) CHECK_FALSE(exhaustive_adversary_search(a, strategy_b(a, true), n).violation);
}

TEST_CASE("search preconditions") {
  const MetricAutomaton g = gray_code(4);
  std::vector<InputSet> next(g.num_states(), InputSet{0});
  CHECK_THROWS_AS(exhaustive_adversary_search(g, Strategy::memoryless(next), 1), PreconditionError);
  CHECK_NOTHROW(exhaustive_adversary_search(g, Strategy::memoryless(next), 1, 16));
  const MetricAutomaton a = running_example(true);
  std::vector<InputSet> both(a.num_states(), InputSet{0, 1});
  CHECK_THROWS_AS(exhaustive_adversary_search(a, Strategy::memoryless(both), 1), PreconditionError);
}

TEST_CASE("simulation on the running example") {
  const MetricAutomaton a = running_example();
  const Strategy sa = strategy_a(a);
  const RunResult nominal = simulate_run(a, sa, {}, 10);
  CHECK(nominal.trace == std::vector<StateId>{0, 3, 5, 6});
  CHECK(nominal.accepted == true);

  Adversary scripted;
  scripted.kind = AdversaryKind::Scripted;
  scripted.script.events = {{0, 4}};
  const RunResult hit = simulate_run(a, sa, scripted, 10);
  CHECK(hit.trace == std::vector<StateId>{0, 4, 6});
  CHECK(hit.faults == std::vector<FaultEvent>{{0, 4}});

  scripted.script.events = {{0, 2}};
  CHECK_THROWS_AS(simulate_run(a, sa, scripted, 10), PreconditionError);
  scripted.script.events = {{0, 4}, {1, 5}};
  scripted.script_spacing = 2;
  CHECK_THROWS_AS(simulate_run(a, sa, scripted, 10), PreconditionError);
}

TEST_CASE("spacing check") {
  FaultScript s;
  s.events = {{0, 1}, {3, 1}};
  CHECK(script_respects_spacing(s, 3));
  CHECK_FALSE(script_respects_spacing(s, 4));
  s.loop_start = 0;
  s.loop_length = 4;
  std::string why;
  CHECK_FALSE(script_respects_spacing(s, 2, &why));  // 3 -> 4 across the period
  CHECK_FALSE(why.empty());
}

TEST_CASE("seeded runs replay identically") {
  const MetricAutomaton a = running_example(true);
  Adversary adv;
  adv.kind = AdversaryKind::Random;
  adv.n_bound = 1;
  adv.seed = 42;
  const RunResult r1 = simulate_run(a, strategy_a(a, true), adv, 200);
  const RunResult r2 = simulate_run(a, strategy_a(a, true), adv, 200);
  CHECK(r1.trace == r2.trace);
  CHECK(r1.faults == r2.faults);
  CHECK_FALSE(r1.faults.empty());
  for (std::size_t i = 1; i < r1.faults.size(); ++i) CHECK(r1.faults[i].step - r1.faults[i - 1].step >= adv.n_bound);
}

TEST_CASE("witnesses replay as scripted runs") {
  std::mt19937_64 rng(31);
  int replayed = 0;
  for (int round = 0; round < 200 && replayed < 20; ++round) {
    const AcceptanceKind kind = round % 2 ? AcceptanceKind::Buchi : AcceptanceKind::Parity;
    const MetricAutomaton a = random_automaton(rng, kind);
    for (const Strategy& s : all_deterministic_strategies(a, 20)) {
      if (!nominal_win_oracle(a, s)) continue;
      const SimOutcome out = exhaustive_adversary_search(a, s, 0);
      if (!out.violation || out.witness.loop.empty()) continue;
      Adversary adv;
      adv.kind = AdversaryKind::Scripted;
      adv.script = out.script;
      const std::size_t steps = out.witness.stem.size() + 3 * out.witness.loop.size();
      const RunResult run = simulate_run(a, s, adv, steps);
      REQUIRE(run.lasso);
      CHECK(run.exact);
      CHECK(run.accepted == false);
      ++replayed;
      break;
    }
  }
  CHECK(replayed > 0);
}

TEST_CASE("no violation persists as N grows") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 40; ++round) {
    const MetricAutomaton a = random_automaton(rng, AcceptanceKind::Buchi);
    for (const Strategy& s : all_deterministic_strategies(a, 10)) {
      if (!nominal_win_oracle(a, s)) continue;
      bool clean = false;
      for (std::size_t n = 0; n <= a.num_states() + 1; ++n) {
        const bool v = exhaustive_adversary_search(a, s, n).violation;
        if (clean) CHECK_FALSE(v);
        clean = clean || !v;
      }
    }
  }
}
