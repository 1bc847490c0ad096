#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "robsynth/examples.hpp"
#include "robsynth/model.hpp"
#include "robsynth/reach.hpp"

using namespace robsynth;
using namespace robsynth::testing;

TEST_CASE("running example fixpoint") {
  const MetricAutomaton a = running_example();
  CHECK(distances_to(a, {6}) == ext({5, 6, 8, 3, 3, 1, 0}));
  const OptVector v = fixpoint_opt(a, StateSet{6});
  // q6 is in F, so the min with its own value keeps it at 0.
  CHECK(v.values == ext({1, 1, 1, 1, 1, 1, 0}));
  CHECK(v.iterations <= a.num_states() - 1);
  CHECK(brute_force_opt_oracle(a, {6}, 0) == ExtNonNeg(1));
  CHECK(brute_force_opt_oracle(a, {6}, 6) == ExtNonNeg(0));
}

TEST_CASE("strategy verification on the running example") {
  const MetricAutomaton a = running_example();
  const RobustnessReport ra = verify_strategy_sigma(a, strategy_a(a), Objective::Reachability);
  CHECK(ra.sigma == ExtNonNeg(1));
  CHECK(ra.inflated == std::vector<StateSet>{{5, 6}});
  const RobustnessReport rb = verify_strategy_sigma(a, strategy_b(a), Objective::Reachability);
  CHECK(rb.sigma == ExtNonNeg(5));
  CHECK(rb.sigma_times_gamma == strategy_sigma_oracle(a, strategy_b(a), {6}));
  CHECK(ra.iterations <= ra.analysed_states - 1);
}

TEST_CASE("optimal synthesis on the running example") {
  const MetricAutomaton a = running_example();
  const RobustnessReport r = synthesize_optimal(a, Objective::Reachability);
  CHECK(r.sigma == ExtNonNeg(1));
  REQUIRE(r.strategy);
  CHECK(r.strategy->at(0) == InputSet{a.input("a")});
  CHECK(r.strategy->at(2) == InputSet{a.input("a")});
  CHECK(r.attains_optimum == true);
}

TEST_CASE("initial state inside the target") {
  const MetricAutomaton a = build(line_metric(2), 1, {{0, 0, 1}, {1, 0, 0}}, 1, Acceptance::reachability({0}));
  const RobustnessReport r = synthesize_optimal(a, Objective::Reachability);
  CHECK(r.sigma == ExtNonNeg(0));
}

TEST_CASE("three-state chain") {
  // d(s0, s2) = 2, d(s1, s2) = 1, balls of radius 1.
  const MetricAutomaton a = build({{0, 2, 2}, {2, 0, 1}, {2, 1, 0}}, 1, {{0, 0, 1}, {1, 0, 2}}, 1, Acceptance::reachability({2}));
  const RobustnessReport r = synthesize_optimal(a, Objective::Reachability);
  CHECK(r.sigma == ExtNonNeg(1));
  for (StateId q = 0; q < 3; ++q) {
    CHECK(fixpoint_opt(a, StateSet{2}).values[q] == brute_force_opt_oracle(a, {2}, q));
  }
}

TEST_CASE("zero disturbance is an exact win") {
  AutomatonDef def = running_example().definition();
  def.gamma = DisturbanceBound::uniform(0);
  const MetricAutomaton a(std::move(def));
  const RobustnessReport r = verify_strategy_sigma(a, strategy_b(a), Objective::Reachability);
  CHECK(r.exact_win);
  CHECK(r.sigma == ExtNonNeg(0));
  CHECK(r.inflated == std::vector<StateSet>{{6}});
}

TEST_CASE("losing strategies are rejected with a witness") {
  const MetricAutomaton a = build(line_metric(3), 2, {{0, 0, 0}, {0, 1, 2}, {2, 0, 2}}, 0,
                                  Acceptance::reachability({2}));
  const Strategy loop = by_name(a, {"a", "", ""});
  try {
    verify_strategy_sigma(a, loop, Objective::Reachability);
    FAIL("expected NotWinningError");
  } catch (const NotWinningError& e) {
    CHECK(e.witness().loop == std::vector<StateId>{0});
  }
  CHECK_THROWS_AS(synthesize_optimal(build(line_metric(2), 1, {{0, 0, 0}, {1, 0, 1}}, 0,
                                           Acceptance::reachability({1})),
                                     Objective::Reachability),
                  PreconditionError);
}

TEST_CASE("Buchi variant") {
  const MetricAutomaton a = running_example(true);
  CHECK(verify_strategy_sigma(a, strategy_a(a, true), Objective::Buchi).sigma == ExtNonNeg(1));
  CHECK(verify_strategy_sigma(a, strategy_b(a, true), Objective::Buchi).sigma == ExtNonNeg(5));
  const RobustnessReport r = synthesize_optimal(a, Objective::Buchi);
  CHECK(r.sigma == ExtNonNeg(1));
  REQUIRE(r.strategy);
  CHECK(r.strategy->at(6) == InputSet{a.input("a")});
}

TEST_CASE("operator is monotone") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    const MetricAutomaton a = random_automaton(rng, AcceptanceKind::Reachability);
    std::vector<InputSet> allowed(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) allowed[q] = a.enabled_inputs(q);
    std::vector<ExtNonNeg> lo(a.num_states());
    std::vector<ExtNonNeg> hi(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
      const long long x = static_cast<long long>(rng() % 8);
      lo[q] = ExtNonNeg(x);
      hi[q] = rng() % 5 == 0 ? ExtNonNeg::infinity() : ExtNonNeg(x + static_cast<long long>(rng() % 3));
    }
    const auto glo = apply_opt_operator(a, lo, allowed);
    const auto ghi = apply_opt_operator(a, hi, allowed);
    for (StateId q = 0; q < a.num_states(); ++q) CHECK(glo[q] <= ghi[q]);
  }
}

TEST_CASE("verified sigma matches the attractor oracle") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 40; ++round) {
    const MetricAutomaton a = random_automaton(rng, AcceptanceKind::Reachability);
    const StateSet& f = a.acceptance().target();
    for (const Strategy& s : all_deterministic_strategies(a, 50)) {
      if (!nominal_win_oracle(a, s)) continue;
      const RobustnessReport r = verify_strategy_sigma(a, s, Objective::Reachability);
      CHECK(r.sigma_times_gamma == strategy_sigma_oracle(a, s, f));
    }
    const RobustnessReport best = synthesize_optimal(a, Objective::Reachability);
    CHECK(best.sigma_times_gamma == attractor_opt_oracle(a, f)[a.initial()]);
  }
}
