#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "robsynth/examples.hpp"
#include "robsynth/genbuchi.hpp"
#include "robsynth/model.hpp"
#include "robsynth/reach.hpp"

using namespace robsynth;
using namespace robsynth::testing;

namespace {

MetricAutomaton running_gen(std::vector<StateSet> sets) {
  AutomatonDef def = running_example(true).definition();
  def.acceptance = Acceptance::generalized_buchi(std::move(sets));
  return MetricAutomaton(std::move(def));
}

// Four-state cycle s0 -> s1 -> s2 -> s3 -> s0 with F_0 = {s1}, F_1 = {s3}.
MetricAutomaton cycle4() {
  return build(line_metric(4), 1, {{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {3, 0, 0}}, 0,
               Acceptance::generalized_buchi({{1}, {3}}));
}

}  // namespace

TEST_CASE("a single set reduces to the reachability fixpoint") {
  const MetricAutomaton a = running_gen({{6}});
  const OptMatrix m = genbuchi_fixpoint(a, a.acceptance().sets);
  REQUIRE(m.columns.size() == 1);
  CHECK(m.columns[0].values == fixpoint_opt(a, StateSet{6}).values);

  const Strategy sa = strategy_a(a, true);
  std::vector<InputSet> col;
  for (StateId q = 0; q < a.num_states(); ++q) col.push_back(sa.at(q));
  const RobustnessReport via_gen = verify_genbuchi_sigma(a, Strategy::indexed({col}));
  CHECK(via_gen.sigma == verify_strategy_sigma(running_example(true), sa, Objective::Buchi).sigma);
  CHECK(synthesize_genbuchi(a).sigma == synthesize_optimal(running_example(true), Objective::Buchi).sigma);
}

TEST_CASE("columns match per-set fixpoints") {
  // q4 has no nominal in-edge, so q3 stands in as the second set.
  const MetricAutomaton a = running_gen({{6}, {3}});
  const OptMatrix m = genbuchi_fixpoint(a, a.acceptance().sets);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(m.columns[k].values == fixpoint_opt(a, a.acceptance().sets[k]).values);
    for (StateId q : a.acceptance().sets[k]) CHECK(m.at(q, k).is_zero());
  }
  const RobustnessReport r = synthesize_genbuchi(a);
  REQUIRE(r.component_sigma.size() == 2);
  CHECK(r.sigma == std::max(r.component_sigma[0], r.component_sigma[1]));

  const MetricAutomaton bad = running_gen({{6}, {4}});
  CHECK_THROWS_AS(genbuchi_fixpoint(bad, bad.acceptance().sets), PreconditionError);
}

TEST_CASE("indexed verification takes the column maximum") {
  const MetricAutomaton a = running_gen({{6}, {3}});
  std::vector<InputSet> col(7, InputSet{a.input("a")});
  const Strategy s = Strategy::indexed({col, col});
  const RobustnessReport r = verify_genbuchi_sigma(a, s);
  REQUIRE(r.component_sigma.size() == 2);
  CHECK(r.sigma == std::max(r.component_sigma[0], r.component_sigma[1]));
  CHECK(r.inflated.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(r.inflated[k] == inflate(a, a.acceptance().sets[k], r.sigma_times_gamma));
  }
}

TEST_CASE("every state in every set gives zero") {
  AutomatonDef def = cycle4().definition();
  def.gamma = DisturbanceBound::uniform(1);
  def.acceptance = Acceptance::generalized_buchi({{0, 1, 2, 3}, {0, 1, 2, 3}});
  const MetricAutomaton a(std::move(def));
  CHECK(synthesize_genbuchi(a).sigma == ExtNonNeg(0));
}

TEST_CASE("initial state in both sets") {
  // The initial-state formula gives 0; the recurrent figure sees the later
  // visits, where a disturbance can push the play two away from s0.
  const MetricAutomaton a = build({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, 2,
                                  {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 2}, {2, 0, 1}}, 1,
                                  Acceptance::generalized_buchi({{0, 2}, {0}}));
  const RobustnessReport r = synthesize_genbuchi(a);
  CHECK(r.sigma == ExtNonNeg(0));
  REQUIRE(r.sigma_recurrent);
  CHECK(*r.sigma_recurrent > ExtNonNeg(0));
}

TEST_CASE("rank relations") {
  const RankVector x = ext({3, 0});
  const RankVector y = ext({2, 5});
  CHECK(rank_greater(x, y, 0));
  CHECK_FALSE(rank_greater(x, y, 1));
  CHECK(rank_rhd(x, y, 0));  // component 1 of x is zero
  CHECK_FALSE(rank_rhd(y, x, 0));
  CHECK(advance_counter({{1}, {3}}, 0, 1) == 1);
  CHECK(advance_counter({{1}, {3}}, 1, 3) == 0);
  CHECK(advance_counter({{1}, {3}}, 1, 1) == 1);
}

TEST_CASE("chain check on a hand instance") {
  const std::vector<RankVector> ranks{ext({1, 3}), ext({0, 2}), ext({3, 1}), ext({2, 0})};
  CHECK(rhd_chain_check(ranks, {{}, {0, 1, 2, 3}}, {{1}, {3}}));
  const std::vector<RankVector> flat(4, ext({1, 1}));
  CHECK_FALSE(rhd_chain_check(flat, {{}, {0, 1}}, {{1}, {3}}));
  CHECK_THROWS_AS(rhd_chain_check(ranks, {{0}, {}}, {{1}, {3}}), PreconditionError);
}

TEST_CASE("losing indexed strategy") {
  const MetricAutomaton a = build(line_metric(3), 2, {{0, 0, 1}, {1, 0, 0}, {1, 1, 2}, {2, 0, 0}}, 0,
                                  Acceptance::generalized_buchi({{1}, {2}}));
  std::vector<InputSet> stay{{0}, {0}, {0}};
  const Strategy s = Strategy::indexed({stay, stay});
  CHECK(genbuchi_losing_outcome(a, s).has_value());
  CHECK_THROWS_AS(verify_genbuchi_sigma(a, s), NotWinningError);
  std::vector<InputSet> go{{0}, {1}, {0}};
  CHECK_FALSE(genbuchi_losing_outcome(a, Strategy::indexed({stay, go})).has_value());
}

TEST_CASE("synthesized strategies cycle through the sets") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 40; ++round) {
    const MetricAutomaton a = random_automaton(rng, AcceptanceKind::GeneralizedBuchi);
    const auto& sets = a.acceptance().sets;
    const RobustnessReport r = synthesize_genbuchi(a);
    REQUIRE(r.strategy);
    CHECK(r.iterations <= a.num_states() - 1);
    // Nominal simulation: visits the sets cyclically within |Q| n steps per set.
    StateId q = a.initial();
    std::size_t counter = 0;
    std::size_t visits = 0;
    std::size_t since = 0;
    const std::size_t budget = a.num_states() * sets.size();
    for (std::size_t step = 0; step < 4 * budget && visits < 2 * sets.size(); ++step) {
      const InputSet& choice = r.strategy->at(q, counter);
      REQUIRE(choice.size() == 1);
      q = *a.nominal(q, *choice.begin());
      const std::size_t next = advance_counter(sets, counter, q);
      if (next != counter) {
        ++visits;
        since = 0;
      } else {
        ++since;
        CHECK(since <= budget);
      }
      counter = next;
    }
    CHECK(visits >= 2 * sets.size());
  }
}
