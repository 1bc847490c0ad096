#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "robsynth/automaton.hpp"

namespace robsynth::testing {

struct GenOptions {
  std::size_t min_states = 2;
  std::size_t max_states = 6;
  std::size_t max_inputs = 3;
  /// Probability that (q, a) has a transition.
  double density = 0.75;
  /// Pool of constant disturbance bounds to draw from.
  std::vector<Rational> gammas{0, 1, 2};
  /// Chance of a per-state bound instead of a constant one.
  double per_state_gamma = 0.0;
  /// Chance that a transition lists an explicit subset of its ball.
  double explicit_disturbance = 0.25;
  /// Require every state to reach the acceptance sets nominally.
  bool coreachable = true;
};

/// Shortest-path closure of random positive weights: always a metric.
std::vector<std::vector<ExtNonNeg>> random_metric(std::mt19937_64& rng, std::size_t n);

/// Valid (validate_automaton ok) random automata with the given acceptance kind.
MetricAutomaton random_automaton(std::mt19937_64& rng, AcceptanceKind kind, const GenOptions& opt = {});

/// Every deterministic memoryless strategy over enabled inputs. Reachability
/// targets are left undefined. Stops after `limit` strategies.
std::vector<Strategy> all_deterministic_strategies(const MetricAutomaton& a, std::size_t limit = 5000);

/// Indexed strategies with every column drawn at random (deterministic).
Strategy random_indexed_strategy(std::mt19937_64& rng, const MetricAutomaton& a, std::size_t columns);

/// Lasso over the automaton's state space, stem and loop of the given lengths,
/// states chosen at random (not necessarily connected by transitions).
Lasso random_lasso(std::mt19937_64& rng, std::size_t states, std::size_t stem, std::size_t loop);

}  // namespace robsynth::testing
