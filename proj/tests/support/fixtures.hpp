#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/certificates.hpp"

namespace robsynth::testing {

inline std::string data_path(const std::string& name) { return std::string(ROBSYNTH_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<ExtNonNeg> ext(std::initializer_list<long long> xs) {
  std::vector<ExtNonNeg> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

/// Memoryless strategy from one input name per state ("" = undefined).
inline Strategy by_name(const MetricAutomaton& a, const std::vector<std::string>& inputs) {
  std::vector<InputSet> choice(a.num_states());
  for (StateId q = 0; q < inputs.size(); ++q) {
    if (!inputs[q].empty()) choice[q] = {a.input(inputs[q])};
  }
  return Strategy::memoryless(std::move(choice));
}

struct Edge {
  StateId from;
  InputId input;
  StateId to;
};

/// Small explicit-metric automaton with states s0.. and inputs a, b, ...
inline MetricAutomaton build(const std::vector<std::vector<long long>>& matrix, std::size_t inputs,
                             const std::vector<Edge>& edges, Rational gamma, Acceptance acc) {
  AutomatonDef def;
  for (std::size_t q = 0; q < matrix.size(); ++q) def.states.push_back({"s" + std::to_string(q), {}});
  for (const auto& row : matrix) {
    std::vector<ExtNonNeg> r;
    for (long long x : row) r.emplace_back(x < 0 ? ExtNonNeg::infinity() : ExtNonNeg(x));
    def.matrix.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < inputs; ++i) def.inputs.push_back(std::string(1, static_cast<char>('a' + i)));
  for (const Edge& e : edges) def.transitions.push_back({e.from, e.input, e.to, std::nullopt});
  def.gamma = DisturbanceBound::uniform(std::move(gamma));
  def.acceptance = std::move(acc);
  return MetricAutomaton(std::move(def));
}

/// Path metric d(i, j) = |i - j|.
inline std::vector<std::vector<long long>> line_metric(std::size_t n) {
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = i > j ? static_cast<long long>(i - j) : static_cast<long long>(j - i);
  }
  return m;
}

/// Choice table of a memoryless strategy.
inline std::vector<InputSet> table_of(const Strategy& s) {
  std::vector<InputSet> t;
  for (StateId q = 0; q < s.num_states(); ++q) t.push_back(s.at(q));
  return t;
}

/// Running example strategies: S_a plays a everywhere, S_b plays b at q0 and q2.
inline Strategy strategy_a(const MetricAutomaton& a, bool buchi = false) {
  return by_name(a, {"a", "a", "a", "a", "a", "a", buchi ? "a" : ""});
}
inline Strategy strategy_b(const MetricAutomaton& a, bool buchi = false) {
  return by_name(a, {"b", "a", "b", "a", "a", "a", buchi ? "b" : ""});
}

/// The two rank functions of the running example.
inline std::vector<ExtNonNeg> ranks_a() { return ext({18, 12, 24, 8, 6, 1, 0}); }
inline std::vector<ExtNonNeg> ranks_b() { return ext({2, 1, 2, 2, 1, 1, 0}); }

}  // namespace robsynth::testing
