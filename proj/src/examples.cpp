#include "robsynth/examples.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace robsynth {

MetricAutomaton running_example(bool buchi) {
  // Upper triangle of the distance table, row by row.
  const std::array<std::array<int, 7>, 7> upper{{
      {0, 1, 2, 4, 4, 4, 5},
      {0, 0, 1, 5, 5, 5, 6},
      {0, 0, 0, 6, 6, 7, 8},
      {0, 0, 0, 0, 1, 3, 3},
      {0, 0, 0, 0, 0, 3, 3},
      {0, 0, 0, 0, 0, 0, 1},
      {0, 0, 0, 0, 0, 0, 0},
  }};
  AutomatonDef def;
  for (int i = 0; i < 7; ++i) def.states.push_back({"q" + std::to_string(i), {}});
  def.matrix.assign(7, std::vector<ExtNonNeg>(7));
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      def.matrix[i][j] = ExtNonNeg(i <= j ? upper[i][j] : upper[j][i]);
    }
  }
  def.inputs = {"a", "b"};
  def.initial = 0;
  const InputId a = 0;
  const InputId b = 1;
  auto edge = [&](StateId from, InputId in, StateId to) { def.transitions.push_back({from, in, to, std::nullopt}); };
  edge(0, a, 3);
  edge(0, b, 1);
  edge(1, a, 6);
  edge(1, b, 6);
  edge(2, a, 3);
  edge(2, b, 1);
  edge(3, a, 5);
  edge(3, b, 5);
  edge(4, a, 6);
  edge(4, b, 6);
  edge(5, a, 6);
  edge(5, b, 6);
  if (buchi) {
    edge(6, a, 0);
    edge(6, b, 2);
  }
  def.gamma = DisturbanceBound::uniform(1);
  def.acceptance = buchi ? Acceptance::buchi({6}) : Acceptance::reachability({6});
  return MetricAutomaton(std::move(def));
}

MetricAutomaton gray_code(int bits) {
  if (bits < 1 || bits > 12) throw std::invalid_argument("gray-code bits must lie in 1..12");
  const std::size_t count = std::size_t{1} << bits;
  AutomatonDef def;
  def.metric = MetricKind::Hamming;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t g = i ^ (i >> 1);
    State s;
    for (int k = bits - 1; k >= 0; --k) {
      s.coords.push_back(static_cast<long long>((g >> k) & 1U));
      s.name.push_back(((g >> k) & 1U) ? '1' : '0');
    }
    def.states.push_back(std::move(s));
  }
  def.inputs = {"next"};
  for (std::size_t i = 0; i < count; ++i) def.transitions.push_back({i, 0, (i + 1) % count, std::nullopt});
  def.gamma = DisturbanceBound::uniform(1);
  def.acceptance = Acceptance::buchi({0});
  return MetricAutomaton(std::move(def));
}

ConsensusRule parse_consensus_rule(const std::string& text) {
  if (text == "min") return ConsensusRule::Min;
  if (text == "max") return ConsensusRule::Max;
  if (text == "floor-avg") return ConsensusRule::FloorAverage;
  throw std::invalid_argument("unknown rule '" + text + "' (expected min, max or floor-avg)");
}

const char* to_string(ConsensusRule rule) {
  switch (rule) {
    case ConsensusRule::Min: return "min";
    case ConsensusRule::Max: return "max";
    case ConsensusRule::FloorAverage: return "floor-avg";
  }
  return "?";
}

namespace {

using Config = std::array<int, 4>;

// Diamond topology, 0-based: node 0 talks to 1 and 2, node 3 to 1 and 2.
constexpr std::array<std::array<int, 2>, 4> kNeighbours{{{1, 2}, {0, 3}, {0, 3}, {1, 2}}};

int apply_rule(ConsensusRule rule, int own, int m1, int m2) {
  switch (rule) {
    case ConsensusRule::Min: return std::min({own, m1, m2});
    case ConsensusRule::Max: return std::max({own, m1, m2});
    case ConsensusRule::FloorAverage: return (own + m1 + m2) / 3;
  }
  return own;
}

Config nominal_step(ConsensusRule rule, const Config& c) {
  Config out{};
  for (int i = 0; i < 4; ++i) out[i] = apply_rule(rule, c[i], c[kNeighbours[i][0]], c[kNeighbours[i][1]]);
  return out;
}

std::set<Config> disturbed_steps(ConsensusRule rule, const Config& c) {
  std::set<Config> out{nominal_step(rule, c)};
  for (int i = 0; i < 4; ++i) {
    for (int slot = 0; slot < 2; ++slot) {
      for (int delta : {-1, 1}) {
        std::array<int, 2> msg{c[kNeighbours[i][0]], c[kNeighbours[i][1]]};
        msg[slot] = std::clamp(msg[slot] + delta, 1, 4);
        Config next = nominal_step(rule, c);
        next[i] = apply_rule(rule, c[i], msg[0], msg[1]);
        out.insert(next);
      }
    }
  }
  return out;
}

std::string config_name(const Config& c) {
  std::string s;
  for (int v : c) s.push_back(static_cast<char>('0' + v));
  return s;
}

}  // namespace

MetricAutomaton leader_election(ConsensusRule rule) {
  const Config start{1, 2, 3, 4};
  std::map<Config, StateId> ids{{start, 0}};
  std::vector<Config> order{start};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Config& n : disturbed_steps(rule, order[i])) {
      if (ids.emplace(n, order.size()).second) order.push_back(n);
    }
  }

  AutomatonDef def;
  def.metric = MetricKind::Manhattan;
  def.inputs = {"step"};
  StateSet target;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Config& c = order[i];
    def.states.push_back({config_name(c), {c[0], c[1], c[2], c[3]}});
    if (c[0] == c[1] && c[1] == c[2] && c[2] == c[3]) target.insert(i);
    std::vector<StateId> disturbed;
    for (const Config& n : disturbed_steps(rule, c)) disturbed.push_back(ids.at(n));
    def.transitions.push_back({i, 0, ids.at(nominal_step(rule, c)), std::move(disturbed)});
  }
  def.gamma = DisturbanceBound::uniform(1);
  def.acceptance = Acceptance::reachability(std::move(target));
  return MetricAutomaton(std::move(def));
}

}  // namespace robsynth
