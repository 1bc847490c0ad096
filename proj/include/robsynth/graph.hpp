#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace robsynth::graph {

using Node = std::size_t;
using Adjacency = std::vector<std::vector<Node>>;

/// Tarjan's algorithm, iterative. Components come out in reverse topological order.
std::vector<std::vector<Node>> strongly_connected_components(const Adjacency& adj,
                                                             const std::vector<bool>& active);

/// Nodes reachable from roots (roots included).
std::vector<bool> reachable(const Adjacency& adj, const std::vector<Node>& roots);

/// Shortest path from any root to target, inclusive of both ends; empty if none.
std::vector<Node> shortest_path(const Adjacency& adj, const std::vector<Node>& roots, Node target);

struct NodeLasso {
  std::vector<Node> stem;
  std::vector<Node> loop;
};

/// Finds a reachable cycle whose nodes all satisfy `allowed` and which passes
/// through at least one `required` node (any allowed node if required is empty).
/// The loop starts at the required node; the stem leads to it from a root.
/// When cycle_adj is given, the loop must use its edges while the stem uses adj.
std::optional<NodeLasso> find_lasso(const Adjacency& adj, const std::vector<Node>& roots,
                                    const std::vector<bool>& allowed,
                                    const std::vector<bool>& required = {},
                                    const Adjacency* cycle_adj = nullptr);

}  // namespace robsynth::graph
