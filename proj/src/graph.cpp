#include "robsynth/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace robsynth::graph {

std::vector<std::vector<Node>> strongly_connected_components(const Adjacency& adj,
                                                             const std::vector<bool>& active) {
  const std::size_t n = adj.size();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Node> stack;
  std::vector<std::vector<Node>> out;
  std::size_t counter = 0;

  struct Frame {
    Node v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (Node root = 0; root < n; ++root) {
    if (!active[root] || index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        Node w = adj[f.v][f.next++];
        if (!active[w]) continue;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      Node v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Node> comp;
        Node w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

std::vector<bool> reachable(const Adjacency& adj, const std::vector<Node>& roots) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<Node> work;
  for (Node r : roots) {
    if (!seen[r]) {
      seen[r] = true;
      work.push_back(r);
    }
  }
  while (!work.empty()) {
    Node v = work.back();
    work.pop_back();
    for (Node w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        work.push_back(w);
      }
    }
  }
  return seen;
}

namespace {

std::vector<Node> bfs_path(const Adjacency& adj, const std::vector<Node>& roots, Node target,
                           const std::vector<bool>* within) {
  constexpr Node none = std::numeric_limits<Node>::max();
  std::vector<Node> parent(adj.size(), none);
  std::vector<bool> seen(adj.size(), false);
  std::deque<Node> queue;
  for (Node r : roots) {
    if (!seen[r]) {
      seen[r] = true;
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    Node v = queue.front();
    queue.pop_front();
    if (v == target) {
      std::vector<Node> path{v};
      while (parent[path.back()] != none) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Node w : adj[v]) {
      if (seen[w] || (within && !(*within)[w])) continue;
      seen[w] = true;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace

std::vector<Node> shortest_path(const Adjacency& adj, const std::vector<Node>& roots, Node target) {
  return bfs_path(adj, roots, target, nullptr);
}

std::optional<NodeLasso> find_lasso(const Adjacency& adj, const std::vector<Node>& roots,
                                    const std::vector<bool>& allowed,
                                    const std::vector<bool>& required,
                                    const Adjacency* cycle_adj) {
  const std::size_t n = adj.size();
  const Adjacency& cyc = cycle_adj ? *cycle_adj : adj;
  std::vector<bool> reach = reachable(adj, roots);
  std::vector<bool> active(n);
  for (Node v = 0; v < n; ++v) active[v] = reach[v] && allowed[v];

  auto components = strongly_connected_components(cyc, active);
  // Deterministic choice: the component with the smallest qualifying node.
  std::optional<Node> best_anchor;
  std::vector<bool> best_comp;
  for (const auto& comp : components) {
    bool nontrivial = comp.size() > 1;
    if (!nontrivial) {
      const auto& succ = cyc[comp.front()];
      nontrivial = std::find(succ.begin(), succ.end(), comp.front()) != succ.end();
    }
    if (!nontrivial) continue;
    for (Node v : comp) {
      if (!required.empty() && !required[v]) continue;
      if (!best_anchor || v < *best_anchor) {
        best_anchor = v;
        best_comp.assign(n, false);
        for (Node w : comp) best_comp[w] = true;
      }
      break;
    }
  }
  if (!best_anchor) return std::nullopt;

  Node anchor = *best_anchor;
  NodeLasso lasso;
  std::vector<Node> to_anchor = shortest_path(adj, roots, anchor);
  lasso.stem.assign(to_anchor.begin(), to_anchor.end() - 1);

  // Shortest cycle through the anchor inside its component.
  for (Node w : cyc[anchor]) {
    if (w == anchor) {
      lasso.loop = {anchor};
      return lasso;
    }
  }
  std::vector<Node> best_cycle;
  for (Node w : cyc[anchor]) {
    if (!best_comp[w]) continue;
    std::vector<Node> back = bfs_path(cyc, {w}, anchor, &best_comp);
    if (!back.empty() && (best_cycle.empty() || back.size() + 1 < best_cycle.size())) {
      best_cycle = {anchor};
      best_cycle.insert(best_cycle.end(), back.begin(), back.end() - 1);
    }
  }
  lasso.loop = std::move(best_cycle);
  return lasso;
}

}  // namespace robsynth::graph
