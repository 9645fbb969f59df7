// Copyright 2026 The searchgame Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEARCHGAME_STRUCTURE_HPP_
#define SEARCHGAME_STRUCTURE_HPP_

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "searchgame/network.hpp"

namespace searchgame {

enum class NetworkClass { tree, eulerian, weakly_eulerian, general };

inline std::string to_string(NetworkClass c) {
  switch (c) {
    case NetworkClass::tree:
      return "tree";
    case NetworkClass::eulerian:
      return "eulerian";
    case NetworkClass::weakly_eulerian:
      return "weakly_eulerian";
    default:
      return "general";
  }
}

// A maximal 2-arc-connected piece: its nodes and the non-bridge arcs joining
// them. Trivial blocks (one node, no arcs) are kept so the bridge-block tree
// is well formed.
struct Block {
  std::vector<int> nodes;
  std::vector<int> arcs;
  double length = 0.0;
};

struct BridgeBlockEdge {
  int block_a = 0;
  int block_b = 0;
  int bridge_arc = 0;
};

struct StructureReport {
  std::vector<int> bridges;  // arc indices, in network arc order
  std::vector<Block> blocks;
  std::vector<int> block_of_node;  // node index -> block index
  std::vector<BridgeBlockEdge> bridge_block_tree;
  double mu1 = 0.0;  // total bridge length
  double mu2 = 0.0;  // total block length
  bool is_eulerian = false;
  bool is_weakly_eulerian = false;
};

// Bridge/block decomposition via one depth-first traversal with low-link
// values. Arc instances (not node pairs) are tracked, so parallel arcs make
// their endpoints 2-arc-connected; self-loops are never bridges.
inline StructureReport decompose(const Network& net) {
  const int n = net.node_count();
  const int m = net.arc_count();

  // adjacency as (arc index, other endpoint)
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int i = 0; i < m; ++i) {
    const Arc& a = net.arc(i);
    if (a.u == a.v) continue;  // self-loops cannot disconnect anything
    adj[a.u].push_back({i, a.v});
    adj[a.v].push_back({i, a.u});
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> is_bridge(m, 0);
  int timer = 0;

  // Iterative DFS; entry = (node, arc used to enter, adjacency cursor).
  struct Frame {
    int node;
    int via_arc;
    std::size_t cursor = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({net.root(), -1});
  disc[net.root()] = low[net.root()] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.cursor < adj[f.node].size()) {
      auto [arc, other] = adj[f.node][f.cursor++];
      if (arc == f.via_arc) continue;
      if (disc[other] == -1) {
        disc[other] = low[other] = timer++;
        stack.push_back({other, arc});
      } else {
        low[f.node] = std::min(low[f.node], disc[other]);
      }
    } else {
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame& parent = stack.back();
        low[parent.node] = std::min(low[parent.node], low[done.node]);
        if (low[done.node] > disc[parent.node]) is_bridge[done.via_arc] = 1;
      }
    }
  }

  StructureReport report;
  for (int i = 0; i < m; ++i)
    if (is_bridge[i]) report.bridges.push_back(i);

  // Blocks = connected components after removing the bridges.
  std::vector<int> comp(n, -1);
  int blocks = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = blocks;
    std::vector<int> bfs{s};
    while (!bfs.empty()) {
      int v = bfs.back();
      bfs.pop_back();
      for (auto [arc, other] : adj[v]) {
        if (is_bridge[arc] || comp[other] != -1) continue;
        comp[other] = blocks;
        bfs.push_back(other);
      }
    }
    ++blocks;
  }

  report.blocks.assign(blocks, Block{});
  report.block_of_node = comp;
  for (int v = 0; v < n; ++v) report.blocks[comp[v]].nodes.push_back(v);
  for (int i = 0; i < m; ++i) {
    const Arc& a = net.arc(i);
    if (is_bridge[i]) {
      report.mu1 += a.length;
      report.bridge_block_tree.push_back({comp[a.u], comp[a.v], i});
    } else {
      report.blocks[comp[a.u]].arcs.push_back(i);
      report.blocks[comp[a.u]].length += a.length;
      report.mu2 += a.length;
    }
  }

  // Parity checks: plain degrees for Eulerian, block-internal degrees for
  // weakly Eulerian. A self-loop adds 2 either way, so it never breaks parity.
  report.is_eulerian = true;
  for (int v = 0; v < n; ++v) {
    if (net.degree(v) % 2 != 0) {
      report.is_eulerian = false;
      break;
    }
  }
  report.is_weakly_eulerian = true;
  for (const Block& b : report.blocks) {
    std::vector<int> internal_degree(n, 0);
    for (int arc : b.arcs) {
      internal_degree[net.arc(arc).u] += 1;
      internal_degree[net.arc(arc).v] += 1;
    }
    for (int v : b.nodes) {
      if (internal_degree[v] % 2 != 0) {
        report.is_weakly_eulerian = false;
        break;
      }
    }
    if (!report.is_weakly_eulerian) break;
  }
  return report;
}

// Most specific class; trees and Eulerian networks are the special cases of
// weakly Eulerian and are reported as such.
inline NetworkClass classify(const StructureReport& report) {
  if (report.mu2 == 0.0) return NetworkClass::tree;
  if (report.is_eulerian) return NetworkClass::eulerian;
  if (report.is_weakly_eulerian) return NetworkClass::weakly_eulerian;
  return NetworkClass::general;
}

// The weakly Eulerian surrogate: every block's nodes merge into one node
// (named after the lexicographically smallest member), block-internal arcs
// become self-loops there, bridges survive unchanged. Total length is
// preserved.
inline Network contract_blocks(const Network& net,
                               const StructureReport& report) {
  std::vector<std::string> reps(report.blocks.size());
  for (std::size_t b = 0; b < report.blocks.size(); ++b) {
    std::string best = net.node_id(report.blocks[b].nodes.front());
    for (int v : report.blocks[b].nodes) best = std::min(best, net.node_id(v));
    reps[b] = best;
  }
  std::vector<std::string> nodes(reps);  // block order follows node order
  std::vector<std::tuple<std::string, std::string, std::string, double>> arcs;
  for (const Arc& a : net.arcs()) {
    arcs.emplace_back(a.id, reps[report.block_of_node[a.u]],
                      reps[report.block_of_node[a.v]], a.length);
  }
  return Network::build(reps[report.block_of_node[net.root()]], nodes, arcs);
}

}  // namespace searchgame

#endif  // SEARCHGAME_STRUCTURE_HPP_
