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

#ifndef SEARCHGAME_FINDFETCH_HPP_
#define SEARCHGAME_FINDFETCH_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "searchgame/classic.hpp"
#include "searchgame/network.hpp"
#include "searchgame/structure.hpp"

namespace searchgame {

namespace detail {

// Rooted orientation of a tree: parent node/arc and children arcs per node.
struct TreeView {
  std::vector<int> parent_node;  // -1 at the root
  std::vector<int> parent_arc;
  std::vector<std::vector<int>> children_arcs;  // arcs above each node
  std::vector<int> child_of_arc;                // upper endpoint of each arc
  std::vector<double> depth;                    // distance from the root
  std::vector<int> bfs_order;
};

inline TreeView orient_tree(const Network& net) {
  if (net.arc_count() != net.node_count() - 1)
    throw ValidationError("network is not a tree");
  const int n = net.node_count();
  TreeView tv;
  tv.parent_node.assign(n, -1);
  tv.parent_arc.assign(n, -1);
  tv.children_arcs.assign(n, {});
  tv.child_of_arc.assign(net.arc_count(), -1);
  tv.depth.assign(n, 0.0);
  std::vector<char> seen(n, 0);
  seen[net.root()] = 1;
  tv.bfs_order.push_back(net.root());
  for (std::size_t head = 0; head < tv.bfs_order.size(); ++head) {
    const int v = tv.bfs_order[head];
    for (int i = 0; i < net.arc_count(); ++i) {
      const Arc& a = net.arc(i);
      if (a.u != v && a.v != v) continue;
      const int w = (a.u == v) ? a.v : a.u;
      if (seen[w]) continue;
      seen[w] = 1;
      tv.parent_node[w] = v;
      tv.parent_arc[w] = i;
      tv.children_arcs[v].push_back(i);
      tv.child_of_arc[i] = w;
      tv.depth[w] = tv.depth[v] + a.length;
      tv.bfs_order.push_back(w);
    }
  }
  return tv;
}

}  // namespace detail

// The equal-branch-density distribution on the leaves of a rooted tree: at
// every branch node the mass arriving from below splits among the branches
// in proportion to their lengths. mean_leaf_distance is the e-weighted mean
// distance of the leaves from the root (the quantity written D).
struct EbdResult {
  std::vector<std::pair<int, double>> leaf_probabilities;  // (node, e(u))
  double mean_leaf_distance = 0.0;
  std::vector<int> branch_nodes;      // nodes with >= 2 arcs above them
  std::vector<double> node_mass;      // e-mass reaching each node
  std::vector<double> subtree_length; // mu(Q_u): total length above the node
  std::vector<double> branch_length;  // per arc: mu(Q_a) = arc + its subtree
  std::vector<int> parent_arc;        // rooted orientation, -1 at the root
};

inline EbdResult ebd(const Network& net) {
  const detail::TreeView tv = detail::orient_tree(net);
  if (net.arc_count() == 0)
    throw ValidationError("tree has no leaves to carry a distribution");
  const int n = net.node_count();
  EbdResult r;
  r.parent_arc = tv.parent_arc;
  r.subtree_length.assign(n, 0.0);
  r.branch_length.assign(net.arc_count(), 0.0);
  for (auto it = tv.bfs_order.rbegin(); it != tv.bfs_order.rend(); ++it) {
    const int v = *it;
    for (int arc : tv.children_arcs[v]) {
      const int w = tv.child_of_arc[arc];
      r.branch_length[arc] = net.arc(arc).length + r.subtree_length[w];
      r.subtree_length[v] += r.branch_length[arc];
    }
  }
  for (int v = 0; v < n; ++v)
    if (tv.children_arcs[v].size() >= 2) r.branch_nodes.push_back(v);

  r.node_mass.assign(n, 0.0);
  r.node_mass[net.root()] = 1.0;
  for (int v : tv.bfs_order) {
    if (tv.children_arcs[v].empty()) {
      r.leaf_probabilities.emplace_back(v, r.node_mass[v]);
      r.mean_leaf_distance += r.node_mass[v] * tv.depth[v];
      continue;
    }
    for (int arc : tv.children_arcs[v]) {
      const int w = tv.child_of_arc[arc];
      r.node_mass[w] =
          r.node_mass[v] * r.branch_length[arc] / r.subtree_length[v];
    }
  }
  return r;
}

// Detaches the branch hanging on `branch_arc_id` at its lower endpoint and
// reattaches it at the root. The lower endpoint must be a branch node other
// than the root. Total length is preserved.
inline Network prune(const Network& net, const std::string& branch_arc_id) {
  const detail::TreeView tv = detail::orient_tree(net);
  const int arc = net.arc_index(branch_arc_id);
  const int child = tv.child_of_arc[arc];
  const int u = tv.parent_node[child];
  if (u == net.root())
    throw ValidationError("branch arc \"" + branch_arc_id +
                          "\" is attached at the root");
  if (tv.children_arcs[u].size() < 2)
    throw ValidationError("arc \"" + branch_arc_id + "\" is not a branch arc");

  std::vector<std::tuple<std::string, std::string, std::string, double>> arcs;
  for (int i = 0; i < net.arc_count(); ++i) {
    const Arc& a = net.arc(i);
    if (i == arc) {
      arcs.emplace_back(a.id, net.root_id(), net.node_id(child), a.length);
    } else {
      arcs.emplace_back(a.id, net.node_id(a.u), net.node_id(a.v), a.length);
    }
  }
  return Network::build(net.root_id(), net.node_ids(), arcs);
}

// Iterated pruning along a farthest root path: fix a node at maximum
// distance and its root path P, then repeatedly prune the off-path branch at
// the P-branch-node closest to the root (ties among that node's branch arcs
// broken by ascending arc id) until no branch node remains strictly inside
// P. Leaves the mean leaf distance no larger and at least d_max^2 / mu.
inline Network prune_to_path(const Network& net) {
  detail::TreeView tv = detail::orient_tree(net);
  int farthest = net.root();
  for (int v = 0; v < net.node_count(); ++v)
    if (tv.depth[v] > tv.depth[farthest] + 1e-12) farthest = v;

  Network current = net;
  // Path arcs never change: pruning only moves arcs hanging off the path.
  std::vector<char> on_path(net.arc_count(), 0);
  for (int v = farthest; v != net.root(); v = tv.parent_node[v])
    on_path[tv.parent_arc[v]] = 1;

  for (;;) {
    tv = detail::orient_tree(current);
    int pick_arc = -1;
    double pick_depth = 0.0;
    for (int v = farthest; v != net.root(); v = tv.parent_node[v]) {
      const int p = tv.parent_node[v];
      if (p == net.root()) continue;  // branch arcs at the root stay put
      for (int arc : tv.children_arcs[p]) {
        if (on_path[arc]) continue;
        if (pick_arc == -1 || tv.depth[p] < pick_depth - 1e-12 ||
            (std::fabs(tv.depth[p] - pick_depth) <= 1e-12 &&
             current.arc(arc).id < current.arc(pick_arc).id)) {
          pick_arc = arc;
          pick_depth = tv.depth[p];
        }
      }
    }
    if (pick_arc == -1) return current;
    current = prune(current, current.arc(pick_arc).id);
  }
}

// Guaranteed worst-case ratio of the random postman tour in the
// find-and-fetch game on trees, as a function of the return speed. The two
// value bounds trade off at z0 = sqrt(rho^2 + rho) - rho, and the regime
// switches at rho = 1/3 (both branches give 3/2 there).
struct TreeAlpha {
  double alpha = 1.0;
  double z0 = 0.0;
  bool slow_return = false;  // rho <= 1/3
};

inline TreeAlpha alpha_tree(double rho) {
  if (!(rho > 0.0)) throw ValidationError("return speed must be positive");
  TreeAlpha a;
  a.z0 = std::sqrt(rho * rho + rho) - rho;
  a.slow_return = rho <= 1.0 / 3.0;
  a.alpha = a.slow_return ? 2.0 / (1.0 + rho)
                          : (1.0 + std::sqrt(1.0 + 1.0 / rho)) / 2.0;
  return a;
}

// Same guarantee for Eulerian networks. The bound from the uniform hider
// peaks at z1 = (sqrt(2*rho + rho^2) - rho)/2; the binding point is the
// smaller intersection with the farthest-point bound, at
// z = (1 + rho - sqrt(1 + rho^2))/2.
struct EulerianAlpha {
  double alpha = 1.0;
  double z1 = 0.0;
  double intersection_z = 0.0;
};

inline EulerianAlpha alpha_eulerian(double rho) {
  if (!(rho > 0.0)) throw ValidationError("return speed must be positive");
  EulerianAlpha a;
  a.z1 = (std::sqrt(2.0 * rho + rho * rho) - rho) / 2.0;
  a.intersection_z = (1.0 + rho - std::sqrt(1.0 + rho * rho)) / 2.0;
  a.alpha = (3.0 + rho + std::sqrt(rho * rho + 1.0)) / (2.0 + 2.0 * rho);
  return a;
}

enum class FindFetchModel { tree, eulerian, general };

inline std::string to_string(FindFetchModel m) {
  switch (m) {
    case FindFetchModel::tree:
      return "tree";
    case FindFetchModel::eulerian:
      return "eulerian";
    default:
      return "general";
  }
}

// Find-and-fetch quantities for one instance and return speed. `ratio` is
// the instance's r_rcpt / v_lower; `alpha` is the model's worst-case
// guarantee over the whole class, so ratio <= alpha always.
struct FindFetchReport {
  double rho = 1.0;
  FindFetchModel model = FindFetchModel::general;
  double mu = 0.0;
  double d_max = 0.0;
  double z = 0.0;  // d_max / mu
  double r_rcpt = 0.0;
  double v_lower = 0.0;
  double v_lower_farthest = 0.0;  // d_max * (1 + 1/rho), valid on any network
  double ratio = 1.0;
  double alpha = 1.0;
  std::optional<double> ebd_mean;          // D (trees)
  std::optional<double> v_lower_ebd;       // mu + D/rho (trees)
  std::optional<double> v_lower_uniform;   // mu/2 + d_max^2/(rho*mu) (Eulerian)
  std::optional<double> z0;                // trees
  std::optional<double> z1;                // Eulerian
  std::optional<double> intersection_z;    // Eulerian
  std::optional<Point> r_rcpt_witness;     // general model only
};

inline FindFetchReport findfetch_report(const Network& net, double rho) {
  if (!(rho > 0.0)) throw ValidationError("return speed must be positive");
  FindFetchReport r;
  r.rho = rho;
  r.mu = net.mu();

  const StructureReport structure = decompose(net);
  const NetworkClass cls = classify(structure);
  const DistanceOracle oracle(net);
  r.d_max = oracle.d_max();
  r.z = (r.mu > 0.0) ? r.d_max / r.mu : 0.0;
  r.v_lower_farthest = r.d_max * (1.0 + 1.0 / rho);

  if (cls == NetworkClass::tree) {
    r.model = FindFetchModel::tree;
    const TreeAlpha a = alpha_tree(rho);
    r.alpha = a.alpha;
    r.z0 = a.z0;
    if (net.arc_count() == 0) {
      r.ebd_mean = 0.0;
      r.v_lower_ebd = 0.0;
      return r;  // single point: everything is zero, ratio 1
    }
    const EbdResult e = ebd(net);
    r.ebd_mean = e.mean_leaf_distance;
    r.r_rcpt = r.mu + r.d_max / rho;
    r.v_lower_ebd = r.mu + e.mean_leaf_distance / rho;
    r.v_lower = std::max(*r.v_lower_ebd, r.v_lower_farthest);
  } else if (cls == NetworkClass::eulerian) {
    r.model = FindFetchModel::eulerian;
    const EulerianAlpha a = alpha_eulerian(rho);
    r.alpha = a.alpha;
    r.z1 = a.z1;
    r.intersection_z = a.intersection_z;
    r.r_rcpt = r.mu / 2.0 + r.d_max / rho;
    r.v_lower_uniform = r.mu / 2.0 + r.d_max * r.d_max / (rho * r.mu);
    r.v_lower = std::max(*r.v_lower_uniform, r.v_lower_farthest);
  } else {
    // No sharpened theory for the remaining classes: exact payoff of the
    // random postman tour against the worst point, crude 2(1+1/rho)
    // guarantee against the uniform-hider bound.
    r.model = FindFetchModel::general;
    r.alpha = 2.0 * (1.0 + 1.0 / rho);
    const Tour cpt = chinese_postman(net);
    const VisitProfile forward(cpt);
    const VisitProfile backward(reverse_tour(cpt));
    ProfileMax m = max_weighted_profiles({&forward, &backward}, {0.5, 0.5},
                                         &oracle, 1.0 / rho);
    r.r_rcpt = m.value;
    r.r_rcpt_witness = m.witness;
    r.v_lower = std::max(r.mu / 2.0, r.v_lower_farthest);
  }

  r.ratio = (r.v_lower > 0.0) ? r.r_rcpt / r.v_lower : 1.0;
  if (r.ratio > r.alpha + kTol)
    throw std::logic_error("instance ratio exceeds the model guarantee");
  return r;
}

}  // namespace searchgame

#endif  // SEARCHGAME_FINDFETCH_HPP_
