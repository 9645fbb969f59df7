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

#ifndef SEARCHGAME_POSTMAN_HPP_
#define SEARCHGAME_POSTMAN_HPP_

#include <algorithm>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "searchgame/network.hpp"

namespace searchgame {

// One full-arc traversal of a closed walk; `forward` means u -> v. Tours
// contain only full-arc traversals: matching-based postman tours never need
// to turn around mid-arc.
struct Traversal {
  int arc = 0;
  bool forward = true;
  double entry = 0.0;  // cumulative entry time at unit speed
};

// A closed walk of full-arc traversals starting at `start_node`.
class Tour {
 public:
  Tour(std::shared_ptr<const Network> net,
       const std::vector<std::pair<int, bool>>& steps, int start_node)
      : net_(std::move(net)), start_(start_node) {
    int pos = start_;
    double clock = 0.0;
    for (const auto& [arc, forward] : steps) {
      const Arc& a = net_->arc(arc);
      const int from = forward ? a.u : a.v;
      const int to = forward ? a.v : a.u;
      if (pos != from)
        throw ValidationError("traversals are not endpoint-chained at arc \"" +
                              a.id + "\"");
      steps_.push_back(Traversal{arc, forward, clock});
      clock += a.length;
      pos = to;
    }
    if (pos != start_) throw ValidationError("tour does not return to its start");
    length_ = clock;
  }

  const Network& network() const { return *net_; }
  std::shared_ptr<const Network> network_ptr() const { return net_; }
  const std::vector<Traversal>& steps() const { return steps_; }
  int start_node() const { return start_; }
  double length() const { return length_; }

  std::vector<std::string> tokens() const {
    std::vector<std::string> out;
    out.reserve(steps_.size());
    for (const Traversal& t : steps_)
      out.push_back(net_->arc(t.arc).id + (t.forward ? ":F" : ":R"));
    return out;
  }

 private:
  std::shared_ptr<const Network> net_;
  std::vector<Traversal> steps_;
  int start_ = 0;
  double length_ = 0.0;
};

namespace detail {

struct ArcInstance {
  int arc = 0;
  int copy = 0;
  bool used = false;
};

// Eulerian circuit from `start` by end-pairing over explicit arc instances.
// Among the unused instances at a node the one with the smallest
// (arc id, copy) is taken, which pins the circuit down deterministically.
inline std::vector<std::pair<int, bool>> euler_circuit(
    const Network& net, std::vector<ArcInstance>& instances, int start) {
  const int n = net.node_count();
  std::vector<std::vector<int>> adj(n);
  std::vector<int> order(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i)
    order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const std::string& ida = net.arc(instances[a].arc).id;
    const std::string& idb = net.arc(instances[b].arc).id;
    return std::tie(ida, instances[a].copy) < std::tie(idb, instances[b].copy);
  });
  for (int i : order) {
    const Arc& a = net.arc(instances[i].arc);
    adj[a.u].push_back(i);
    if (a.v != a.u) adj[a.v].push_back(i);
  }

  std::vector<std::size_t> cursor(n, 0);
  std::vector<int> stack_node{start};
  std::vector<int> stack_via{-1};
  std::vector<std::pair<int, int>> popped;  // (node, instance arrived by)
  while (!stack_node.empty()) {
    const int v = stack_node.back();
    bool advanced = false;
    while (cursor[v] < adj[v].size()) {
      const int ei = adj[v][cursor[v]];
      if (instances[ei].used) {
        ++cursor[v];
        continue;
      }
      instances[ei].used = true;
      const Arc& a = net.arc(instances[ei].arc);
      const int w = (a.u == v) ? a.v : a.u;
      stack_node.push_back(w);
      stack_via.push_back(ei);
      advanced = true;
      break;
    }
    if (!advanced) {
      popped.push_back({v, stack_via.back()});
      stack_node.pop_back();
      stack_via.pop_back();
    }
  }
  std::reverse(popped.begin(), popped.end());

  std::vector<std::pair<int, bool>> steps;
  for (std::size_t i = 1; i < popped.size(); ++i) {
    const int prev = popped[i - 1].first;
    const int inst = popped[i].second;
    const Arc& a = net.arc(instances[inst].arc);
    steps.emplace_back(instances[inst].arc, prev == a.u);
  }
  for (const ArcInstance& inst : instances) {
    if (!inst.used)
      throw std::logic_error("eulerian circuit did not use every instance");
  }
  return steps;
}

// Dijkstra with predecessor arcs, for duplicating matched shortest paths.
inline void shortest_paths_from(const Network& net, int source,
                                std::vector<double>& dist,
                                std::vector<int>& prev_arc) {
  const int n = net.node_count();
  dist.assign(n, std::numeric_limits<double>::infinity());
  prev_arc.assign(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int i = 0; i < net.arc_count(); ++i) {
      const Arc& a = net.arc(i);
      if (a.u != v && a.v != v) continue;
      const int w = (a.u == v) ? a.v : a.u;
      if (d + a.length < dist[w]) {
        dist[w] = d + a.length;
        prev_arc[w] = i;
        heap.push({dist[w], w});
      }
    }
  }
}

}  // namespace detail

// Exact Chinese Postman Tour: minimum-weight perfect matching of the
// odd-degree nodes under shortest-path distances (dynamic programming over
// subsets), matched paths duplicated, then an Eulerian circuit of the
// augmented multigraph from the root. Length is mu plus the matching weight.
inline Tour chinese_postman(const Network& net) {
  auto shared = std::make_shared<const Network>(net);
  std::vector<int> odd;
  for (int v = 0; v < net.node_count(); ++v)
    if (net.degree(v) % 2 != 0) odd.push_back(v);
  const int k = static_cast<int>(odd.size());
  if (k > 20)
    throw ValidationError("too many odd-degree nodes for exact matching (" +
                          std::to_string(k) + " > 20)");

  std::vector<std::vector<double>> dist(k);
  std::vector<std::vector<int>> prev(k);
  for (int i = 0; i < k; ++i)
    detail::shortest_paths_from(net, odd[i], dist[i], prev[i]);

  // dp over subsets of odd nodes still unmatched
  std::vector<detail::ArcInstance> instances;
  for (int i = 0; i < net.arc_count(); ++i) instances.push_back({i, 0});
  if (k > 0) {
    const int full = (1 << k) - 1;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(full + 1, inf);
    std::vector<std::pair<int, int>> choice(full + 1, {-1, -1});
    dp[0] = 0.0;
    for (int mask = 1; mask <= full; ++mask) {
      int i = 0;
      while (!(mask & (1 << i))) ++i;
      for (int j = i + 1; j < k; ++j) {
        if (!(mask & (1 << j))) continue;
        const int rest = mask & ~(1 << i) & ~(1 << j);
        if (dp[rest] == inf) continue;
        const double cand = dp[rest] + dist[i][odd[j]];
        if (cand < dp[mask]) {
          dp[mask] = cand;
          choice[mask] = {i, j};
        }
      }
    }
    std::vector<int> copies(net.arc_count(), 0);
    int mask = full;
    while (mask) {
      auto [i, j] = choice[mask];
      // walk the shortest path from odd[i] to odd[j], duplicating its arcs
      int at = odd[j];
      while (at != odd[i]) {
        const int arc = prev[i][at];
        instances.push_back({arc, ++copies[arc]});
        const Arc& a = net.arc(arc);
        at = (a.u == at) ? a.v : a.u;
      }
      mask &= ~(1 << i) & ~(1 << j);
    }
  }

  auto steps = detail::euler_circuit(net, instances, net.root());
  return Tour(shared, steps, net.root());
}

// Covering tour of length exactly 2*mu: an Eulerian circuit of the network
// with every arc doubled. Witness for the upper bound on the CPT length.
inline Tour doubled_tour(const Network& net) {
  auto shared = std::make_shared<const Network>(net);
  std::vector<detail::ArcInstance> instances;
  for (int i = 0; i < net.arc_count(); ++i) {
    instances.push_back({i, 0});
    instances.push_back({i, 1});
  }
  auto steps = detail::euler_circuit(net, instances, net.root());
  return Tour(shared, steps, net.root());
}

inline Tour reverse_tour(const Tour& t) {
  std::vector<std::pair<int, bool>> steps;
  steps.reserve(t.steps().size());
  for (auto it = t.steps().rbegin(); it != t.steps().rend(); ++it)
    steps.emplace_back(it->arc, !it->forward);
  return Tour(t.network_ptr(), steps, t.start_node());
}

// Per-arc first-visit times of a covering tour. On the open interior of an
// arc the walk can only be present while traversing that arc, so the
// first-visit function there is the lower envelope of the traversal lines
// t_i + x and t_i + (l - x). With slopes limited to +-1 the envelope is
// min(up + x, down - x) for two intercepts, i.e. at most three breakpoints.
// At an endpoint the true first-visit time is the node's (the walk may touch
// the node much earlier through another arc), so profile queries collapse
// canonical endpoint points to node times while `interior_value` keeps the
// interior-limit semantics used by the worst-case sweeps.
class VisitProfile {
 public:
  explicit VisitProfile(const Tour& tour)
      : net_(tour.network_ptr()), length_(tour.length()) {
    const Network& net = *net_;
    up_.assign(net.arc_count(), std::numeric_limits<double>::infinity());
    down_.assign(net.arc_count(), std::numeric_limits<double>::infinity());
    node_time_.assign(net.node_count(),
                      std::numeric_limits<double>::infinity());
    node_time_[tour.start_node()] = 0.0;
    for (const Traversal& t : tour.steps()) {
      const Arc& a = net.arc(t.arc);
      if (t.forward) {
        up_[t.arc] = std::min(up_[t.arc], t.entry);
      } else {
        down_[t.arc] = std::min(down_[t.arc], t.entry + a.length);
      }
      const int to = t.forward ? a.v : a.u;
      node_time_[to] = std::min(node_time_[to], t.entry + a.length);
    }
    // Self-loop traversals touch the interior from both ends.
    for (const Traversal& t : tour.steps()) {
      const Arc& a = net.arc(t.arc);
      if (a.u != a.v) continue;
      up_[t.arc] = std::min(up_[t.arc], t.entry);
      down_[t.arc] = std::min(down_[t.arc], t.entry + a.length);
    }
  }

  const Network& network() const { return *net_; }
  double total_length() const { return length_; }

  bool covers(int arc) const {
    return std::isfinite(up_[arc]) || std::isfinite(down_[arc]);
  }

  std::vector<int> uncovered_arcs() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(up_.size()); ++i)
      if (!covers(i)) out.push_back(i);
    return out;
  }

  // Envelope value on the closed arc using interior-limit semantics.
  double interior_value(int arc, double x) const {
    require_covered(arc);
    const Arc& a = net_->arc(arc);
    if (x < -kTol || x > a.length + kTol)
      throw ValidationError("offset out of range for arc \"" + a.id + "\"");
    return std::min(up_[arc] + x, down_[arc] - x);
  }

  // Breakpoints of the interior envelope: offsets 0 and l plus the crossing
  // of the two intercept lines when it falls strictly inside.
  std::vector<std::pair<double, double>> arc_breakpoints(int arc) const {
    require_covered(arc);
    const double len = net_->arc(arc).length;
    std::vector<std::pair<double, double>> bp;
    bp.emplace_back(0.0, interior_value(arc, 0.0));
    if (std::isfinite(up_[arc]) && std::isfinite(down_[arc])) {
      const double cross = (down_[arc] - up_[arc]) / 2.0;
      if (cross > 1e-12 && cross < len - 1e-12)
        bp.emplace_back(cross, interior_value(arc, cross));
    }
    bp.emplace_back(len, interior_value(arc, len));
    return bp;
  }

  double node_time(int node) const { return node_time_[node]; }

  // First-visit time with canonical point semantics.
  double value_at(const Point& p) const {
    if (p.is_node()) return node_time_[net_->node_index(p.node)];
    return interior_value(net_->arc_index(p.arc), p.offset);
  }

 private:
  void require_covered(int arc) const {
    if (!covers(arc))
      throw ValidationError("tour never traverses arc \"" +
                            net_->arc(arc).id + "\"");
  }

  std::shared_ptr<const Network> net_;
  double length_ = 0.0;
  std::vector<double> up_;    // min intercept of slope +1 lines
  std::vector<double> down_;  // min intercept of slope -1 lines
  std::vector<double> node_time_;
};

inline VisitProfile visit_profile(const Tour& t) { return VisitProfile(t); }

struct ProfileMax {
  double value = 0.0;
  Point witness;
};

// Maximizes sum_i weights[i] * profile_i(x) + dist_coeff * d(x) over the
// whole network (supremum semantics at arc endpoints). The sum is piecewise
// linear on each arc, so the max sits on a breakpoint; the witness prefers a
// point that attains the value: the midpoint of a flat maximal segment, then
// an interior breakpoint, and only as a fallback a canonical endpoint node.
inline ProfileMax max_weighted_profiles(
    const std::vector<const VisitProfile*>& profiles,
    const std::vector<double>& weights, const DistanceOracle* dist,
    double dist_coeff) {
  if (profiles.empty() || profiles.size() != weights.size())
    throw ValidationError("profile/weight lists must be nonempty and aligned");
  const Network& net = profiles.front()->network();
  for (const VisitProfile* p : profiles) {
    if (!p->uncovered_arcs().empty())
      throw ValidationError("non-covering tour in mixture");
  }

  ProfileMax best;
  best.witness = Point::at_node(net.root_id());
  if (net.arc_count() == 0) {
    best.value = 0.0;
    for (std::size_t i = 0; i < profiles.size(); ++i)
      best.value += weights[i] * profiles[i]->node_time(net.root());
    return best;
  }

  // Pass 1: candidate offsets and values per arc; global supremum.
  std::vector<std::vector<double>> all_xs(net.arc_count());
  std::vector<std::vector<double>> all_vals(net.arc_count());
  double sup = -std::numeric_limits<double>::infinity();
  for (int arc = 0; arc < net.arc_count(); ++arc) {
    const Arc& a = net.arc(arc);
    std::vector<double>& xs = all_xs[arc];
    xs = {0.0, a.length};
    for (const VisitProfile* p : profiles)
      for (const auto& [x, t] : p->arc_breakpoints(arc)) xs.push_back(x);
    if (dist != nullptr && dist_coeff != 0.0) {
      const double du = dist->from_root(a.u), dv = dist->from_root(a.v);
      const double cross = (dv - du + a.length) / 2.0;
      if (cross > 1e-12 && cross < a.length - 1e-12) xs.push_back(cross);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double p, double q) { return q - p <= 1e-12; }),
             xs.end());
    all_vals[arc].resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < profiles.size(); ++j)
        v += weights[j] * profiles[j]->interior_value(arc, xs[i]);
      if (dist != nullptr && dist_coeff != 0.0)
        v += dist_coeff * std::min(dist->from_root(a.u) + xs[i],
                                   dist->from_root(a.v) + a.length - xs[i]);
      all_vals[arc][i] = v;
      sup = std::max(sup, v);
    }
  }
  best.value = sup;

  // Pass 2: witness. A flat maximal segment is attained on its whole open
  // interior; a maximal interior breakpoint is attained at that point; an
  // endpoint-only maximum is a supremum witnessed by the canonical node.
  const double tie = 1e-9 * (1.0 + std::fabs(sup));
  for (int rank = 0; rank < 3; ++rank) {
    for (int arc = 0; arc < net.arc_count(); ++arc) {
      const Arc& a = net.arc(arc);
      const auto& xs = all_xs[arc];
      const auto& vals = all_vals[arc];
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (rank == 0 && i + 1 < xs.size() && vals[i] >= sup - tie &&
            vals[i + 1] >= sup - tie) {
          best.witness = Point::on_arc(net, a.id, (xs[i] + xs[i + 1]) / 2.0);
          return best;
        }
        if (rank == 1 && vals[i] >= sup - tie && xs[i] > 1e-12 &&
            xs[i] < a.length - 1e-12) {
          best.witness = Point::on_arc(net, a.id, xs[i]);
          return best;
        }
        if (rank == 2 && vals[i] >= sup - tie) {
          best.witness = Point::on_arc(net, a.id, xs[i]);
          return best;
        }
      }
    }
  }
  return best;
}

}  // namespace searchgame

#endif  // SEARCHGAME_POSTMAN_HPP_
