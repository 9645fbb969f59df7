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

#ifndef SEARCHGAME_NETWORK_HPP_
#define SEARCHGAME_NETWORK_HPP_

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "searchgame/common.hpp"

namespace searchgame {

// An undirected arc of positive length between two nodes. Parallel arcs and
// self-loops are allowed; a self-loop contributes 2 to its node's degree.
struct Arc {
  std::string id;
  int u = 0;
  int v = 0;
  double length = 0.0;
};

// A rooted edge-weighted multigraph: the game board. Connected, immutable
// after construction, and safe to share across threads.
class Network {
 public:
  Network() = default;

  // Builds and validates a network from parts. Arc tuples are
  // (id, u, v, length).
  static Network build(
      const std::string& root, const std::vector<std::string>& nodes,
      const std::vector<std::tuple<std::string, std::string, std::string,
                                   double>>& arcs) {
    Network net;
    for (const auto& id : nodes) {
      if (net.node_index_.count(id) > 0)
        throw ValidationError("duplicate node id \"" + id + "\"");
      net.node_index_.emplace(id, static_cast<int>(net.node_ids_.size()));
      net.node_ids_.push_back(id);
    }
    for (const auto& [id, u, v, length] : arcs) {
      if (net.arc_index_.count(id) > 0)
        throw ValidationError("duplicate arc id \"" + id + "\"");
      auto iu = net.node_index_.find(u);
      auto iv = net.node_index_.find(v);
      if (iu == net.node_index_.end())
        throw ValidationError("arc \"" + id + "\" references unknown node \"" +
                              u + "\"");
      if (iv == net.node_index_.end())
        throw ValidationError("arc \"" + id + "\" references unknown node \"" +
                              v + "\"");
      if (!(length > 0.0))
        throw ValidationError("arc \"" + id + "\" has nonpositive length");
      net.arc_index_.emplace(id, static_cast<int>(net.arcs_.size()));
      net.arcs_.push_back(Arc{id, iu->second, iv->second, length});
      net.mu_ += length;
    }
    auto ir = net.node_index_.find(root);
    if (ir == net.node_index_.end())
      throw ValidationError("root \"" + root + "\" is not a node");
    net.root_ = ir->second;
    net.check_connected();
    return net;
  }

  // Parses the JSON file format:
  //   {"root": "...", "nodes": ["...", ...],
  //    "arcs": [{"id": "...", "u": "...", "v": "...", "length": ...}, ...]}
  // Unknown keys are rejected.
  static Network parse(const std::string& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("document is not an object");
    for (const auto& item : doc.items()) {
      if (item.key() != "root" && item.key() != "nodes" &&
          item.key() != "arcs")
        throw ValidationError("unknown key \"" + item.key() + "\"");
    }
    if (!doc.contains("root") || !doc["root"].is_string())
      throw ValidationError("missing or invalid \"root\"");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
      throw ValidationError("missing or invalid \"nodes\"");
    if (!doc.contains("arcs") || !doc["arcs"].is_array())
      throw ValidationError("missing or invalid \"arcs\"");

    std::vector<std::string> nodes;
    for (const auto& n : doc["nodes"]) {
      if (!n.is_string()) throw ValidationError("node ids must be strings");
      nodes.push_back(n.get<std::string>());
    }
    std::vector<std::tuple<std::string, std::string, std::string, double>>
        arcs;
    for (const auto& a : doc["arcs"]) {
      if (!a.is_object()) throw ValidationError("arcs must be objects");
      for (const auto& item : a.items()) {
        if (item.key() != "id" && item.key() != "u" && item.key() != "v" &&
            item.key() != "length")
          throw ValidationError("unknown arc key \"" + item.key() + "\"");
      }
      if (!a.contains("id") || !a["id"].is_string() || !a.contains("u") ||
          !a["u"].is_string() || !a.contains("v") || !a["v"].is_string() ||
          !a.contains("length") || !a["length"].is_number())
        throw ValidationError("arc entries need string id/u/v and number length");
      arcs.emplace_back(a["id"].get<std::string>(), a["u"].get<std::string>(),
                        a["v"].get<std::string>(), a["length"].get<double>());
    }
    return build(doc["root"].get<std::string>(), nodes, arcs);
  }

  int node_count() const { return static_cast<int>(node_ids_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const std::string& node_id(int i) const { return node_ids_[i]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int i) const { return arcs_[i]; }
  int root() const { return root_; }
  const std::string& root_id() const { return node_ids_[root_]; }

  // Total length mu(Q).
  double mu() const { return mu_; }

  bool has_node(const std::string& id) const {
    return node_index_.count(id) > 0;
  }
  bool has_arc(const std::string& id) const { return arc_index_.count(id) > 0; }

  int node_index(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
      throw ValidationError("unknown node \"" + id + "\"");
    return it->second;
  }
  int arc_index(const std::string& id) const {
    auto it = arc_index_.find(id);
    if (it == arc_index_.end())
      throw ValidationError("unknown arc \"" + id + "\"");
    return it->second;
  }

  // Degree with the self-loop convention (+2 per loop).
  int degree(int node) const {
    int d = 0;
    for (const Arc& a : arcs_) {
      if (a.u == node) ++d;
      if (a.v == node) ++d;
    }
    return d;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json doc;
    doc["root"] = root_id();
    doc["nodes"] = node_ids_;
    doc["arcs"] = nlohmann::ordered_json::array();
    for (const Arc& a : arcs_) {
      nlohmann::ordered_json ja;
      ja["id"] = a.id;
      ja["u"] = node_ids_[a.u];
      ja["v"] = node_ids_[a.v];
      ja["length"] = round12(a.length);
      doc["arcs"].push_back(std::move(ja));
    }
    return doc;
  }

  std::string to_json_text() const { return to_json().dump(2) + "\n"; }

 private:
  void check_connected() const {
    if (node_ids_.empty()) throw ValidationError("network has no nodes");
    std::vector<char> seen(node_ids_.size(), 0);
    std::vector<int> stack{root_};
    seen[root_] = 1;
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      for (const Arc& a : arcs_) {
        if (a.u == n && !seen[a.v]) {
          seen[a.v] = 1;
          stack.push_back(a.v);
        }
        if (a.v == n && !seen[a.u]) {
          seen[a.u] = 1;
          stack.push_back(a.u);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw ValidationError("network is disconnected");
  }

  std::vector<std::string> node_ids_;
  std::unordered_map<std::string, int> node_index_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::string, int> arc_index_;
  int root_ = 0;
  double mu_ = 0.0;
};

// A point of the network: either a node or an interior point of an arc at
// `offset` from the arc's u endpoint. Offsets 0 and length canonicalize to
// the endpoint node, so every point has one representation.
struct Point {
  std::string node;  // nonempty iff the point is a node
  std::string arc;   // nonempty iff the point is arc-interior
  double offset = 0.0;

  bool is_node() const { return !node.empty(); }

  static Point at_node(std::string id) {
    Point p;
    p.node = std::move(id);
    return p;
  }

  static Point on_arc(const Network& net, const std::string& arc_id,
                      double offset) {
    const Arc& a = net.arc(net.arc_index(arc_id));
    if (offset < -kTol || offset > a.length + kTol)
      throw ValidationError("offset " + format_number(offset) +
                            " out of range for arc \"" + arc_id + "\"");
    if (offset <= kTol) return at_node(net.node_id(a.u));
    if (offset >= a.length - kTol) return at_node(net.node_id(a.v));
    Point p;
    p.arc = arc_id;
    p.offset = offset;
    return p;
  }

  std::string describe() const {
    return is_node() ? "node " + node
                     : "arc " + arc + " @ " + format_number(offset);
  }
};

// Exact shortest-path metric of a network: all-pairs node distances, point
// distances d(H) to the root, and the farthest point d_max with a witness.
// The farthest point of arc (u,v,l) from the root sits where the two-sided
// approach times cross, at value (d(u)+d(v)+l)/2.
class DistanceOracle {
 public:
  explicit DistanceOracle(Network net) : net_(std::move(net)) {
    const int n = net_.node_count();
    dist_.assign(n, std::vector<double>(n, inf()));
    for (int s = 0; s < n; ++s) dijkstra(s, dist_[s]);

    d_max_ = 0.0;
    witness_ = Point::at_node(net_.root_id());
    for (const Arc& a : net_.arcs()) {
      const double du = from_root(a.u), dv = from_root(a.v);
      const double peak = (du + dv + a.length) / 2.0;
      if (peak > d_max_ + 1e-12) {
        d_max_ = peak;
        witness_ = Point::on_arc(net_, a.id, (dv - du + a.length) / 2.0);
      }
    }
  }

  const Network& network() const { return net_; }

  double between_nodes(int a, int b) const { return dist_[a][b]; }
  double from_root(int node) const { return dist_[net_.root()][node]; }

  // d(H): shortest-path distance from the point to the root.
  double point_distance(const Point& p) const {
    if (p.is_node()) return from_root(net_.node_index(p.node));
    const Arc& a = net_.arc(net_.arc_index(p.arc));
    if (p.offset < -kTol || p.offset > a.length + kTol)
      throw ValidationError("offset out of range for arc \"" + p.arc + "\"");
    return std::min(from_root(a.u) + p.offset,
                    from_root(a.v) + a.length - p.offset);
  }

  double d_max() const { return d_max_; }
  const Point& d_max_witness() const { return witness_; }

 private:
  static double inf() { return std::numeric_limits<double>::infinity(); }

  void dijkstra(int source, std::vector<double>& out) const {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    out[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
      auto [d, n] = heap.top();
      heap.pop();
      if (d > out[n]) continue;
      for (const Arc& a : net_.arcs()) {
        if (a.u != n && a.v != n) continue;
        const int m = (a.u == n) ? a.v : a.u;
        if (d + a.length < out[m]) {
          out[m] = d + a.length;
          heap.push({out[m], m});
        }
      }
    }
  }

  Network net_;
  std::vector<std::vector<double>> dist_;
  double d_max_ = 0.0;
  Point witness_;
};

inline Network parse_network(const std::string& text) {
  return Network::parse(text);
}

inline DistanceOracle distances(const Network& net) {
  return DistanceOracle(net);
}

inline double point_distance(const DistanceOracle& oracle, const Point& p) {
  return oracle.point_distance(p);
}

}  // namespace searchgame

#endif  // SEARCHGAME_NETWORK_HPP_
