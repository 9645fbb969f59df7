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

#ifndef SEARCHGAME_ORACLE_HPP_
#define SEARCHGAME_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "searchgame/classic.hpp"
#include "searchgame/postman.hpp"
#include "searchgame/rng.hpp"
#include "searchgame/structure.hpp"

namespace searchgame {

// Either the uniform-over-length distribution or a finitely supported list.
struct HiderDistribution {
  bool uniform = true;
  std::vector<std::pair<Point, double>> atoms;

  static HiderDistribution uniform_over_length() { return {}; }

  static HiderDistribution at_points(
      std::vector<std::pair<Point, double>> atoms) {
    HiderDistribution h;
    h.uniform = false;
    h.atoms = std::move(atoms);
    return h;
  }

  static HiderDistribution at_point(Point p) {
    return at_points({{std::move(p), 1.0}});
  }

  void validate(const Network& net) const {
    if (uniform) {
      if (net.mu() <= 0.0)
        throw ValidationError("uniform distribution needs positive length");
      return;
    }
    double total = 0.0;
    for (const auto& [p, prob] : atoms) {
      if (prob < -kTol) throw ValidationError("negative hider probability");
      if (p.is_node())
        net.node_index(p.node);
      else
        net.arc_index(p.arc);
      total += prob;
    }
    if (!nearly_equal(total, 1.0, 1e-6))
      throw ValidationError("hider probabilities do not sum to 1");
  }
};

struct SimulationResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Work is accumulated in fixed chunks whose partial sums are reduced in
// chunk order, so any shard split along chunk boundaries reproduces the
// serial result bit for bit.
inline constexpr std::int64_t kSimChunk = 4096;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace detail

// Monte-Carlo estimate of the expected time for the random postman tour
// (fair coin between a fixed tour and its reverse) to find a hider drawn
// from `h`. Counter-based randomness: sample i uses draws that depend only
// on (seed, i), never on shard layout.
inline SimulationResult simulate_rcpt(const Network& net,
                                      const HiderDistribution& h,
                                      std::int64_t samples, std::uint64_t seed,
                                      int shards = 1) {
  if (samples < 1) throw ValidationError("need at least one sample");
  if (shards < 1) throw ValidationError("need at least one shard");
  h.validate(net);

  const Tour cpt = chinese_postman(net);
  const VisitProfile forward(cpt);
  const VisitProfile backward(reverse_tour(cpt));
  const CounterRng rng(seed);

  // cumulative arc lengths for uniform draws
  std::vector<double> cumulative;
  if (h.uniform) {
    double acc = 0.0;
    for (const Arc& a : net.arcs()) {
      acc += a.length;
      cumulative.push_back(acc);
    }
  }
  std::vector<double> atom_cumulative;
  if (!h.uniform) {
    double acc = 0.0;
    for (const auto& [p, prob] : h.atoms) {
      acc += prob;
      atom_cumulative.push_back(acc);
    }
  }

  auto sample_time = [&](std::int64_t i) {
    const bool heads = (rng.word(static_cast<std::uint64_t>(i), 0) & 1) != 0;
    const VisitProfile& profile = heads ? forward : backward;
    if (h.uniform) {
      const double pos =
          rng.unit(static_cast<std::uint64_t>(i), 1) * cumulative.back();
      const std::size_t arc = std::lower_bound(cumulative.begin(),
                                               cumulative.end(), pos) -
                              cumulative.begin();
      const std::size_t idx = std::min(arc, cumulative.size() - 1);
      const double base = (idx == 0) ? 0.0 : cumulative[idx - 1];
      const Arc& a = net.arc(static_cast<int>(idx));
      const double offset = std::clamp(pos - base, 0.0, a.length);
      return profile.value_at(Point::on_arc(net, a.id, offset));
    }
    const double u = rng.unit(static_cast<std::uint64_t>(i), 1);
    std::size_t idx = std::lower_bound(atom_cumulative.begin(),
                                       atom_cumulative.end(), u) -
                      atom_cumulative.begin();
    idx = std::min(idx, h.atoms.size() - 1);
    return profile.value_at(h.atoms[idx].first);
  };

  const std::int64_t chunks =
      (samples + detail::kSimChunk - 1) / detail::kSimChunk;
  std::vector<detail::ChunkSums> partial(
      static_cast<std::size_t>(chunks));
  auto run_chunks = [&](std::int64_t first, std::int64_t last) {
    for (std::int64_t c = first; c < last; ++c) {
      detail::ChunkSums sums;
      const std::int64_t begin = c * detail::kSimChunk;
      const std::int64_t end = std::min(samples, begin + detail::kSimChunk);
      for (std::int64_t i = begin; i < end; ++i) {
        const double t = sample_time(i);
        sums.sum += t;
        sums.sum_sq += t * t;
      }
      partial[static_cast<std::size_t>(c)] = sums;
    }
  };

  if (shards == 1 || chunks == 1) {
    run_chunks(0, chunks);
  } else {
    const std::int64_t per =
        (chunks + shards - 1) / shards;
    std::vector<std::future<void>> jobs;
    for (int s = 0; s < shards; ++s) {
      const std::int64_t first = s * per;
      const std::int64_t last = std::min(chunks, first + per);
      if (first >= last) break;
      jobs.push_back(std::async(std::launch::async, run_chunks, first, last));
    }
    for (auto& j : jobs) j.get();
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& c : partial) {
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  SimulationResult out;
  out.samples = samples;
  out.seed = seed;
  out.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    const double var = std::max(
        0.0, (sum_sq - static_cast<double>(samples) * out.mean * out.mean) /
                 static_cast<double>(samples - 1));
    out.std_error = std::sqrt(var / static_cast<double>(samples));
  }
  return out;
}

// Exact expectation the simulation estimates: the averaged first-visit
// profile integrated against the hider distribution.
inline double analytic_rcpt_time(const Network& net,
                                 const HiderDistribution& h) {
  h.validate(net);
  const Tour cpt = chinese_postman(net);
  const VisitProfile forward(cpt);
  const VisitProfile backward(reverse_tour(cpt));
  auto avg_at = [&](const Point& p) {
    return (forward.value_at(p) + backward.value_at(p)) / 2.0;
  };
  if (!h.uniform) {
    double total = 0.0;
    for (const auto& [p, prob] : h.atoms) total += prob * avg_at(p);
    return total;
  }
  // piecewise-linear integral over every arc
  double integral = 0.0;
  for (int arc = 0; arc < net.arc_count(); ++arc) {
    std::vector<double> xs;
    for (const auto& [x, t] : forward.arc_breakpoints(arc)) xs.push_back(x);
    for (const auto& [x, t] : backward.arc_breakpoints(arc)) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double v0 = (forward.interior_value(arc, xs[i]) +
                         backward.interior_value(arc, xs[i])) /
                        2.0;
      const double v1 = (forward.interior_value(arc, xs[i + 1]) +
                         backward.interior_value(arc, xs[i + 1])) /
                        2.0;
      integral += (v0 + v1) / 2.0 * (xs[i + 1] - xs[i]);
    }
  }
  return integral / net.mu();
}

// All closed root-based covering walks of full-arc traversals with length
// within the budget, in depth-first order over ascending arc indices. Walks
// are deduplicated by their traversal sequence; a walk and its reverse are
// distinct strategies and both appear. Empty when the budget is below the
// postman tour length.
inline std::vector<Tour> enumerate_tours(const Network& net,
                                         double length_budget) {
  if (net.arc_count() > 7)
    throw ValidationError("tour enumeration is limited to 7 arcs");
  auto shared = std::make_shared<const Network>(net);
  std::vector<Tour> out;
  if (net.arc_count() == 0) {
    if (length_budget >= -kTol)
      out.push_back(Tour(shared, {}, net.root()));
    return out;
  }
  const DistanceOracle oracle(net);
  const int full = (1 << net.arc_count()) - 1;
  std::vector<double> uncovered_beyond(full + 1, 0.0);
  for (int mask = 0; mask <= full; ++mask) {
    double rest = 0.0;
    for (int i = 0; i < net.arc_count(); ++i)
      if (!(mask & (1 << i))) rest += net.arc(i).length;
    uncovered_beyond[mask] = rest;
  }

  std::vector<std::pair<int, bool>> steps;
  std::map<std::vector<std::pair<int, bool>>, bool> seen;

  // depth-first over (position, covered set, length)
  auto rec = [&](auto&& self, int pos, int mask, double len) -> void {
    if (pos == net.root() && mask == full && !steps.empty()) {
      if (seen.emplace(steps, true).second)
        out.push_back(Tour(shared, steps, net.root()));
    }
    for (int i = 0; i < net.arc_count(); ++i) {
      const Arc& a = net.arc(i);
      if (a.u != pos && a.v != pos) continue;
      // A self-loop can be walked either way round, and the two ways visit
      // its interior at different times.
      const int directions = (a.u == a.v) ? 2 : 1;
      for (int d = 0; d < directions; ++d) {
        const bool fwd = (a.u == a.v) ? (d == 0) : (a.u == pos);
        const int next = fwd ? a.v : a.u;
        const int next_mask = mask | (1 << i);
        const double next_len = len + a.length;
        const double to_go = std::max(uncovered_beyond[next_mask],
                                      oracle.from_root(next));
        if (next_len + to_go > length_budget + kTol) continue;
        steps.emplace_back(i, fwd);
        self(self, next, next_mask, next_len);
        steps.pop_back();
      }
    }
  };
  rec(rec, net.root(), 0, 0.0);
  return out;
}

// Exact best response of the hider to a mixed tour strategy: the point of
// the network maximizing the probability-weighted average of the first-visit
// profiles (supremum semantics). The value is a valid upper bound on the
// classic game value for this mixture.
inline std::pair<Point, double> hider_best_response(
    const Network& net, const std::vector<std::pair<Tour, double>>& mixture) {
  if (mixture.empty()) throw ValidationError("empty mixture");
  double total = 0.0;
  for (const auto& [t, p] : mixture) {
    if (p < -kTol) throw ValidationError("negative mixture probability");
    total += p;
  }
  if (!nearly_equal(total, 1.0, 1e-6))
    throw ValidationError("mixture probabilities do not sum to 1");

  std::vector<VisitProfile> profiles;
  profiles.reserve(mixture.size());
  std::vector<const VisitProfile*> refs;
  std::vector<double> weights;
  for (const auto& [t, p] : mixture) {
    if (t.network().arc_count() != net.arc_count() ||
        t.network().node_count() != net.node_count())
      throw ValidationError("tour in mixture belongs to a different network");
    profiles.emplace_back(t);
  }
  for (std::size_t i = 0; i < mixture.size(); ++i) {
    refs.push_back(&profiles[i]);
    weights.push_back(mixture[i].second);
  }
  ProfileMax m = max_weighted_profiles(refs, weights, nullptr, 0.0);
  return {m.witness, m.value};
}

// A finite zero-sum game: rows are Searcher pure strategies (minimizing),
// columns are Hider pure strategies (maximizing).
struct MatrixGame {
  std::vector<std::vector<double>> payoff;
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double duality_gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::int64_t iterations = 0;
};

// Fictitious play with certified bounds: after every round the Hider's best
// response to the Searcher's empirical mixture upper-bounds the value and
// the Searcher's best response to the Hider's lower-bounds it. The best
// brackets seen and the strategy snapshots that achieved them are returned;
// `converged` reports whether the gap closed within `tolerance`.
inline MatrixGame solve_matrix(MatrixGame game, double tolerance = 1e-3,
                               std::int64_t max_iter = 1000000) {
  const std::size_t rows = game.payoff.size();
  if (rows == 0) throw ValidationError("empty payoff matrix");
  const std::size_t cols = game.payoff.front().size();
  for (const auto& row : game.payoff)
    if (row.size() != cols || cols == 0)
      throw ValidationError("payoff matrix is not rectangular");

  std::vector<double> row_payoff(cols, 0.0);  // vs Searcher empirical counts
  std::vector<double> col_payoff(rows, 0.0);  // vs Hider empirical counts
  std::vector<std::int64_t> row_count(rows, 0), col_count(cols, 0);
  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = -std::numeric_limits<double>::infinity();
  std::vector<double> best_row_strategy, best_col_strategy;

  std::int64_t t = 0;
  while (t < max_iter) {
    ++t;
    // Searcher best-responds to the Hider history (round 1: row sums).
    std::size_t i = 0;
    if (t == 1) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols; ++c) s += game.payoff[r][c];
        if (s < best) {
          best = s;
          i = r;
        }
      }
    } else {
      for (std::size_t r = 1; r < rows; ++r)
        if (col_payoff[r] < col_payoff[i]) i = r;
      const double lower = col_payoff[i] / static_cast<double>(t - 1);
      if (lower > best_lower) {
        best_lower = lower;
        best_col_strategy.assign(cols, 0.0);
        for (std::size_t c = 0; c < cols; ++c)
          best_col_strategy[c] =
              static_cast<double>(col_count[c]) / static_cast<double>(t - 1);
      }
    }
    ++row_count[i];
    for (std::size_t c = 0; c < cols; ++c) row_payoff[c] += game.payoff[i][c];

    // Hider best-responds to the Searcher history (including this round).
    std::size_t j = 0;
    for (std::size_t c = 1; c < cols; ++c)
      if (row_payoff[c] > row_payoff[j]) j = c;
    const double upper = row_payoff[j] / static_cast<double>(t);
    if (upper < best_upper) {
      best_upper = upper;
      best_row_strategy.assign(rows, 0.0);
      for (std::size_t r = 0; r < rows; ++r)
        best_row_strategy[r] =
            static_cast<double>(row_count[r]) / static_cast<double>(t);
    }
    ++col_count[j];
    for (std::size_t r = 0; r < rows; ++r) col_payoff[r] += game.payoff[r][j];

    if (best_upper - best_lower <= tolerance) break;
  }

  // Final lower bracket from the complete Hider history.
  {
    std::size_t i = 0;
    for (std::size_t r = 1; r < rows; ++r)
      if (col_payoff[r] < col_payoff[i]) i = r;
    const double lower = col_payoff[i] / static_cast<double>(t);
    if (lower > best_lower) {
      best_lower = lower;
      best_col_strategy.assign(cols, 0.0);
      for (std::size_t c = 0; c < cols; ++c)
        best_col_strategy[c] =
            static_cast<double>(col_count[c]) / static_cast<double>(t);
    }
  }

  game.iterations = t;
  game.lower_bound = best_lower;
  game.upper_bound = best_upper;
  game.duality_gap = best_upper - best_lower;
  game.converged = game.duality_gap <= tolerance;
  game.value = (best_upper + best_lower) / 2.0;
  game.row_strategy = std::move(best_row_strategy);
  game.col_strategy = std::move(best_col_strategy);
  return game;
}

struct SandwichResult {
  double lower = 0.0;
  double upper = 0.0;
  int tour_count = 0;
  bool solver_converged = false;
};

// Sandwiches the classic game value of a small instance: the block bound
// mu1 + mu2/2 from below; from above, the exact continuum best response to
// the matrix-game-optimal mixture over all enumerated covering tours. The
// hider grid only seeds the solver; the upper bound's validity comes from
// the continuum best response afterwards.
inline SandwichResult value_sandwich(const Network& net, double budget,
                                     double delta, double tolerance = 1e-3,
                                     std::int64_t max_iter = 1000000) {
  if (!(delta > 0.0)) throw ValidationError("grid spacing must be positive");
  const StructureReport structure = decompose(net);
  SandwichResult result;
  result.lower = structure.mu1 + structure.mu2 / 2.0;

  std::vector<Tour> tours = enumerate_tours(net, budget);
  if (tours.empty())
    throw ValidationError("no covering tours within the length budget");
  result.tour_count = static_cast<int>(tours.size());

  std::vector<Point> grid;
  for (const auto& id : net.node_ids()) grid.push_back(Point::at_node(id));
  for (const Arc& a : net.arcs()) {
    for (double x = delta; x < a.length - kTol; x += delta) {
      Point p = Point::on_arc(net, a.id, x);
      if (!p.is_node()) grid.push_back(p);
    }
  }

  MatrixGame game;
  game.payoff.reserve(tours.size());
  for (const Tour& t : tours) {
    const VisitProfile profile(t);
    std::vector<double> row;
    row.reserve(grid.size());
    for (const Point& p : grid) row.push_back(profile.value_at(p));
    game.payoff.push_back(std::move(row));
  }
  game = solve_matrix(std::move(game), tolerance, max_iter);
  result.solver_converged = game.converged;

  std::vector<std::pair<Tour, double>> mixture;
  double kept = 0.0;
  for (std::size_t i = 0; i < tours.size(); ++i) {
    if (game.row_strategy[i] > 1e-12) {
      mixture.emplace_back(tours[i], game.row_strategy[i]);
      kept += game.row_strategy[i];
    }
  }
  for (auto& [t, p] : mixture) p /= kept;
  auto [witness, value] = hider_best_response(net, mixture);
  result.upper = value;

  if (result.lower > result.upper + 1e-6)
    throw std::logic_error("value sandwich inverted");
  return result;
}

enum class InstanceKind { tree, eulerian, general };

inline std::string to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::tree:
      return "tree";
    case InstanceKind::eulerian:
      return "eulerian";
    default:
      return "general";
  }
}

// Reproducible random instances for property suites: trees by sequential
// attachment, Eulerian networks by gluing rings onto existing nodes, general
// networks by adding chords to trees. Arc lengths are uniform in [0.1, 2].
inline Network random_tree(std::uint64_t seed, int max_nodes = 9) {
  SequenceRng rng(splitmix64(seed) ^ 0x7265657472ULL);
  const int n = 2 + static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(max_nodes - 1)));
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, std::string, double>> arcs;
  for (int i = 1; i < n; ++i) {
    const int parent = static_cast<int>(rng.next_below(i));
    arcs.emplace_back("a" + std::to_string(i - 1), nodes[parent], nodes[i],
                      rng.next_in(0.1, 2.0));
  }
  return Network::build(nodes[0], nodes, arcs);
}

inline Network random_eulerian_network(std::uint64_t seed,
                                       int max_cycles = 3) {
  SequenceRng rng(splitmix64(seed) ^ 0x72656C7565ULL);
  std::vector<std::string> nodes{"n0"};
  std::vector<std::tuple<std::string, std::string, std::string, double>> arcs;
  const int cycles =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_cycles)));
  int arc_id = 0;
  for (int c = 0; c < cycles; ++c) {
    const std::string attach = nodes[rng.next_below(nodes.size())];
    const int extra = static_cast<int>(rng.next_below(4));  // 0..3 new nodes
    std::vector<std::string> ring{attach};
    for (int i = 0; i < extra; ++i) {
      nodes.push_back("n" + std::to_string(nodes.size()));
      ring.push_back(nodes.back());
    }
    if (extra == 0) {
      arcs.emplace_back("a" + std::to_string(arc_id++), attach, attach,
                        rng.next_in(0.1, 2.0));
      continue;
    }
    for (std::size_t i = 0; i < ring.size(); ++i) {
      arcs.emplace_back("a" + std::to_string(arc_id++), ring[i],
                        ring[(i + 1) % ring.size()], rng.next_in(0.1, 2.0));
    }
  }
  return Network::build("n0", nodes, arcs);
}

inline Network random_general_network(std::uint64_t seed) {
  const Network tree = random_tree(splitmix64(seed ^ 0x67656EULL));
  SequenceRng rng(splitmix64(seed) ^ 0x6E6567ULL);
  std::vector<std::tuple<std::string, std::string, std::string, double>> arcs;
  for (const Arc& a : tree.arcs())
    arcs.emplace_back(a.id, tree.node_id(a.u), tree.node_id(a.v), a.length);
  const int chords = static_cast<int>(rng.next_below(4));  // 0..3
  for (int c = 0; c < chords; ++c) {
    const int u = static_cast<int>(rng.next_below(tree.node_count()));
    const int v = static_cast<int>(rng.next_below(tree.node_count()));
    arcs.emplace_back("c" + std::to_string(c), tree.node_id(u),
                      tree.node_id(v), rng.next_in(0.1, 2.0));
  }
  return Network::build(tree.root_id(), tree.node_ids(), arcs);
}

// Bridgeless but not necessarily Eulerian: an Eulerian base plus chords.
inline Network random_bridgeless_network(std::uint64_t seed) {
  const Network base = random_eulerian_network(splitmix64(seed ^ 0x626CULL));
  SequenceRng rng(splitmix64(seed) ^ 0x73656CULL);
  std::vector<std::tuple<std::string, std::string, std::string, double>> arcs;
  for (const Arc& a : base.arcs())
    arcs.emplace_back(a.id, base.node_id(a.u), base.node_id(a.v), a.length);
  const int chords = static_cast<int>(rng.next_below(3));  // 0..2
  for (int c = 0; c < chords; ++c) {
    const int u = static_cast<int>(rng.next_below(base.node_count()));
    const int v = static_cast<int>(rng.next_below(base.node_count()));
    arcs.emplace_back("x" + std::to_string(c), base.node_id(u),
                      base.node_id(v), rng.next_in(0.1, 2.0));
  }
  return Network::build(base.root_id(), base.node_ids(), arcs);
}

inline Network random_instance(InstanceKind kind, std::uint64_t seed) {
  switch (kind) {
    case InstanceKind::tree:
      return random_tree(seed);
    case InstanceKind::eulerian:
      return random_eulerian_network(seed);
    default:
      return random_general_network(seed);
  }
}

}  // namespace searchgame

#endif  // SEARCHGAME_ORACLE_HPP_
