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

#ifndef SEARCHGAME_CLASSIC_HPP_
#define SEARCHGAME_CLASSIC_HPP_

#include <optional>
#include <utility>

#include "searchgame/postman.hpp"
#include "searchgame/structure.hpp"

namespace searchgame {

// Value bounds and the exact worst case of the random postman tour for the
// classic search game.
//
//   mu/2  <=  v_lower  <=  V  <=  v_upper = mu_bar/2  <=  mu
//
// v_lower is max(mu/2, mu1 + mu2/2); both components are reported so the
// weaker uniform-hider bound stays visible next to the block bound that
// sharpens it. ratio_bound = t_rcpt / v_lower is an upper bound on the true
// approximation ratio whenever the value is unknown; exact_value is set only
// for weakly Eulerian networks, where the random postman tour is optimal.
struct ClassicReport {
  double mu = 0.0;
  double mu_bar = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  NetworkClass network_class = NetworkClass::general;
  double t_rcpt = 0.0;
  Point t_rcpt_witness;
  double v_lower_uniform = 0.0;  // mu/2
  double v_lower_blocks = 0.0;   // mu1 + mu2/2
  double v_lower = 0.0;
  double v_upper = 0.0;  // mu_bar/2
  double ratio_bound = 1.0;
  std::optional<double> exact_value;
};

// Worst case over all points of the expected first-visit time when the tour
// and its reverse are played with probability 1/2 each.
inline std::pair<double, Point> rcpt_worst_case(const Tour& tour) {
  const VisitProfile forward(tour);
  const VisitProfile backward(reverse_tour(tour));
  ProfileMax m = max_weighted_profiles({&forward, &backward}, {0.5, 0.5},
                                       nullptr, 0.0);
  return {m.value, m.witness};
}

inline ClassicReport classic_bounds(const Network& net) {
  ClassicReport r;
  r.mu = net.mu();
  const StructureReport structure = decompose(net);
  r.mu1 = structure.mu1;
  r.mu2 = structure.mu2;
  r.network_class = classify(structure);

  const Tour cpt = chinese_postman(net);
  r.mu_bar = cpt.length();
  auto [t, witness] = rcpt_worst_case(cpt);
  r.t_rcpt = t;
  r.t_rcpt_witness = witness;

  r.v_lower_uniform = r.mu / 2.0;
  r.v_lower_blocks = r.mu1 + r.mu2 / 2.0;
  r.v_lower = std::max(r.v_lower_uniform, r.v_lower_blocks);
  r.v_upper = r.mu_bar / 2.0;
  r.ratio_bound = (r.v_lower > 0.0) ? r.t_rcpt / r.v_lower : 1.0;
  if (structure.is_weakly_eulerian) r.exact_value = r.v_upper;

  if (r.mu1 + r.mu2 > r.mu + kTol || r.mu1 + r.mu2 < r.mu - kTol)
    throw std::logic_error("bridge and block lengths do not add up to mu");
  if (r.mu_bar > 2.0 * r.mu1 + (4.0 / 3.0) * r.mu2 + kTol)
    throw std::logic_error("postman tour exceeds the 2*mu1 + (4/3)*mu2 bound");
  if (structure.bridges.empty() && r.mu_bar > (4.0 / 3.0) * r.mu + kTol)
    throw std::logic_error(
        "postman tour of a bridgeless network exceeds (4/3)*mu");
  return r;
}

}  // namespace searchgame

#endif  // SEARCHGAME_CLASSIC_HPP_
