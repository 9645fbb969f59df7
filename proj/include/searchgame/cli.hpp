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

#ifndef SEARCHGAME_CLI_HPP_
#define SEARCHGAME_CLI_HPP_

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "searchgame/classic.hpp"
#include "searchgame/findfetch.hpp"
#include "searchgame/network.hpp"
#include "searchgame/oracle.hpp"
#include "searchgame/postman.hpp"
#include "searchgame/structure.hpp"

namespace searchgame::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::ordered_json point_json(const Point& p) {
  nlohmann::ordered_json j;
  if (p.is_node()) {
    j["node"] = p.node;
  } else {
    j["arc"] = p.arc;
    j["offset"] = round12(p.offset);
  }
  return j;
}

inline nlohmann::ordered_json classic_json(const ClassicReport& r) {
  nlohmann::ordered_json j;
  j["mu"] = round12(r.mu);
  j["mu_bar"] = round12(r.mu_bar);
  j["mu1"] = round12(r.mu1);
  j["mu2"] = round12(r.mu2);
  j["network_class"] = to_string(r.network_class);
  j["t_rcpt"] = round12(r.t_rcpt);
  j["t_rcpt_witness"] = point_json(r.t_rcpt_witness);
  j["v_lower_uniform"] = round12(r.v_lower_uniform);
  j["v_lower_blocks"] = round12(r.v_lower_blocks);
  j["v_lower"] = round12(r.v_lower);
  j["v_upper"] = round12(r.v_upper);
  j["ratio_bound"] = round12(r.ratio_bound);
  if (r.exact_value.has_value())
    j["exact_value"] = round12(*r.exact_value);
  else
    j["exact_value"] = nullptr;
  return j;
}

inline std::string classic_csv_header() {
  return "file,network_class,mu,mu_bar,mu1,mu2,t_rcpt,v_lower,v_upper,"
         "ratio_bound,exact_value";
}

inline std::string classic_csv_row(const std::string& file,
                                   const ClassicReport& r) {
  std::string row = file + "," + to_string(r.network_class) + "," +
                    format_number(r.mu) + "," + format_number(r.mu_bar) + "," +
                    format_number(r.mu1) + "," + format_number(r.mu2) + "," +
                    format_number(r.t_rcpt) + "," + format_number(r.v_lower) +
                    "," + format_number(r.v_upper) + "," +
                    format_number(r.ratio_bound) + ",";
  if (r.exact_value.has_value()) row += format_number(*r.exact_value);
  return row;
}

inline nlohmann::ordered_json ebd_json(const Network& net, const EbdResult& e) {
  nlohmann::ordered_json j;
  j["mu"] = round12(net.mu());
  j["D"] = round12(e.mean_leaf_distance);
  j["leaves"] = nlohmann::ordered_json::array();
  for (const auto& [node, prob] : e.leaf_probabilities) {
    nlohmann::ordered_json leaf;
    leaf["node"] = net.node_id(node);
    leaf["probability"] = round12(prob);
    j["leaves"].push_back(std::move(leaf));
  }
  j["branch_nodes"] = nlohmann::ordered_json::array();
  for (int v : e.branch_nodes) j["branch_nodes"].push_back(net.node_id(v));
  return j;
}

inline nlohmann::ordered_json findfetch_json(const FindFetchReport& r) {
  nlohmann::ordered_json j;
  j["rho"] = round12(r.rho);
  j["model"] = to_string(r.model);
  j["mu"] = round12(r.mu);
  j["d_max"] = round12(r.d_max);
  j["z"] = round12(r.z);
  j["r_rcpt"] = round12(r.r_rcpt);
  j["v_lower"] = round12(r.v_lower);
  j["v_lower_farthest"] = round12(r.v_lower_farthest);
  j["ratio"] = round12(r.ratio);
  j["alpha"] = round12(r.alpha);
  if (r.ebd_mean) j["D"] = round12(*r.ebd_mean);
  if (r.v_lower_ebd) j["v_lower_ebd"] = round12(*r.v_lower_ebd);
  if (r.v_lower_uniform) j["v_lower_uniform"] = round12(*r.v_lower_uniform);
  if (r.z0) j["z0"] = round12(*r.z0);
  if (r.z1) j["z1"] = round12(*r.z1);
  if (r.intersection_z) j["intersection_z"] = round12(*r.intersection_z);
  if (r.r_rcpt_witness) j["r_rcpt_witness"] = point_json(*r.r_rcpt_witness);
  return j;
}

inline Point parse_point_flag(const Network& net, const std::string& text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string::npos)
    throw ValidationError("--point expects ARC:OFFSET");
  const std::string arc = text.substr(0, colon);
  double offset = 0.0;
  try {
    offset = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ValidationError("invalid offset in --point");
  }
  return Point::on_arc(net, arc, offset);
}

}  // namespace detail

// Parses and runs one invocation. Exit status 0 on success, 1 on any
// validation problem, 2 on a violated internal invariant.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"search-game analysis toolkit"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "value bounds and worst case of the random postman tour");
  std::vector<std::string> analyze_files;
  bool analyze_csv = false;
  analyze->add_option("files", analyze_files, "network files")->required();
  analyze->add_flag("--csv", analyze_csv, "one CSV row per instance");

  // cpt
  auto* cpt_cmd = app.add_subcommand("cpt", "exact Chinese Postman Tour");
  std::string cpt_file;
  bool cpt_json_flag = false, cpt_profile = false, cpt_doubled = false;
  cpt_cmd->add_option("file", cpt_file, "network file")->required();
  cpt_cmd->add_flag("--json", cpt_json_flag, "emit JSON instead of tokens");
  cpt_cmd->add_flag("--profile", cpt_profile,
                    "emit CSV of first-visit breakpoints");
  cpt_cmd->add_flag("--doubled", cpt_doubled,
                    "use the doubled tour of length 2*mu");

  // ebd
  auto* ebd_cmd =
      app.add_subcommand("ebd", "equal-branch-density leaf distribution");
  std::string ebd_file;
  ebd_cmd->add_option("file", ebd_file, "network file (a tree)")->required();

  // prune
  auto* prune_cmd = app.add_subcommand("prune", "prune tree branches");
  std::string prune_file, prune_arc;
  bool prune_to_path_flag = false;
  prune_cmd->add_option("file", prune_file, "network file (a tree)")
      ->required();
  auto* arc_opt =
      prune_cmd->add_option("--arc", prune_arc, "branch arc to reattach");
  auto* path_opt = prune_cmd->add_flag(
      "--to-path", prune_to_path_flag,
      "iterate pruning along a farthest root path");
  arc_opt->excludes(path_opt);

  // findfetch
  auto* ff_cmd = app.add_subcommand("findfetch", "find-and-fetch report");
  std::string ff_file;
  double ff_rho = 1.0;
  ff_cmd->add_option("file", ff_file, "network file")->required();
  ff_cmd->add_option("--rho", ff_rho, "return speed")->required();

  // alpha
  auto* alpha_cmd =
      app.add_subcommand("alpha", "approximation-ratio curve as CSV");
  std::string alpha_model;
  double alpha_min = 0.1, alpha_max = 10.0;
  int alpha_steps = 100;
  bool alpha_log = false;
  alpha_cmd->add_option("--model", alpha_model, "tree or eulerian")
      ->required()
      ->check(CLI::IsMember({"tree", "eulerian"}));
  alpha_cmd->add_option("--rho-min", alpha_min, "grid start")->required();
  alpha_cmd->add_option("--rho-max", alpha_max, "grid end")->required();
  alpha_cmd->add_option("--steps", alpha_steps, "grid steps (N+1 rows)")
      ->required();
  alpha_cmd->add_flag("--log", alpha_log, "geometric instead of linear grid");

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte-Carlo random postman tour time");
  std::string sim_file, sim_point;
  std::int64_t sim_samples = 100000;
  std::uint64_t sim_seed = 1;
  int sim_shards = 1;
  bool sim_uniform = false;
  sim_cmd->add_option("file", sim_file, "network file")->required();
  sim_cmd->add_option("--samples", sim_samples, "sample count");
  sim_cmd->add_option("--seed", sim_seed, "random seed");
  sim_cmd->add_option("--shards", sim_shards,
                      "parallel shards (output is shard-invariant)");
  auto* point_opt = sim_cmd->add_option("--point", sim_point,
                                        "pure hider at ARC:OFFSET");
  auto* uniform_opt =
      sim_cmd->add_flag("--uniform", sim_uniform, "uniform hider (default)");
  point_opt->excludes(uniform_opt);

  // sandwich
  auto* sand_cmd =
      app.add_subcommand("sandwich", "lower/upper bracket of the game value");
  std::string sand_file;
  double sand_budget = -1.0, sand_delta = -1.0, sand_tol = 1e-3;
  sand_cmd->add_option("file", sand_file, "network file")->required();
  sand_cmd->add_option("--budget", sand_budget,
                       "tour length budget (default: CPT length)");
  sand_cmd->add_option("--delta", sand_delta,
                       "hider grid spacing (default: 0.05*mu/arcs)");
  sand_cmd->add_option("--tol", sand_tol, "solver tolerance");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "random instance generator");
  std::string gen_kind;
  std::uint64_t gen_seed = 1;
  gen_cmd->add_option("--kind", gen_kind, "tree, eulerian or general")
      ->required()
      ->check(CLI::IsMember({"tree", "eulerian", "general"}));
  gen_cmd->add_option("--seed", gen_seed, "random seed")->required();

  std::vector<const char*> argv;
  argv.push_back("searchgame");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }

    if (*analyze) {
      if (analyze_csv) {
        out << detail::classic_csv_header() << "\n";
        for (const std::string& f : analyze_files)
          out << detail::classic_csv_row(
                     f, classic_bounds(Network::parse(detail::read_file(f))))
              << "\n";
      } else if (analyze_files.size() == 1) {
        out << detail::classic_json(classic_bounds(Network::parse(
                                        detail::read_file(analyze_files[0]))))
                   .dump(2)
            << "\n";
      } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const std::string& f : analyze_files) {
          nlohmann::ordered_json j =
              detail::classic_json(classic_bounds(Network::parse(
                  detail::read_file(f))));
          nlohmann::ordered_json entry;
          entry["file"] = f;
          entry.update(j);
          arr.push_back(std::move(entry));
        }
        out << arr.dump(2) << "\n";
      }
    } else if (*cpt_cmd) {
      const Network net = Network::parse(detail::read_file(cpt_file));
      const Tour tour = cpt_doubled ? doubled_tour(net) : chinese_postman(net);
      if (cpt_profile) {
        const VisitProfile profile(tour);
        out << "arc,offset,time\n";
        for (int arc = 0; arc < net.arc_count(); ++arc) {
          for (const auto& [x, t] : profile.arc_breakpoints(arc))
            out << net.arc(arc).id << "," << format_number(x) << ","
                << format_number(t) << "\n";
        }
      } else if (cpt_json_flag) {
        nlohmann::ordered_json j;
        j["length"] = round12(tour.length());
        j["start"] = net.node_id(tour.start_node());
        j["tour"] = tour.tokens();
        out << j.dump(2) << "\n";
      } else {
        const auto tokens = tour.tokens();
        for (std::size_t i = 0; i < tokens.size(); ++i)
          out << (i ? " " : "") << tokens[i];
        out << "\n";
      }
    } else if (*ebd_cmd) {
      const Network net = Network::parse(detail::read_file(ebd_file));
      out << detail::ebd_json(net, ebd(net)).dump(2) << "\n";
    } else if (*prune_cmd) {
      const Network net = Network::parse(detail::read_file(prune_file));
      if (prune_to_path_flag) {
        out << prune_to_path(net).to_json_text();
      } else if (!prune_arc.empty()) {
        out << prune(net, prune_arc).to_json_text();
      } else {
        throw ValidationError("prune needs --arc or --to-path");
      }
    } else if (*ff_cmd) {
      const Network net = Network::parse(detail::read_file(ff_file));
      out << detail::findfetch_json(findfetch_report(net, ff_rho)).dump(2)
          << "\n";
    } else if (*alpha_cmd) {
      if (alpha_steps < 1) throw ValidationError("--steps must be >= 1");
      if (!(alpha_min > 0.0) || alpha_max < alpha_min)
        throw ValidationError("need 0 < rho-min <= rho-max");
      out << "rho,alpha\n";
      for (int k = 0; k <= alpha_steps; ++k) {
        const double f = static_cast<double>(k) / alpha_steps;
        const double rho =
            alpha_log ? alpha_min * std::pow(alpha_max / alpha_min, f)
                      : alpha_min + f * (alpha_max - alpha_min);
        const double a = (alpha_model == "tree") ? alpha_tree(rho).alpha
                                                 : alpha_eulerian(rho).alpha;
        out << format_number(rho) << "," << format_number(a) << "\n";
      }
    } else if (*sim_cmd) {
      const Network net = Network::parse(detail::read_file(sim_file));
      HiderDistribution hider = HiderDistribution::uniform_over_length();
      nlohmann::ordered_json hider_desc = "uniform";
      if (!sim_point.empty()) {
        const Point p = detail::parse_point_flag(net, sim_point);
        hider = HiderDistribution::at_point(p);
        hider_desc = detail::point_json(p);
      }
      const SimulationResult res =
          simulate_rcpt(net, hider, sim_samples, sim_seed, sim_shards);
      nlohmann::ordered_json j;
      j["mean"] = round12(res.mean);
      j["std_error"] = round12(res.std_error);
      j["samples"] = res.samples;
      j["seed"] = res.seed;
      j["shards"] = sim_shards;
      j["hider"] = hider_desc;
      out << j.dump(2) << "\n";
    } else if (*sand_cmd) {
      const Network net = Network::parse(detail::read_file(sand_file));
      double budget = sand_budget;
      if (budget < 0.0) budget = chinese_postman(net).length();
      double delta = sand_delta;
      if (delta < 0.0)
        delta = net.arc_count() > 0 ? 0.05 * net.mu() / net.arc_count() : 1.0;
      const SandwichResult res = value_sandwich(net, budget, delta, sand_tol);
      nlohmann::ordered_json j;
      j["lower"] = round12(res.lower);
      j["upper"] = round12(res.upper);
      out << j.dump(2) << "\n";
    } else if (*gen_cmd) {
      InstanceKind kind = InstanceKind::general;
      if (gen_kind == "tree") kind = InstanceKind::tree;
      if (gen_kind == "eulerian") kind = InstanceKind::eulerian;
      out << random_instance(kind, gen_seed).to_json_text();
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace searchgame::cli

#endif  // SEARCHGAME_CLI_HPP_
