// Copyright 2026 The Level Director Authors.
//
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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leveldir/graph_io.hpp"
#include "leveldir/graph_sources.hpp"
#include "leveldir/harness.hpp"

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;
using namespace leveldir;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw std::runtime_error("empty seed list");
  return seeds;
}

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(c == ' ' ? '_' : static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void print_graph_stats(const LevelGraph& graph) {
  std::size_t max_degree = 0;
  std::size_t edge_total = 0;
  std::size_t counted = 0;
  for (const auto& [id, node] : graph.nodes()) {
    if (id == graph.start_id() || id == graph.death_id()) continue;
    const std::size_t d = graph.out_degree(id);
    max_degree = std::max(max_degree, d);
    edge_total += d;
    ++counted;
  }
  const double mean =
      counted == 0 ? 0.0 : static_cast<double>(edge_total) / counted;
  std::cout << "states: " << counted << "  mean out-degree: " << fmt(mean)
            << "  max out-degree: " << max_degree << "\n";
}

// Experiment configuration file: graph path, director/proxy grid, seeds,
// and run parameters.
struct RunSpec {
  std::string graph_path;
  std::vector<std::string> directors;
  std::vector<std::string> proxy_names;
  std::vector<PlayerProxy> proxies;
  std::vector<std::uint64_t> seeds;
  int levels_per_run = 50;
  int segments_per_level = 5;
  RewardMode reward_mode = RewardMode::kBoth;
  SolverConfig solver;
  std::string output_dir = "out";
};

RunSpec load_run_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  Json doc = Json::parse(in);
  RunSpec spec;
  spec.graph_path = doc.at("graph").get<std::string>();
  spec.proxies = preset_proxies();
  if (doc.contains("proxy_file")) {
    auto extra = load_proxies(doc.at("proxy_file").get<std::string>());
    spec.proxies.insert(spec.proxies.end(), extra.begin(), extra.end());
  }
  if (doc.contains("directors")) {
    spec.directors = doc.at("directors").get<std::vector<std::string>>();
  } else {
    spec.directors = {"random", "greedy", "pi", "api"};
  }
  if (doc.contains("proxies")) {
    spec.proxy_names = doc.at("proxies").get<std::vector<std::string>>();
  } else {
    for (const auto& proxy : spec.proxies) {
      spec.proxy_names.push_back(proxy.name);
    }
  }
  if (doc.contains("seeds")) {
    spec.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
  } else {
    const auto master = doc.at("master_seed").get<std::uint64_t>();
    const auto count = doc.value("num_seeds", 20);
    spec.seeds = expand_seeds(master, count);
  }
  spec.levels_per_run = doc.value("levels_per_run", 50);
  spec.segments_per_level = doc.value("segments_per_level", 5);
  spec.reward_mode =
      reward_mode_from_string(doc.value("reward_mode", std::string("both")));
  if (doc.contains("solver")) {
    const auto& solver = doc.at("solver");
    spec.solver.gamma = solver.value("gamma", 0.95);
    spec.solver.eval_sweeps = solver.value("eval_sweeps", 20);
    spec.solver.max_improve_rounds = solver.value("max_improve_rounds", 100);
  }
  spec.output_dir = doc.value("output_dir", std::string("out"));
  return spec;
}

struct CellResult {
  std::string director;
  std::string proxy;
  ExperimentSummary summary;
};

void write_outputs(const RunSpec& spec, const std::vector<CellResult>& cells) {
  fs::create_directories(spec.output_dir);

  std::ofstream levels(fs::path(spec.output_dir) / "levels.csv",
                       std::ios::binary);
  levels << "seed,level,director,proxy,reward,percent_complete\n";
  for (const auto& cell : cells) {
    for (std::size_t run = 0; run < cell.summary.runs.size(); ++run) {
      const auto& metrics = cell.summary.runs[run];
      for (std::size_t lvl = 0; lvl < metrics.per_level.size(); ++lvl) {
        const auto& rec = metrics.per_level[lvl];
        levels << spec.seeds[run] << ',' << lvl << ',' << cell.director << ','
               << slug(rec.proxy) << ',' << fmt(rec.reward) << ','
               << fmt(rec.percent_complete) << "\n";
      }
    }
  }

  for (const auto& cell : cells) {
    if (cell.summary.mean_cell_visits.empty()) continue;
    const std::string name =
        "heatmap_" + cell.director + "_" + slug(cell.proxy) + ".csv";
    std::ofstream heat(fs::path(spec.output_dir) / name, std::ios::binary);
    heat << "cell_x,cell_y,mean_visits\n";
    for (const auto& [cell_id, visits] : cell.summary.mean_cell_visits) {
      const auto comma = cell_id.find(',');
      heat << cell_id.substr(0, comma) << ',' << cell_id.substr(comma + 1)
           << ',' << fmt(visits) << "\n";
    }
  }

  Json summary;
  summary["seeds"] = spec.seeds;
  summary["levels_per_run"] = spec.levels_per_run;
  summary["segments_per_level"] = spec.segments_per_level;
  summary["reward_mode"] = to_string(spec.reward_mode);
  Json rows = Json::array();
  for (const auto& cell : cells) {
    Json row;
    row["director"] = cell.director;
    row["proxy"] = cell.proxy;
    row["mean_reward"] = cell.summary.mean_reward;
    row["std_reward"] = cell.summary.std_reward;
    row["mean_percent_complete"] = cell.summary.mean_percent_complete;
    row["std_percent_complete"] = cell.summary.std_percent_complete;
    row["level_mean_reward"] = cell.summary.level_mean_reward;
    row["level_mean_percent_complete"] =
        cell.summary.level_mean_percent_complete;
    row["warnings"] = cell.summary.warnings;
    if (cell.director == "pi" || cell.director == "api") {
      // Wall-clock figures; scrub this key when diffing outputs.
      row["pi_timing"] = {{"mean_seconds", cell.summary.mean_pi_seconds},
                          {"max_seconds", cell.summary.max_pi_seconds}};
    }
    rows.push_back(std::move(row));
  }
  summary["results"] = std::move(rows);
  std::ofstream out(fs::path(spec.output_dir) / "summary.json",
                    std::ios::binary);
  out << summary.dump(2) << "\n";
}

void print_summary_table(const std::vector<CellResult>& cells) {
  std::cout << "director  proxy                                   "
               "reward            percent_complete\n";
  for (const auto& cell : cells) {
    std::printf("%-9s %-38s %s +/- %s  %s +/- %s\n", cell.director.c_str(),
                cell.proxy.c_str(), fmt(cell.summary.mean_reward).c_str(),
                fmt(cell.summary.std_reward).c_str(),
                fmt(cell.summary.mean_percent_complete).c_str(),
                fmt(cell.summary.std_percent_complete).c_str());
  }
}

int cmd_build_ngram(const std::string& corpus_path, int n,
                    const std::string& out_path) {
  TokenCorpus corpus = load_corpus(corpus_path);
  LevelGraph graph = build_ngram_graph(corpus, n);
  save_graph(graph, out_path);
  print_graph_stats(graph);
  return 0;
}

int cmd_gen_segments(const SegmentGraphParams& params,
                     const std::string& out_path) {
  SegmentGraphStats stats;
  LevelGraph graph = generate_segment_graph(params, &stats);
  save_graph(graph, out_path);
  std::cout << "states (with links): " << stats.states_with_links
            << "  mean out-degree: " << fmt(stats.mean_out_degree_with_links)
            << "\n"
            << "states (without links): " << stats.states_without_links
            << "  mean out-degree: "
            << fmt(stats.mean_out_degree_without_links) << "\n"
            << "max out-degree: " << stats.max_out_degree
            << "  retries: " << stats.retries_used << "\n";
  return 0;
}

int run_cells(const RunSpec& spec, int jobs, bool warnings_as_errors) {
  LevelGraph graph = load_graph(spec.graph_path);
  std::vector<CellResult> cells;
  for (const auto& director_name : spec.directors) {
    for (const auto& proxy_name : spec.proxy_names) {
      ExperimentConfig config;
      config.director = director_from_string(director_name);
      config.proxies = spec.proxies;
      config.proxy_schedule = {{proxy_name, spec.levels_per_run}};
      config.seeds = spec.seeds;
      config.levels_per_run = spec.levels_per_run;
      config.segments_per_level = spec.segments_per_level;
      config.reward_mode = spec.reward_mode;
      config.solver = spec.solver;
      CellResult cell;
      cell.director = director_name;
      cell.proxy = proxy_name;
      cell.summary = run_experiment(config, graph, jobs);
      cells.push_back(std::move(cell));
    }
  }
  write_outputs(spec, cells);
  print_summary_table(cells);
  if (warnings_as_errors) {
    for (const auto& cell : cells) {
      if (!cell.summary.warnings.empty()) return 1;
    }
  }
  return 0;
}

int cmd_switch_run(const std::string& graph_path,
                   std::vector<std::uint64_t> seeds,
                   const std::string& out_dir, int jobs) {
  RunSpec spec;
  spec.graph_path = graph_path;
  spec.seeds = std::move(seeds);
  spec.output_dir = out_dir;
  spec.proxies = preset_proxies();

  LevelGraph graph = load_graph(graph_path);
  std::vector<CellResult> cells;
  for (const char* director_name : {"random", "greedy", "pi", "api"}) {
    ExperimentConfig config = make_switch_config(
        director_from_string(director_name), spec.seeds);
    CellResult cell;
    cell.director = director_name;
    cell.proxy = "switch_good_hard_35_bad_easy_15";
    cell.summary = run_experiment(config, graph, jobs);
    cells.push_back(std::move(cell));
  }
  write_outputs(spec, cells);
  print_summary_table(cells);
  return 0;
}

int cmd_validate(const std::string& graph_path) {
  auto checks = validate_graph_file(graph_path);
  bool all_passed = true;
  for (const auto& check : checks) {
    std::cout << (check.passed ? "PASS" : "FAIL") << "  " << check.name;
    if (!check.passed && !check.detail.empty()) {
      std::cout << "  (" << check.detail << ")";
    }
    std::cout << "\n";
    all_passed = all_passed && check.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDP-driven level assembly simulator"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build-ngram",
                                   "Build a level graph from a token corpus");
  std::string corpus_path;
  std::string out_path = "graph.json";
  int n = 3;
  build->add_option("--corpus", corpus_path, "corpus text file")->required();
  build->add_option("--n", n, "n-gram order (>= 2)");
  build->add_option("--out", out_path, "output graph JSON");

  auto* gen = app.add_subcommand("gen-segments",
                                 "Generate a synthetic segment-grid graph");
  SegmentGraphParams params;
  std::string gen_out = "graph.json";
  gen->add_option("--grid", params.grid_resolution, "cells per BC axis");
  gen->add_option("--elites", params.elites_per_cell, "elites per cell");
  gen->add_option("--link-prob", params.link_probability,
                  "chance an edge routes through a linking state");
  gen->add_option("--radius", params.neighbor_radius,
                  "BC distance threshold for edges");
  gen->add_option("--start-edges", params.start_edge_count,
                  "easiest states reachable from start");
  gen->add_option("--seed", params.rng_seed, "generator seed");
  gen->add_option("--out", gen_out, "output graph JSON");

  auto* run = app.add_subcommand("run", "Run the experiment grid");
  std::string config_path;
  std::string seeds_override;
  std::string director_override;
  std::string reward_mode_override;
  std::string out_override;
  int jobs = 1;
  bool warnings_as_errors = false;
  run->add_option("--config", config_path, "experiment config JSON")
      ->required();
  run->add_option("--seeds", seeds_override, "comma-separated seed override");
  run->add_option("--director", director_override, "single-director override");
  run->add_option("--reward-mode", reward_mode_override,
                  "designer | player | both");
  run->add_option("--out", out_override, "output directory override");
  run->add_option("--jobs", jobs, "parallel runs");
  run->add_flag("--warnings-as-errors", warnings_as_errors,
                "nonzero exit on run warnings");

  auto* sw = app.add_subcommand("switch-run",
                                "Proxy-switch protocol (35 + 15 levels)");
  std::string sw_graph;
  std::string sw_seeds;
  std::uint64_t sw_master = 42;
  int sw_num_seeds = 20;
  std::string sw_out = "out";
  int sw_jobs = 1;
  sw->add_option("--graph", sw_graph, "graph JSON")->required();
  sw->add_option("--seeds", sw_seeds, "comma-separated seed list");
  sw->add_option("--master-seed", sw_master, "master seed to expand");
  sw->add_option("--num-seeds", sw_num_seeds, "seeds to expand");
  sw->add_option("--out", sw_out, "output directory");
  sw->add_option("--jobs", sw_jobs, "parallel runs");

  auto* validate =
      app.add_subcommand("validate", "Check level-graph invariants");
  std::string validate_path;
  validate->add_option("--graph", validate_path, "graph JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build_ngram(corpus_path, n, out_path);
    if (gen->parsed()) return cmd_gen_segments(params, gen_out);
    if (run->parsed()) {
      RunSpec spec = load_run_spec(config_path);
      if (!seeds_override.empty()) spec.seeds = parse_seed_list(seeds_override);
      if (!director_override.empty()) {
        director_from_string(director_override);  // validate early
        spec.directors = {director_override};
      }
      if (!reward_mode_override.empty()) {
        spec.reward_mode = reward_mode_from_string(reward_mode_override);
      }
      if (!out_override.empty()) spec.output_dir = out_override;
      return run_cells(spec, jobs, warnings_as_errors);
    }
    if (sw->parsed()) {
      std::vector<std::uint64_t> seeds =
          sw_seeds.empty() ? expand_seeds(sw_master, sw_num_seeds)
                           : parse_seed_list(sw_seeds);
      return cmd_switch_run(sw_graph, std::move(seeds), sw_out, sw_jobs);
    }
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
