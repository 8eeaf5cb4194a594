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

#include "leveldir/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace leveldir {

Director director_from_string(const std::string& name) {
  if (name == "random") return Director::kRandom;
  if (name == "greedy") return Director::kGreedy;
  if (name == "pi") return Director::kPolicyIteration;
  if (name == "api") return Director::kAdaptive;
  throw std::invalid_argument("unknown director: " + name);
}

std::string to_string(Director director) {
  switch (director) {
    case Director::kRandom: return "random";
    case Director::kGreedy: return "greedy";
    case Director::kPolicyIteration: return "pi";
    case Director::kAdaptive: return "api";
  }
  return "api";
}

void ExperimentConfig::validate() const {
  if (levels_per_run < 1) {
    throw std::invalid_argument("levels_per_run must be positive");
  }
  if (segments_per_level < 1) {
    throw std::invalid_argument("segments_per_level must be positive");
  }
  if (seeds.empty()) throw std::invalid_argument("at least one seed required");
  int scheduled = 0;
  for (const auto& [name, count] : proxy_schedule) {
    if (count < 1) {
      throw std::invalid_argument("schedule count for " + name +
                                  " must be positive");
    }
    find_proxy(proxies, name);  // throws on unknown proxy
    scheduled += count;
  }
  if (scheduled != levels_per_run) {
    throw std::invalid_argument(
        "proxy schedule covers " + std::to_string(scheduled) +
        " levels, expected " + std::to_string(levels_per_run));
  }
}

const PlayerProxy& ExperimentConfig::proxy_for_level(int level_index) const {
  int offset = 0;
  for (const auto& [name, count] : proxy_schedule) {
    offset += count;
    if (level_index < offset) return find_proxy(proxies, name);
  }
  throw std::out_of_range("level index beyond schedule: " +
                          std::to_string(level_index));
}

RunMetrics run_single(const ExperimentConfig& config, const LevelGraph& graph,
                      std::uint64_t seed) {
  config.validate();
  RunMetrics metrics;
  LevelGraph run_graph = graph;  // private copy; start edges mutate
  MdpTables tables = init_mdp(run_graph);
  SplitMix64 rng(seed);
  ApiState api_state;

  for (int level_index = 0; level_index < config.levels_per_run;
       ++level_index) {
    const PlayerProxy& proxy = config.proxy_for_level(level_index);

    Policy policy;
    switch (config.director) {
      case Director::kRandom:
        policy = build_policy_random(run_graph, rng);
        break;
      case Director::kGreedy:
        policy = build_policy_greedy(run_graph, tables);
        break;
      case Director::kPolicyIteration:
      case Director::kAdaptive: {
        PolicyIterationResult pi =
            policy_iteration(run_graph, tables, config.solver, rng);
        metrics.pi_rebuild_seconds.push_back(pi.seconds);
        if (!pi.converged) {
          metrics.warnings.push_back(
              "policy iteration hit max_improve_rounds at level " +
              std::to_string(level_index));
        }
        policy = std::move(pi.policy);
        break;
      }
    }

    std::vector<std::string> level;
    try {
      level = assemble_level(run_graph, policy, config.segments_per_level);
    } catch (const GraphError& e) {
      metrics.warnings.push_back("run aborted at level " +
                                 std::to_string(level_index) + ": " +
                                 e.what());
      metrics.aborted = true;
      return metrics;
    }

    PlayResult result = play_level(proxy, level, run_graph, rng);

    LevelRecord record;
    record.reward = level_reward(result, level, run_graph);
    record.percent_complete = percent_complete(result, level, run_graph);
    record.level_length = static_cast<int>(level.size());
    record.proxy = proxy.name;
    metrics.per_level.push_back(std::move(record));
    for (std::size_t i = 0; i < result.visited_count(); ++i) {
      const StateNode& node = run_graph.state(result.level_states[i]);
      if (node.cell_id) ++metrics.cell_visits[*node.cell_id];
    }

    augment_start_edges(run_graph, result);
    update_rewards(tables, result, run_graph, config.reward_mode);
    update_transitions(tables, result, run_graph);

    if (config.director == Director::kAdaptive) {
      if (result.full_clear()) {
        api_state.losing_streak = 0;
      } else {
        ++api_state.losing_streak;
        api_prune_start_edges(run_graph, api_state);
      }
    }
  }
  return metrics;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  long count = 0;

  void add(double value) {
    sum += value;
    sum_sq += value * value;
    ++count;
  }
  double mean() const { return count == 0 ? 0.0 : sum / count; }
  double stddev() const {
    if (count == 0) return 0.0;
    const double m = mean();
    const double variance = sum_sq / count - m * m;
    return variance > 0.0 ? std::sqrt(variance) : 0.0;
  }
};

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config,
                                 const LevelGraph& graph, int jobs) {
  config.validate();
  const std::size_t run_count = config.seeds.size();
  std::vector<RunMetrics> runs(run_count);

  if (jobs <= 1 || run_count <= 1) {
    for (std::size_t i = 0; i < run_count; ++i) {
      runs[i] = run_single(config, graph, config.seeds[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < run_count;
           i = next.fetch_add(1)) {
        runs[i] = run_single(config, graph, config.seeds[i]);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), run_count);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentSummary summary;
  Accumulator reward;
  Accumulator pc;
  Accumulator pi_seconds;
  std::vector<Accumulator> level_reward(config.levels_per_run);
  std::vector<Accumulator> level_pc(config.levels_per_run);
  std::map<std::string, Accumulator> cells;

  for (const auto& run : runs) {
    for (std::size_t i = 0; i < run.per_level.size(); ++i) {
      reward.add(run.per_level[i].reward);
      pc.add(run.per_level[i].percent_complete);
      level_reward[i].add(run.per_level[i].reward);
      level_pc[i].add(run.per_level[i].percent_complete);
    }
    for (double s : run.pi_rebuild_seconds) {
      pi_seconds.add(s);
      summary.max_pi_seconds = std::max(summary.max_pi_seconds, s);
    }
    for (const auto& [cell, visits] : run.cell_visits) {
      cells[cell].add(static_cast<double>(visits));
    }
    for (const auto& warning : run.warnings) {
      summary.warnings.push_back(warning);
    }
  }

  summary.mean_reward = reward.mean();
  summary.std_reward = reward.stddev();
  summary.mean_percent_complete = pc.mean();
  summary.std_percent_complete = pc.stddev();
  summary.mean_pi_seconds = pi_seconds.mean();
  for (int i = 0; i < config.levels_per_run; ++i) {
    summary.level_mean_reward.push_back(level_reward[i].mean());
    summary.level_mean_percent_complete.push_back(level_pc[i].mean());
  }
  // Per-run mean: runs that never touched a cell count as zero visits.
  for (const auto& [cell, acc] : cells) {
    summary.mean_cell_visits[cell] =
        acc.sum / static_cast<double>(run_count);
  }
  summary.runs = std::move(runs);
  return summary;
}

ExperimentConfig make_switch_config(Director director,
                                    std::vector<std::uint64_t> seeds) {
  ExperimentConfig config;
  config.director = director;
  config.proxies = preset_proxies();
  config.proxy_schedule = {{"Good Player Likes Hard Levels", 35},
                           {"Bad Player Likes Easy Levels", 15}};
  config.levels_per_run = 50;
  config.segments_per_level = 5;
  config.seeds = std::move(seeds);
  return config;
}

}  // namespace leveldir
