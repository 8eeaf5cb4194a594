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

#ifndef LEVELDIR_HARNESS_HPP
#define LEVELDIR_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "leveldir/directors.hpp"
#include "leveldir/graph.hpp"
#include "leveldir/mdp.hpp"
#include "leveldir/players.hpp"

namespace leveldir {

enum class Director { kRandom, kGreedy, kPolicyIteration, kAdaptive };

Director director_from_string(const std::string& name);
std::string to_string(Director director);

struct ExperimentConfig {
  Director director = Director::kAdaptive;
  // (proxy name, level count) pairs; counts must sum to levels_per_run.
  std::vector<std::pair<std::string, int>> proxy_schedule;
  std::vector<std::uint64_t> seeds;
  int levels_per_run = 50;
  int segments_per_level = 5;
  RewardMode reward_mode = RewardMode::kBoth;
  SolverConfig solver;
  std::vector<PlayerProxy> proxies;  // available personas

  void validate() const;
  const PlayerProxy& proxy_for_level(int level_index) const;
};

struct LevelRecord {
  double reward = 0.0;
  double percent_complete = 0.0;
  int level_length = 0;  // states in the assembled level, links included
  std::string proxy;
};

struct RunMetrics {
  std::vector<LevelRecord> per_level;
  std::map<std::string, long> cell_visits;
  std::vector<double> pi_rebuild_seconds;
  std::vector<std::string> warnings;
  bool aborted = false;  // partial metrics after an assembly error
};

// One play -> update -> rebuild loop over levels_per_run levels. The run
// owns private copies of the graph and tables.
RunMetrics run_single(const ExperimentConfig& config, const LevelGraph& graph,
                      std::uint64_t seed);

struct ExperimentSummary {
  double mean_reward = 0.0;
  double std_reward = 0.0;  // population standard deviation
  double mean_percent_complete = 0.0;
  double std_percent_complete = 0.0;
  std::vector<double> level_mean_reward;      // per-level curve across seeds
  std::vector<double> level_mean_percent_complete;
  std::map<std::string, double> mean_cell_visits;  // per-run means
  double mean_pi_seconds = 0.0;
  double max_pi_seconds = 0.0;
  std::vector<std::string> warnings;
  std::vector<RunMetrics> runs;  // ordered by seed index
};

ExperimentSummary run_experiment(const ExperimentConfig& config,
                                 const LevelGraph& graph, int jobs = 1);

// The proxy-switch protocol: 35 levels of "Good Player Likes Hard Levels"
// then 15 of "Bad Player Likes Easy Levels".
ExperimentConfig make_switch_config(Director director,
                                    std::vector<std::uint64_t> seeds);

}  // namespace leveldir

#endif  // LEVELDIR_HARNESS_HPP
