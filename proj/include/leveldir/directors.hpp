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

#ifndef LEVELDIR_DIRECTORS_HPP
#define LEVELDIR_DIRECTORS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "leveldir/graph.hpp"
#include "leveldir/mdp.hpp"
#include "leveldir/rng.hpp"

namespace leveldir {

// state -> chosen successor, defined for every state with outgoing edges.
struct Policy {
  std::map<std::string, std::string> choice;
};

struct UtilityTable {
  std::map<std::string, double> utility;
};

struct SolverConfig {
  double gamma = 0.95;
  int eval_sweeps = 20;
  int max_improve_rounds = 100;
  std::uint64_t rng_seed = 0;
};

// Losing-streak tally driving start-edge pruning. Reset on any completion.
struct ApiState {
  int losing_streak = 0;
};

struct PolicyIterationResult {
  Policy policy;
  int rounds = 0;
  bool converged = false;
  double seconds = 0.0;
};

// Uniform independent successor choice per state.
Policy build_policy_random(const LevelGraph& graph, SplitMix64& rng);

// Successor with the highest current reward; ties break to the
// lexicographically smallest id.
Policy build_policy_greedy(const LevelGraph& graph, const MdpTables& tables);

// Runs config.eval_sweeps synchronous Bellman sweeps of
// U(s) <- P(win)[R(t) + g U(t)] + P(death)[R(death) + g U(death)]
// starting from `utilities`.
UtilityTable policy_evaluation(const LevelGraph& graph,
                               const MdpTables& tables, const Policy& policy,
                               const UtilityTable& utilities,
                               const SolverConfig& config);

std::pair<Policy, bool> policy_improvement(const LevelGraph& graph,
                                           const MdpTables& tables,
                                           const UtilityTable& utilities,
                                           const Policy& policy);

PolicyIterationResult policy_iteration(const LevelGraph& graph,
                                       const MdpTables& tables,
                                       const SolverConfig& config,
                                       SplitMix64& rng);

// Removes min(streak, out_degree(start) - 1) start edges, largest designer
// reward first; the last start edge always survives.
int api_prune_start_edges(LevelGraph& graph, const ApiState& api_state);

// Walks the policy from start until exactly `segment_count` non-link states
// are collected. Link states are appended but not counted; start and death
// never appear in the output.
std::vector<std::string> assemble_level(const LevelGraph& graph,
                                        const Policy& policy,
                                        int segment_count);

}  // namespace leveldir

#endif  // LEVELDIR_DIRECTORS_HPP
