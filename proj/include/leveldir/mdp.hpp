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

#ifndef LEVELDIR_MDP_HPP
#define LEVELDIR_MDP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leveldir/graph.hpp"

namespace leveldir {

// How the reward numerator is composed when a state's reward decays.
enum class RewardMode { kDesigner, kPlayer, kBoth };

RewardMode reward_mode_from_string(const std::string& name);
std::string to_string(RewardMode mode);

// Mutable learning state of one run. Transition probabilities are stored
// per target state: every edge into a target shares the same win chance,
// and the death chance is its exact complement.
struct MdpTables {
  std::map<std::string, double> reward;          // R(s)
  std::map<std::string, int> visit_count;        // N(s), starts at 1
  std::map<std::string, int> target_wins;
  std::map<std::string, int> target_visits;
  std::map<std::string, double> transition_win_prob;

  double win_prob(const std::string& target) const {
    return transition_win_prob.at(target);
  }
  double death_prob(const std::string& target) const {
    return 1.0 - transition_win_prob.at(target);
  }
};

// Outcome of one playthrough. `beaten` is a positional prefix of
// `level_states`; `failed_state`, when present, is the state right after it.
struct PlayResult {
  std::vector<std::string> level_states;
  std::vector<std::string> beaten;
  std::optional<std::string> failed_state;
  double fail_fraction = 0.0;           // progress inside the failed state
  std::map<std::string, double> per_state_m;  // M(s) for every visited state

  bool full_clear() const { return !failed_state.has_value(); }
  std::size_t visited_count() const {
    return beaten.size() + (failed_state ? 1 : 0);
  }
};

MdpTables init_mdp(const LevelGraph& graph);

// Adds a start edge for each beaten non-link state; returns how many were
// actually new.
int augment_start_edges(LevelGraph& graph, const PlayResult& result);

// Reward decay update: for every visited state, bump N(s) (fanning out
// across the state's grid cell when it has one) and set
// R(s) = numerator / N(s) with the numerator picked by `mode`.
void update_rewards(MdpTables& tables, const PlayResult& result,
                    const LevelGraph& graph, RewardMode mode);

// Transition update: visits bump for every traversed edge's target, wins
// only for beaten targets, then P(win into s) = (1 + wins) / (1 + visits).
void update_transitions(MdpTables& tables, const PlayResult& result,
                        const LevelGraph& graph);

}  // namespace leveldir

#endif  // LEVELDIR_MDP_HPP
