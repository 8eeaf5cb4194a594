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

#include "leveldir/mdp.hpp"

#include <stdexcept>

namespace leveldir {

RewardMode reward_mode_from_string(const std::string& name) {
  if (name == "designer") return RewardMode::kDesigner;
  if (name == "player") return RewardMode::kPlayer;
  if (name == "both") return RewardMode::kBoth;
  throw std::invalid_argument("unknown reward mode: " + name);
}

std::string to_string(RewardMode mode) {
  switch (mode) {
    case RewardMode::kDesigner: return "designer";
    case RewardMode::kPlayer: return "player";
    case RewardMode::kBoth: return "both";
  }
  return "both";
}

MdpTables init_mdp(const LevelGraph& graph) {
  MdpTables tables;
  for (const auto& [id, node] : graph.nodes()) {
    tables.reward[id] = (id == graph.death_id()) ? -1.0 : node.designer_reward;
    tables.visit_count[id] = 1;
    tables.target_wins[id] = 0;
    tables.target_visits[id] = 0;
    if (id != graph.start_id() && id != graph.death_id()) {
      tables.transition_win_prob[id] = 0.99;
    }
  }
  return tables;
}

int augment_start_edges(LevelGraph& graph, const PlayResult& result) {
  int added = 0;
  for (const auto& id : result.beaten) {
    if (graph.state(id).is_link) continue;
    if (graph.add_edge(graph.start_id(), id)) ++added;
  }
  return added;
}

namespace {

// Visited states in play order: the beaten prefix plus the failed state.
std::vector<std::string> visited_states(const PlayResult& result) {
  std::vector<std::string> visited = result.beaten;
  if (result.failed_state) visited.push_back(*result.failed_state);
  return visited;
}

}  // namespace

void update_rewards(MdpTables& tables, const PlayResult& result,
                    const LevelGraph& graph, RewardMode mode) {
  for (const auto& id : visited_states(result)) {
    const StateNode& node = graph.state(id);
    if (node.cell_id) {
      for (const auto& mate : graph.states_in_cell(*node.cell_id)) {
        ++tables.visit_count.at(mate);
      }
    } else {
      ++tables.visit_count.at(id);
    }
    auto m_it = result.per_state_m.find(id);
    if (m_it == result.per_state_m.end()) {
      throw std::logic_error("visited state missing player reward M(s): " + id);
    }
    double numerator = 0.0;
    switch (mode) {
      case RewardMode::kDesigner: numerator = node.designer_reward; break;
      case RewardMode::kPlayer: numerator = m_it->second; break;
      case RewardMode::kBoth:
        numerator = node.designer_reward + m_it->second;
        break;
    }
    tables.reward.at(id) = numerator / tables.visit_count.at(id);
  }
}

void update_transitions(MdpTables& tables, const PlayResult& result,
                        const LevelGraph& graph) {
  (void)graph;
  const std::size_t visited = result.visited_count();
  for (std::size_t i = 0; i < visited; ++i) {
    const std::string& target = result.level_states[i];
    ++tables.target_visits.at(target);
    if (i < result.beaten.size()) ++tables.target_wins.at(target);
  }
  for (std::size_t i = 0; i < visited; ++i) {
    const std::string& target = result.level_states[i];
    tables.transition_win_prob.at(target) =
        (1.0 + tables.target_wins.at(target)) /
        (1.0 + tables.target_visits.at(target));
  }
}

}  // namespace leveldir
