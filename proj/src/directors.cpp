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

#include "leveldir/directors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace leveldir {
namespace {

// Dense, index-based view of the graph and tables used by the solver.
struct IndexedMdp {
  std::vector<std::string> ids;  // index -> id, sorted
  std::map<std::string, int> index;
  Eigen::VectorXd reward;    // R(s)
  Eigen::VectorXd win_prob;  // P(win into s); 0 where undefined
  std::vector<std::vector<int>> neighbors;
  int start = -1;
  int death = -1;
};

IndexedMdp make_indexed(const LevelGraph& graph, const MdpTables& tables) {
  IndexedMdp m;
  m.ids.reserve(graph.state_count());
  for (const auto& [id, node] : graph.nodes()) {
    m.index.emplace(id, static_cast<int>(m.ids.size()));
    m.ids.push_back(id);
  }
  const int n = static_cast<int>(m.ids.size());
  m.reward.resize(n);
  m.win_prob.setZero(n);
  m.neighbors.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::string& id = m.ids[i];
    m.reward[i] = tables.reward.at(id);
    auto it = tables.transition_win_prob.find(id);
    if (it != tables.transition_win_prob.end()) m.win_prob[i] = it->second;
    const auto& nbrs = graph.neighbors(id);
    m.neighbors[i].reserve(nbrs.size());
    for (const auto& nbr : nbrs) {
      if (nbr != graph.death_id()) m.neighbors[i].push_back(m.index.at(nbr));
    }
  }
  m.start = m.index.at(graph.start_id());
  m.death = m.index.at(graph.death_id());
  return m;
}

std::vector<int> indexed_policy(const IndexedMdp& m, const Policy& policy) {
  std::vector<int> targets(m.ids.size(), -1);
  for (const auto& [state, successor] : policy.choice) {
    targets[m.index.at(state)] = m.index.at(successor);
  }
  return targets;
}

void evaluate_sweeps(const IndexedMdp& m, const std::vector<int>& targets,
                     const SolverConfig& config, Eigen::VectorXd& u) {
  const double gamma = config.gamma;
  const double r_death = m.reward[m.death];
  Eigen::VectorXd next(u.size());
  for (int sweep = 0; sweep < config.eval_sweeps; ++sweep) {
    const double death_term = r_death + gamma * u[m.death];
    for (int i = 0; i < u.size(); ++i) {
      const int t = targets[i];
      if (t < 0) {
        next[i] = u[i];
        continue;
      }
      const double p = m.win_prob[t];
      next[i] = p * (m.reward[t] + gamma * u[t]) + (1.0 - p) * death_term;
    }
    u.swap(next);
  }
}

// Greedy one-step lookahead. Ties resolve to the smallest index, which is
// the lexicographically smallest id since ids are sorted.
bool improve_targets(const IndexedMdp& m, const Eigen::VectorXd& u,
                     const SolverConfig& config, std::vector<int>& targets) {
  const double gamma = config.gamma;
  const double death_term = m.reward[m.death] + gamma * u[m.death];
  bool changed = false;
  for (std::size_t i = 0; i < m.neighbors.size(); ++i) {
    const auto& nbrs = m.neighbors[i];
    if (nbrs.empty()) continue;
    int best = -1;
    double best_value = 0.0;
    for (int t : nbrs) {
      const double p = m.win_prob[t];
      const double value =
          p * (m.reward[t] + gamma * u[t]) + (1.0 - p) * death_term;
      if (best < 0 || value > best_value) {
        best = t;
        best_value = value;
      }
    }
    if (best != targets[i]) {
      targets[i] = best;
      changed = true;
    }
  }
  return changed;
}

Policy policy_from_targets(const IndexedMdp& m,
                           const std::vector<int>& targets) {
  Policy policy;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= 0) policy.choice[m.ids[i]] = m.ids[targets[i]];
  }
  return policy;
}

std::vector<int> random_targets(const IndexedMdp& m, SplitMix64& rng) {
  std::vector<int> targets(m.ids.size(), -1);
  for (std::size_t i = 0; i < m.neighbors.size(); ++i) {
    const auto& nbrs = m.neighbors[i];
    if (nbrs.empty()) continue;
    targets[i] = nbrs[uniform_index(rng, nbrs.size())];
  }
  return targets;
}

}  // namespace

Policy build_policy_random(const LevelGraph& graph, SplitMix64& rng) {
  Policy policy;
  for (const auto& [id, node] : graph.nodes()) {
    const auto& nbrs = graph.neighbors(id);
    if (nbrs.empty()) continue;
    policy.choice[id] = nbrs[uniform_index(rng, nbrs.size())];
  }
  return policy;
}

Policy build_policy_greedy(const LevelGraph& graph, const MdpTables& tables) {
  Policy policy;
  for (const auto& [id, node] : graph.nodes()) {
    const auto& nbrs = graph.neighbors(id);
    if (nbrs.empty()) continue;
    const std::string* best = nullptr;
    double best_reward = 0.0;
    for (const auto& nbr : nbrs) {
      if (nbr == graph.death_id()) continue;
      const double r = tables.reward.at(nbr);
      if (best == nullptr || r > best_reward) {
        best = &nbr;
        best_reward = r;
      }
    }
    if (best != nullptr) policy.choice[id] = *best;
  }
  return policy;
}

UtilityTable policy_evaluation(const LevelGraph& graph,
                               const MdpTables& tables, const Policy& policy,
                               const UtilityTable& utilities,
                               const SolverConfig& config) {
  IndexedMdp m = make_indexed(graph, tables);
  std::vector<int> targets = indexed_policy(m, policy);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m.ids.size());
  for (const auto& [id, value] : utilities.utility) {
    u[m.index.at(id)] = value;
  }
  evaluate_sweeps(m, targets, config, u);
  UtilityTable out;
  for (std::size_t i = 0; i < m.ids.size(); ++i) out.utility[m.ids[i]] = u[i];
  return out;
}

std::pair<Policy, bool> policy_improvement(const LevelGraph& graph,
                                           const MdpTables& tables,
                                           const UtilityTable& utilities,
                                           const Policy& policy) {
  IndexedMdp m = make_indexed(graph, tables);
  std::vector<int> targets = indexed_policy(m, policy);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m.ids.size());
  for (const auto& [id, value] : utilities.utility) {
    u[m.index.at(id)] = value;
  }
  SolverConfig config;  // only gamma is read here
  const bool changed = improve_targets(m, u, config, targets);
  return {policy_from_targets(m, targets), changed};
}

PolicyIterationResult policy_iteration(const LevelGraph& graph,
                                       const MdpTables& tables,
                                       const SolverConfig& config,
                                       SplitMix64& rng) {
  const auto start_time = std::chrono::steady_clock::now();
  IndexedMdp m = make_indexed(graph, tables);
  std::vector<int> targets = random_targets(m, rng);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m.ids.size());

  PolicyIterationResult result;
  for (int round = 0; round < config.max_improve_rounds; ++round) {
    ++result.rounds;
    evaluate_sweeps(m, targets, config, u);
    if (!improve_targets(m, u, config, targets)) {
      result.converged = true;
      break;
    }
  }
  result.policy = policy_from_targets(m, targets);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    start_time)
          .count();
  return result;
}

int api_prune_start_edges(LevelGraph& graph, const ApiState& api_state) {
  const std::string& start = graph.start_id();
  std::vector<std::string> nbrs = graph.neighbors(start);
  const int removable =
      std::min<int>(api_state.losing_streak,
                    static_cast<int>(nbrs.size()) - 1);
  if (removable <= 0) return 0;
  std::sort(nbrs.begin(), nbrs.end(),
            [&graph](const std::string& a, const std::string& b) {
              const double ra = graph.state(a).designer_reward;
              const double rb = graph.state(b).designer_reward;
              if (ra != rb) return ra > rb;
              return a < b;
            });
  for (int i = 0; i < removable; ++i) graph.remove_edge(start, nbrs[i]);
  return removable;
}

std::vector<std::string> assemble_level(const LevelGraph& graph,
                                        const Policy& policy,
                                        int segment_count) {
  if (segment_count < 1) {
    throw std::invalid_argument("segment_count must be >= 1");
  }
  std::vector<std::string> level;
  std::string current = graph.start_id();
  int non_link = 0;
  // Generous cap against link cycles in hand-written graphs.
  const int max_steps = 1000 + 64 * segment_count;
  int steps = 0;
  while (non_link < segment_count) {
    auto it = policy.choice.find(current);
    if (it == policy.choice.end()) {
      throw GraphError("policy undefined at state: " + current);
    }
    if (it->second == graph.death_id()) {
      throw GraphError("policy chose the death state from: " + current);
    }
    current = it->second;
    level.push_back(current);
    if (!graph.state(current).is_link) ++non_link;
    if (++steps > max_steps) {
      throw GraphError("level assembly exceeded step limit at state: " +
                       current);
    }
  }
  return level;
}

}  // namespace leveldir
