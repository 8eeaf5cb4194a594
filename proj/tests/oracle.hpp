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

// Straight-line reference implementations, independent of the solver code
// path: a naive Bellman recurrence over string maps and brute-force policy
// enumeration.

#ifndef LEVELDIR_TESTS_ORACLE_HPP
#define LEVELDIR_TESTS_ORACLE_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "leveldir/graph.hpp"
#include "leveldir/mdp.hpp"

namespace leveldir::test {

// U(s) <- P(win)[R(target) + g U(target)] + P(death)[R(death) + g U(death)],
// synchronous, `sweeps` times (stopping early only at an exact fixed point).
inline std::map<std::string, double> oracle_bellman(
    const LevelGraph& graph, const MdpTables& tables,
    const std::map<std::string, std::string>& choice, double gamma,
    int sweeps) {
  std::map<std::string, double> u;
  for (const auto& [id, node] : graph.nodes()) u[id] = 0.0;
  const double r_death = tables.reward.at(graph.death_id());
  for (int i = 0; i < sweeps; ++i) {
    std::map<std::string, double> next = u;
    const double death_term = r_death + gamma * u.at(graph.death_id());
    for (const auto& [state, target] : choice) {
      const double p = tables.transition_win_prob.at(target);
      next.at(state) = p * (tables.reward.at(target) + gamma * u.at(target)) +
                       (1.0 - p) * death_term;
    }
    if (next == u) break;
    u = std::move(next);
  }
  return u;
}

// Best start-state utility over every deterministic policy, each evaluated
// by `sweeps` Bellman sweeps.
inline double oracle_best_start_utility(const LevelGraph& graph,
                                        const MdpTables& tables, double gamma,
                                        int sweeps = 10000) {
  std::vector<std::string> decision_states;
  for (const auto& [id, node] : graph.nodes()) {
    if (!graph.neighbors(id).empty()) decision_states.push_back(id);
  }
  double best = -std::numeric_limits<double>::infinity();
  std::map<std::string, std::string> choice;
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == decision_states.size()) {
      const auto u = oracle_bellman(graph, tables, choice, gamma, sweeps);
      best = std::max(best, u.at(graph.start_id()));
      return;
    }
    const std::string& state = decision_states[depth];
    for (const auto& nbr : graph.neighbors(state)) {
      choice[state] = nbr;
      self(self, depth + 1);
    }
    choice.erase(state);
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace leveldir::test

#endif  // LEVELDIR_TESTS_ORACLE_HPP
