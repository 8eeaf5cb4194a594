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

#ifndef LEVELDIR_GRAPH_HPP
#define LEVELDIR_GRAPH_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace leveldir {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One level segment (or slice prior, or linking segment).
struct StateNode {
  std::string id;
  double designer_reward = 0.0;
  std::vector<double> bcs;  // behavioral characteristics, each in [0,1]
  bool is_link = false;
  std::optional<std::string> cell_id;  // "<x>,<y>" for grid-backed segments
  int playable_length = 1;

  double bc_sum() const {
    double s = 0.0;
    for (double b : bcs) s += b;
    return s;
  }
};

// Directed graph of level segments with distinguished start and death
// states. Adjacency lists are kept sorted so iteration order is stable.
class LevelGraph {
 public:
  LevelGraph(std::vector<StateNode> states,
             std::vector<std::pair<std::string, std::string>> edges,
             std::string start_id, std::string death_id, double max_bc);

  const std::string& start_id() const { return start_id_; }
  const std::string& death_id() const { return death_id_; }
  double max_bc() const { return max_bc_; }

  bool has_state(const std::string& id) const { return nodes_.count(id) != 0; }
  const StateNode& state(const std::string& id) const;

  // Sorted state ids / nodes.
  const std::map<std::string, StateNode>& nodes() const { return nodes_; }
  std::size_t state_count() const { return nodes_.size(); }

  // Sorted successor ids of `id`.
  const std::vector<std::string>& neighbors(const std::string& id) const;
  std::size_t out_degree(const std::string& id) const {
    return neighbors(id).size();
  }

  bool has_edge(const std::string& src, const std::string& dst) const;
  // Returns true if the edge was added, false if already present.
  bool add_edge(const std::string& src, const std::string& dst);
  // Returns true if the edge existed and was removed.
  bool remove_edge(const std::string& src, const std::string& dst);

  std::size_t edge_count() const { return edge_count_; }
  std::vector<std::pair<std::string, std::string>> edges() const;

  // Non-link states sharing a MAP-Elites cell, sorted by id.
  const std::vector<std::string>& states_in_cell(const std::string& cell) const;

 private:
  void check_invariants() const;

  std::map<std::string, StateNode> nodes_;
  std::map<std::string, std::vector<std::string>> adjacency_;
  std::map<std::string, std::vector<std::string>> cells_;
  std::string start_id_;
  std::string death_id_;
  double max_bc_ = 0.0;
  std::size_t edge_count_ = 0;
};

}  // namespace leveldir

#endif  // LEVELDIR_GRAPH_HPP
