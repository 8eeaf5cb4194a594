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

#include "leveldir/graph.hpp"

#include <algorithm>

namespace leveldir {

LevelGraph::LevelGraph(std::vector<StateNode> states,
                       std::vector<std::pair<std::string, std::string>> edges,
                       std::string start_id, std::string death_id,
                       double max_bc)
    : start_id_(std::move(start_id)),
      death_id_(std::move(death_id)),
      max_bc_(max_bc) {
  for (auto& node : states) {
    const std::string id = node.id;
    if (!nodes_.emplace(id, std::move(node)).second) {
      throw GraphError("duplicate state id: " + id);
    }
  }
  if (!nodes_.count(start_id_)) {
    throw GraphError("missing start state: " + start_id_);
  }
  if (!nodes_.count(death_id_)) {
    throw GraphError("missing death state: " + death_id_);
  }
  for (auto& [id, node] : nodes_) {
    adjacency_[id];  // ensure every state has an adjacency entry
    if (!node.is_link && node.cell_id) {
      cells_[*node.cell_id].push_back(id);
    }
  }
  for (const auto& [src, dst] : edges) {
    if (!nodes_.count(src)) throw GraphError("edge source missing: " + src);
    if (!nodes_.count(dst)) throw GraphError("edge target missing: " + dst);
    if (dst == start_id_) {
      throw GraphError("edge targets the start state from: " + src);
    }
    if (src == death_id_) {
      throw GraphError("edge originates from the death state to: " + dst);
    }
    auto& out = adjacency_[src];
    if (std::find(out.begin(), out.end(), dst) != out.end()) {
      throw GraphError("duplicate edge: " + src + " -> " + dst);
    }
    out.push_back(dst);
    ++edge_count_;
  }
  for (auto& [id, out] : adjacency_) std::sort(out.begin(), out.end());
  check_invariants();
}

void LevelGraph::check_invariants() const {
  if (!adjacency_.at(death_id_).empty()) {
    throw GraphError("death state has outgoing edges: " + death_id_);
  }
  if (adjacency_.at(start_id_).empty()) {
    throw GraphError("start state has no outgoing edges: " + start_id_);
  }
  if (nodes_.at(death_id_).designer_reward != -1.0) {
    throw GraphError("death state must carry designer reward -1: " + death_id_);
  }
  if (nodes_.at(start_id_).designer_reward != 0.0) {
    throw GraphError("start state must carry designer reward 0: " + start_id_);
  }
}

const StateNode& LevelGraph::state(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GraphError("unknown state: " + id);
  return it->second;
}

const std::vector<std::string>& LevelGraph::neighbors(
    const std::string& id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw GraphError("unknown state: " + id);
  return it->second;
}

bool LevelGraph::has_edge(const std::string& src,
                          const std::string& dst) const {
  const auto& out = neighbors(src);
  return std::binary_search(out.begin(), out.end(), dst);
}

bool LevelGraph::add_edge(const std::string& src, const std::string& dst) {
  if (!nodes_.count(src)) throw GraphError("edge source missing: " + src);
  if (!nodes_.count(dst)) throw GraphError("edge target missing: " + dst);
  if (dst == start_id_) throw GraphError("edge targets the start state");
  if (src == death_id_) throw GraphError("edge originates from death");
  auto& out = adjacency_.at(src);
  auto it = std::lower_bound(out.begin(), out.end(), dst);
  if (it != out.end() && *it == dst) return false;
  out.insert(it, dst);
  ++edge_count_;
  return true;
}

bool LevelGraph::remove_edge(const std::string& src, const std::string& dst) {
  auto& out = adjacency_.at(src);
  auto it = std::lower_bound(out.begin(), out.end(), dst);
  if (it == out.end() || *it != dst) return false;
  out.erase(it);
  --edge_count_;
  return true;
}

std::vector<std::pair<std::string, std::string>> LevelGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> result;
  result.reserve(edge_count_);
  for (const auto& [src, out] : adjacency_) {
    for (const auto& dst : out) result.emplace_back(src, dst);
  }
  return result;
}

const std::vector<std::string>& LevelGraph::states_in_cell(
    const std::string& cell) const {
  static const std::vector<std::string> kEmpty;
  auto it = cells_.find(cell);
  return it == cells_.end() ? kEmpty : it->second;
}

}  // namespace leveldir
