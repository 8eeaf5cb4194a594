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

#include "leveldir/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace leveldir {

namespace {

using Json = nlohmann::json;  // object keys are kept sorted

Json state_to_json(const StateNode& node) {
  Json j;
  j["id"] = node.id;
  j["designer_reward"] = node.designer_reward;
  j["bcs"] = node.bcs;
  j["is_link"] = node.is_link;
  if (node.cell_id) j["cell_id"] = *node.cell_id;
  j["playable_length"] = node.playable_length;
  return j;
}

StateNode state_from_json(const Json& j) {
  StateNode node;
  node.id = j.at("id").get<std::string>();
  node.designer_reward = j.at("designer_reward").get<double>();
  node.bcs = j.at("bcs").get<std::vector<double>>();
  node.is_link = j.at("is_link").get<bool>();
  if (j.contains("cell_id")) node.cell_id = j.at("cell_id").get<std::string>();
  node.playable_length = j.at("playable_length").get<int>();
  return node;
}

struct RawGraph {
  std::vector<StateNode> states;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string start_id;
  std::string death_id;
  double max_bc = 0.0;
};

RawGraph parse_raw(const std::string& text) {
  Json doc = Json::parse(text);
  RawGraph raw;
  raw.start_id = doc.at("start").get<std::string>();
  raw.death_id = doc.at("death").get<std::string>();
  raw.max_bc = doc.at("max_bc").get<double>();
  for (const auto& item : doc.at("states")) {
    raw.states.push_back(state_from_json(item));
  }
  for (const auto& item : doc.at("edges")) {
    raw.edges.emplace_back(item.at(0).get<std::string>(),
                           item.at(1).get<std::string>());
  }
  return raw;
}

}  // namespace

std::string graph_to_json(const LevelGraph& graph) {
  Json doc;
  doc["start"] = graph.start_id();
  doc["death"] = graph.death_id();
  doc["max_bc"] = graph.max_bc();
  Json states = Json::array();
  for (const auto& [id, node] : graph.nodes()) {
    states.push_back(state_to_json(node));
  }
  doc["states"] = std::move(states);
  Json edges = Json::array();
  for (const auto& [src, dst] : graph.edges()) {
    edges.push_back(Json::array({src, dst}));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

LevelGraph graph_from_json(const std::string& text) {
  RawGraph raw = parse_raw(text);
  return LevelGraph(std::move(raw.states), std::move(raw.edges), raw.start_id,
                    raw.death_id, raw.max_bc);
}

void save_graph(const LevelGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << graph_to_json(graph);
}

LevelGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return graph_from_json(text);
  } catch (const Json::exception& e) {
    throw std::runtime_error("graph file " + path + ": " + e.what());
  }
}

std::vector<InvariantCheck> validate_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  RawGraph raw = parse_raw(text);

  std::vector<InvariantCheck> checks;
  auto add = [&checks](std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  };

  std::map<std::string, const StateNode*> by_id;
  std::string duplicate;
  for (const auto& node : raw.states) {
    if (!by_id.emplace(node.id, &node).second) duplicate = node.id;
  }
  add("unique state ids", duplicate.empty(), duplicate);
  add("start state exists", by_id.count(raw.start_id) != 0, raw.start_id);
  add("death state exists", by_id.count(raw.death_id) != 0, raw.death_id);

  std::string dangling;
  std::string into_start;
  std::string out_of_death;
  std::string duplicate_edge;
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, int> out_degree;
  for (const auto& [src, dst] : raw.edges) {
    if (!by_id.count(src)) dangling = src;
    if (!by_id.count(dst)) dangling = dst;
    if (dst == raw.start_id) into_start = src + " -> " + dst;
    if (src == raw.death_id) out_of_death = src + " -> " + dst;
    if (!seen.emplace(src, dst).second) duplicate_edge = src + " -> " + dst;
    ++out_degree[src];
  }
  add("edge endpoints exist", dangling.empty(), dangling);
  add("no edge targets start", into_start.empty(), into_start);
  add("no edge leaves death", out_of_death.empty(), out_of_death);
  add("no duplicate edges", duplicate_edge.empty(), duplicate_edge);
  add("death has no outgoing edges", out_degree[raw.death_id] == 0,
      raw.death_id);
  add("start has outgoing edges", out_degree[raw.start_id] >= 1,
      raw.start_id);

  auto death_it = by_id.find(raw.death_id);
  add("death designer reward is -1",
      death_it != by_id.end() && death_it->second->designer_reward == -1.0,
      raw.death_id);
  auto start_it = by_id.find(raw.start_id);
  add("start designer reward is 0",
      start_it != by_id.end() && start_it->second->designer_reward == 0.0,
      raw.start_id);

  std::string bad_bc;
  std::string bad_reward;
  for (const auto& node : raw.states) {
    for (double bc : node.bcs) {
      if (bc < 0.0 || bc > 1.0) bad_bc = node.id;
    }
    if (node.id == raw.start_id || node.id == raw.death_id) continue;
    if (node.designer_reward < 0.0 || node.designer_reward > raw.max_bc) {
      bad_reward = node.id;
    }
  }
  add("bcs within [0,1]", bad_bc.empty(), bad_bc);
  add("designer rewards within [0, max_bc]", bad_reward.empty(), bad_reward);

  std::string link_with_cell;
  for (const auto& node : raw.states) {
    if (node.is_link && node.cell_id) link_with_cell = node.id;
  }
  add("link states carry no cell id", link_with_cell.empty(), link_with_cell);

  return checks;
}

}  // namespace leveldir
