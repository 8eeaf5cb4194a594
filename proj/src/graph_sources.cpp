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

#include "leveldir/graph_sources.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "leveldir/rng.hpp"

namespace leveldir {

namespace {
constexpr const char* kStartId = "start";
constexpr const char* kDeathId = "death";
}  // namespace

TokenCorpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  TokenCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    for (char c : line) {
      const char lower = static_cast<char>(std::tolower(c));
      if (lower < 'a' || lower > 'k') {
        throw std::runtime_error(std::string("invalid corpus token '") + c +
                                 "' (expected a-k or A-K)");
      }
    }
    corpus.sequences.push_back(line);
  }
  return corpus;
}

bool token_has_enemy(char token) { return std::isupper(token) != 0; }

double token_density(char token) {
  const char lower = static_cast<char>(std::tolower(token));
  return (lower - 'a') / 10.0;
}

LevelGraph build_ngram_graph(const TokenCorpus& corpus, int n) {
  if (n < 2) throw std::invalid_argument("n-gram order must be >= 2");
  const int prior_len = n - 1;
  bool any_usable = false;
  std::set<std::string> priors;
  std::set<std::pair<std::string, std::string>> edges;
  std::set<std::string> initial_priors;
  for (const auto& seq : corpus.sequences) {
    if (static_cast<int>(seq.size()) < n) continue;
    any_usable = true;
    initial_priors.insert(seq.substr(0, prior_len));
    for (std::size_t i = 0; i + prior_len <= seq.size(); ++i) {
      priors.insert(seq.substr(i, prior_len));
    }
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      edges.emplace(seq.substr(i, prior_len), seq.substr(i + 1, prior_len));
    }
  }
  if (!any_usable) {
    throw std::runtime_error(
        "corpus has no sequence of at least n tokens (n = " +
        std::to_string(n) + ")");
  }

  std::vector<StateNode> states;
  std::vector<std::pair<std::string, std::string>> edge_list;
  for (const auto& prior : priors) {
    StateNode node;
    node.id = "p_" + prior;
    node.designer_reward =
        std::any_of(prior.begin(), prior.end(), token_has_enemy) ? 1.0 : 0.0;
    node.bcs = {token_density(prior.back())};
    node.playable_length = 1;
    states.push_back(std::move(node));
  }
  StateNode start;
  start.id = kStartId;
  StateNode death;
  death.id = kDeathId;
  death.designer_reward = -1.0;
  states.push_back(std::move(start));
  states.push_back(std::move(death));

  for (const auto& [src, dst] : edges) {
    edge_list.emplace_back("p_" + src, "p_" + dst);
  }
  for (const auto& prior : initial_priors) {
    edge_list.emplace_back(kStartId, "p_" + prior);
  }
  return LevelGraph(std::move(states), std::move(edge_list), kStartId,
                    kDeathId, /*max_bc=*/1.0);
}

namespace {

std::string cell_name(int x, int y) {
  return std::to_string(x) + "," + std::to_string(y);
}

std::string segment_id(int x, int y, int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "s_%02d_%02d_%d", x, y, k);
  return buf;
}

struct Elite {
  std::string id;
  double density;
  double leniency;
  int cell_x;
  int cell_y;
};

LevelGraph generate_once(const SegmentGraphParams& params, std::uint64_t seed,
                         SegmentGraphStats* stats) {
  SplitMix64 rng(seed);
  const int g = params.grid_resolution;
  if (g < 1 || g > 99) {
    throw std::invalid_argument("grid_resolution must be in [1, 99]");
  }
  if (params.elites_per_cell < 1) {
    throw std::invalid_argument("elites_per_cell must be positive");
  }

  std::vector<Elite> elites;
  elites.reserve(static_cast<std::size_t>(g) * g * params.elites_per_cell);
  for (int x = 0; x < g; ++x) {
    for (int y = 0; y < g; ++y) {
      for (int k = 0; k < params.elites_per_cell; ++k) {
        Elite e;
        e.id = segment_id(x, y, k);
        e.density = (x + uniform_real(rng, 0.0, 1.0)) / g;
        e.leniency = (y + uniform_real(rng, 0.0, 1.0)) / g;
        e.cell_x = x;
        e.cell_y = y;
        elites.push_back(std::move(e));
      }
    }
  }

  // Candidate edges between BC neighbors; binning keeps this near-linear.
  std::map<std::pair<int, int>, std::vector<int>> bins;
  for (std::size_t i = 0; i < elites.size(); ++i) {
    bins[{elites[i].cell_x, elites[i].cell_y}].push_back(
        static_cast<int>(i));
  }
  const int reach = static_cast<int>(std::ceil(params.neighbor_radius * g)) + 1;
  const double radius_sq = params.neighbor_radius * params.neighbor_radius;
  std::vector<std::pair<std::string, std::string>> segment_edges;
  for (std::size_t i = 0; i < elites.size(); ++i) {
    const Elite& a = elites[i];
    for (int dx = -reach; dx <= reach; ++dx) {
      for (int dy = -reach; dy <= reach; ++dy) {
        auto it = bins.find({a.cell_x + dx, a.cell_y + dy});
        if (it == bins.end()) continue;
        for (int j : it->second) {
          if (static_cast<std::size_t>(j) == i) continue;
          const Elite& b = elites[j];
          const double dd = a.density - b.density;
          const double dl = a.leniency - b.leniency;
          if (dd * dd + dl * dl <= radius_sq) {
            segment_edges.emplace_back(a.id, b.id);
          }
        }
      }
    }
  }
  std::sort(segment_edges.begin(), segment_edges.end());

  std::vector<StateNode> states;
  std::map<std::string, const Elite*> by_id;
  for (const auto& e : elites) {
    StateNode node;
    node.id = e.id;
    node.bcs = {e.density, e.leniency};
    node.designer_reward = (e.density + e.leniency) / 2.0;
    node.cell_id = cell_name(e.cell_x, e.cell_y);
    states.push_back(std::move(node));
    by_id[e.id] = &e;
  }

  if (stats != nullptr) {
    stats->states_without_links = static_cast<int>(elites.size());
    stats->mean_out_degree_without_links =
        elites.empty() ? 0.0
                       : static_cast<double>(segment_edges.size()) /
                             static_cast<double>(elites.size());
  }

  // Route a share of edges through inserted linking states.
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [src, dst] : segment_edges) {
    if (uniform_real(rng, 0.0, 1.0) < params.link_probability) {
      const Elite& a = *by_id.at(src);
      const Elite& b = *by_id.at(dst);
      StateNode link;
      link.id = "l_" + src + "__" + dst;
      link.is_link = true;
      link.bcs = {(a.density + b.density) / 2.0,
                  (a.leniency + b.leniency) / 2.0};
      link.designer_reward =
          ((a.density + a.leniency) / 2.0 + (b.density + b.leniency) / 2.0) /
          2.0;
      edges.emplace_back(src, link.id);
      edges.emplace_back(link.id, dst);
      states.push_back(std::move(link));
    } else {
      edges.emplace_back(src, dst);
    }
  }

  // Start reaches the states whose designer reward is closest to the anchor.
  std::vector<const StateNode*> by_reward;
  for (const auto& node : states) {
    if (!node.is_link) by_reward.push_back(&node);
  }
  const double anchor = params.start_anchor;
  std::sort(by_reward.begin(), by_reward.end(),
            [anchor](const StateNode* a, const StateNode* b) {
              const double da = std::abs(a->designer_reward - anchor);
              const double db = std::abs(b->designer_reward - anchor);
              if (da != db) return da < db;
              return a->id < b->id;
            });
  const int start_edges =
      std::min<int>(params.start_edge_count,
                    static_cast<int>(by_reward.size()));
  for (int i = 0; i < start_edges; ++i) {
    edges.emplace_back(kStartId, by_reward[i]->id);
  }

  if (stats != nullptr) {
    const int total_states = static_cast<int>(states.size());
    stats->states_with_links = total_states;
    stats->mean_out_degree_with_links =
        total_states == 0 ? 0.0
                          : static_cast<double>(edges.size() - start_edges) /
                                static_cast<double>(total_states);
    std::map<std::string, int> degree;
    for (const auto& [src, dst] : edges) {
      if (src != kStartId) ++degree[src];
    }
    stats->max_out_degree = 0;
    for (const auto& [id, d] : degree) {
      stats->max_out_degree = std::max(stats->max_out_degree, d);
    }
  }

  StateNode start;
  start.id = kStartId;
  StateNode death;
  death.id = kDeathId;
  death.designer_reward = -1.0;
  states.push_back(std::move(start));
  states.push_back(std::move(death));

  return LevelGraph(std::move(states), std::move(edges), kStartId, kDeathId,
                    /*max_bc=*/2.0);
}

}  // namespace

bool fully_reachable(const LevelGraph& graph) {
  std::set<std::string> seen{graph.start_id()};
  std::deque<std::string> frontier{graph.start_id()};
  while (!frontier.empty()) {
    const std::string current = frontier.front();
    frontier.pop_front();
    for (const auto& nbr : graph.neighbors(current)) {
      if (seen.insert(nbr).second) frontier.push_back(nbr);
    }
  }
  for (const auto& [id, node] : graph.nodes()) {
    if (id == graph.death_id()) continue;  // reached only by failing
    if (!seen.count(id)) return false;
  }
  return true;
}

LevelGraph generate_segment_graph(const SegmentGraphParams& params,
                                  SegmentGraphStats* stats) {
  for (int attempt = 0; attempt <= params.max_retries; ++attempt) {
    SegmentGraphStats local;
    LevelGraph graph =
        generate_once(params, params.rng_seed + attempt, &local);
    if (fully_reachable(graph)) {
      local.retries_used = attempt;
      if (stats != nullptr) *stats = local;
      return graph;
    }
  }
  throw std::runtime_error(
      "segment graph generation stayed disconnected after " +
      std::to_string(params.max_retries + 1) + " attempts");
}

}  // namespace leveldir
