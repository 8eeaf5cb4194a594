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

#ifndef LEVELDIR_GRAPH_SOURCES_HPP
#define LEVELDIR_GRAPH_SOURCES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "leveldir/graph.hpp"

namespace leveldir {

// Token corpus: one sequence per line, one token per character.
//
// Token encoding: lowercase 'a'..'k' are plain slices with solid-tile
// density (c - 'a') / 10; uppercase 'A'..'K' are the same densities with an
// enemy present.
struct TokenCorpus {
  std::vector<std::string> sequences;
};

TokenCorpus load_corpus(const std::string& path);

bool token_has_enemy(char token);
double token_density(char token);

// Builds the n-gram MDP graph: states are (n-1)-token priors, edges follow
// observed n-grams, designer reward is 1 when the prior contains an enemy.
LevelGraph build_ngram_graph(const TokenCorpus& corpus, int n);

// Synthetic stand-in for a quality-diversity segment archive: non-link
// states tile a 2-D BC grid (density, leniency), edges connect BC
// neighbors, and a share of edges route through inserted linking states.
struct SegmentGraphParams {
  int grid_resolution = 16;   // cells per BC axis
  int elites_per_cell = 4;
  double link_probability = 0.9;
  double neighbor_radius = 0.056;
  int start_edge_count = 8;   // number of start edges
  double start_anchor = 0.0;  // start connects to states with R_D nearest this
  std::uint64_t rng_seed = 0;
  int max_retries = 32;       // regenerations allowed on a disconnected draw
};

struct SegmentGraphStats {
  int states_with_links = 0;
  int states_without_links = 0;
  double mean_out_degree_with_links = 0.0;
  double mean_out_degree_without_links = 0.0;
  int max_out_degree = 0;
  int retries_used = 0;
};

LevelGraph generate_segment_graph(const SegmentGraphParams& params,
                                  SegmentGraphStats* stats = nullptr);

// True when breadth-first search from start reaches every state.
bool fully_reachable(const LevelGraph& graph);

}  // namespace leveldir

#endif  // LEVELDIR_GRAPH_SOURCES_HPP
