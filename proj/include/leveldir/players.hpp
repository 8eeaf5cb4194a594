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

#ifndef LEVELDIR_PLAYERS_HPP
#define LEVELDIR_PLAYERS_HPP

#include <string>
#include <vector>

#include "leveldir/graph.hpp"
#include "leveldir/mdp.hpp"
#include "leveldir/rng.hpp"

namespace leveldir {

// Player-reward formula M(s), evaluated on a state's BCs.
struct RewardFormula {
  enum class Kind { kSumOverMax, kOneMinusSumOverMax, kComponent };

  Kind kind = Kind::kSumOverMax;
  int component = 0;  // BC index for kComponent (0 = density, 1 = leniency)

  double evaluate(const StateNode& node, double max_bc) const;
};

// Rule-based player persona: what it always beats, where it fails, and the
// reward it reports.
struct PlayerProxy {
  std::string name;
  double win_threshold_factor = 0.5;  // beats states with sum(BC) below
                                      // factor * max_bc
  double fail_fraction_low = 0.0;
  double fail_fraction_high = 1.0;
  RewardFormula reward;
  // Chance of beating an above-threshold state. Kept at 0: hard states
  // always fail.
  double hard_state_win_prob = 0.0;
};

// The six personas of the reference table, in a fixed order.
std::vector<PlayerProxy> preset_proxies();

// Loads custom personas from a JSON file (array of objects mirroring the
// PlayerProxy fields).
std::vector<PlayerProxy> load_proxies(const std::string& path);

const PlayerProxy& find_proxy(const std::vector<PlayerProxy>& proxies,
                              const std::string& name);

// Plays the level in order. Link states are always beaten; the first
// above-threshold segment fails with a fraction drawn from the proxy's
// range and ends the attempt. M(s) is recorded for every visited state.
PlayResult play_level(const PlayerProxy& proxy,
                      const std::vector<std::string>& level,
                      const LevelGraph& graph, SplitMix64& rng);

// (beaten non-link states + fail fraction) / (non-link states in the level).
double percent_complete(const PlayResult& result,
                        const std::vector<std::string>& level,
                        const LevelGraph& graph);

// Level-level reward: mean of M(s) over all non-link states in the level,
// where only beaten states contribute their M and everything else counts
// as 0.
double level_reward(const PlayResult& result,
                    const std::vector<std::string>& level,
                    const LevelGraph& graph);

}  // namespace leveldir

#endif  // LEVELDIR_PLAYERS_HPP
