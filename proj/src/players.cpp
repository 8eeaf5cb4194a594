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

#include "leveldir/players.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace leveldir {

double RewardFormula::evaluate(const StateNode& node, double max_bc) const {
  switch (kind) {
    case Kind::kSumOverMax:
      return node.bc_sum() / max_bc;
    case Kind::kOneMinusSumOverMax:
      return 1.0 - node.bc_sum() / max_bc;
    case Kind::kComponent:
      if (component < 0 || component >= static_cast<int>(node.bcs.size())) {
        throw std::out_of_range("reward formula BC component " +
                                std::to_string(component) +
                                " out of range for state: " + node.id);
      }
      return node.bcs[component];
  }
  return 0.0;
}

std::vector<PlayerProxy> preset_proxies() {
  using Kind = RewardFormula::Kind;
  auto proxy = [](std::string name, double threshold, double lo, double hi,
                  Kind kind, int component = 0) {
    PlayerProxy p;
    p.name = std::move(name);
    p.win_threshold_factor = threshold;
    p.fail_fraction_low = lo;
    p.fail_fraction_high = hi;
    p.reward.kind = kind;
    p.reward.component = component;
    return p;
  };
  return {
      proxy("Bad Player Likes Hard Levels", 0.25, 0.25, 0.40,
            Kind::kSumOverMax),
      proxy("Bad Player Likes Easy Levels", 0.25, 0.25, 0.40,
            Kind::kOneMinusSumOverMax),
      proxy("Mediocre Player Likes High Density", 0.50, 0.50, 0.70,
            Kind::kComponent, 0),
      proxy("Mediocre Player Likes High Leniency", 0.50, 0.50, 0.70,
            Kind::kComponent, 1),
      proxy("Good Player Likes Hard Levels", 0.75, 0.75, 0.95,
            Kind::kSumOverMax),
      proxy("Good Player Likes Easy Levels", 0.75, 0.75, 0.95,
            Kind::kOneMinusSumOverMax),
  };
}

std::vector<PlayerProxy> load_proxies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open proxy file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<PlayerProxy> proxies;
  for (const auto& item : doc) {
    PlayerProxy p;
    p.name = item.at("name").get<std::string>();
    p.win_threshold_factor = item.at("win_threshold_factor").get<double>();
    const auto& range = item.at("fail_fraction_range");
    p.fail_fraction_low = range.at(0).get<double>();
    p.fail_fraction_high = range.at(1).get<double>();
    if (!(p.fail_fraction_low < p.fail_fraction_high)) {
      throw std::runtime_error("proxy " + p.name +
                               ": fail_fraction_range must be increasing");
    }
    if (p.win_threshold_factor <= 0.0 || p.win_threshold_factor >= 1.0) {
      throw std::runtime_error("proxy " + p.name +
                               ": win_threshold_factor must be in (0,1)");
    }
    const auto& formula = item.at("reward_formula");
    if (formula.is_string()) {
      const std::string name = formula.get<std::string>();
      if (name == "sum_bcs_over_max") {
        p.reward.kind = RewardFormula::Kind::kSumOverMax;
      } else if (name == "one_minus_sum_bcs_over_max") {
        p.reward.kind = RewardFormula::Kind::kOneMinusSumOverMax;
      } else {
        throw std::runtime_error("proxy " + p.name +
                                 ": unknown reward formula " + name);
      }
    } else {
      p.reward.kind = RewardFormula::Kind::kComponent;
      p.reward.component = formula.at("bc_component").get<int>();
    }
    proxies.push_back(std::move(p));
  }
  return proxies;
}

const PlayerProxy& find_proxy(const std::vector<PlayerProxy>& proxies,
                              const std::string& name) {
  for (const auto& proxy : proxies) {
    if (proxy.name == name) return proxy;
  }
  throw std::runtime_error("unknown player proxy: " + name);
}

PlayResult play_level(const PlayerProxy& proxy,
                      const std::vector<std::string>& level,
                      const LevelGraph& graph, SplitMix64& rng) {
  if (level.empty()) throw std::invalid_argument("level must be nonempty");
  PlayResult result;
  result.level_states = level;
  const double threshold = proxy.win_threshold_factor * graph.max_bc();
  for (const auto& id : level) {
    const StateNode& node = graph.state(id);
    result.per_state_m[id] = proxy.reward.evaluate(node, graph.max_bc());
    const bool wins = node.is_link || node.bc_sum() < threshold;
    if (wins) {
      result.beaten.push_back(id);
    } else {
      result.failed_state = id;
      result.fail_fraction =
          uniform_real(rng, proxy.fail_fraction_low, proxy.fail_fraction_high);
      break;
    }
  }
  return result;
}

namespace {

int non_link_count(const std::vector<std::string>& level,
                   const LevelGraph& graph) {
  int count = 0;
  for (const auto& id : level) {
    if (!graph.state(id).is_link) ++count;
  }
  return count;
}

}  // namespace

double percent_complete(const PlayResult& result,
                        const std::vector<std::string>& level,
                        const LevelGraph& graph) {
  const int total = non_link_count(level, graph);
  if (total == 0) return 1.0;
  double cleared = 0.0;
  for (const auto& id : result.beaten) {
    if (!graph.state(id).is_link) cleared += 1.0;
  }
  if (result.failed_state) cleared += result.fail_fraction;
  return cleared / total;
}

double level_reward(const PlayResult& result,
                    const std::vector<std::string>& level,
                    const LevelGraph& graph) {
  const int total = non_link_count(level, graph);
  if (total == 0) return 0.0;
  double sum = 0.0;
  for (const auto& id : result.beaten) {
    if (graph.state(id).is_link) continue;
    sum += result.per_state_m.at(id);
  }
  return sum / total;
}

}  // namespace leveldir
