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

#include <cmath>

#include "doctest.h"
#include "leveldir/rng.hpp"
#include "test_util.hpp"

using namespace leveldir;
using test::make_graph;
using test::make_state;

namespace {

PlayResult result_with(std::vector<std::string> level, std::size_t beaten,
                       std::optional<std::string> failed,
                       std::map<std::string, double> per_state_m,
                       double fail_fraction = 0.3) {
  PlayResult r;
  r.level_states = std::move(level);
  r.beaten.assign(r.level_states.begin(), r.level_states.begin() + beaten);
  r.failed_state = std::move(failed);
  if (r.failed_state) r.fail_fraction = fail_fraction;
  r.per_state_m = std::move(per_state_m);
  return r;
}

}  // namespace

TEST_CASE("init_mdp copies designer rewards and seeds probabilities") {
  auto graph = make_graph({make_state("a", 0.7), make_state("b", 0.2)},
                          {{"start", "a"}, {"a", "b"}});
  MdpTables tables = init_mdp(graph);
  CHECK(tables.reward.at("a") == 0.7);
  CHECK(tables.visit_count.at("a") == 1);
  CHECK(tables.reward.at("death") == -1.0);
  for (const auto& id : {"a", "b"}) {
    CHECK(tables.win_prob(id) == 0.99);
    CHECK(tables.death_prob(id) == doctest::Approx(0.01));
    CHECK(tables.target_wins.at(id) == 0);
    CHECK(tables.target_visits.at(id) == 0);
  }
}

TEST_CASE("malformed graphs fail construction naming the offender") {
  CHECK_THROWS_WITH_AS(
      make_graph({make_state("a")}, {{"start", "a"}, {"a", "ghost"}}),
      doctest::Contains("ghost"), GraphError);
  CHECK_THROWS_AS(LevelGraph({make_state("a")}, {}, "start", "death", 2.0),
                  GraphError);
  // Death may not act, start may not be re-entered.
  CHECK_THROWS_AS(make_graph({make_state("a")},
                             {{"start", "a"}, {"death", "a"}}),
                  GraphError);
  CHECK_THROWS_AS(make_graph({make_state("a")},
                             {{"start", "a"}, {"a", "start"}}),
                  GraphError);
  CHECK_THROWS_AS(make_graph({make_state("a")},
                             {{"start", "a"}, {"start", "a"}}),
                  GraphError);
}

TEST_CASE("augment_start_edges adds only missing non-link edges") {
  auto graph = make_graph(
      {make_state("s1"), make_state("s5"), make_state("ln", 0, {}, true)},
      {{"start", "s1"}, {"s1", "ln"}, {"ln", "s5"}});

  SUBCASE("already present") {
    auto r = result_with({"s1"}, 1, std::nullopt, {{"s1", 0.1}});
    CHECK(augment_start_edges(graph, r) == 0);
  }
  SUBCASE("new edge") {
    auto r = result_with({"s5"}, 1, std::nullopt, {{"s5", 0.1}});
    CHECK(augment_start_edges(graph, r) == 1);
    CHECK(graph.has_edge("start", "s5"));
  }
  SUBCASE("empty beaten list") {
    auto r = result_with({"s1"}, 0, "s1", {{"s1", 0.1}});
    CHECK(augment_start_edges(graph, r) == 0);
  }
  SUBCASE("link states never become start edges") {
    auto r = result_with({"s1", "ln", "s5"}, 3, std::nullopt,
                         {{"s1", 0.1}, {"ln", 0.1}, {"s5", 0.1}});
    augment_start_edges(graph, r);
    CHECK_FALSE(graph.has_edge("start", "ln"));
    CHECK(graph.has_edge("start", "s5"));
  }
  SUBCASE("idempotent") {
    auto r = result_with({"s5"}, 1, std::nullopt, {{"s5", 0.1}});
    CHECK(augment_start_edges(graph, r) == 1);
    CHECK(augment_start_edges(graph, r) == 0);
  }
}

TEST_CASE("update_rewards applies decay to visited states") {
  auto graph = make_graph({make_state("a", 0.5), make_state("b", 0.4)},
                          {{"start", "a"}, {"a", "b"}});
  MdpTables tables = init_mdp(graph);

  SUBCASE("single update, mode both") {
    auto r = result_with({"a"}, 1, std::nullopt, {{"a", 0.3}});
    update_rewards(tables, r, graph, RewardMode::kBoth);
    CHECK(tables.visit_count.at("a") == 2);
    CHECK(tables.reward.at("a") == doctest::Approx(0.4));
  }
  SUBCASE("repeated updates strictly decrease the reward") {
    auto r = result_with({"a"}, 1, std::nullopt, {{"a", 0.3}});
    update_rewards(tables, r, graph, RewardMode::kBoth);
    const double first = tables.reward.at("a");
    update_rewards(tables, r, graph, RewardMode::kBoth);
    CHECK(first == doctest::Approx(0.4));
    CHECK(tables.reward.at("a") == doctest::Approx(0.8 / 3.0));
    CHECK(tables.reward.at("a") < first);
  }
  SUBCASE("designer and player modes pick their numerator") {
    auto r = result_with({"a"}, 1, std::nullopt, {{"a", 0.3}});
    update_rewards(tables, r, graph, RewardMode::kDesigner);
    CHECK(tables.reward.at("a") == doctest::Approx(0.25));
    MdpTables fresh = init_mdp(graph);
    update_rewards(fresh, r, graph, RewardMode::kPlayer);
    CHECK(fresh.reward.at("a") == doctest::Approx(0.15));
  }
  SUBCASE("failed state also decays") {
    auto r = result_with({"a", "b"}, 1, "b", {{"a", 0.3}, {"b", 0.2}});
    update_rewards(tables, r, graph, RewardMode::kBoth);
    CHECK(tables.visit_count.at("b") == 2);
    CHECK(tables.reward.at("b") == doctest::Approx(0.3));
  }
  SUBCASE("unvisited states untouched") {
    auto r = result_with({"a"}, 1, std::nullopt, {{"a", 0.3}});
    update_rewards(tables, r, graph, RewardMode::kBoth);
    CHECK(tables.reward.at("b") == 0.4);
    CHECK(tables.visit_count.at("b") == 1);
  }
  SUBCASE("missing M(s) is a contract violation") {
    auto r = result_with({"a"}, 1, std::nullopt, {});
    CHECK_THROWS_AS(update_rewards(tables, r, graph, RewardMode::kBoth),
                    std::logic_error);
  }
}

TEST_CASE("update_rewards fans N(s) out across a MAP-Elites cell") {
  auto graph = make_graph({make_state("c1", 0.5, {0.5, 0.5}, false, "2,3"),
                           make_state("c2", 0.5, {0.5, 0.5}, false, "2,3"),
                           make_state("c3", 0.5, {0.5, 0.5}, false, "2,3"),
                           make_state("d1", 0.5, {0.5, 0.5}, false, "0,0")},
                          {{"start", "c1"},
                           {"c1", "c2"},
                           {"c2", "c3"},
                           {"c3", "d1"}});
  MdpTables tables = init_mdp(graph);
  auto r = result_with({"c1"}, 1, std::nullopt, {{"c1", 0.1}});
  update_rewards(tables, r, graph, RewardMode::kBoth);
  CHECK(tables.visit_count.at("c1") == 2);
  CHECK(tables.visit_count.at("c2") == 2);
  CHECK(tables.visit_count.at("c3") == 2);
  CHECK(tables.visit_count.at("d1") == 1);
  // Only the visited elite's reward is recomputed.
  CHECK(tables.reward.at("c1") == doctest::Approx(0.3));
  CHECK(tables.reward.at("c2") == 0.5);
}

TEST_CASE("update_transitions follows the win/visit counting rule") {
  auto graph = make_graph({make_state("a"), make_state("b"), make_state("c")},
                          {{"start", "a"}, {"a", "b"}, {"b", "c"}});
  MdpTables tables = init_mdp(graph);

  SUBCASE("fresh target, one win") {
    auto r = result_with({"a"}, 1, std::nullopt, {{"a", 0.0}});
    update_transitions(tables, r, graph);
    CHECK(tables.win_prob("a") == doctest::Approx(1.0));
  }
  SUBCASE("fresh target, one loss") {
    auto r = result_with({"a"}, 0, "a", {{"a", 0.0}});
    update_transitions(tables, r, graph);
    CHECK(tables.win_prob("a") == doctest::Approx(0.5));
    CHECK(tables.death_prob("a") == doctest::Approx(0.5));
  }
  SUBCASE("three wins of four visits") {
    MdpTables t = init_mdp(graph);
    auto win = result_with({"a"}, 1, std::nullopt, {{"a", 0.0}});
    auto loss = result_with({"a"}, 0, "a", {{"a", 0.0}});
    update_transitions(t, win, graph);
    update_transitions(t, win, graph);
    update_transitions(t, win, graph);
    update_transitions(t, loss, graph);
    CHECK(t.win_prob("a") == doctest::Approx(0.8));
    CHECK(t.death_prob("a") == doctest::Approx(0.2));
  }
  SUBCASE("only traversed edges count") {
    auto r = result_with({"a", "b", "c"}, 1, "b",
                         {{"a", 0.0}, {"b", 0.0}, {"c", 0.0}});
    update_transitions(tables, r, graph);
    CHECK(tables.target_visits.at("a") == 1);
    CHECK(tables.target_wins.at("a") == 1);
    CHECK(tables.target_visits.at("b") == 1);
    CHECK(tables.target_wins.at("b") == 0);
    CHECK(tables.target_visits.at("c") == 0);
    CHECK(tables.win_prob("c") == 0.99);
  }
}

TEST_CASE("random update sequences keep the tables consistent") {
  auto graph = make_graph(
      {make_state("a", 0.5, {0.5}), make_state("b", 0.8, {0.8}),
       make_state("c", 0.1, {0.1})},
      {{"start", "a"}, {"a", "b"}, {"b", "c"}, {"c", "a"}, {"a", "c"}}, 1.0);
  MdpTables tables = init_mdp(graph);
  SplitMix64 rng(7);

  std::map<std::string, int> prev_visits;
  for (int trial = 0; trial < 2000; ++trial) {
    // Random walk from start, random win/loss outcome per step.
    std::vector<std::string> level;
    std::string current = "start";
    const int length = 1 + static_cast<int>(uniform_index(rng, 4));
    for (int i = 0; i < length; ++i) {
      const auto& nbrs = graph.neighbors(current);
      if (nbrs.empty()) break;
      current = nbrs[uniform_index(rng, nbrs.size())];
      level.push_back(current);
    }
    PlayResult r;
    r.level_states = level;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const bool win = uniform_real(rng, 0.0, 1.0) < 0.7;
      r.per_state_m[level[i]] = uniform_real(rng, 0.0, 1.0);
      if (win) {
        r.beaten.push_back(level[i]);
      } else {
        r.failed_state = level[i];
        r.fail_fraction = uniform_real(rng, 0.0, 1.0);
        break;
      }
    }
    if (r.per_state_m.empty()) continue;

    update_rewards(tables, r, graph, RewardMode::kBoth);
    update_transitions(tables, r, graph);

    for (const auto& id : {"a", "b", "c"}) {
      const double p = tables.win_prob(id);
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
      // Exact normalization of the stored complement pair.
      CHECK(p + tables.death_prob(id) == 1.0);
      CHECK(tables.target_wins.at(id) <= tables.target_visits.at(id));
      CHECK(tables.visit_count.at(id) >= prev_visits[id]);
      prev_visits[id] = tables.visit_count.at(id);
    }
  }
}
