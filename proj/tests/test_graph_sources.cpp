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

#include <cstdio>
#include <fstream>
#include <set>

#include "doctest.h"
#include "leveldir/graph_io.hpp"
#include "leveldir/rng.hpp"
#include "test_util.hpp"

using namespace leveldir;

TEST_CASE("n-gram graph from a single sequence") {
  TokenCorpus corpus{{"abcd"}};
  LevelGraph graph = build_ngram_graph(corpus, 3);
  CHECK(graph.has_state("p_ab"));
  CHECK(graph.has_state("p_bc"));
  CHECK(graph.has_state("p_cd"));
  CHECK(graph.has_edge("p_ab", "p_bc"));
  CHECK(graph.has_edge("p_bc", "p_cd"));
  CHECK(graph.has_edge("start", "p_ab"));
  CHECK(graph.state_count() == 5);  // three priors + start + death
  CHECK(graph.max_bc() == 1.0);
  // density of the newest slice
  CHECK(graph.state("p_cd").bcs == std::vector<double>{0.3});
}

TEST_CASE("enemy tokens set the designer reward") {
  TokenCorpus corpus{{"aBca"}};
  LevelGraph graph = build_ngram_graph(corpus, 3);
  CHECK(graph.state("p_aB").designer_reward == 1.0);
  CHECK(graph.state("p_Bc").designer_reward == 1.0);
  CHECK(graph.state("p_ca").designer_reward == 0.0);
}

TEST_CASE("n-gram construction rejects unusable corpora") {
  CHECK_THROWS(build_ngram_graph(TokenCorpus{}, 3));
  CHECK_THROWS(build_ngram_graph(TokenCorpus{{"ab"}}, 3));
  CHECK_THROWS(build_ngram_graph(TokenCorpus{{"abcd"}}, 1));
}

TEST_CASE("n-gram soundness: edges match corpus n-grams exactly") {
  // Random corpus; every edge must be witnessed by an n-gram and vice versa.
  SplitMix64 rng(21);
  TokenCorpus corpus;
  for (int seq = 0; seq < 6; ++seq) {
    std::string line;
    for (int i = 0; i < 40; ++i) {
      line.push_back(static_cast<char>('a' + uniform_index(rng, 5)));
    }
    corpus.sequences.push_back(line);
  }
  const int n = 3;
  LevelGraph graph = build_ngram_graph(corpus, n);

  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& seq : corpus.sequences) {
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      expected.emplace("p_" + seq.substr(i, n - 1),
                       "p_" + seq.substr(i + 1, n - 1));
    }
  }
  std::set<std::pair<std::string, std::string>> actual;
  for (const auto& [src, dst] : graph.edges()) {
    if (src == graph.start_id()) continue;
    actual.emplace(src, dst);
  }
  CHECK(actual == expected);
}

TEST_CASE("corpus loader validates tokens") {
  const std::string path = "test_corpus.txt";
  {
    std::ofstream out(path);
    out << "abcK\n\nkahb\n";
  }
  TokenCorpus corpus = load_corpus(path);
  CHECK(corpus.sequences.size() == 2);  // blank lines skipped
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "abz\n";
  }
  CHECK_THROWS(load_corpus(path));
  std::remove(path.c_str());
  CHECK(token_density('a') == 0.0);
  CHECK(token_density('k') == 1.0);
  CHECK(token_density('F') == doctest::Approx(0.5));
  CHECK(token_has_enemy('F'));
  CHECK_FALSE(token_has_enemy('f'));
}

TEST_CASE("segment graph generator") {
  SegmentGraphParams params;
  params.grid_resolution = 6;
  params.elites_per_cell = 3;
  params.neighbor_radius = 0.16;
  params.link_probability = 0.5;
  params.rng_seed = 4;

  SegmentGraphStats stats;
  LevelGraph graph = generate_segment_graph(params, &stats);

  SUBCASE("elite count per cell is exact") {
    for (int x = 0; x < 6; ++x) {
      for (int y = 0; y < 6; ++y) {
        const auto cell =
            std::to_string(x) + "," + std::to_string(y);
        CHECK(graph.states_in_cell(cell).size() == 3);
      }
    }
    CHECK(stats.states_without_links == 6 * 6 * 3);
  }
  SUBCASE("everything is reachable from start") {
    CHECK(fully_reachable(graph));
  }
  SUBCASE("link states average their endpoints") {
    int checked = 0;
    for (const auto& [id, node] : graph.nodes()) {
      if (!node.is_link) continue;
      CHECK_FALSE(node.cell_id.has_value());
      // id encodes "l_<src>__<dst>"
      const auto sep = id.find("__");
      const std::string src = id.substr(2, sep - 2);
      const std::string dst = id.substr(sep + 2);
      const double expected = (graph.state(src).designer_reward +
                               graph.state(dst).designer_reward) /
                              2.0;
      CHECK(node.designer_reward == doctest::Approx(expected));
      ++checked;
    }
    CHECK(checked > 0);
  }
  SUBCASE("same params and seed reproduce the graph") {
    LevelGraph again = generate_segment_graph(params);
    CHECK(graph_to_json(graph) == graph_to_json(again));
  }
  SUBCASE("designer reward is the BC mean") {
    const auto& cell = graph.states_in_cell("2,3");
    REQUIRE_FALSE(cell.empty());
    const StateNode& node = graph.state(cell.front());
    CHECK(node.designer_reward ==
          doctest::Approx((node.bcs[0] + node.bcs[1]) / 2.0));
  }
}

TEST_CASE("graph JSON round trip") {
  SegmentGraphParams params;
  params.grid_resolution = 4;
  params.elites_per_cell = 2;
  params.neighbor_radius = 0.3;
  params.rng_seed = 8;
  LevelGraph graph = generate_segment_graph(params);

  const std::string path = "test_graph.json";
  save_graph(graph, path);
  LevelGraph loaded = load_graph(path);
  CHECK(graph_to_json(loaded) == graph_to_json(graph));

  // Byte-identical re-save of a loaded graph.
  const std::string resaved = "test_graph2.json";
  save_graph(loaded, resaved);
  std::ifstream a(path), b(resaved);
  std::string text_a((std::istreambuf_iterator<char>(a)),
                     std::istreambuf_iterator<char>());
  std::string text_b((std::istreambuf_iterator<char>(b)),
                     std::istreambuf_iterator<char>());
  CHECK(text_a == text_b);
  std::remove(path.c_str());
  std::remove(resaved.c_str());
}

TEST_CASE("loading names the offending entity") {
  const std::string path = "test_bad_graph.json";
  {
    std::ofstream out(path);
    out << R"({"start": "start", "death": "death", "max_bc": 2.0,
      "states": [
        {"id": "start", "designer_reward": 0.0, "bcs": [], "is_link": false,
         "playable_length": 1},
        {"id": "death", "designer_reward": -1.0, "bcs": [], "is_link": false,
         "playable_length": 1},
        {"id": "a", "designer_reward": 0.5, "bcs": [0.5], "is_link": false,
         "playable_length": 1}],
      "edges": [["start", "a"], ["a", "missing_state"]]})";
  }
  CHECK_THROWS_WITH_AS(load_graph(path), doctest::Contains("missing_state"),
                       GraphError);
  std::remove(path.c_str());
}
