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

#ifndef LEVELDIR_GRAPH_IO_HPP
#define LEVELDIR_GRAPH_IO_HPP

#include <string>
#include <vector>

#include "leveldir/graph.hpp"

namespace leveldir {

// Canonical JSON serialization: sorted object keys, states sorted by id,
// edges sorted, two-space indentation. Re-saving a loaded graph is
// byte-identical.
std::string graph_to_json(const LevelGraph& graph);
LevelGraph graph_from_json(const std::string& text);

void save_graph(const LevelGraph& graph, const std::string& path);
LevelGraph load_graph(const std::string& path);

// One named invariant check, for the validate command.
struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // offending entity on failure
};

// Parses the file without constructing a LevelGraph and reports every
// invariant separately.
std::vector<InvariantCheck> validate_graph_file(const std::string& path);

}  // namespace leveldir

#endif  // LEVELDIR_GRAPH_IO_HPP
