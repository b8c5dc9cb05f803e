// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Seeded generators for property tests: small random graphs, windows and
// mutation sequences.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "dhg/graph.h"

namespace dhg::testing {

struct RandomGraphShape {
  std::size_t max_nodes = 200;
  std::size_t max_edges = 2000;
  Timestamp horizon = 1000;
  std::vector<std::string> categories{"A", "B", "C", "D"};
};

/// Users, posts and comments with random creation times, then authored and
/// reply structure, then random votes and follows. Every edge respects the
/// schema and the graph's validation rules.
Graph random_graph(std::mt19937_64& rng, const RandomGraphShape& shape = {});

/// Random inclusive window inside [-horizon/10, horizon * 11/10].
TimeWindow random_window(std::mt19937_64& rng, Timestamp horizon);

}  // namespace dhg::testing
