/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <string>
#include <vector>

#include "crowdweb/miner.hpp"

namespace crowdweb {

struct GraphNode {
  std::string label;
  double weight = 0;
  std::size_t support_count = 0;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::string from;
  std::string to;
  double weight = 0;
  std::size_t support_count = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Places a user frequently visits (nodes) and the frequent ordered pairs
/// between them (edges). Patterns of three or more items do not fit a digraph
/// and are kept aside in `longer_patterns`.
struct PatternGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<Pattern> longer_patterns;

  friend bool operator==(const PatternGraph&, const PatternGraph&) = default;
};

PatternGraph build_graph(const PatternSet& patterns);

}  // namespace crowdweb
