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

#include "crowdweb/pattern_graph.hpp"

namespace crowdweb {

PatternGraph build_graph(const PatternSet& patterns) {
  PatternGraph graph;
  for (const Pattern& pattern : patterns.patterns) {
    switch (pattern.items.size()) {
      case 1:
        graph.nodes.push_back({pattern.items[0], pattern.support_ratio, pattern.support_count});
        break;
      case 2:
        graph.edges.push_back({pattern.items[0], pattern.items[1], pattern.support_ratio, pattern.support_count});
        break;
      default:
        graph.longer_patterns.push_back(pattern);
    }
  }
  return graph;
}

}  // namespace crowdweb
