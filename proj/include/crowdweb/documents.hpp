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

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "crowdweb/crowd.hpp"
#include "crowdweb/experiment.hpp"
#include "crowdweb/ingest.hpp"
#include "crowdweb/miner.hpp"
#include "crowdweb/pattern_graph.hpp"

// JSON documents exchanged with the UI and written by the CLI.
namespace crowdweb::documents {

using nlohmann::json;

json to_json(const DatasetStats& stats);
json to_json(const PatternSet& patterns);
json to_json(const PatternGraph& graph);
json to_json(const SweepReport& report);
json to_json(const Histogram& histogram);

/// One hour of the crowd. `cells` supplies bounds and dominant category per
/// occupied cell; cells missing from it are described from their id alone.
/// User lists are omitted when `anonymize` is set.
json to_json(const CrowdSnapshot& snapshot, const std::map<std::string, Microcell>& cells, bool anonymize);

json error_body(std::string code, std::string message);

}  // namespace crowdweb::documents
